"""Nominal design synthesis and simulated fabrication."""

from gan_duf.geometry.airfoil import (
    AirfoilDesign,
    airfoil_lattice,
    ffd_deform,
    load_airfoil_file,
    naca_airfoil,
    parametric_coords,
    perturb_airfoil,
    sample_synthetic_airfoil,
    scan_airfoil_files,
)
from gan_duf.geometry.ffd import (
    ControlLattice,
    PerturbationConfig,
    bernstein,
    bernstein_basis,
    deform_points,
    perturb_lattice,
)
from gan_duf.geometry.metasurface import (
    LevelSetField,
    deform_field,
    gaussian_smooth,
    motif_fields,
    perturb_metasurface,
    synth_metasurface_nominal,
)

__all__ = [
    "AirfoilDesign",
    "ControlLattice",
    "LevelSetField",
    "PerturbationConfig",
    "airfoil_lattice",
    "bernstein",
    "bernstein_basis",
    "deform_field",
    "deform_points",
    "ffd_deform",
    "gaussian_smooth",
    "load_airfoil_file",
    "motif_fields",
    "naca_airfoil",
    "parametric_coords",
    "perturb_airfoil",
    "perturb_lattice",
    "perturb_metasurface",
    "sample_synthetic_airfoil",
    "scan_airfoil_files",
    "synth_metasurface_nominal",
]
