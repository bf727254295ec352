"""Dataset generation, storage and batching."""

from gan_duf.dataset.arrayio import decode_array, encode_array, read_array, write_array
from gan_duf.dataset.normalize import Normalizer
from gan_duf.dataset.sources import DESIGN_KINDS, check_kind
from gan_duf.dataset.store import (
    BatchSampler,
    DesignDataset,
    PairBatch,
    build_dataset,
    fabricate,
    load_dataset,
    rebuild_dataset,
    save_dataset,
)

__all__ = [
    "DESIGN_KINDS",
    "BatchSampler",
    "DesignDataset",
    "Normalizer",
    "PairBatch",
    "build_dataset",
    "check_kind",
    "decode_array",
    "encode_array",
    "fabricate",
    "load_dataset",
    "read_array",
    "rebuild_dataset",
    "save_dataset",
    "write_array",
]
