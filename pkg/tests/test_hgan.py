"""Tests for the hierarchical GAN: priors, networks, losses, training and checkpoints."""

import csv
import math
import os
import tempfile

import numpy as np
import pytest
from scipy.stats import multivariate_normal

from gan_duf.autodiff import Adam, AdamState, Tensor, backward, reset_tape, sigmoid
from gan_duf.dataset import DesignDataset, PairBatch, build_dataset
from gan_duf.errors import (
    ChecksumError,
    ConfigError,
    DatasetFormatError,
    DimensionError,
    TrainingDivergedError,
)
from gan_duf.geometry import PerturbationConfig
from gan_duf.hgan import (
    Discriminator,
    GeneratedPairs,
    Generator,
    LatentSample,
    ModelCheckpoint,
    PriorConfig,
    TrainConfig,
    discriminate,
    discriminator_loss,
    fake_pair,
    generate,
    generate_pair,
    generator_loss,
    hgan_loss,
    info_nll,
    load_checkpoint,
    pair_input,
    pair_losses,
    sample_latents,
    save_checkpoint,
    train,
)

LOG_2PI = math.log(2.0 * math.pi)


def _rng(seed: int = 0) -> np.random.Generator:
    return np.random.default_rng(seed)


class TestPriors:
    """Tests for latent prior sampling."""

    def test_parent_codes_in_unit_cube(self) -> None:
        """Test that parent codes lie in [0, 1]."""
        sample = sample_latents(PriorConfig(7, 5), 1000, _rng())
        assert sample.parent.min() >= 0.0
        assert sample.parent.max() <= 1.0

    def test_child_and_noise_variance(self) -> None:
        """Test that child/noise variance over 1e5 draws is within 5% of 0.5."""
        sample = sample_latents(PriorConfig(2, 3, 4), 100_000, _rng(1))
        for block in (sample.child, sample.noise):
            variance = block.var(axis=0)
            assert np.all(np.abs(variance - 0.5) <= 0.025)
            assert np.all(np.abs(block.mean(axis=0)) <= 0.02)

    def test_invalid_dimensions(self) -> None:
        """Test that zero-width latent blocks are refused."""
        with pytest.raises(ConfigError):
            PriorConfig(0, 5)
        with pytest.raises(ConfigError):
            PriorConfig(3, 5, noise_dim=0)

    def test_for_kind_defaults(self) -> None:
        """Test the per-kind latent dimensions."""
        assert PriorConfig.for_kind("airfoil").to_dict() == {
            "parent_dim": 7,
            "child_dim": 5,
            "noise_dim": 10,
            "scale": 0.5,
        }
        assert PriorConfig.for_kind("metasurface").code_dim == 15

    def test_from_parent_zero_fills(self) -> None:
        """Test that missing child and noise rows are zero."""
        prior = PriorConfig(3, 2, 4)
        sample = LatentSample.from_parent(prior, np.array([0.1, 0.2, 0.3]))
        assert sample.size == 1
        assert not sample.child.any()
        assert not sample.noise.any()

    def test_dimension_mismatch(self) -> None:
        """Test that a wrong parent width raises DimensionError."""
        with pytest.raises(DimensionError):
            LatentSample.from_parent(PriorConfig(3, 2, 4), np.zeros((1, 4)))


class TestNetworks:
    """Tests for generator and discriminator shapes and paths."""

    def test_airfoil_shapes(self) -> None:
        """Test generator output and discriminator head shapes for airfoils."""
        prior = PriorConfig(3, 2, 4)
        gen = Generator("airfoil", prior, _rng())
        disc = Discriminator("airfoil", prior, _rng(1))
        nominal, fabricated = fake_pair(gen, sample_latents(prior, 5, _rng(2)))
        assert nominal.shape == (5, 192, 2)
        logit, q = disc.heads(nominal, fabricated)
        reset_tape()
        assert logit.shape == (5, 1)
        assert q.shape == (5, 5)
        assert np.all(np.abs(nominal.data) <= 1.0)

    def test_metasurface_shapes(self) -> None:
        """Test the convolutional generator and discriminator on 64x64 fields."""
        prior = PriorConfig(2, 3, 2)
        gen = Generator("metasurface", prior, _rng())
        disc = Discriminator("metasurface", prior, _rng(1))
        nominal, fabricated = fake_pair(gen, sample_latents(prior, 2, _rng(2)))
        assert fabricated.shape == (2, 64, 64)
        logit, q = disc.heads(nominal, fabricated)
        reset_tape()
        assert logit.shape == (2, 1)
        assert q.shape == (2, 5)

    def test_pair_input_layouts(self) -> None:
        """Test the joint pair layouts and shape checks."""
        a = Tensor(np.zeros((3, 192, 2)))
        assert pair_input("airfoil", a, a).shape == (3, 768)
        f = Tensor(np.zeros((2, 64, 64)))
        assert pair_input("metasurface", f, f).shape == (2, 2, 64, 64)
        with pytest.raises(DimensionError):
            pair_input("airfoil", a, Tensor(np.zeros((2, 192, 2))))

    def test_generator_rejects_wrong_width(self) -> None:
        """Test that the generator checks its input width."""
        gen = Generator("airfoil", PriorConfig(3, 2, 4), _rng())
        with pytest.raises(DimensionError):
            gen(Tensor(np.zeros((1, 8))))

    def test_parameter_names_unique(self) -> None:
        """Test that optimizer state keys cannot collide."""
        prior = PriorConfig(3, 2, 4)
        ckpt = ModelCheckpoint.initialize("metasurface", prior, _rng(), _rng(1))
        names = [p.name for p in ckpt.parameters()]
        assert len(names) == len(set(names))


class TestLosses:
    """Tests for the adversarial and information losses."""

    def test_uninformed_discriminator(self) -> None:
        """Test that D == 0.5 everywhere gives loss_d = 2 log 2."""
        half = Tensor(np.full((4, 1), 0.5))
        assert discriminator_loss(half, half).item() == pytest.approx(1.3862943611198906)
        zero = Tensor(np.zeros((4, 1)))
        q = Tensor(np.zeros((4, 3)))
        terms = pair_losses(zero, zero, q, q, 1.0)
        reset_tape()
        assert terms.loss_d.item() == pytest.approx(2.0 * math.log(2.0))

    def test_lambda_zero_is_plain_pair_gan(self) -> None:
        """Test that lambda = 0 leaves only the adversarial generator loss."""
        rng = _rng(4)
        fake = Tensor(rng.normal(size=(6, 1)))
        terms = pair_losses(
            Tensor(rng.normal(size=(6, 1))),
            fake,
            Tensor(rng.normal(size=(6, 3))),
            Tensor(rng.normal(size=(6, 3))),
            0.0,
        )
        expected = generator_loss(sigmoid(fake)).item()
        reset_tape()
        assert terms.loss_g.item() == expected

    def test_batch_losses_match_head_outputs(self) -> None:
        """Test that the batch-level loss scores real and generated pairs through the heads."""
        prior = PriorConfig(3, 2, 4)
        gen = Generator("airfoil", prior, _rng())
        disc = Discriminator("airfoil", prior, _rng(1))
        latents = sample_latents(prior, 4, _rng(2))
        codes = Tensor(np.concatenate([latents.parent, latents.child], axis=1))
        fake_nom, fake_fab = fake_pair(gen, latents)
        real = _rng(3).uniform(-1.0, 1.0, size=(2, 4, 192, 2))
        batch = PairBatch(np.arange(4), np.zeros(4, dtype=np.int64), real[0], real[1])

        terms = hgan_loss(disc, batch, GeneratedPairs(fake_nom, fake_fab, codes), 0.7)
        real_logit, _ = disc.heads(Tensor(real[0]), Tensor(real[1]))
        fake_logit, q_mean = disc.heads(fake_nom, fake_fab)
        expected = pair_losses(real_logit, fake_logit, q_mean, codes, 0.7)
        reset_tape()
        assert terms.loss_d.item() == pytest.approx(expected.loss_d.item(), rel=1e-12)
        assert terms.loss_g.item() == pytest.approx(expected.loss_g.item(), rel=1e-12)
        assert terms.info.item() == pytest.approx(expected.info.item(), rel=1e-12)

    def test_info_at_exact_codes(self) -> None:
        """Test that Q predicting the codes exactly gives 0.5 * dim * log(2 pi)."""
        codes = Tensor(_rng(5).uniform(size=(7, 12)))
        assert info_nll(codes, codes).item() == pytest.approx(0.5 * 12 * LOG_2PI)

    def test_info_matches_gaussian_density(self) -> None:
        """Test the info term against a unit-covariance Gaussian log-density."""
        rng = _rng(6)
        q_mean = rng.normal(size=(5, 4))
        codes = rng.normal(size=(5, 4))
        expected = -np.mean(
            [multivariate_normal(q_mean[i], np.eye(4)).logpdf(codes[i]) for i in range(5)]
        )
        assert info_nll(Tensor(q_mean), Tensor(codes)).item() == pytest.approx(expected)

    def test_losses_finite_at_saturation(self) -> None:
        """Test that clamping keeps losses finite for saturated logits."""
        big = Tensor(np.full((3, 1), 1e4))
        small = Tensor(np.full((3, 1), -1e4))
        q = Tensor(np.zeros((3, 2)))
        terms = pair_losses(small, big, q, q, 1.0)
        reset_tape()
        assert math.isfinite(terms.loss_d.item())
        assert math.isfinite(terms.loss_g.item())

    def test_info_shape_mismatch(self) -> None:
        """Test that mismatched Q/code widths raise DimensionError."""
        with pytest.raises(DimensionError):
            info_nll(Tensor(np.zeros((2, 3))), Tensor(np.zeros((2, 4))))


class TestInference:
    """Tests for generate and discriminate on a trained model."""

    def test_generate_is_deterministic(self, airfoil_model: ModelCheckpoint) -> None:
        """Test that the same latent codes give identical designs."""
        sample = sample_latents(airfoil_model.prior, 3, _rng(7))
        first = generate(airfoil_model, sample)
        assert first.shape == (3, 192, 2)
        assert first.tobytes() == generate(airfoil_model, sample).tobytes()

    def test_nominal_path_is_training_path(self, airfoil_model: ModelCheckpoint) -> None:
        """Test that generate with a zero child code equals the nominal half of fake pairs."""
        sample = sample_latents(airfoil_model.prior, 4, _rng(8))
        nominal, fabricated = generate_pair(airfoil_model, sample)
        assert generate(airfoil_model, sample.nominal()).tobytes() == nominal.tobytes()
        assert generate(airfoil_model, sample).tobytes() == fabricated.tobytes()

    def test_discriminate_outputs(self, airfoil_model: ModelCheckpoint) -> None:
        """Test probability range, Q shapes and positional inputs."""
        rng = _rng(9)
        x_nom = rng.uniform(-1, 1, size=(3, 192, 2))
        x_fab = rng.uniform(-1, 1, size=(3, 192, 2))
        out = discriminate(airfoil_model, x_nom, x_fab)
        assert out.probability.shape == (3,)
        assert np.all((out.probability > 0.0) & (out.probability < 1.0))
        assert out.q_mean.shape == (3, airfoil_model.prior.code_dim)
        assert not out.q_log_var.any()
        swapped = discriminate(airfoil_model, x_fab, x_nom)
        assert not np.array_equal(swapped.probability, out.probability)

    def test_discriminate_single_design(self, airfoil_model: ModelCheckpoint) -> None:
        """Test that one design pair is scored as a batch of one."""
        design = np.zeros((192, 2))
        assert discriminate(airfoil_model, design, design).probability.shape == (1,)

    def test_discriminate_shape_mismatch(self, airfoil_model: ModelCheckpoint) -> None:
        """Test that wrong design shapes raise DimensionError."""
        with pytest.raises(DimensionError):
            discriminate(airfoil_model, np.zeros((1, 64, 64)), np.zeros((1, 64, 64)))
        with pytest.raises(DimensionError):
            discriminate(airfoil_model, np.zeros((192, 2)), np.zeros((1, 192, 2)))

    def test_generate_dimension_mismatch(self, airfoil_model: ModelCheckpoint) -> None:
        """Test that samples drawn for another prior are rejected."""
        sample = sample_latents(PriorConfig(7, 5), 1, _rng())
        with pytest.raises(DimensionError):
            generate(airfoil_model, sample)


class TestCheckpoint:
    """Tests for checkpoint persistence."""

    def test_reload_reproduces_outputs(self, airfoil_model: ModelCheckpoint) -> None:
        """Test that a reloaded checkpoint reproduces forward outputs bitwise."""
        sample = sample_latents(airfoil_model.prior, 3, _rng(10))
        design = np.zeros((192, 2))
        with tempfile.TemporaryDirectory() as tmpdir:
            path = save_checkpoint(airfoil_model, tmpdir, "checkpoint_final")
            assert os.path.exists(os.path.join(tmpdir, "checkpoint_final.bin"))
            loaded = load_checkpoint(path)
        assert loaded.step == airfoil_model.step
        assert loaded.prior == airfoil_model.prior
        assert generate(loaded, sample).tobytes() == generate(airfoil_model, sample).tobytes()
        a = discriminate(loaded, design, design)
        b = discriminate(airfoil_model, design, design)
        assert a.probability.tobytes() == b.probability.tobytes()
        assert loaded.normalizer is not None
        assert loaded.loss_history == airfoil_model.loss_history

    def test_load_without_suffix(self, airfoil_model: ModelCheckpoint) -> None:
        """Test that the header can be named with or without .json."""
        with tempfile.TemporaryDirectory() as tmpdir:
            save_checkpoint(airfoil_model, tmpdir, "ckpt")
            loaded = load_checkpoint(os.path.join(tmpdir, "ckpt"))
        assert loaded.kind == "airfoil"

    def test_corrupted_blob(self, airfoil_model: ModelCheckpoint) -> None:
        """Test that a damaged parameter blob is detected."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = save_checkpoint(airfoil_model, tmpdir, "ckpt")
            blob_path = os.path.join(tmpdir, "ckpt.bin")
            with open(blob_path, "r+b") as f:
                f.seek(-5, os.SEEK_END)
                f.write(b"\x00\x01\x02\x03\x04")
            with pytest.raises(ChecksumError):
                load_checkpoint(path)

    def test_foreign_header(self) -> None:
        """Test that a JSON file of another format is refused."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "other.json")
            with open(path, "w", encoding="utf-8") as f:
                f.write('{"format": "something-else"}')
            with pytest.raises(DatasetFormatError):
                load_checkpoint(path)


class TestTrain:
    """Tests for the training loop."""

    def test_zero_steps_is_initialization(
        self, airfoil_dataset: DesignDataset, airfoil_prior: PriorConfig
    ) -> None:
        """Test that training for 0 steps returns the initial weights."""
        cfg = TrainConfig(steps=0, batch_size=4, seed=11)
        a = train(airfoil_dataset, cfg, airfoil_prior).parameter_arrays()
        b = train(airfoil_dataset, TrainConfig(steps=1, batch_size=4, seed=11), airfoil_prior)
        c = train(airfoil_dataset, cfg, airfoil_prior)
        assert b.step == 1
        assert c.step == 0 and not c.loss_history
        for name, value in c.parameter_arrays().items():
            assert value.tobytes() == a[name].tobytes()
        assert any(
            not np.array_equal(value, a[name]) for name, value in b.parameter_arrays().items()
        )

    def test_same_seed_same_curves(
        self, airfoil_dataset: DesignDataset, airfoil_prior: PriorConfig
    ) -> None:
        """Test that two runs with one seed produce identical loss histories."""
        cfg = TrainConfig(steps=3, batch_size=4, seed=2)
        first = train(airfoil_dataset, cfg, airfoil_prior).loss_history
        second = train(airfoil_dataset, cfg, airfoil_prior).loss_history
        assert first == second
        assert [h["step"] for h in first] == [1, 2, 3]
        assert all(math.isfinite(h["loss_d"]) and math.isfinite(h["loss_g"]) for h in first)

    def test_outputs_written(
        self, airfoil_dataset: DesignDataset, airfoil_prior: PriorConfig
    ) -> None:
        """Test losses.csv and the periodic and final checkpoints."""
        cfg = TrainConfig(steps=4, batch_size=2, seed=1, checkpoint_every=2)
        with tempfile.TemporaryDirectory() as tmpdir:
            train(airfoil_dataset, cfg, airfoil_prior, output_dir=tmpdir)
            names = set(os.listdir(tmpdir))
            with open(os.path.join(tmpdir, "losses.csv"), encoding="utf-8") as f:
                rows = list(csv.reader(f))
        for stem in ("checkpoint_2", "checkpoint_4", "checkpoint_final"):
            assert f"{stem}.json" in names and f"{stem}.bin" in names
        assert rows[0] == ["step", "loss_d", "loss_g", "info"]
        assert [r[0] for r in rows[1:]] == ["1", "2", "3", "4"]

    def test_metasurface_step(self, metasurface_dataset: DesignDataset) -> None:
        """Test one training step of the convolutional model."""
        ckpt = train(metasurface_dataset, TrainConfig(steps=1, batch_size=2), PriorConfig(2, 3, 2))
        assert ckpt.step == 1
        assert math.isfinite(ckpt.loss_history[0]["info"])

    def test_divergence_is_reported(self, airfoil_prior: PriorConfig) -> None:
        """Test that a non-finite loss aborts with the step number."""
        data = build_dataset("airfoil", 2, 1, PerturbationConfig(0.02, seed=0))
        data.nominal[:] = np.nan
        with pytest.raises(TrainingDivergedError) as excinfo:
            train(data, TrainConfig(steps=3, batch_size=2), airfoil_prior)
        assert excinfo.value.step == 1
        assert excinfo.value.last_checkpoint is None

    def test_invalid_config(self) -> None:
        """Test TrainConfig validation."""
        with pytest.raises(ConfigError):
            TrainConfig(steps=-1)
        with pytest.raises(ConfigError):
            TrainConfig(lambda_info=-0.5)
        with pytest.raises(ConfigError):
            TrainConfig(batch_size=0)

    def test_config_round_trip(self) -> None:
        """Test that TrainConfig survives to_dict/from_dict and ignores unknown keys."""
        cfg = TrainConfig.for_kind("metasurface", seed=4)
        assert cfg.steps == 50000
        assert TrainConfig.from_dict({**cfg.to_dict(), "extra": 1}) == cfg

    def test_generator_step_descends(
        self, airfoil_model: ModelCheckpoint, airfoil_prior: PriorConfig
    ) -> None:
        """Test that one generator update moves against the gradient."""
        ckpt = load_checkpoint_copy(airfoil_model)
        sample = sample_latents(airfoil_prior, 4, _rng(12))
        codes = Tensor(np.concatenate([sample.parent, sample.child], axis=1))
        params = ckpt.generator.parameters()
        opt = Adam(params, AdamState(learning_rate=1e-4))
        opt.zero_grad()
        fake_nom, fake_fab = fake_pair(ckpt.generator, sample)
        logit, q = ckpt.discriminator.heads(fake_nom, fake_fab)
        backward(generator_loss(sigmoid(logit)) + info_nll(q, codes))
        grads = [p.grad.copy() for p in params if p.grad is not None]
        before = [p.data.copy() for p in params]
        opt.step()
        inner = sum(float(np.sum(g * (p.data - b))) for g, p, b in zip(grads, params, before))
        assert inner <= 1e-9


def load_checkpoint_copy(ckpt: ModelCheckpoint) -> ModelCheckpoint:
    """Round-trip a checkpoint through disk so tests can mutate it freely."""
    with tempfile.TemporaryDirectory() as tmpdir:
        return load_checkpoint(save_checkpoint(ckpt, tmpdir, "copy"))
