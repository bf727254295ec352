"""Tests for the tensor autodiff engine and the Adam optimizer."""

from collections.abc import Callable

import numpy as np
import pytest

from gan_duf.autodiff import (
    Adam,
    AdamState,
    Conv2d,
    Linear,
    Parameter,
    Tensor,
    adam_step,
    backward,
    concat,
    current_tape,
    downsample2x,
    log,
    matmul,
    no_grad,
    relu,
    sigmoid,
    softplus,
    sum_,
    tanh,
    upsample2x,
)
from gan_duf.errors import ContractViolationError, DimensionError, MissingGradientError

ACTIVATIONS: list[Callable[[Tensor], Tensor]] = [tanh, relu, sigmoid]


def _finite_difference_check(
    params: list[Parameter], loss_fn: Callable[[], Tensor], step: float = 1e-6
) -> None:
    """Compare analytic gradients of every parameter entry with central differences."""
    for p in params:
        p.grad = None
    backward(loss_fn())
    for p in params:
        assert p.grad is not None, p.name
        analytic = p.grad.copy()
        for idx in np.ndindex(p.data.shape):
            original = p.data[idx]
            with no_grad():
                p.data[idx] = original + step
                plus = loss_fn().item()
                p.data[idx] = original - step
                minus = loss_fn().item()
            p.data[idx] = original
            numeric = (plus - minus) / (2.0 * step)
            a = analytic[idx]
            tolerance = 1e-5 * max(abs(a), abs(numeric)) + 1e-8
            assert abs(a - numeric) <= tolerance, (p.name, idx, a, numeric)


class TestForwardOps:
    """Tests for primitive forward values and shape errors."""

    def test_matmul_with_identity(self) -> None:
        """Test that multiplying by the identity returns the input."""
        a = Tensor([[1.0, 2.0], [3.0, 4.0]])
        result = matmul(a, Tensor(np.eye(2)))
        np.testing.assert_array_equal(result.data, [[1.0, 2.0], [3.0, 4.0]])

    def test_sigmoid_at_zero(self) -> None:
        """Test the analytic value sigmoid(0) = 0.5."""
        assert sigmoid(Tensor(0.0)).item() == 0.5

    def test_sum_of_concat(self) -> None:
        """Test sum(concat([1, 2], [3])) = 6."""
        result = sum_(concat([Tensor([1.0, 2.0]), Tensor([3.0])]))
        assert result.item() == 6.0

    def test_broadcast_add(self) -> None:
        """Test that a bias row broadcasts over the batch axis."""
        result = Tensor(np.zeros((3, 2))) + Tensor([1.0, 2.0])
        np.testing.assert_array_equal(result.data, [[1.0, 2.0]] * 3)

    def test_matmul_shape_mismatch_names_both_shapes(self) -> None:
        """Test that a contraction mismatch raises a DimensionError naming both shapes."""
        with pytest.raises(DimensionError) as excinfo:
            matmul(Tensor(np.ones((2, 3))), Tensor(np.ones((2, 3))))
        assert "(2, 3)" in str(excinfo.value)
        assert excinfo.value.left == (2, 3)
        assert excinfo.value.right == (2, 3)

    def test_add_shape_mismatch(self) -> None:
        """Test that non-broadcastable shapes raise a DimensionError."""
        with pytest.raises(DimensionError):
            Tensor(np.ones((2, 3))) + Tensor(np.ones((4,)))

    def test_softplus_is_stable_for_large_inputs(self) -> None:
        """Test that softplus(1000) stays finite and equals its input."""
        assert softplus(Tensor(1000.0)).item() == pytest.approx(1000.0)

    def test_no_tape_entry_without_grad_inputs(self) -> None:
        """Test that constant-only expressions are not recorded."""
        current_tape().clear()
        tanh(Tensor([1.0, 2.0]) * 3.0)
        assert len(current_tape()) == 0


class TestBackward:
    """Tests for reverse-mode gradient accumulation."""

    def test_square_sum_gradient(self) -> None:
        """Test d/dw sum(w*w) = 2w."""
        w = Parameter([1.0, 2.0], "w")
        backward(sum_(w * w))
        assert w.grad is not None
        np.testing.assert_array_equal(w.grad, [2.0, 4.0])

    def test_sigmoid_gradient_at_zero(self) -> None:
        """Test sigma'(0) = 0.25."""
        w = Parameter(0.0, "w")
        backward(sigmoid(w) * 1.0)
        assert w.grad is not None
        assert float(w.grad) == 0.25

    def test_reused_tensor_accumulates(self) -> None:
        """Test that a tensor used twice receives the sum of both contributions."""
        w = Parameter(3.0, "w")
        backward(w * w + w)
        assert w.grad is not None
        assert float(w.grad) == 7.0

    def test_non_scalar_loss_rejected(self) -> None:
        """Test that backward() refuses a vector loss."""
        w = Parameter([1.0, 2.0], "w")
        with pytest.raises(ContractViolationError):
            backward(w * 2.0)
        current_tape().clear()

    def test_empty_tape_rejected(self) -> None:
        """Test that backward() refuses to run with nothing recorded."""
        current_tape().clear()
        with pytest.raises(ContractViolationError):
            backward(Tensor(1.0))

    def test_tape_cleared_after_backward(self) -> None:
        """Test that the tape is empty after a backward pass."""
        w = Parameter([1.0], "w")
        backward(sum_(tanh(w)))
        assert len(current_tape()) == 0

    def test_log_gradient(self) -> None:
        """Test d/dw log(w) = 1/w."""
        w = Parameter(4.0, "w")
        backward(sum_(log(w)))
        assert w.grad is not None
        assert float(w.grad) == pytest.approx(0.25)


class TestGradientSuite:
    """Finite-difference verification of random small networks."""

    def test_random_networks_match_finite_differences(self) -> None:
        """Test 50 random networks of at most three layers with mixed activations."""
        rng = np.random.default_rng(1234)
        for trial in range(50):
            depth = int(rng.integers(1, 4))
            widths = [3] + [int(rng.integers(2, 6)) for _ in range(depth)]
            layers = [
                Linear(widths[i], widths[i + 1], rng, f"net{trial}.l{i}") for i in range(depth)
            ]
            for layer in layers:
                layer.bias.data = rng.normal(0.0, 0.3, size=layer.bias.shape)
            acts = [ACTIVATIONS[int(rng.integers(0, 3))] for _ in range(depth)]
            x = Tensor(rng.normal(size=(4, 3)))
            target = Tensor(rng.normal(size=(4, widths[-1])))
            params = [p for layer in layers for p in layer.parameters()]

            def loss_fn() -> Tensor:
                h = x
                for layer, act in zip(layers, acts):
                    h = act(layer(h))
                diff = h - target
                return sum_(diff * diff)

            _finite_difference_check(params, loss_fn)

    def test_convolution_and_resampling_gradients(self) -> None:
        """Test im2col convolution with up/down sampling against finite differences."""
        rng = np.random.default_rng(7)
        conv = Conv2d(2, 3, 3, rng, "conv")
        conv.bias.data = rng.normal(0.0, 0.1, size=3)
        x = Tensor(rng.normal(size=(2, 2, 4, 4)))
        target = Tensor(rng.normal(size=(2, 3, 4, 4)))

        def loss_fn() -> Tensor:
            out = downsample2x(tanh(conv(upsample2x(x))))
            diff = out - target
            return sum_(diff * diff)

        _finite_difference_check(conv.parameters(), loss_fn)

    def test_concat_gradient_routes_to_parts(self) -> None:
        """Test that concat splits the incoming gradient back to each input."""
        rng = np.random.default_rng(3)
        a = Parameter(rng.normal(size=(2, 3)), "a")
        b = Parameter(rng.normal(size=(2, 2)), "b")
        weights = Tensor(rng.normal(size=(2, 5)))

        def loss_fn() -> Tensor:
            return sum_(tanh(concat([a, b], axis=1)) * weights)

        _finite_difference_check([a, b], loss_fn)


class TestPurityAndDeterminism:
    """Tests for no-grad purity and bitwise determinism."""

    def test_no_grad_records_nothing_and_keeps_params(self) -> None:
        """Test that a forward pass under no_grad leaves tape and parameters untouched."""
        rng = np.random.default_rng(0)
        layer = Linear(3, 2, rng, "l")
        before = [p.data.copy() for p in layer.parameters()]
        current_tape().clear()
        with no_grad():
            out = tanh(layer(Tensor(np.ones((1, 3)))))
        assert len(current_tape()) == 0
        assert out.requires_grad is False
        for p, saved in zip(layer.parameters(), before):
            np.testing.assert_array_equal(p.data, saved)
            assert p.grad is None

    def test_same_seed_same_results(self) -> None:
        """Test that two identical runs give bitwise-identical outputs and gradients."""

        def run() -> tuple[np.ndarray, np.ndarray]:
            rng = np.random.default_rng(99)
            layer = Linear(4, 3, rng, "l")
            x = Tensor(rng.normal(size=(5, 4)))
            out = sigmoid(layer(x))
            backward(sum_(out * out))
            assert layer.weight.grad is not None
            return out.data, layer.weight.grad

        out_a, grad_a = run()
        out_b, grad_b = run()
        assert out_a.tobytes() == out_b.tobytes()
        assert grad_a.tobytes() == grad_b.tobytes()


class TestAdam:
    """Tests for adam_step and the Adam wrapper."""

    def test_zero_gradient_leaves_parameters(self) -> None:
        """Test that zero gradients never move the parameters."""
        p = Parameter([1.0, -2.0], "p")
        state = AdamState()
        for _ in range(5):
            p.grad = np.zeros(2)
            adam_step([p], state)
        np.testing.assert_array_equal(p.data, [1.0, -2.0])

    def test_first_step_magnitude(self) -> None:
        """Test that a unit gradient moves the parameter by about the learning rate."""
        p = Parameter(0.0, "p")
        state = AdamState(learning_rate=1e-4)
        p.grad = np.array(1.0)
        adam_step([p], state)
        assert float(p.data) == pytest.approx(-1e-4, rel=1e-6)
        assert state.step == 1

    def test_missing_gradient_names_parameter(self) -> None:
        """Test that a parameter without a gradient is reported by name."""
        a = Parameter(1.0, "alpha")
        b = Parameter(1.0, "beta")
        a.grad = np.array(1.0)
        with pytest.raises(MissingGradientError, match="beta"):
            adam_step([a, b], AdamState())
        assert float(a.data) == 1.0

    def test_invalid_betas_rejected(self) -> None:
        """Test that betas outside (0, 1) are refused."""
        with pytest.raises(ValueError):
            AdamState(beta1=1.0)

    def test_runs_are_bitwise_identical(self) -> None:
        """Test that equal seeds and inputs give identical parameters."""

        def run() -> bytes:
            rng = np.random.default_rng(5)
            layer = Linear(2, 2, rng, "l")
            opt = Adam(layer.parameters())
            x = Tensor(rng.normal(size=(3, 2)))
            for _ in range(4):
                opt.zero_grad()
                backward(sum_(tanh(layer(x))))
                opt.step()
            return layer.weight.data.tobytes() + layer.bias.data.tobytes()

        assert run() == run()
