"""The residual MLP: stem projection, width-preserving residual blocks, a
compression stage, and a softmax head."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .layers import BatchNorm, Dense, Dropout, ReLU, softmax
from ..landmarks import FEATURE_DIM, LABELS


@dataclass(frozen=True)
class NetworkSpec:
    """Layer plan. Defaults realize the production classifier:
    141 -> dense 512/ReLU -> BN -> dropout 0.3 -> 3 residual blocks (512)
    -> dense 256/ReLU -> BN -> dropout 0.3 -> dense 35 -> softmax."""

    input_dim: int = FEATURE_DIM
    hidden_width: int = 512
    residual_blocks: int = 3
    compress_width: int = 256
    n_classes: int = len(LABELS)
    dropout_rate: float = 0.3
    bn_momentum: float = 0.9
    bn_epsilon: float = 1e-5
    residual: bool = True  # False drops only the shortcut additions

    def __post_init__(self):
        if min(self.input_dim, self.hidden_width, self.compress_width, self.n_classes) < 1:
            raise ValueError("all widths must be positive")
        if self.residual_blocks < 0:
            raise ValueError("residual_blocks must be >= 0")
        if not 0.0 <= self.dropout_rate < 1.0:
            raise ValueError("dropout_rate must be in [0, 1)")

    def to_dict(self) -> dict:
        return {
            "input_dim": self.input_dim,
            "hidden_width": self.hidden_width,
            "residual_blocks": self.residual_blocks,
            "compress_width": self.compress_width,
            "n_classes": self.n_classes,
            "dropout_rate": self.dropout_rate,
            "bn_momentum": self.bn_momentum,
            "bn_epsilon": self.bn_epsilon,
            "residual": self.residual,
        }


class _Stage:
    """Dense -> ReLU -> BatchNorm -> Dropout, the repeated unit."""

    def __init__(self, n_in: int, n_out: int, spec: NetworkSpec, rng: np.random.Generator):
        self.dense = Dense(n_in, n_out, rng)
        self.relu = ReLU()
        self.bn = BatchNorm(n_out, spec.bn_momentum, spec.bn_epsilon)
        self.drop = Dropout(spec.dropout_rate)

    def forward(self, x, training, rng):
        h = self.dense.forward(x, training)
        h = self.relu.forward(h, training)
        h = self.bn.forward(h, training)
        return self.drop.forward(h, training, rng)

    def backward(self, grad):
        grad = self.drop.backward(grad)
        grad = self.bn.backward(grad)
        grad = self.relu.backward(grad)
        return self.dense.backward(grad)


class ResidualMlp:
    """Forward/backward over the NetworkSpec layer plan.

    Training mode uses batch statistics and inverted dropout (and therefore
    needs an rng); inference mode is a pure function of (weights, input).
    """

    def __init__(self, spec: NetworkSpec, rng: np.random.Generator):
        self.spec = spec
        self.stem = _Stage(spec.input_dim, spec.hidden_width, spec, rng)
        self.blocks = [
            _Stage(spec.hidden_width, spec.hidden_width, spec, rng)
            for _ in range(spec.residual_blocks)
        ]
        self.head = _Stage(spec.hidden_width, spec.compress_width, spec, rng)
        self.out = Dense(spec.compress_width, spec.n_classes, rng)

    def _stages(self):
        named = [("stem", self.stem)]
        named += [(f"block{i}", blk) for i, blk in enumerate(self.blocks)]
        named.append(("head", self.head))
        return named

    def forward_logits(self, x: np.ndarray, training: bool, rng: np.random.Generator | None = None) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] != self.spec.input_dim:
            raise ValueError(f"expected input of shape (N, {self.spec.input_dim}), got {x.shape}")
        h = self.stem.forward(x, training, rng)
        for block in self.blocks:
            f = block.forward(h, training, rng)
            h = h + f if self.spec.residual else f
        h = self.head.forward(h, training, rng)
        return self.out.forward(h, training)

    def forward(self, x: np.ndarray, training: bool = False, rng: np.random.Generator | None = None) -> np.ndarray:
        """Class probabilities, one simplex row per input row."""
        return softmax(self.forward_logits(x, training, rng))

    def backward(self, grad_logits: np.ndarray) -> None:
        """Backpropagate d(loss)/d(logits); parameter grads land on layers.
        At each shortcut the gradient sums over both branches."""
        grad = self.out.backward(grad_logits)
        grad = self.head.backward(grad)
        for block in reversed(self.blocks):
            grad_path = block.backward(grad)
            grad = grad + grad_path if self.spec.residual else grad_path
        self.stem.backward(grad)

    def parameters(self) -> dict[str, np.ndarray]:
        """Trainable tensors in a fixed, documented order."""
        out: dict[str, np.ndarray] = {}
        for name, stage in self._stages():
            for key, val in stage.dense.params().items():
                out[f"{name}.dense.{key}"] = val
            for key, val in stage.bn.params().items():
                out[f"{name}.bn.{key}"] = val
        for key, val in self.out.params().items():
            out[f"out.{key}"] = val
        return out

    def gradients(self) -> dict[str, np.ndarray]:
        out: dict[str, np.ndarray] = {}
        for name, stage in self._stages():
            for key, val in stage.dense.grads().items():
                out[f"{name}.dense.{key}"] = val
            for key, val in stage.bn.grads().items():
                out[f"{name}.bn.{key}"] = val
        for key, val in self.out.grads().items():
            out[f"out.{key}"] = val
        return out

    def state_tensors(self) -> dict[str, np.ndarray]:
        """Parameters plus batch-norm running statistics (for serialization)."""
        out = dict(self.parameters())
        for name, stage in self._stages():
            for key, val in stage.bn.state().items():
                out[f"{name}.bn.{key}"] = val
        return out

    def load_tensors(self, tensors: dict[str, np.ndarray]) -> None:
        """Replace every parameter/state tensor by name (shape-checked)."""
        slots = self._tensor_slots()
        missing = set(slots) - set(tensors)
        if missing:
            raise ValueError(f"missing tensors: {sorted(missing)}")
        for name, (obj, attr) in slots.items():
            value = np.asarray(tensors[name])
            current = getattr(obj, attr)
            if value.shape != current.shape:
                raise ValueError(f"tensor {name}: expected shape {current.shape}, got {value.shape}")
            setattr(obj, attr, value)

    def _tensor_slots(self):
        slots = {}
        for name, stage in self._stages():
            slots[f"{name}.dense.W"] = (stage.dense, "W")
            slots[f"{name}.dense.b"] = (stage.dense, "b")
            slots[f"{name}.bn.gamma"] = (stage.bn, "gamma")
            slots[f"{name}.bn.beta"] = (stage.bn, "beta")
            slots[f"{name}.bn.running_mean"] = (stage.bn, "running_mean")
            slots[f"{name}.bn.running_var"] = (stage.bn, "running_var")
        slots["out.W"] = (self.out, "W")
        slots["out.b"] = (self.out, "b")
        return slots


def init_network(spec: NetworkSpec, seed: int) -> ResidualMlp:
    """Deterministic network init: dense weights ~ N(0, 2/fan_in), biases 0,
    gamma 1, beta 0, running stats (0, 1)."""
    return ResidualMlp(spec, np.random.default_rng(seed))
