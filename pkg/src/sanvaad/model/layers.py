"""Trainable layers with explicit forward/backward passes (numpy only).

Backward passes return the gradient with respect to the layer input and
stash parameter gradients on the layer. The 1/batch mean reduction lives in
the loss gradient, so layer backwards are plain sums.
"""

from __future__ import annotations

import numpy as np


class Dense:
    """Affine map y = x W + b with He-scaled normal init (variance 2/fan_in)."""

    def __init__(self, n_in: int, n_out: int, rng: np.random.Generator):
        self.W = rng.normal(0.0, np.sqrt(2.0 / n_in), size=(n_in, n_out))
        self.b = np.zeros(n_out)
        self.dW = np.zeros_like(self.W)
        self.db = np.zeros_like(self.b)
        self._x = None

    def forward(self, x: np.ndarray, training: bool) -> np.ndarray:
        if training:
            self._x = x
        return x @ self.W + self.b

    def backward(self, grad: np.ndarray) -> np.ndarray:
        if self._x is None:
            raise RuntimeError("backward called without a cached training forward")
        self.dW = self._x.T @ grad
        self.db = grad.sum(axis=0)
        return grad @ self.W.T

    def params(self):
        return {"W": self.W, "b": self.b}

    def grads(self):
        return {"W": self.dW, "b": self.db}


class ReLU:
    def __init__(self):
        self._mask = None

    def forward(self, x: np.ndarray, training: bool) -> np.ndarray:
        if training:
            self._mask = x > 0
        return np.maximum(x, 0.0)

    def backward(self, grad: np.ndarray) -> np.ndarray:
        return grad * self._mask


class BatchNorm:
    """Batch normalization over the batch axis with running statistics.

    Training uses batch mean/var (population) and updates
    running = momentum * running + (1 - momentum) * batch. Inference
    normalizes with the running statistics.
    """

    def __init__(self, n_features: int, momentum: float = 0.9, eps: float = 1e-5):
        self.gamma = np.ones(n_features)
        self.beta = np.zeros(n_features)
        self.running_mean = np.zeros(n_features)
        self.running_var = np.ones(n_features)
        self.momentum = momentum
        self.eps = eps
        self.dgamma = np.zeros_like(self.gamma)
        self.dbeta = np.zeros_like(self.beta)
        self._cache = None

    def forward(self, x: np.ndarray, training: bool) -> np.ndarray:
        if training:
            mean = x.mean(axis=0)
            var = x.var(axis=0)
            x_norm = (x - mean) / np.sqrt(var + self.eps)
            self._cache = (x, x_norm, mean, var)
            self.running_mean = self.momentum * self.running_mean + (1 - self.momentum) * mean
            self.running_var = self.momentum * self.running_var + (1 - self.momentum) * var
        else:
            x_norm = (x - self.running_mean) / np.sqrt(self.running_var + self.eps)
        return self.gamma * x_norm + self.beta

    def backward(self, grad: np.ndarray) -> np.ndarray:
        if self._cache is None:
            raise RuntimeError("backward called without a cached training forward")
        x, x_norm, mean, var = self._cache
        n = x.shape[0]
        inv_std = 1.0 / np.sqrt(var + self.eps)

        self.dgamma = (grad * x_norm).sum(axis=0)
        self.dbeta = grad.sum(axis=0)

        dx_norm = grad * self.gamma
        dvar = (dx_norm * (x - mean) * -0.5 * inv_std**3).sum(axis=0)
        dmean = (dx_norm * -inv_std).sum(axis=0) + dvar * (-2.0 * (x - mean)).mean(axis=0)
        return dx_norm * inv_std + dvar * 2.0 * (x - mean) / n + dmean / n

    def params(self):
        return {"gamma": self.gamma, "beta": self.beta}

    def grads(self):
        return {"gamma": self.dgamma, "beta": self.dbeta}

    def state(self):
        return {"running_mean": self.running_mean, "running_var": self.running_var}


class Dropout:
    """Inverted dropout: training scales kept units by 1/(1-rate)."""

    def __init__(self, rate: float):
        if not 0.0 <= rate < 1.0:
            raise ValueError("dropout rate must be in [0, 1)")
        self.rate = rate
        self._mask = None

    def forward(self, x: np.ndarray, training: bool, rng: np.random.Generator | None = None) -> np.ndarray:
        if not training or self.rate == 0.0:
            return x
        if rng is None:
            raise RuntimeError("training-mode dropout needs a random generator")
        self._mask = (rng.random(x.shape) >= self.rate) / (1.0 - self.rate)
        return x * self._mask

    def backward(self, grad: np.ndarray) -> np.ndarray:
        if self.rate == 0.0:
            return grad
        return grad * self._mask


def softmax(logits: np.ndarray) -> np.ndarray:
    """Row-wise softmax with max-subtraction for stability."""
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def cross_entropy(logits: np.ndarray, targets_one_hot: np.ndarray) -> float:
    """Mean categorical cross-entropy, computed from logits so it stays
    finite for any finite input."""
    return float(-(targets_one_hot * log_softmax(logits)).sum(axis=1).mean())


def cross_entropy_grad(probs: np.ndarray, targets_one_hot: np.ndarray) -> np.ndarray:
    """Fused softmax + cross-entropy gradient with the 1/batch reduction."""
    return (probs - targets_one_hot) / probs.shape[0]
