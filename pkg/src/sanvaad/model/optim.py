"""Adam optimizer with bias-corrected moment estimates."""

from __future__ import annotations

import numpy as np


class AdamState:
    """First/second moment accumulators keyed by parameter name."""

    def __init__(self, params: dict[str, np.ndarray]):
        self.m = {name: np.zeros_like(p) for name, p in params.items()}
        self.v = {name: np.zeros_like(p) for name, p in params.items()}
        self.t = 0


def adam_step(
    params: dict[str, np.ndarray],
    grads: dict[str, np.ndarray],
    state: AdamState,
    lr: float = 0.001,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> None:
    """One in-place update of every parameter tensor."""
    if set(params) != set(state.m):
        raise ValueError("optimizer state does not match the parameter set")
    state.t += 1
    correction1 = 1.0 - beta1**state.t
    correction2 = 1.0 - beta2**state.t
    for name, p in params.items():
        g = grads[name]
        state.m[name] = beta1 * state.m[name] + (1.0 - beta1) * g
        state.v[name] = beta2 * state.v[name] + (1.0 - beta2) * g * g
        m_hat = state.m[name] / correction1
        v_hat = state.v[name] / correction2
        p -= lr * m_hat / (np.sqrt(v_hat) + eps)
