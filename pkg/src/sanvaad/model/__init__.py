"""Residual MLP classifier: layers, network, optimizer, and training loop."""

from .layers import (
    BatchNorm,
    Dense,
    Dropout,
    ReLU,
    cross_entropy,
    cross_entropy_grad,
    log_softmax,
    softmax,
)
from .network import NetworkSpec, ResidualMlp, init_network
from .optim import AdamState, adam_step
from .training import (
    EpochLog,
    EpochStats,
    Prediction,
    ResidualMlpModel,
    TrainConfig,
    predict,
    predict_proba,
    train,
)

__all__ = [
    "AdamState",
    "BatchNorm",
    "Dense",
    "Dropout",
    "EpochLog",
    "EpochStats",
    "NetworkSpec",
    "Prediction",
    "ReLU",
    "ResidualMlp",
    "ResidualMlpModel",
    "TrainConfig",
    "adam_step",
    "cross_entropy",
    "cross_entropy_grad",
    "init_network",
    "log_softmax",
    "predict",
    "predict_proba",
    "softmax",
    "train",
]
