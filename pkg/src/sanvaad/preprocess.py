"""Feature standardization, label one-hot encoding, stratified splitting."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .landmarks import LABELS, LabeledSample

VARIANCE_FLOOR = 1e-8  # divisor guard for zero-variance feature dimensions


@dataclass(frozen=True)
class ScalerParams:
    """Per-dimension mean and population standard deviation."""

    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=np.float64)
        std = np.asarray(self.std, dtype=np.float64)
        if mean.shape != std.shape or mean.ndim != 1:
            raise ValueError("mean and std must be 1-D arrays of equal length")
        if (std < 0).any():
            raise ValueError("std entries must be non-negative")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "std", std)


def fit_scaler(features) -> ScalerParams:
    """Fit mean/std per dimension. Population (not sample) std, so tests
    against an independent two-pass computation are unambiguous."""
    x = np.asarray(features, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 2:
        raise ValueError("fit_scaler needs at least 2 feature vectors")
    return ScalerParams(mean=x.mean(axis=0), std=x.std(axis=0, ddof=0))


def transform(params: ScalerParams, v) -> np.ndarray:
    """Standardize one vector or a batch: (v - mean) / max(std, 1e-8)."""
    v = np.asarray(v, dtype=np.float64)
    return (v - params.mean) / np.maximum(params.std, VARIANCE_FLOOR)


class LabelCodec:
    """Bidirectional label <-> index map over the fixed 35-class order."""

    def __init__(self, classes: Sequence[str] = LABELS):
        self.classes = tuple(classes)
        if len(set(self.classes)) != len(self.classes):
            raise ValueError("codec classes must be distinct")
        self._index = {label: i for i, label in enumerate(self.classes)}

    def __len__(self):
        return len(self.classes)

    def encode(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown label: {label!r}") from None

    def decode(self, index: int) -> str:
        return self.classes[index]

    def encode_all(self, labels: Sequence[str]) -> np.ndarray:
        return np.array([self.encode(l) for l in labels], dtype=np.int64)


def one_hot(codec: LabelCodec, label: str) -> np.ndarray:
    vec = np.zeros(len(codec))
    vec[codec.encode(label)] = 1.0
    return vec


def one_hot_batch(codec: LabelCodec, labels: Sequence[str]) -> np.ndarray:
    return np.eye(len(codec))[codec.encode_all(labels)]


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.8
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must be in (0, 1)")


def stratified_split(
    samples: Sequence[LabeledSample], spec: SplitSpec
) -> tuple[list[LabeledSample], list[LabeledSample]]:
    """Seeded per-class shuffle; each class contributes round(f * n) samples
    to train and the remainder to test."""
    by_class: dict[str, list[int]] = {}
    for i, sample in enumerate(samples):
        by_class.setdefault(sample.label, []).append(i)
    for label, idx in by_class.items():
        if len(idx) < 2:
            raise ValueError(f"class {label!r} has fewer than 2 samples ({len(idx)})")

    rng = np.random.default_rng(spec.seed)
    train_idx: list[int] = []
    test_idx: list[int] = []
    for label in sorted(by_class):
        idx = np.array(by_class[label])
        rng.shuffle(idx)
        n_train = round(spec.train_fraction * len(idx))
        train_idx.extend(idx[:n_train].tolist())
        test_idx.extend(idx[n_train:].tolist())
    return [samples[i] for i in train_idx], [samples[i] for i in test_idx]
