"""Landmark-space augmentation: Gaussian jitter, keypoint dropout, offline
3x dataset expansion, and the shuffled training batch generator.

All operators work on frames, not feature vectors, so the 15 distance
entries stay consistent with the coordinates after re-extraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .landmarks import (
    N_KEYPOINTS,
    Hand,
    LabeledSample,
    LandmarkFrame,
    extract_features,
)
from .preprocess import ScalerParams, transform


@dataclass(frozen=True)
class AugmentConfig:
    noise_sigma: float = 0.02  # in normalized landmark coordinate units
    dropout_apply_prob: float = 0.15  # per-sample chance in on-the-fly mode
    dropout_min_keypoints: int = 1
    dropout_max_keypoints: int = 6
    seed: int = 0

    def __post_init__(self):
        if not self.noise_sigma > 0:
            raise ValueError("noise_sigma must be > 0")
        if not 0.0 <= self.dropout_apply_prob <= 1.0:
            raise ValueError("dropout_apply_prob must be in [0, 1]")
        if not 1 <= self.dropout_min_keypoints <= self.dropout_max_keypoints <= N_KEYPOINTS:
            raise ValueError("keypoint dropout bounds must satisfy 1 <= min <= max <= 21")


def _map_hands(frame: LandmarkFrame, fn) -> LandmarkFrame:
    left = Hand(fn(frame.left.points)) if frame.left is not None else None
    right = Hand(fn(frame.right.points)) if frame.right is not None else None
    return LandmarkFrame(left=left, right=right)


def gaussian_noise(frame: LandmarkFrame, cfg: AugmentConfig, rng: np.random.Generator) -> LandmarkFrame:
    """Add i.i.d. N(0, sigma^2) to every coordinate of every present keypoint."""
    return _map_hands(frame, lambda pts: pts + rng.normal(0.0, cfg.noise_sigma, pts.shape))


def landmark_dropout(frame: LandmarkFrame, cfg: AugmentConfig, rng: np.random.Generator) -> LandmarkFrame:
    """Zero out k keypoints per present hand, k uniform in [min, max]."""

    def drop(pts: np.ndarray) -> np.ndarray:
        k = int(rng.integers(cfg.dropout_min_keypoints, cfg.dropout_max_keypoints + 1))
        chosen = rng.choice(N_KEYPOINTS, size=k, replace=False)
        out = pts.copy()
        out[chosen] = 0.0
        return out

    return _map_hands(frame, drop)


def expand_dataset(samples: Sequence[LabeledSample], cfg: AugmentConfig) -> list[LabeledSample]:
    """Offline 3x expansion: each sample yields itself, a noise variant, and
    a dropout variant, in that order. Deterministic under cfg.seed."""
    if not samples:
        raise ValueError("expand_dataset needs a non-empty input")
    rng = np.random.default_rng(cfg.seed)
    out: list[LabeledSample] = []
    for sample in samples:
        out.append(sample)
        out.append(LabeledSample(gaussian_noise(sample.frame, cfg, rng), sample.label))
        out.append(LabeledSample(landmark_dropout(sample.frame, cfg, rng), sample.label))
    return out


def batch_generator(
    features: np.ndarray,
    labels_one_hot: np.ndarray,
    batch_size: int,
    cfg: AugmentConfig,
    rng: np.random.Generator,
    *,
    frames: Sequence[LandmarkFrame] | None = None,
    scaler: ScalerParams | None = None,
    on_the_fly: bool = False,
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """One epoch of shuffled (feature batch, one-hot batch) pairs.

    In on-the-fly mode each sample independently receives landmark dropout
    with probability cfg.dropout_apply_prob; its feature row is then
    re-extracted from the perturbed frame (and re-standardized when a scaler
    is given), so distances stay consistent with coordinates. The final
    short batch is emitted.
    """
    features = np.asarray(features, dtype=np.float64)
    labels_one_hot = np.asarray(labels_one_hot, dtype=np.float64)
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    if features.shape[0] != labels_one_hot.shape[0]:
        raise ValueError("features and labels are misaligned")
    if on_the_fly and frames is None:
        raise ValueError("on-the-fly augmentation needs the landmark frames")

    order = rng.permutation(features.shape[0])
    for start in range(0, len(order), batch_size):
        idx = order[start : start + batch_size]
        x = features[idx].copy()
        y = labels_one_hot[idx].copy()
        if on_the_fly:
            for row, i in enumerate(idx):
                if rng.random() < cfg.dropout_apply_prob:
                    dropped = landmark_dropout(frames[i], cfg, rng)
                    vec = extract_features(dropped)
                    x[row] = transform(scaler, vec) if scaler is not None else vec
        yield x, y
