"""Landmark augmentation: gaussian jitter, keypoint dropout, and the 3x
offline expansion used before training.

Run: python3 demos/02_augmentation.py
"""

import numpy as np

from sanvaad import AugmentConfig, Hand, LabeledSample, LandmarkFrame, expand_dataset
from sanvaad.augment import gaussian_noise, landmark_dropout

rng = np.random.default_rng(0)
cfg = AugmentConfig(seed=42)
print(f"defaults: noise sigma {cfg.noise_sigma}, dropout {cfg.dropout_min_keypoints}-"
      f"{cfg.dropout_max_keypoints} keypoints, on-the-fly prob {cfg.dropout_apply_prob}")

frame = LandmarkFrame(left=Hand(rng.uniform(0.2, 0.8, (21, 3))), right=None)

# Noise: every coordinate of every present hand gets N(0, sigma).
noisy = gaussian_noise(frame, cfg, rng)
delta = noisy.left.points - frame.left.points
print(f"\nnoise deltas: mean {delta.mean():+.5f}, std {delta.std():.5f} (target {cfg.noise_sigma})")

# Dropout: a few keypoints are zeroed outright, simulating tracker misses.
dropped = landmark_dropout(frame, cfg, rng)
gone = np.where((dropped.left.points == 0).all(axis=1))[0]
print(f"dropout zeroed keypoints {gone.tolist()}")

# Offline expansion keeps the original and appends one noisy and one dropped
# variant per sample: N -> 3N, deterministic for a given config seed.
samples = [LabeledSample(frame=frame, label="A") for _ in range(4)]
expanded = expand_dataset(samples, cfg)
print(f"\nexpand_dataset: {len(samples)} -> {len(expanded)} samples")
print("first triple:", ["original" if np.array_equal(s.frame.left.points, frame.left.points)
                        else "variant" for s in expanded[:3]])

rerun = expand_dataset(samples, cfg)
same = all(np.array_equal(a.frame.left.points, b.frame.left.points)
           for a, b in zip(expanded, rerun))
print(f"same seed, same output: {same}")
