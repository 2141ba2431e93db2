"""Feature extraction walkthrough: from raw 21-point hands to the 141-wide
vector the classifier consumes.

Run: python3 demos/01_landmark_features.py
"""

import numpy as np

from sanvaad import (
    FEATURE_DIM,
    FINGERTIPS,
    LABELS,
    Hand,
    LabeledSample,
    LandmarkFrame,
    extract_features,
    load_dataset,
    save_dataset,
)

rng = np.random.default_rng(0)

# A hand is 21 keypoints of (x, y, z). Index 0 is the wrist, 4/8/12/16/20
# are fingertips. Normalized image coordinates, so values live around [0, 1].
points = rng.uniform(0.2, 0.8, size=(21, 3))
left = Hand(points)
print(f"one hand: {left.points.shape} keypoints, wrist at {np.round(left.points[0], 3)}")

# A frame holds up to two hands. Either slot may be empty.
frame_single = LandmarkFrame(left=left, right=None)
frame_double = LandmarkFrame(left=left, right=Hand(points + [0.1, 0.0, 0.0]))

for name, frame in [("single", frame_single), ("double", frame_double)]:
    vec = extract_features(frame)
    print(f"\n{name}-hand frame -> feature vector of {vec.shape[0]} (expected {FEATURE_DIM})")
    print(f"  left coords   [0:63]    mean {vec[:63].mean():.3f}")
    print(f"  right coords  [63:126]  mean {vec[63:126].mean():.3f} (zeros when absent)")
    print(f"  wrist->tip L  [126:131] {np.round(vec[126:131], 3)}")
    print(f"  wrist->tip R  [131:136] {np.round(vec[131:136], 3)}")
    print(f"  inter-hand    [136:141] {np.round(vec[136:141], 3)}")

# The fingertip distances are plain euclidean norms; check one by hand.
tip = FINGERTIPS[0]
manual = float(np.linalg.norm(points[tip] - points[0]))
print(f"\nthumb-tip distance by hand: {manual:.6f}  (feature: {extract_features(frame_single)[126]:.6f})")

# Labeled samples round-trip through a line-oriented JSON format.
samples = [LabeledSample(frame=frame_single, label=LABELS[0]),
           LabeledSample(frame=frame_double, label="A")]
save_dataset(samples, "/tmp/demo_dataset.jsonl")
again = load_dataset("/tmp/demo_dataset.jsonl")
print(f"\nsaved and reloaded {len(again)} samples; labels {[s.label for s in again]}")
print(f"35 classes total: {LABELS[:9]} ... {LABELS[-3:]}")
