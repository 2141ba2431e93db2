"""Hand-landmark domain types, the 141-D feature vector, and dataset I/O.

A frame holds up to two hands of 21 tracked 3D keypoints each. The feature
vector lays out both hands' flattened coordinates (63 + 63) followed by 15
Euclidean distances: wrist-to-fingertip within each hand (5 + 5) and
corresponding fingertip pairs across hands (5). An absent hand contributes
zeros, so the layout is identical for one- and two-hand input.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

N_KEYPOINTS = 21
WRIST = 0
FINGERTIPS = (4, 8, 12, 16, 20)  # thumb, index, middle, ring, pinky tips

COORDS_PER_HAND = N_KEYPOINTS * 3  # 63
N_DISTANCES = 15
FEATURE_DIM = 2 * COORDS_PER_HAND + N_DISTANCES  # 141

# Canonical class order: numerals first, then letters. One-hot indices and
# label byte-indices follow this order everywhere.
LABELS: tuple[str, ...] = tuple("123456789") + tuple("ABCDEFGHIJKLMNOPQRSTUVWXYZ")
LABEL_TO_INDEX: dict[str, int] = {label: i for i, label in enumerate(LABELS)}

FEATURE_MAGIC = b"SNVF"
FEATURE_VERSION = 1


class DatasetError(ValueError):
    """Raised for malformed dataset files (carries the offending line)."""


class UnmappedLabelError(DatasetError):
    """Raised when a raw label name cannot be mapped to a canonical symbol."""


class Keypoint(NamedTuple):
    x: float
    y: float
    z: float


class Hand:
    """One hand's 21 keypoints as an immutable (21, 3) float64 array."""

    __slots__ = ("points",)

    def __init__(self, points):
        pts = np.array(points, dtype=np.float64)
        if pts.shape != (N_KEYPOINTS, 3):
            raise ValueError(f"hand needs shape (21, 3), got {pts.shape}")
        if not np.isfinite(pts).all():
            raise ValueError("hand contains non-finite keypoint coordinates")
        pts.flags.writeable = False
        self.points = pts

    def keypoint(self, index: int) -> Keypoint:
        return Keypoint(*self.points[index])

    def __eq__(self, other):
        return isinstance(other, Hand) and np.array_equal(self.points, other.points)

    def __hash__(self):
        return hash(self.points.tobytes())

    def __repr__(self):
        return f"Hand(wrist={tuple(self.points[WRIST])})"


@dataclass(frozen=True)
class LandmarkFrame:
    """Up to two hands; an absent hand is None, never a zero placeholder."""

    left: Hand | None = None
    right: Hand | None = None

    @property
    def hand_count(self) -> int:
        return (self.left is not None) + (self.right is not None)


@dataclass(frozen=True)
class LabeledSample:
    frame: LandmarkFrame
    label: str

    def __post_init__(self):
        if self.label not in LABEL_TO_INDEX:
            raise UnmappedLabelError(f"unknown label name: {self.label!r}")
        if self.frame.hand_count == 0:
            raise ValueError("labeled sample needs at least one hand")


def _tip_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # Scaled so huge-but-finite coordinates cannot overflow to inf in the
    # subtraction or the sum of squares.
    scale = np.maximum(np.abs(a).max(axis=-1), np.abs(b).max(axis=-1))
    scale = np.where(scale > 0, scale, 1.0)[:, None]
    return np.linalg.norm(a / scale - b / scale, axis=1) * scale[:, 0]


def extract_features(frame: LandmarkFrame) -> np.ndarray:
    """Compute the 141-D feature vector for a frame with at least one hand.

    Layout: left coords (63), right coords (63), left wrist-to-tip distances
    (5), right wrist-to-tip distances (5), inter-hand tip distances (5).
    Distances are computed on the zero-filled representation, so the output
    is defined for any one- or two-hand frame.
    """
    if frame.hand_count == 0:
        raise ValueError("cannot extract features from a frame with no hands")
    zero = np.zeros((N_KEYPOINTS, 3))
    left = frame.left.points if frame.left is not None else zero
    right = frame.right.points if frame.right is not None else zero

    tips = list(FINGERTIPS)
    out = np.empty(FEATURE_DIM)
    out[:COORDS_PER_HAND] = left.ravel()
    out[COORDS_PER_HAND : 2 * COORDS_PER_HAND] = right.ravel()
    out[126:131] = _tip_distances(left[tips], left[WRIST])
    out[131:136] = _tip_distances(right[tips], right[WRIST])
    out[136:141] = _tip_distances(left[tips], right[tips])
    return out


def extract_features_batch(frames: Sequence[LandmarkFrame]) -> np.ndarray:
    """Stack extract_features over frames into an (N, 141) array."""
    return np.stack([extract_features(f) for f in frames]) if frames else np.empty((0, FEATURE_DIM))


def normalize_label(raw: str, aliases: dict[str, str] | None = None) -> str:
    """Map a raw folder/label name to its canonical class symbol.

    Matching is case-insensitive; `aliases` maps arbitrary raw names (also
    case-insensitively) to canonical symbols.
    """
    name = (raw or "").strip()
    if not name:
        raise UnmappedLabelError("empty label name")
    if aliases:
        lowered = {k.strip().lower(): v for k, v in aliases.items()}
        if name.lower() in lowered:
            name = lowered[name.lower()].strip()
    symbol = name.upper()
    if symbol in LABEL_TO_INDEX:
        return symbol
    raise UnmappedLabelError(f"unknown label name: {raw!r}")


def assign_slots(
    hands: Sequence[np.ndarray | Hand],
    handedness: Sequence[str] | None = None,
) -> LandmarkFrame:
    """Place 1-2 detected hands into left/right slots.

    Reported handedness wins when present; otherwise the hand with the
    smaller mean x goes into the left slot (a single unlabeled hand is
    slotted by which side of x=0.5 it falls on). The browser UI applies the
    same rule so that training and live input agree.
    """
    hands = [h if isinstance(h, Hand) else Hand(h) for h in hands]
    if not 1 <= len(hands) <= 2:
        raise ValueError(f"expected 1 or 2 hands, got {len(hands)}")
    if handedness is not None:
        if len(handedness) != len(hands):
            raise ValueError("handedness list must match hands list")
        slots: dict[str, Hand] = {}
        for hand, side in zip(hands, handedness):
            side = side.strip().lower()
            if side not in ("left", "right"):
                raise ValueError(f"handedness must be 'left' or 'right', got {side!r}")
            if side in slots:
                raise ValueError(f"two hands reported as {side}")
            slots[side] = hand
        return LandmarkFrame(left=slots.get("left"), right=slots.get("right"))
    if len(hands) == 1:
        if hands[0].points[:, 0].mean() < 0.5:
            return LandmarkFrame(left=hands[0])
        return LandmarkFrame(right=hands[0])
    first, second = hands
    if first.points[:, 0].mean() <= second.points[:, 0].mean():
        return LandmarkFrame(left=first, right=second)
    return LandmarkFrame(left=second, right=first)


def _hand_to_json(hand: Hand | None):
    return None if hand is None else hand.points.tolist()


def _hand_from_json(value, where: str) -> Hand | None:
    if value is None:
        return None
    try:
        return Hand(value)
    except (ValueError, TypeError) as exc:
        raise DatasetError(f"{where}: {exc}") from exc


def save_dataset(samples: Iterable[LabeledSample], path) -> None:
    """Write samples as JSONL: {"label": ..., "left": ..., "right": ...}."""
    with open(path, "w", encoding="utf-8") as fh:
        for sample in samples:
            record = {
                "label": sample.label,
                "left": _hand_to_json(sample.frame.left),
                "right": _hand_to_json(sample.frame.right),
            }
            fh.write(json.dumps(record) + "\n")


def load_dataset(path, aliases: dict[str, str] | None = None) -> list[LabeledSample]:
    """Read a JSONL dataset, normalizing labels. Errors carry line numbers."""
    samples: list[LabeledSample] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"{path}: line {lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(record, dict) or "label" not in record:
                raise DatasetError(f"{path}: line {lineno}: expected an object with a 'label' field")
            try:
                label = normalize_label(str(record["label"]), aliases)
            except UnmappedLabelError as exc:
                raise UnmappedLabelError(f"{path}: line {lineno}: {exc}") from exc
            left = _hand_from_json(record.get("left"), f"{path}: line {lineno}: left hand")
            right = _hand_from_json(record.get("right"), f"{path}: line {lineno}: right hand")
            if left is None and right is None:
                raise DatasetError(f"{path}: line {lineno}: sample has no hands")
            samples.append(LabeledSample(LandmarkFrame(left=left, right=right), label))
    return samples


def class_histogram(samples: Iterable[LabeledSample]) -> dict[str, int]:
    """Per-class sample counts over all 35 classes (zeros included)."""
    counts = dict.fromkeys(LABELS, 0)
    for sample in samples:
        counts[sample.label] += 1
    return counts


def save_features(path, features: np.ndarray, label_indices: np.ndarray) -> None:
    """Write a binary feature dump: SNVF magic, version, rows of 141 f32,
    then one label byte-index per row."""
    features = np.ascontiguousarray(features, dtype=np.float32)
    label_indices = np.asarray(label_indices, dtype=np.uint8)
    if features.ndim != 2 or features.shape[1] != FEATURE_DIM:
        raise ValueError(f"features must be (N, {FEATURE_DIM}), got {features.shape}")
    if label_indices.shape != (features.shape[0],):
        raise ValueError("label_indices length must match feature rows")
    if features.shape[0] and label_indices.max() >= len(LABELS):
        raise ValueError("label index out of range")
    with open(path, "wb") as fh:
        fh.write(FEATURE_MAGIC)
        fh.write(struct.pack("<I", FEATURE_VERSION))
        fh.write(struct.pack("<Q", features.shape[0]))
        fh.write(features.astype("<f4").tobytes())
        fh.write(label_indices.tobytes())


def load_features(path) -> tuple[np.ndarray, np.ndarray]:
    """Read a binary feature dump back as (features f32, label indices u8)."""
    with open(path, "rb") as fh:
        blob = fh.read()
    header = struct.calcsize("<4sIQ")
    if len(blob) < header or blob[:4] != FEATURE_MAGIC:
        raise DatasetError(f"{path}: not a feature dump (bad magic)")
    version, rows = struct.unpack("<IQ", blob[4:header])
    if version != FEATURE_VERSION:
        raise DatasetError(f"{path}: unsupported feature dump version {version}")
    expected = header + rows * FEATURE_DIM * 4 + rows
    if len(blob) != expected:
        raise DatasetError(f"{path}: truncated feature dump")
    features = np.frombuffer(blob, dtype="<f4", count=rows * FEATURE_DIM, offset=header)
    labels = np.frombuffer(blob, dtype=np.uint8, count=rows, offset=header + rows * FEATURE_DIM * 4)
    if rows and labels.max() >= len(LABELS):
        raise DatasetError(f"{path}: label index {labels.max()} out of range")
    return features.reshape(rows, FEATURE_DIM).copy(), labels.copy()
