"""Confusion matrix, classification report, and the ablation harness."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .augment import AugmentConfig
from .landmarks import LabeledSample, extract_features_batch
from .model.network import NetworkSpec
from .model.training import ResidualMlpModel, TrainConfig, predict_proba, train


@dataclass(frozen=True)
class ConfusionMatrix:
    """Rows are true classes, columns predicted classes."""

    counts: np.ndarray
    classes: tuple[str, ...]

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        n = len(self.classes)
        if counts.shape != (n, n):
            raise ValueError(f"confusion matrix must be {n}x{n}, got {counts.shape}")
        if (counts < 0).any():
            raise ValueError("confusion counts must be non-negative")
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def save_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("true\\pred," + ",".join(self.classes) + "\n")
            for label, row in zip(self.classes, self.counts):
                fh.write(label + "," + ",".join(str(int(v)) for v in row) + "\n")


@dataclass(frozen=True)
class ClassificationReport:
    classes: tuple[str, ...]
    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    support: np.ndarray
    accuracy: float
    macro_precision: float
    macro_recall: float
    macro_f1: float
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float
    zero_division_classes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        per_class = {
            label: {
                "precision": float(self.precision[i]),
                "recall": float(self.recall[i]),
                "f1": float(self.f1[i]),
                "support": int(self.support[i]),
            }
            for i, label in enumerate(self.classes)
        }
        return {
            "accuracy": self.accuracy,
            "macro": {"precision": self.macro_precision, "recall": self.macro_recall, "f1": self.macro_f1},
            "weighted": {
                "precision": self.weighted_precision,
                "recall": self.weighted_recall,
                "f1": self.weighted_f1,
            },
            "per_class": per_class,
            "total_support": int(self.support.sum()),
            "zero_division_classes": list(self.zero_division_classes),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_text(self) -> str:
        """Aligned per-class metric table."""
        width = max(5, max(len(c) for c in self.classes))
        lines = [f"{'class':>{width}}  {'precision':>9}  {'recall':>9}  {'f1':>9}  {'support':>8}"]
        for i, label in enumerate(self.classes):
            lines.append(
                f"{label:>{width}}  {self.precision[i]:>9.4f}  {self.recall[i]:>9.4f}"
                f"  {self.f1[i]:>9.4f}  {int(self.support[i]):>8d}"
            )
        total = int(self.support.sum())
        lines.append("")
        lines.append(f"{'accuracy':>{width}}  {'':>9}  {'':>9}  {self.accuracy:>9.4f}  {total:>8d}")
        lines.append(
            f"{'macro avg':>{width}}  {self.macro_precision:>9.4f}  {self.macro_recall:>9.4f}"
            f"  {self.macro_f1:>9.4f}  {total:>8d}"
        )
        lines.append(
            f"{'weighted avg':>{width}}  {self.weighted_precision:>9.4f}  {self.weighted_recall:>9.4f}"
            f"  {self.weighted_f1:>9.4f}  {total:>8d}"
        )
        if self.zero_division_classes:
            lines.append(f"zero-division classes: {', '.join(self.zero_division_classes)}")
        return "\n".join(lines)


def confusion_from_indices(true_idx, pred_idx, classes: Sequence[str]) -> ConfusionMatrix:
    n = len(classes)
    counts = np.zeros((n, n), dtype=np.int64)
    np.add.at(counts, (np.asarray(true_idx), np.asarray(pred_idx)), 1)
    return ConfusionMatrix(counts=counts, classes=tuple(classes))


def report_from_confusion(cm: ConfusionMatrix) -> ClassificationReport:
    """Standard definitions; zero-denominator metrics become 0 and the class
    is flagged instead of raising."""
    counts = cm.counts.astype(np.float64)
    tp = np.diag(counts)
    support = counts.sum(axis=1)
    predicted = counts.sum(axis=0)
    total = counts.sum()
    if total == 0:
        raise ValueError("cannot report on an empty test set")

    flagged = []
    precision = np.zeros(len(cm.classes))
    recall = np.zeros(len(cm.classes))
    f1 = np.zeros(len(cm.classes))
    for i, label in enumerate(cm.classes):
        zero_hit = False
        if predicted[i] > 0:
            precision[i] = tp[i] / predicted[i]
        else:
            zero_hit = True
        if support[i] > 0:
            recall[i] = tp[i] / support[i]
        else:
            zero_hit = True
        if precision[i] + recall[i] > 0:
            f1[i] = 2 * precision[i] * recall[i] / (precision[i] + recall[i])
        else:
            zero_hit = True
        if zero_hit:
            flagged.append(label)

    weights = support / total
    return ClassificationReport(
        classes=cm.classes,
        precision=precision,
        recall=recall,
        f1=f1,
        support=support.astype(np.int64),
        accuracy=float(tp.sum() / total),
        macro_precision=float(precision.mean()),
        macro_recall=float(recall.mean()),
        macro_f1=float(f1.mean()),
        weighted_precision=float((precision * weights).sum()),
        weighted_recall=float((recall * weights).sum()),
        weighted_f1=float((f1 * weights).sum()),
        zero_division_classes=tuple(flagged),
    )


def evaluate(model: ResidualMlpModel, samples: Sequence[LabeledSample]) -> tuple[ConfusionMatrix, ClassificationReport]:
    """Batched inference over samples followed by the metric computation."""
    if not samples:
        raise ValueError("cannot evaluate on an empty test set")
    features = extract_features_batch([s.frame for s in samples])
    pred_idx = np.concatenate(
        [predict_proba(model, features[i : i + 2048]).argmax(axis=1) for i in range(0, len(samples), 2048)]
    )
    true_idx = model.codec.encode_all([s.label for s in samples])
    cm = confusion_from_indices(true_idx, pred_idx, model.codec.classes)
    return cm, report_from_confusion(cm)


@dataclass(frozen=True)
class AblationRow:
    name: str
    seed: int
    epochs: int
    accuracy: float
    macro_f1: float
    val_acc: float


@dataclass
class AblationReport:
    rows: list[AblationRow] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"rows": [vars(r) for r in self.rows]}

    def to_text(self) -> str:
        lines = [f"{'variant':<16} {'seed':>6} {'epochs':>7} {'accuracy':>9} {'macro_f1':>9} {'val_acc':>8}"]
        for r in self.rows:
            lines.append(
                f"{r.name:<16} {r.seed:>6d} {r.epochs:>7d} {r.accuracy:>9.4f} {r.macro_f1:>9.4f} {r.val_acc:>8.4f}"
            )
        return "\n".join(lines)


def run_ablations(
    samples: list[LabeledSample],
    cfg: TrainConfig,
    aug_cfg: AugmentConfig | None = None,
    *,
    spec: NetworkSpec | None = None,
    eval_samples: Sequence[LabeledSample] | None = None,
) -> AblationReport:
    """Train and evaluate {full, no-augmentation, no-residual} under one seed.

    Accuracy/macro-F1 come from eval_samples when given (e.g. a corrupted
    held-out set), otherwise from the run's own validation split.
    """
    if spec is None:
        spec = NetworkSpec(dropout_rate=cfg.dropout_rate, bn_momentum=cfg.bn_momentum, bn_epsilon=cfg.bn_epsilon)
    variants = [
        ("full", True, spec),
        ("no-augmentation", False, spec),
        ("no-residual", True, replace(spec, residual=False)),
    ]
    report = AblationReport()
    for name, augment, variant_spec in variants:
        model, log = train(samples, cfg, aug_cfg, augment=augment, spec=variant_spec)
        if eval_samples is not None:
            _, cls_report = evaluate(model, eval_samples)
            accuracy, macro_f1 = cls_report.accuracy, cls_report.macro_f1
        else:
            accuracy, macro_f1 = log.rows[-1].val_acc, float("nan")
        report.rows.append(
            AblationRow(
                name=name,
                seed=cfg.seed,
                epochs=len(log.rows),
                accuracy=accuracy,
                macro_f1=macro_f1,
                val_acc=log.rows[-1].val_acc,
            )
        )
    return report
