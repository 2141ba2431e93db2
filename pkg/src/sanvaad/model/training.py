"""Training loop (split -> augment -> scale -> batches -> epochs), the
trained-model bundle, and single-frame prediction."""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .layers import cross_entropy, cross_entropy_grad, softmax
from .network import NetworkSpec, ResidualMlp, init_network
from .optim import AdamState, adam_step
from ..augment import AugmentConfig, batch_generator, expand_dataset
from ..landmarks import LabeledSample, LandmarkFrame, extract_features, extract_features_batch
from ..preprocess import (
    LabelCodec,
    ScalerParams,
    SplitSpec,
    fit_scaler,
    one_hot_batch,
    stratified_split,
    transform,
)


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    adam_epsilon: float = 1e-8
    epochs: int = 40
    batch_size: int = 64
    dropout_rate: float = 0.3
    bn_momentum: float = 0.9
    bn_epsilon: float = 1e-5
    train_fraction: float = 0.8
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.learning_rate:
            raise ValueError("learning_rate must be positive")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            raise ValueError("Adam betas must be in [0, 1)")
        if self.epochs < 1 or self.batch_size < 1:
            raise ValueError("epochs and batch_size must be >= 1")
        if not 0.0 <= self.dropout_rate < 1.0:
            raise ValueError("dropout_rate must be in [0, 1)")


@dataclass(frozen=True)
class EpochStats:
    epoch: int
    train_loss: float
    train_acc: float
    val_loss: float
    val_acc: float


@dataclass
class EpochLog:
    rows: list[EpochStats] = field(default_factory=list)

    @property
    def best_val_acc(self) -> float:
        return max(r.val_acc for r in self.rows)

    def save_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["epoch", "train_loss", "train_acc", "val_loss", "val_acc"])
            for r in self.rows:
                writer.writerow([r.epoch, repr(r.train_loss), repr(r.train_acc), repr(r.val_loss), repr(r.val_acc)])


@dataclass
class ResidualMlpModel:
    """A trained classifier: network weights plus the scaler and label codec
    it was fitted with. Immutable after training; safe to share."""

    net: ResidualMlp
    scaler: ScalerParams
    codec: LabelCodec
    meta: dict = field(default_factory=dict)

    @property
    def spec(self) -> NetworkSpec:
        return self.net.spec


@dataclass(frozen=True)
class Prediction:
    label: str
    confidence: float
    top_k: tuple[tuple[str, float], ...]


def _eval_pass(net: ResidualMlp, x: np.ndarray, y: np.ndarray, chunk: int = 2048) -> tuple[float, float]:
    loss_sum = 0.0
    correct = 0
    for start in range(0, len(x), chunk):
        xb, yb = x[start : start + chunk], y[start : start + chunk]
        logits = net.forward_logits(xb, training=False)
        loss_sum += cross_entropy(logits, yb) * len(xb)
        correct += int((logits.argmax(axis=1) == yb.argmax(axis=1)).sum())
    return loss_sum / len(x), correct / len(x)


def train(
    samples: list[LabeledSample],
    cfg: TrainConfig,
    aug_cfg: AugmentConfig | None = None,
    *,
    augment: bool = True,
    spec: NetworkSpec | None = None,
    on_the_fly: bool = False,
    verbose: bool = False,
) -> tuple[ResidualMlpModel, EpochLog]:
    """Run the full pipeline and return the trained model with its epoch log.

    Deterministic under cfg.seed: the split, augmentation, init, shuffles,
    and dropout masks all derive from it. Training math runs in float64.
    """
    codec = LabelCodec()
    if spec is None:
        spec = NetworkSpec(
            dropout_rate=cfg.dropout_rate,
            bn_momentum=cfg.bn_momentum,
            bn_epsilon=cfg.bn_epsilon,
        )
    if spec.n_classes != len(codec):
        raise ValueError("network output width must match the 35-class codec")

    seeds = np.random.SeedSequence(cfg.seed).spawn(3)
    train_samples, val_samples = stratified_split(samples, SplitSpec(cfg.train_fraction, cfg.seed))
    if augment:
        if aug_cfg is None:
            aug_cfg = AugmentConfig(seed=int(seeds[0].generate_state(1)[0]))
        train_samples = expand_dataset(train_samples, aug_cfg)
    elif aug_cfg is None:
        aug_cfg = AugmentConfig()

    frames = [s.frame for s in train_samples]
    x_train = extract_features_batch(frames)
    scaler = fit_scaler(x_train)
    x_train = transform(scaler, x_train)
    y_train = one_hot_batch(codec, [s.label for s in train_samples])
    x_val = transform(scaler, extract_features_batch([s.frame for s in val_samples]))
    y_val = one_hot_batch(codec, [s.label for s in val_samples])

    net = init_network(spec, seed=int(seeds[1].generate_state(1)[0]))
    adam = AdamState(net.parameters())
    rng = np.random.default_rng(seeds[2])

    log = EpochLog()
    started = time.perf_counter()
    for epoch in range(cfg.epochs):
        loss_sum = 0.0
        correct = 0
        batches = batch_generator(
            x_train, y_train, cfg.batch_size, aug_cfg, rng,
            frames=frames if on_the_fly else None,
            scaler=scaler if on_the_fly else None,
            on_the_fly=on_the_fly,
        )
        for xb, yb in batches:
            logits = net.forward_logits(xb, training=True, rng=rng)
            probs = softmax(logits)
            loss_sum += cross_entropy(logits, yb) * len(xb)
            correct += int((probs.argmax(axis=1) == yb.argmax(axis=1)).sum())
            net.backward(cross_entropy_grad(probs, yb))
            adam_step(
                net.parameters(), net.gradients(), adam,
                lr=cfg.learning_rate, beta1=cfg.beta1, beta2=cfg.beta2, eps=cfg.adam_epsilon,
            )
        val_loss, val_acc = _eval_pass(net, x_val, y_val)
        stats = EpochStats(epoch, loss_sum / len(x_train), correct / len(x_train), val_loss, val_acc)
        log.rows.append(stats)
        if verbose:
            elapsed = time.perf_counter() - started
            print(
                f"epoch {epoch:3d}  train_loss {stats.train_loss:.4f}  train_acc {stats.train_acc:.4f}"
                f"  val_loss {stats.val_loss:.4f}  val_acc {stats.val_acc:.4f}  [{elapsed:.1f}s]"
            )

    scaler = _snap_float32(net, scaler)
    model = ResidualMlpModel(
        net=net,
        scaler=scaler,
        codec=codec,
        meta={"epochs": cfg.epochs, "seed": cfg.seed, "augmented": bool(augment),
              "train_samples": len(train_samples), "val_samples": len(val_samples)},
    )
    return model, log


def _snap_float32(net: ResidualMlp, scaler: ScalerParams) -> ScalerParams:
    """Round every tensor to its float32 representation (still held as
    float64). Models are serialized as f32, so snapping here makes
    save -> load reproduce in-memory predictions bit for bit."""
    tensors = net.state_tensors()
    net.load_tensors({k: v.astype(np.float32).astype(np.float64) for k, v in tensors.items()})
    return ScalerParams(
        mean=scaler.mean.astype(np.float32).astype(np.float64),
        std=scaler.std.astype(np.float32).astype(np.float64),
    )


def predict_proba(model: ResidualMlpModel, features: np.ndarray) -> np.ndarray:
    """Inference-mode class probabilities for raw (unscaled) feature rows."""
    x = transform(model.scaler, np.atleast_2d(features))
    return model.net.forward(x, training=False)


def predict(model: ResidualMlpModel, frame: LandmarkFrame, top_k: int = 3) -> Prediction:
    """Classify one frame: extract -> standardize -> infer -> decode."""
    probs = predict_proba(model, extract_features(frame))[0]
    order = np.argsort(probs)[::-1]
    top = tuple((model.codec.decode(int(i)), float(probs[i])) for i in order[:top_k])
    best = int(order[0])
    return Prediction(label=model.codec.decode(best), confidence=float(probs[best]), top_k=top)
