import numpy as np
import pytest

from sanvaad import (
    LABELS,
    Hand,
    LabeledSample,
    LandmarkFrame,
    NetworkSpec,
    TrainConfig,
    train,
)

TINY_SPEC = NetworkSpec(hidden_width=32, compress_width=16, residual_blocks=2)


def make_blob_samples(
    n_per_class,
    coord_sigma=0.005,
    cell=0.15,
    seed=0,
    labels=LABELS,
    two_hands=False,
):
    """Synthetic separable landmark dataset: one Gaussian blob per class.

    Each class sits in its own grid cell (0.15 apart) and has its own random
    hand shape; within-class jitter is coord_sigma per coordinate. Adjacent
    class centres differ by at least `cell` on every keypoint, so the
    separation is >= cell/coord_sigma sigma (30 sigma at the defaults).
    """
    rng = np.random.default_rng(seed)
    samples = []
    for ci, label in enumerate(labels):
        base = np.array([(ci % 7) * cell, (ci // 7) * cell, 0.0])
        shape = base + rng.normal(0.0, 0.05, (21, 3))
        right_shape = base + rng.normal(0.0, 0.05, (21, 3))
        for _ in range(n_per_class):
            left = Hand(shape + rng.normal(0, coord_sigma, (21, 3)))
            right = (
                Hand(right_shape + rng.normal(0, coord_sigma, (21, 3))) if two_hands else None
            )
            samples.append(LabeledSample(label=label, frame=LandmarkFrame(left=left, right=right)))
    return samples


@pytest.fixture(scope="session")
def tiny_samples():
    return make_blob_samples(8, seed=7)


@pytest.fixture(scope="session")
def tiny_model(tiny_samples):
    """A small trained model shared by the quantize/service/cli tests."""
    model, log = train(
        tiny_samples,
        TrainConfig(epochs=10, batch_size=32, seed=1, learning_rate=0.003),
        spec=TINY_SPEC,
    )
    return model


@pytest.fixture(scope="session")
def tiny_model_path(tiny_model, tmp_path_factory):
    from sanvaad import save_model

    path = tmp_path_factory.mktemp("model") / "tiny.snvd"
    save_model(tiny_model, path)
    return path


# ---------------------------------------------------------------------------
# acceptance reporting: each acceptance test records exactly one line


_acceptance_lines: list[str] = []


def record_acceptance(name: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f" - {detail}"
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
