"""Shared helper for the demos: a fully separable synthetic landmark set."""

import numpy as np

from sanvaad import LABELS, Hand, LabeledSample, LandmarkFrame


def blob_dataset(n_per_class, seed=0):
    """One gaussian blob per class, far enough apart to be fully separable."""
    rng = np.random.default_rng(seed)
    out = []
    for ci, label in enumerate(LABELS):
        base = np.array([(ci % 7) * 0.15, (ci // 7) * 0.15, 0.0])
        shape = base + rng.normal(0.0, 0.05, (21, 3))
        for _ in range(n_per_class):
            hand = Hand(shape + rng.normal(0, 0.005, (21, 3)))
            out.append(LabeledSample(frame=LandmarkFrame(left=hand, right=None), label=label))
    return out
