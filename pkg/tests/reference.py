"""Independent reference implementations used as test oracles.

Everything here is deliberately written the slow, obvious way (pure Python
loops, exact Fractions, exhaustive search) so the expected values do not
share code paths with the library under test.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

FINGERTIPS = (4, 8, 12, 16, 20)
WRIST = 0


def naive_features(left, right):
    """141 floats, computed with scalar math. left/right: 21x3 nested lists
    or None."""
    zero = [[0.0, 0.0, 0.0] for _ in range(21)]
    lp = left if left is not None else zero
    rp = right if right is not None else zero

    def dist(p, q):
        return math.sqrt(sum((pi - qi) ** 2 for pi, qi in zip(p, q)))

    out = []
    for pt in lp:
        out.extend(float(c) for c in pt)
    for pt in rp:
        out.extend(float(c) for c in pt)
    out.extend(dist(lp[t], lp[WRIST]) for t in FINGERTIPS)
    out.extend(dist(rp[t], rp[WRIST]) for t in FINGERTIPS)
    out.extend(dist(lp[t], rp[t]) for t in FINGERTIPS)
    return out


def py_mean_std(rows):
    """Two-pass per-column mean and population std via plain loops."""
    n = len(rows)
    dim = len(rows[0])
    mean = [sum(r[j] for r in rows) / n for j in range(dim)]
    var = [sum((r[j] - mean[j]) ** 2 for r in rows) / n for j in range(dim)]
    return mean, [math.sqrt(v) for v in var]


def exact_report(counts):
    """Classification metrics over a confusion matrix as exact Fractions.

    counts[i][j] = samples of true class i predicted as class j. Zero
    denominators map to metric 0, mirroring the documented convention.
    """
    k = len(counts)
    total = sum(sum(row) for row in counts)
    out = {"precision": [], "recall": [], "f1": [], "support": []}
    for i in range(k):
        tp = Fraction(counts[i][i])
        support = Fraction(sum(counts[i]))
        predicted = Fraction(sum(counts[r][i] for r in range(k)))
        prec = tp / predicted if predicted else Fraction(0)
        rec = tp / support if support else Fraction(0)
        f1 = 2 * prec * rec / (prec + rec) if prec + rec else Fraction(0)
        out["precision"].append(prec)
        out["recall"].append(rec)
        out["f1"].append(f1)
        out["support"].append(support)
    out["accuracy"] = Fraction(sum(counts[i][i] for i in range(k)), total)
    for name in ("precision", "recall", "f1"):
        vals = out[name]
        out[f"macro_{name}"] = sum(vals) / k
        out[f"weighted_{name}"] = sum(v * s for v, s in zip(vals, out["support"])) / total
    return out


def spellable_letters(token):
    """How many characters of a token have a letter/digit sign card."""
    ok = set("123456789") | set("ABCDEFGHIJKLMNOPQRSTUVWXYZ")
    return sum(1 for ch in token if ch.upper() in ok)


def dp_plan_cost(tokens, phrases, stop_keywords=()):
    """Optimal (spelled_letters, item_count) over all segmentations.

    phrases: dict of token-tuple -> asset id. Stop keywords take effect only
    at segment boundaries, mirroring the planner's contract.
    """
    n = len(tokens)
    INF = (float("inf"), float("inf"))
    best = [INF] * (n + 1)
    best[n] = (0, 0)
    for i in range(n - 1, -1, -1):
        if tokens[i] in stop_keywords:
            best[i] = (0, 0)  # plan terminates here
            continue
        letters = spellable_letters(tokens[i])
        tail = best[i + 1]
        cand = (letters + tail[0], letters + tail[1])
        for key in phrases:
            m = len(key)
            if tuple(tokens[i : i + m]) == key:
                t = best[i + m]
                option = (t[0], 1 + t[1])
                if option < cand:
                    cand = option
        best[i] = cand
    return best[0]


def plan_cost(plan):
    """(spelled_letters, item_count) of an actual SignPlan."""
    letters = sum(1 for item in plan.items if type(item).__name__ == "LetterItem")
    return (letters, len(plan.items))


def adam_reference(w0, grads, lr, beta1, beta2, eps):
    """Scalar-loop Adam with bias correction; returns the weight trajectory."""
    w = [float(v) for v in np.ravel(w0)]
    m = [0.0] * len(w)
    v = [0.0] * len(w)
    history = []
    for t, g_arr in enumerate(grads, start=1):
        g = [float(x) for x in np.ravel(g_arr)]
        for j in range(len(w)):
            m[j] = beta1 * m[j] + (1 - beta1) * g[j]
            v[j] = beta2 * v[j] + (1 - beta2) * g[j] ** 2
            mhat = m[j] / (1 - beta1**t)
            vhat = v[j] / (1 - beta2**t)
            w[j] -= lr * mhat / (math.sqrt(vhat) + eps)
        history.append(np.array(w).reshape(np.shape(w0)))
    return history


def fd_gradients(loss_fn, params, h=1e-4):
    """Central finite differences of loss_fn() w.r.t. each tensor in params.

    loss_fn must be deterministic (reseed any rng inside it); params is a
    dict of live arrays that are perturbed in place and restored.
    """
    grads = {}
    for name, tensor in params.items():
        g = np.zeros_like(tensor)
        flat = tensor.ravel()
        gflat = g.ravel()
        for idx in range(flat.size):
            orig = flat[idx]
            flat[idx] = orig + h
            up = loss_fn()
            flat[idx] = orig - h
            down = loss_fn()
            flat[idx] = orig
            gflat[idx] = (up - down) / (2 * h)
        grads[name] = g
    return grads


def max_relative_error(analytic, numeric, floor=1e-8):
    """max over tensors of |a - n| / max(|a|, |n|), with an absolute
    comparison below the floor so exact zeros do not blow up."""
    worst = 0.0
    for name in analytic:
        a = analytic[name].ravel()
        n = numeric[name].ravel()
        for ai, ni in zip(a, n):
            denom = max(abs(ai), abs(ni))
            err = abs(ai - ni) if denom < floor else abs(ai - ni) / denom
            worst = max(worst, err)
    return worst
