"""End-to-end capability checks. Each test covers one shipping criterion and
prints a single [PASS]/[FAIL] line with the measured numbers."""

import json
import struct
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import make_blob_samples, record_acceptance
from reference import dp_plan_cost, exact_report, fd_gradients, max_relative_error, plan_cost
from sanvaad import (
    AugmentConfig,
    BadMagicError,
    ChecksumError,
    ContainerError,
    ContentRequest,
    GifItem,
    Hand,
    LabeledSample,
    LandmarkFrame,
    NetworkSpec,
    NewsStore,
    TrainConfig,
    UnsupportedVersionError,
    evaluate,
    expand_dataset,
    load_dictionary,
    load_model,
    predict,
    predict_proba,
    quantize_model,
    report_from_confusion,
    run_ablations,
    save_model,
    spell_token,
    train,
    translate,
)
from sanvaad.augment import gaussian_noise, landmark_dropout
from sanvaad.content import build_bundle, split_sentences, word_count
from sanvaad.evaluate import ConfusionMatrix
from sanvaad.landmarks import extract_features_batch
from sanvaad.model.layers import cross_entropy, cross_entropy_grad
from sanvaad.model.network import init_network
from sanvaad.quantize import container_from_model, serialize_container
from sanvaad.service import packaged_data_dir


@contextmanager
def criterion(name):
    """Record exactly one pass/fail line, even when the body errors out."""
    out = {}
    try:
        yield out
    except Exception as exc:
        record_acceptance(name, False, f"error: {exc}")
        raise
    record_acceptance(name, out["ok"], out.get("detail", ""))
    assert out["ok"], f"{name}: {out.get('detail', '')}"


@pytest.fixture(scope="module")
def separable():
    # 200 samples per class, ~30 sigma between adjacent class centres
    return make_blob_samples(200, seed=11)


@pytest.fixture(scope="module")
def trained(separable):
    t0 = time.perf_counter()
    model, log = train(
        separable, TrainConfig(epochs=12, batch_size=64, seed=3), spec=NetworkSpec()
    )
    return model, log, time.perf_counter() - t0


def test_gradient_check():
    with criterion("gradient check") as out:
        spec = NetworkSpec(hidden_width=16, residual_blocks=2, compress_width=16)
        net = init_network(spec, seed=2)
        rng = np.random.default_rng(102)
        x = rng.normal(size=(8, 141))
        y = np.eye(35)[rng.integers(0, 35, 8)]

        def loss():
            # reseeding fixes the dropout masks across difference evaluations
            return cross_entropy(
                net.forward_logits(x, training=True, rng=np.random.default_rng(7)), y
            )

        t0 = time.perf_counter()
        probs = net.forward(x, training=True, rng=np.random.default_rng(7))
        net.backward(cross_entropy_grad(probs, y))
        analytic = {k: v.copy() for k, v in net.gradients().items()}
        numeric = fd_gradients(loss, net.parameters(), h=1e-4)
        elapsed = time.perf_counter() - t0

        assert any(k.endswith("bn.gamma") for k in analytic)
        assert any(k.endswith("bn.beta") for k in analytic)
        err = max_relative_error(analytic, numeric)
        out["ok"] = err < 1e-4 and elapsed < 10.0
        out["detail"] = (
            f"max rel err {err:.2e} over {len(analytic)} tensors (tol 1e-4), {elapsed:.1f}s"
        )


def test_separable_training(trained, separable):
    with criterion("separable training") as out:
        model, log, elapsed = trained
        best = log.best_val_acc

        reruns = []
        for _ in range(2):
            m, _ = train(
                separable, TrainConfig(epochs=2, batch_size=64, seed=3), spec=NetworkSpec()
            )
            reruns.append(m.net.state_tensors())
        identical = all(np.array_equal(reruns[0][k], reruns[1][k]) for k in reruns[0])

        out["ok"] = best >= 0.95 and len(log.rows) <= 40 and elapsed < 300 and identical
        out["detail"] = (
            f"val acc {best:.4f} after {len(log.rows)} epochs in {elapsed:.0f}s; "
            f"repeat runs bitwise identical: {identical}"
        )


def test_augmentation_statistics(separable):
    with criterion("augmentation statistics") as out:
        expanded = expand_dataset(separable[:1000], AugmentConfig(seed=0))

        cfg = AugmentConfig(seed=0)
        rng = np.random.default_rng(1)
        diffs = []
        for sample in separable[:1600]:
            noisy = gaussian_noise(sample.frame, cfg, rng)
            diffs.append(noisy.left.points - sample.frame.left.points)
        noise_std = float(np.std(np.concatenate(diffs)))

        zero_counts = []
        frame = separable[0].frame
        for _ in range(10_000):
            dropped = landmark_dropout(frame, cfg, rng)
            zero_counts.append(int((dropped.left.points == 0).all(axis=1).sum()))
        mean_dropped = float(np.mean(zero_counts))

        out["ok"] = (
            len(expanded) == 3000
            and abs(noise_std / 0.02 - 1) <= 0.02
            and min(zero_counts) >= 1
            and max(zero_counts) <= 6
            and abs(mean_dropped - 3.5) <= 0.1
        )
        out["detail"] = (
            f"1000 -> {len(expanded)} samples; noise std {noise_std:.5f} "
            f"(target 0.02 +/- 2%, n={len(diffs) * 63}); dropout mean {mean_dropped:.3f} "
            f"range [{min(zero_counts)}, {max(zero_counts)}] over 10k draws"
        )


def test_ablation_direction():
    with criterion("ablation direction") as out:
        samples = make_blob_samples(30, seed=13)
        rng = np.random.default_rng(99)
        corrupt_cfg = AugmentConfig(seed=0)
        corrupted = [
            LabeledSample(frame=landmark_dropout(s.frame, corrupt_cfg, rng), label=s.label)
            for s in make_blob_samples(10, seed=13)
        ]
        spec = NetworkSpec(hidden_width=64, compress_width=32, residual_blocks=2)

        pairs = []
        for seed in range(5):
            report = run_ablations(
                samples,
                TrainConfig(epochs=10, batch_size=64, seed=seed, learning_rate=0.005),
                spec=spec,
                eval_samples=corrupted,
            )
            rows = {r.name: r for r in report.rows}
            pairs.append((rows["full"].accuracy, rows["no-augmentation"].accuracy))
        wins = sum(full > bare for full, bare in pairs)

        out["ok"] = wins >= 4
        out["detail"] = "augmented beats unaugmented on corrupted eval in " + (
            f"{wins}/5 paired seeds " + str([(round(a, 3), round(b, 3)) for a, b in pairs])
        )


def test_quantization(trained, separable):
    with criterion("quantization") as out:
        model, _, _ = trained
        f32_bytes = len(serialize_container(container_from_model(model)))
        int8_container = quantize_model(model)
        int8_bytes = len(serialize_container(int8_container))
        ratio = int8_bytes / f32_bytes

        from sanvaad.quantize import model_from_container

        int8_model = model_from_container(int8_container)
        features = extract_features_batch([s.frame for s in separable])
        f32_pred = predict_proba(model, features).argmax(axis=1)
        int8_pred = predict_proba(int8_model, features).argmax(axis=1)
        agreement = float((f32_pred == int8_pred).mean())

        _, f32_report = evaluate(model, separable)
        _, int8_report = evaluate(int8_model, separable)
        drop = f32_report.accuracy - int8_report.accuracy

        out["ok"] = ratio <= 0.30 and agreement >= 0.95 and drop <= 0.03
        out["detail"] = (
            f"container {int8_bytes / 1e6:.2f}MB / {f32_bytes / 1e6:.2f}MB = {ratio:.1%} "
            f"(limit 30%); argmax agreement {agreement:.4f}; accuracy drop {drop:+.4f}"
        )


def test_inference_latency(trained, separable):
    with criterion("inference latency") as out:
        model, _, _ = trained
        frame = separable[0].frame
        predict(model, frame)  # warm caches before timing
        times = []
        for _ in range(300):
            t0 = time.perf_counter()
            predict(model, frame)
            times.append(time.perf_counter() - t0)
        median_ms = float(np.median(times)) * 1000

        out["ok"] = median_ms < 30.0
        out["detail"] = f"median single-frame predict {median_ms:.2f} ms over 300 runs (limit 30 ms)"


def test_metrics_oracle():
    with criterion("metrics oracle") as out:
        counts = [[5, 1, 0], [0, 4, 2], [1, 0, 7]]
        report = report_from_confusion(
            ConfusionMatrix(counts=np.array(counts), classes=("a", "b", "c"))
        )
        want = exact_report(counts)
        worst = 0.0
        for i in range(3):
            worst = max(worst, abs(report.precision[i] - float(want["precision"][i])))
            worst = max(worst, abs(report.recall[i] - float(want["recall"][i])))
            worst = max(worst, abs(report.f1[i] - float(want["f1"][i])))
        for name in (
            "accuracy",
            "macro_precision",
            "macro_recall",
            "macro_f1",
            "weighted_precision",
            "weighted_recall",
            "weighted_f1",
        ):
            worst = max(worst, abs(getattr(report, name) - float(want[name])))

        rng = np.random.default_rng(5)
        identity_gap = 0.0
        for _ in range(100):
            n = int(rng.integers(2, 8))
            m = rng.integers(0, 25, size=(n, n))
            m[rng.integers(0, n), rng.integers(0, n)] += 1  # never all-zero
            r = report_from_confusion(
                ConfusionMatrix(counts=m, classes=tuple(f"c{i}" for i in range(n)))
            )
            identity_gap = max(identity_gap, abs(r.weighted_recall - r.accuracy))

        out["ok"] = worst <= 1e-12 and identity_gap <= 1e-12
        out["detail"] = (
            f"fixed-matrix max deviation {worst:.1e} (tol 1e-12); "
            f"weighted recall vs accuracy gap {identity_gap:.1e} over 100 random sets"
        )


def test_sign_plan_fidelity():
    with criterion("sign plan fidelity") as out:
        dictionary = load_dictionary(str(packaged_data_dir() / "dictionary.json"))

        one_gif = all(
            translate(" ".join(tokens), dictionary).items
            == (GifItem(asset_id, " ".join(tokens)),)
            for tokens, asset_id in dictionary.phrases.items()
        )

        spelled = translate("zq1 cab", dictionary).items
        spelling_ok = [getattr(i, "character", None) for i in spelled] == list("ZQ1CAB") and all(
            i.duration == 1.0 for i in spelled
        )

        vocab = sorted({w for t in dictionary.phrases for w in t})
        extras = ["cab", "xyz", "maybe", "r2", "goodbye", "stop"]
        rng = np.random.default_rng(8)
        mismatches = 0
        n_fixtures = 0
        for length in range(0, 9):
            for _ in range(60):
                words = [
                    str(rng.choice(vocab if rng.random() < 0.7 else extras))
                    for _ in range(length)
                ]
                plan = translate(" ".join(words), dictionary)
                if plan_cost(plan) != dp_plan_cost(words, dictionary.phrases, dictionary.stop_keywords):
                    mismatches += 1
                n_fixtures += 1

        out["ok"] = len(dictionary) == 100 and one_gif and spelling_ok and mismatches == 0
        out["detail"] = (
            f"{len(dictionary)} phrases -> one gif each: {one_gif}; letters at 1.0s: "
            f"{spelling_ok}; greedy == segmentation oracle on {n_fixtures} fixtures "
            f"of <= 8 tokens ({mismatches} mismatches)"
        )


def test_content_pipeline():
    with criterion("content pipeline") as out:
        store = NewsStore(str(packaged_data_dir() / "news"))
        languages = ("english", "hindi", "marathi")

        all_articles = [
            a for lang in languages for arts in store.topics(lang).values() for a in arts
        ]
        summaries_in_bounds = True
        duration_err = 0.0
        fetch_ok = True
        for lang in languages:
            for topic, articles in store.topics(lang).items():
                bundle = build_bundle(store, ContentRequest(lang, topic))
                fetched_dates = [e.article.date_key for e in bundle.entries]
                newest = sorted((a.date_key for a in articles), reverse=True)[: len(fetched_dates)]
                fetch_ok &= len(bundle.entries) <= 3 and fetched_dates == newest
                for entry in bundle.entries:
                    n = word_count(entry.summary)
                    summaries_in_bounds &= 20 <= n <= 60
                    for seg in entry.speech_plan.segments:
                        duration_err = max(
                            duration_err,
                            abs(seg.estimated_duration - seg.word_count * 60.0 / 150.0),
                        )

        hindi = build_bundle(store, ContentRequest("hindi", "politics"))
        raw = hindi.to_json()
        round_tripped = json.loads(raw)
        titles = [e["article"]["title"] for e in round_tripped["items"]]
        devanagari_ok = titles == [e.article.title for e in hindi.entries] and any(
            "ऀ" <= ch <= "ॿ" for ch in raw
        )

        out["ok"] = (
            len(all_articles) == 20
            and fetch_ok
            and summaries_in_bounds
            and duration_err <= 1e-9
            and devanagari_ok
        )
        out["detail"] = (
            f"{len(all_articles)} fixture articles; fetches capped at 3 newest: {fetch_ok}; "
            f"all summaries in [20, 60] words: {summaries_in_bounds}; max duration error "
            f"{duration_err:.1e}s (tol 1e-9); devanagari JSON intact: {devanagari_ok}"
        )


def test_persistence(trained, tmp_path):
    with criterion("persistence") as out:
        model, _, _ = trained
        rng = np.random.default_rng(17)
        frames = []
        for i in range(100):
            left = Hand(rng.uniform(0, 1, (21, 3))) if i % 3 != 0 else None
            right = Hand(rng.uniform(0, 1, (21, 3))) if (i % 3 == 0 or i % 5 == 0) else None
            if left is None and right is None:
                left = Hand(rng.uniform(0, 1, (21, 3)))
            frames.append(LandmarkFrame(left=left, right=right))
        features = extract_features_batch(frames)

        path = tmp_path / "model.snvd"
        save_model(model, path)
        reloaded = load_model(path)
        bitwise = bool(
            np.array_equal(predict_proba(model, features), predict_proba(reloaded, features))
        )

        raw = bytearray(path.read_bytes())
        corruptions = {
            "bad magic": (BadMagicError, raw[:4].replace(raw[:1], b"Z") + raw[4:]),
            "future version": (UnsupportedVersionError, raw[:4] + struct.pack("<I", 99) + raw[8:]),
            "flipped bit": (ChecksumError, raw[: len(raw) // 2] + bytes([raw[len(raw) // 2] ^ 1]) + raw[len(raw) // 2 + 1 :]),
            "truncated": (ChecksumError, raw[: len(raw) - 64]),
            "garbage": (ContainerError, bytes(rng.integers(0, 256, 512, dtype=np.uint8))),
        }
        typed = []
        for name, (want, blob) in corruptions.items():
            bad = tmp_path / "corrupt.snvd"
            bad.write_bytes(bytes(blob))
            try:
                load_model(bad)
                typed.append(f"{name}: no error")
            except want:
                pass
            except ContainerError as exc:
                typed.append(f"{name}: {type(exc).__name__}")
            except Exception as exc:  # anything untyped is a criterion failure
                typed.append(f"{name}: crashed with {type(exc).__name__}")

        out["ok"] = bitwise and not typed
        out["detail"] = (
            f"reload bitwise-identical on 100 random frames: {bitwise}; "
            f"{len(corruptions)} corruption modes -> expected typed errors"
            + (f"; unexpected: {typed}" if typed else "")
        )
