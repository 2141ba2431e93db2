import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_blob_samples
from reference import exact_report
from sanvaad import (
    ConfusionMatrix,
    NetworkSpec,
    TrainConfig,
    confusion_from_indices,
    evaluate,
    predict,
    report_from_confusion,
    run_ablations,
)

confusions = st.integers(min_value=2, max_value=6).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(min_value=0, max_value=30), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    )
)


def matrix(rows, classes=None):
    classes = classes or tuple(f"c{i}" for i in range(len(rows)))
    return ConfusionMatrix(counts=np.array(rows, dtype=np.int64), classes=classes)


class TestConfusionMatrix:
    def test_shape_validated(self):
        with pytest.raises(ValueError, match="2x2"):
            ConfusionMatrix(counts=np.zeros((3, 3)), classes=("a", "b"))

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            matrix([[1, -1], [0, 2]])

    def test_total(self):
        assert matrix([[5, 1], [2, 7]]).total == 15

    def test_from_indices_matches_naive_loop(self):
        rng = np.random.default_rng(0)
        true_idx = rng.integers(0, 4, 200)
        pred_idx = rng.integers(0, 4, 200)
        cm = confusion_from_indices(true_idx, pred_idx, ["w", "x", "y", "z"])
        naive = np.zeros((4, 4), dtype=np.int64)
        for t, p in zip(true_idx, pred_idx):
            naive[t, p] += 1
        np.testing.assert_array_equal(cm.counts, naive)

    def test_repeated_pairs_accumulate(self):
        # np.add.at is unbuffered; duplicates must all land
        cm = confusion_from_indices([0, 0, 0], [1, 1, 1], ["a", "b"])
        assert cm.counts[0, 1] == 3

    def test_save_csv(self, tmp_path):
        path = tmp_path / "cm.csv"
        matrix([[5, 1], [2, 7]], classes=("A", "B")).save_csv(path)
        lines = path.read_text().strip().split("\n")
        assert lines == ["true\\pred,A,B", "A,5,1", "B,2,7"]


class TestReport:
    def test_three_class_worked_example(self):
        counts = [[5, 1, 0], [0, 4, 2], [1, 0, 7]]
        report = report_from_confusion(matrix(counts))
        want = exact_report(counts)
        for i in range(3):
            assert report.precision[i] == pytest.approx(float(want["precision"][i]), rel=1e-12)
            assert report.recall[i] == pytest.approx(float(want["recall"][i]), rel=1e-12)
            assert report.f1[i] == pytest.approx(float(want["f1"][i]), rel=1e-12)
            assert report.support[i] == want["support"][i]
        assert report.accuracy == pytest.approx(float(want["accuracy"]), rel=1e-12)
        assert report.macro_f1 == pytest.approx(float(want["macro_f1"]), rel=1e-12)
        assert report.weighted_precision == pytest.approx(float(want["weighted_precision"]), rel=1e-12)
        assert report.zero_division_classes == ()

    @given(confusions)
    def test_matches_fraction_oracle(self, counts):
        if sum(map(sum, counts)) == 0:
            with pytest.raises(ValueError):
                report_from_confusion(matrix(counts))
            return
        report = report_from_confusion(matrix(counts))
        want = exact_report(counts)
        np.testing.assert_allclose(report.precision, [float(v) for v in want["precision"]], atol=1e-12)
        np.testing.assert_allclose(report.recall, [float(v) for v in want["recall"]], atol=1e-12)
        np.testing.assert_allclose(report.f1, [float(v) for v in want["f1"]], atol=1e-12)
        assert report.accuracy == pytest.approx(float(want["accuracy"]), abs=1e-12)
        assert report.macro_precision == pytest.approx(float(want["macro_precision"]), abs=1e-12)
        assert report.weighted_f1 == pytest.approx(float(want["weighted_f1"]), abs=1e-12)

    @given(confusions)
    def test_weighted_recall_equals_accuracy(self, counts):
        # sum_i (support_i / total) * (tp_i / support_i) telescopes to accuracy
        if sum(map(sum, counts)) == 0:
            return
        report = report_from_confusion(matrix(counts))
        assert report.weighted_recall == pytest.approx(report.accuracy, abs=1e-12)

    def test_perfect_predictions(self):
        report = report_from_confusion(matrix([[4, 0], [0, 9]]))
        assert report.accuracy == 1.0
        assert report.macro_f1 == 1.0
        assert report.zero_division_classes == ()

    def test_absent_class_is_flagged_not_fatal(self):
        # class b never appears and is never predicted
        report = report_from_confusion(matrix([[5, 0, 0], [0, 0, 0], [0, 0, 3]]))
        assert report.zero_division_classes == ("c1",)
        assert report.recall[1] == 0.0
        assert report.precision[1] == 0.0
        assert report.f1[1] == 0.0

    def test_never_predicted_class_flagged(self):
        # class a has support but the model never predicts it
        report = report_from_confusion(matrix([[0, 4], [0, 6]]))
        assert "c0" in report.zero_division_classes
        assert report.precision[0] == 0.0

    def test_empty_matrix_raises(self):
        with pytest.raises(ValueError, match="empty"):
            report_from_confusion(matrix([[0, 0], [0, 0]]))

    def test_to_dict_and_json(self):
        report = report_from_confusion(matrix([[5, 1], [2, 7]], classes=("A", "B")))
        d = report.to_dict()
        assert d["per_class"]["A"]["support"] == 6
        assert d["total_support"] == 15
        assert d["accuracy"] == pytest.approx(12 / 15)
        assert json.loads(report.to_json()) == d

    def test_to_text_renders_all_classes(self):
        report = report_from_confusion(matrix([[5, 1], [2, 7]], classes=("A", "B")))
        text = report.to_text()
        assert "precision" in text and "macro avg" in text and "weighted avg" in text
        assert text.count("\n") >= 5


class TestEvaluate:
    def test_matches_per_sample_predict(self, tiny_model, tiny_samples):
        subset = tiny_samples[:50]
        cm, report = evaluate(tiny_model, subset)
        naive = np.zeros((35, 35), dtype=np.int64)
        for s in subset:
            t = tiny_model.codec.encode(s.label)
            p = tiny_model.codec.encode(predict(tiny_model, s.frame).label)
            naive[t, p] += 1
        np.testing.assert_array_equal(cm.counts, naive)
        assert cm.total == len(subset)
        assert report.accuracy == naive.trace() / len(subset)

    def test_empty_input_raises(self, tiny_model):
        with pytest.raises(ValueError, match="empty"):
            evaluate(tiny_model, [])


@pytest.fixture(scope="module")
def ablation_report():
    samples = make_blob_samples(5, seed=31)
    spec = NetworkSpec(hidden_width=8, compress_width=8, residual_blocks=1)
    return run_ablations(samples, TrainConfig(epochs=1, batch_size=32, seed=2), spec=spec)


class TestAblations:
    def test_variant_rows(self, ablation_report):
        assert [r.name for r in ablation_report.rows] == ["full", "no-augmentation", "no-residual"]
        assert all(r.seed == 2 for r in ablation_report.rows)
        assert all(r.epochs == 1 for r in ablation_report.rows)

    def test_val_accuracy_without_eval_set(self, ablation_report):
        for row in ablation_report.rows:
            assert row.accuracy == row.val_acc
            assert math.isnan(row.macro_f1)

    def test_renderers(self, ablation_report):
        text = ablation_report.to_text()
        assert "no-augmentation" in text and "no-residual" in text
        d = ablation_report.to_dict()
        assert len(d["rows"]) == 3

    def test_eval_samples_supply_metrics(self):
        samples = make_blob_samples(5, seed=32)
        held_out = make_blob_samples(2, seed=33)
        spec = NetworkSpec(hidden_width=8, compress_width=8, residual_blocks=1)
        report = run_ablations(
            samples, TrainConfig(epochs=1, batch_size=32, seed=0), spec=spec, eval_samples=held_out
        )
        for row in report.rows:
            assert not math.isnan(row.macro_f1)
            assert 0.0 <= row.accuracy <= 1.0
