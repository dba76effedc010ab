"""Confusion counts, accuracy, ROC construction, AUC, and pipeline reports.

AUC is cross-checked against the Mann-Whitney pair-count statistic and the
ROC sweep against a literal one-threshold-at-a-time reconstruction.
"""

import math

import numpy as np
import pytest

from roughcut import (
    ConfusionMatrix,
    DecisionTable,
    CutSet,
    RocCurve,
    EvaluationReport,
    accuracy,
    approximate,
    apply_cuts,
    auc,
    confusion,
    evaluate_pipeline,
    partition,
    report_to_json,
    roc,
    roc_to_csv,
)


def pair_count_auc(scores, actuals):
    """P(random positive outranks random negative), ties scoring half."""
    pos = [s for s, a in zip(scores, actuals) if a == 1]
    neg = [s for s, a in zip(scores, actuals) if a == 0]
    wins = 0.0
    for p in pos:
        for q in neg:
            if p > q:
                wins += 1.0
            elif p == q:
                wins += 0.5
    return wins / (len(pos) * len(neg))


def sweep_roc_points(scores, actuals):
    """Rebuild the ROC by classifying at every distinct score threshold."""
    n_pos = sum(1 for a in actuals if a == 1)
    n_neg = len(actuals) - n_pos
    points = [(0.0, 0.0)]
    for t in sorted(set(scores), reverse=True):
        tp = sum(1 for s, a in zip(scores, actuals) if s >= t and a == 1)
        fp = sum(1 for s, a in zip(scores, actuals) if s >= t and a == 0)
        points.append((fp / n_neg, tp / n_pos))
    return points


def random_scored_instance(rng, n_max=50, tie_prone=False):
    n = int(rng.integers(2, n_max + 1))
    actuals = rng.integers(0, 2, size=n)
    while actuals.sum() in (0, n):
        actuals = rng.integers(0, 2, size=n)
    if tie_prone:
        scores = rng.integers(0, 4, size=n) / 4.0
    else:
        scores = rng.random(n)
    return scores, actuals


def test_confusion_direct_count():
    m = confusion([1, 0, 1, 0], [1, 0, 0, 1])
    assert (m.tp, m.tn, m.fp, m.fn) == (1, 1, 1, 1)
    assert m.total == 4


def test_confusion_perfect_agreement():
    m = confusion([1, 0, 1], [1, 0, 1])
    assert m.fp == 0
    assert m.fn == 0


def test_confusion_matches_independent_tally():
    rng = np.random.default_rng(401)
    preds = rng.integers(0, 2, size=600)
    actuals = rng.integers(0, 2, size=600)
    m = confusion(preds, actuals)
    counts = {"tp": 0, "tn": 0, "fp": 0, "fn": 0}
    for p, a in zip(preds, actuals):
        if p == 1 and a == 1:
            counts["tp"] += 1
        elif p == 0 and a == 0:
            counts["tn"] += 1
        elif p == 1:
            counts["fp"] += 1
        else:
            counts["fn"] += 1
    assert (m.tp, m.tn, m.fp, m.fn) == (counts["tp"], counts["tn"], counts["fp"], counts["fn"])


def test_confusion_validation():
    with pytest.raises(ValueError):
        confusion([1, 2], [0, 1])
    with pytest.raises(ValueError):
        confusion([], [])
    with pytest.raises(ValueError):
        confusion([1], [0, 1])
    with pytest.raises(ValueError):
        ConfusionMatrix(tp=-1, tn=0, fp=0, fn=0)


def test_accuracy_spot_values():
    assert accuracy(ConfusionMatrix(tp=249, tn=274, fp=39, fn=38)) == pytest.approx(
        523 / 600, abs=1e-12
    )
    assert accuracy(ConfusionMatrix(tp=1, tn=1, fp=0, fn=0)) == 1.0
    assert accuracy(ConfusionMatrix(tp=0, tn=0, fp=3, fn=7)) == 0.0


def test_roc_perfect_separation():
    curve = roc([0.9, 0.1], [1, 0])
    assert curve.points == ((0.0, 0.0), (0.0, 1.0), (1.0, 1.0))
    assert curve.thresholds == (math.inf, 0.9, 0.1)
    assert auc(curve) == 1.0


def test_roc_constant_scores_is_diagonal():
    curve = roc([0.5, 0.5, 0.5, 0.5], [1, 0, 1, 0])
    assert curve.points == ((0.0, 0.0), (1.0, 1.0))
    assert auc(curve) == pytest.approx(0.5)


def test_roc_matches_threshold_sweep():
    rng = np.random.default_rng(402)
    for tie_prone in (False, True):
        for _ in range(15):
            scores, actuals = random_scored_instance(rng, n_max=20, tie_prone=tie_prone)
            curve = roc(scores, actuals)
            expected = sweep_roc_points(scores.tolist(), actuals.tolist())
            assert len(curve.points) == len(expected)
            for got, want in zip(curve.points, expected):
                assert got == pytest.approx(want)


def test_auc_matches_pair_count():
    rng = np.random.default_rng(403)
    for tie_prone in (False, True):
        for _ in range(15):
            scores, actuals = random_scored_instance(rng, tie_prone=tie_prone)
            assert auc(roc(scores, actuals)) == pytest.approx(
                pair_count_auc(scores.tolist(), actuals.tolist()), abs=1e-9
            )


def test_auc_invariant_under_monotone_transforms():
    rng = np.random.default_rng(404)
    scores, actuals = random_scored_instance(rng)
    base = auc(roc(scores, actuals))
    assert auc(roc(3.0 * scores + 2.0, actuals)) == pytest.approx(base, abs=1e-12)
    assert auc(roc(np.exp(scores), actuals)) == pytest.approx(base, abs=1e-12)


def test_auc_label_swap_complements():
    rng = np.random.default_rng(405)
    scores, actuals = random_scored_instance(rng)  # continuous, ties improbable
    forward = auc(roc(scores, actuals))
    swapped = auc(roc(scores, 1 - actuals))
    assert forward + swapped == pytest.approx(1.0, abs=1e-12)


def test_roc_validation():
    with pytest.raises(ValueError, match="both classes"):
        roc([0.1, 0.2], [1, 1])
    with pytest.raises(ValueError):
        roc([0.1], [1, 0])


def test_roccurve_shape_validation():
    with pytest.raises(ValueError, match="from \\(0,0\\) to \\(1,1\\)"):
        RocCurve(((0.0, 0.0), (0.5, 0.5)), (math.inf, 1.0))
    with pytest.raises(ValueError, match="non-decreasing"):
        RocCurve(((0.0, 0.0), (0.7, 0.5), (0.2, 0.8), (1.0, 1.0)), (math.inf, 1.0, 0.5, 0.1))
    with pytest.raises(ValueError, match="one threshold"):
        RocCurve(((0.0, 0.0), (1.0, 1.0)), (math.inf,))


def test_evaluation_report_validation():
    m = ConfusionMatrix(tp=1, tn=1, fp=0, fn=0)
    with pytest.raises(ValueError):
        EvaluationReport(m, accuracy=1.5, auc=0.5, num_rules=1,
                         num_certain_rules=1, train_time_s=0.0, test_time_s=0.0)


def separable_table():
    rng = np.random.default_rng(406)
    low = rng.uniform(0.0, 1.0, size=30)
    high = rng.uniform(5.0, 6.0, size=30)
    values = np.concatenate([low, high]).reshape(-1, 1)
    decisions = np.array([0] * 30 + [1] * 30)
    return DecisionTable(("g",), values, decisions)


def test_evaluate_pipeline_conserves_test_count():
    table = separable_table()
    cuts = CutSet(((3.0,),))
    report = evaluate_pipeline(table, table, cuts)
    assert report.matrix.total == table.n_objects


def test_evaluate_pipeline_crisp_table_is_perfect():
    table = separable_table()
    cuts = CutSet(((3.0,),))
    report = evaluate_pipeline(table, table, cuts)
    assert report.accuracy == 1.0
    assert report.num_certain_rules == report.num_rules
    # crispness, independently: the boundary region is empty
    binned = apply_cuts(table, cuts)
    part = partition(binned, [0])
    assert approximate(part, binned.decisions, 1).is_crisp


def test_report_json_fields():
    table = separable_table()
    report = evaluate_pipeline(table, table, CutSet(((3.0,),)))
    payload = report_to_json(report)
    assert payload["confusion"] == {"tp": 30, "tn": 30, "fp": 0, "fn": 0}
    assert payload["accuracy"] == 1.0
    assert payload["auc"] == 1.0
    assert payload["num_rules"] == report.num_rules
    assert payload["num_certain_rules"] == report.num_certain_rules
    assert payload["train_time_s"] >= 0.0
    assert payload["test_time_s"] >= 0.0


def test_roc_to_csv_roundtrips(tmp_path):
    rng = np.random.default_rng(407)
    scores, actuals = random_scored_instance(rng)
    curve = roc(scores, actuals)
    path = tmp_path / "roc.csv"
    roc_to_csv(curve, path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "threshold,fpr,tpr"
    assert len(lines) == len(curve.points) + 1
    first = lines[1].split(",")
    assert math.isinf(float(first[0]))
    last = lines[-1].split(",")
    assert (float(last[1]), float(last[2])) == (1.0, 1.0)
