import pytest

from qcaw.verify import (Grid, REGISTRY, SCOPE_COVERAGE, UnknownLemma,
                         report_markdown, run_suite)

FAST = Grid(ns=(2, 3), ks=(1, 2), word_len=4, samples=5, max_weight=1)


def test_registry_covers_scope():
    for anchor, ids in SCOPE_COVERAGE.items():
        for lemma_id in ids:
            assert lemma_id in REGISTRY, (anchor, lemma_id)
    covered = {i for ids in SCOPE_COVERAGE.values() for i in ids}
    assert covered <= set(REGISTRY)


def test_unknown_lemma_rejected():
    with pytest.raises(UnknownLemma):
        run_suite("no-such-lemma")


def test_filter_selects_cases():
    cases = run_suite("eq-Q1", FAST)
    assert cases and all(c.lemma_id == "eq-Q1" for c in cases)
    assert all(c.status == "pass" for c in cases)


def test_flip_filter_passes():
    cases = run_suite("flip", FAST)
    assert cases and all(c.status == "pass" for c in cases)


def test_d4_counts_detail():
    (case,) = run_suite("d4-counts", FAST)
    assert case.status == "pass"
    assert "16 variables, 50 clusters" in case.detail


def test_report_markdown_and_json():
    cases = run_suite("qc-seam", FAST)
    md = report_markdown(cases)
    assert "qc-seam" in md and "0 failures" in md
    js = cases[0].to_json()
    assert set(js) == {"lemma_id", "params", "status", "detail"}


def test_deterministic_order():
    a = run_suite("lem-mutation-row*", FAST)
    b = run_suite("lem-mutation-row*", FAST)
    assert [(c.lemma_id, c.params, c.status) for c in a] == \
        [(c.lemma_id, c.params, c.status) for c in b]
