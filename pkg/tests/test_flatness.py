"""Classifier, height helpers, and conjecture scan tests.

Frozen values here were produced by brute-force height computation
through the polynomial layer, which the classifier never calls.
"""

import json
from collections import Counter

import pytest

from cycloforge.cyclotomic import phi
from cycloforge.errors import NotSortedDistinctOddPrimes, UnknownConjecture
from cycloforge.flatness import (
    HeightCache,
    VerdictStatus,
    _chain4_targets,
    _prime_tuples,
    classify,
    coefficient_set_of,
    height_of,
    report_csv_rows,
    scan,
)
from cycloforge.intpoly import poly_height

# (n, A(n), A(3n)) rows that the p=3 height-drop scan must reproduce
DROP_ROWS_BELOW_20000 = [
    (4745, 3, 2),
    (7469, 4, 3),
    (10439, 6, 4),
    (14231, 4, 3),
    (14443, 5, 4),
    (14707, 4, 3),
    (16027, 5, 4),
    (16523, 6, 4),
    (18791, 5, 4),
    (19129, 6, 5),
    (19499, 8, 7),
]


def test_height_of_golden():
    assert height_of([3, 5, 7]) == 2
    assert height_of([5, 7]) == 1
    assert height_of([5, 13, 73]) == 3
    assert height_of([3, 5, 31, 929]) == 1
    assert height_of([3]) == 1
    assert height_of([]) == 1
    assert height_of([2, 3, 5]) == 1
    assert height_of([3, 5, 7], multiplier=9) == 2
    assert height_of([5, 13, 73], multiplier=8) == 3


def test_height_of_validation():
    with pytest.raises(ValueError):
        height_of([3, 5, 6])
    with pytest.raises(ValueError):
        height_of([3, 3, 5])
    with pytest.raises(ValueError):
        height_of([3, 5], multiplier=7)
    with pytest.raises(ValueError):
        height_of([3, 5], multiplier=0)


def test_coefficient_set_golden():
    assert coefficient_set_of([3, 5, 17]) == {-1, 0, 1, 2}
    assert coefficient_set_of([3, 5, 2]) == {-1, 0, 1}
    assert coefficient_set_of([7]) == {0, 1}
    assert coefficient_set_of([3, 5, 7]) == {-2, -1, 0, 1}
    assert coefficient_set_of([2]) == {0, 1}
    assert coefficient_set_of([]) == {-1, 0, 1}
    # the factor 2 genuinely changes the set for 3*5*17, not just its sign
    assert coefficient_set_of([3, 5, 17, 2]) == {-2, -1, 0, 1}


def test_classify_golden_verdicts():
    cases = [
        ((3, 5, 31), VerdictStatus.Flat, "r±1", None),
        ((3, 5, 17), VerdictStatus.HeightExactly2, "r±2", None),
        ((7, 43, 599), VerdictStatus.Flat, "broadhurst-II", None),
        ((3, 5, 31, 929), VerdictStatus.Flat, "pqrs-chain", None),
        ((5, 7, 71, 4969), VerdictStatus.NotFlat, "pqrs-chain", None),
        ((3, 11, 41), VerdictStatus.BoundOnly, "A<=|w|", 8),
    ]
    for factors, status, citation, bound in cases:
        v = classify(factors)
        assert v.status is status, factors
        assert v.citation == citation, factors
        assert v.bound == bound, factors
    assert "w=3" in classify((7, 43, 599)).detail
    assert classify(()).status is VerdictStatus.Flat
    assert classify((7,)).citation == "order<=2"
    assert classify((11, 13)).status is VerdictStatus.Flat


def test_classify_brute_confirms_spot_cases():
    # the classifier's congruence-only verdicts against real heights
    assert poly_height(phi(7 * 43 * 599)) == 1
    assert poly_height(phi(3 * 11 * 41)) == 1  # BoundOnly but actually flat
    assert poly_height(phi(3 * 5 * 17)) == 2


def test_classify_silent_and_bound_cases():
    # ternary always gets at least the |w| bound, never TheoremSilent
    v3 = classify((3, 5, 7))
    assert v3.status is VerdictStatus.BoundOnly and v3.bound == 7
    v = classify((3, 5, 7, 11))
    assert v.status is VerdictStatus.TheoremSilent
    assert v.citation == "none"
    assert classify((3, 5, 7, 11, 13)).status is VerdictStatus.TheoremSilent


def test_classify_quinary_chain():
    # 29=2*15-1 and 1741=4*435+1 form a chain, and 5=-1 (mod 3): flat
    assert classify((3, 5, 29, 1741)).status is VerdictStatus.Flat
    # extending the chain by 1514671=2*757335+1 forces non-flatness
    v = classify((3, 5, 29, 1741, 1514671))
    assert v.status is VerdictStatus.NotFlat
    assert v.citation == "pqrst-chain"
    # a quinary tail off the chain stays silent
    assert classify((3, 5, 29, 1741, 3089)).status is VerdictStatus.TheoremSilent


def test_classify_validation():
    for bad in [(2, 3, 5), (5, 3), (3, 3, 5), (3, 5, 9), (3, 5, 15)]:
        with pytest.raises(NotSortedDistinctOddPrimes):
            classify(bad)
    with pytest.raises(ValueError):
        classify((3, 5, 7, 11, 13, 17))


def test_regression_609_not_flat():
    # 609 = 3*7*29 has w=8 with every flat-side congruence of the w-based
    # conjecture satisfied except w=+/-1 (mod p), yet height exactly 2
    v = classify((3, 7, 29))
    assert v.status is VerdictStatus.NotFlat
    assert v.citation == "q-p<|w|<q+p"
    assert poly_height(phi(609)) == 2


def test_classifier_agrees_with_brute_below_6000():
    seen = Counter()
    for n, (p, q, r) in _prime_tuples(3, 1, 6000):
        v = classify((p, q, r))
        h = poly_height(phi(n))
        seen[v.status] += 1
        if v.status is VerdictStatus.Flat:
            assert h == 1, (p, q, r)
        elif v.status is VerdictStatus.HeightExactly2:
            assert h == 2, (p, q, r)
        elif v.status is VerdictStatus.NotFlat:
            assert h >= 2, (p, q, r)
        else:
            assert v.status is VerdictStatus.BoundOnly
            assert 1 <= h <= v.bound, (p, q, r)
    assert seen[VerdictStatus.Flat] > 0
    assert seen[VerdictStatus.HeightExactly2] > 0
    assert seen[VerdictStatus.NotFlat] > 0
    assert seen[VerdictStatus.BoundOnly] > 0


def test_drop_scan_finds_4745():
    rep = scan("height_drop_p3", 5000)
    assert rep.conjecture == "height_drop_p3"
    assert rep.range_checked == (1, 5000)
    assert rep.complete
    assert [(r["n"], *r["heights"]) for r in rep.counterexamples] == [(4745, 3, 2)]
    assert rep.counterexamples[0]["factors"] == [5, 13, 73]
    assert rep.counterexamples[0]["p"] == 3
    assert rep.replay_ok()


def test_notflat_scan_empty_below_10000():
    rep = scan("notflat", 10000)
    assert rep.counterexamples == []
    assert rep.complete and rep.replay_ok()


def test_pseudo_scans_empty_below_3000():
    store = HeightCache(None)
    for tag in ("pseudonotflat", "pseudobroadhurst3"):
        rep = scan(tag, 3000, cache=store)
        assert rep.counterexamples == []
    # composite parts really were enumerated, e.g. (3, 5, 49)
    assert (3, 5, 49) in store.heights


def test_quaternary_and_quinary_scans_small():
    assert scan("pqrsallflat", 30000).counterexamples == []
    assert scan("pqrstnotflat", 50000).counterexamples == []


def test_pqrs2_scan_and_chain_domain():
    assert list(_chain4_targets(1, 2_000_000)) == [
        (1481781, (3, 7, 41, 1721)),
        (1483503, (3, 7, 41, 1723)),
    ]
    # classifier agrees these are chain cases decided by q mod p
    v = classify((3, 7, 41, 1721))
    assert v.citation == "pqrs-chain" and v.status is VerdictStatus.NotFlat
    assert scan("pqrs2", 100000).counterexamples == []


def test_np_scans_empty_small():
    store = HeightCache(None)
    rep = scan("np_stays_nonflat", 4000, cache=store)
    assert rep.counterexamples == []
    assert (3, 5, 7) in store.heights
    assert store.heights[(3, 5, 7)]["height"] == 2
    assert store.heights[(3, 5, 7)]["degree"] == 48
    assert scan("np_monotonic_p5", 6000).counterexamples == []


def test_scan_validation():
    with pytest.raises(UnknownConjecture):
        scan("nosuch", 1000)
    with pytest.raises(ValueError):
        scan("notflat", 0)


def test_scan_journal_resume(tmp_path):
    journal = tmp_path / "cache.jsonl"
    rep1 = scan("height_drop_p3", 5000, cache=str(journal), chunk_width=1000)
    lines = journal.read_text().splitlines()
    marker_at = [i for i, line in enumerate(lines) if "chunk_done" in line]
    assert len(marker_at) == 5
    assert any('"hit"' in line for line in lines)

    # replaying against an intact journal does no new work
    before = journal.stat().st_size
    rep2 = scan("height_drop_p3", 5000, cache=str(journal), chunk_width=1000)
    assert journal.stat().st_size == before
    assert rep2.counterexamples == rep1.counterexamples

    # simulate a crash after two completed chunks, then resume
    journal.write_text("\n".join(lines[: marker_at[1] + 1]) + "\n")
    rep3 = scan("height_drop_p3", 5000, cache=str(journal), chunk_width=1000)
    assert rep3.counterexamples == rep1.counterexamples
    assert sum("chunk_done" in line for line in journal.read_text().splitlines()) == 5

    # a different conjecture or bound never reuses those chunk markers
    rep4 = scan("notflat", 5000, cache=str(journal), chunk_width=1000)
    assert rep4.counterexamples == []
    assert journal.stat().st_size > before


def test_scan_workers_pool_matches_inline():
    inline = scan("height_drop_p3", 6000, workers=1)
    pooled = scan("height_drop_p3", 6000, workers=2, chunk_width=1500)
    assert pooled.counterexamples == inline.counterexamples
    assert pooled.complete


def test_report_csv_and_json():
    rep = scan("height_drop_p3", 5000)
    rows = report_csv_rows(rep)
    assert rows[0] == ["id", "n_or_tuple", "height_values", "verdict"]
    assert rows[1][:3] == ["1", "4745->14235", "3;2"]
    blob = json.dumps(rep.to_json())
    back = json.loads(blob)
    assert back["conjecture"] == "height_drop_p3"
    assert back["range_checked"] == [1, 5000]
    assert back["counterexamples"][0]["n"] == 4745
    assert back["complete"] is True
