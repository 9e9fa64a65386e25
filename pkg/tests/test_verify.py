import json

import pytest
from hypothesis import given, strategies as st

from bimeyniel import verify_theorem
from bimeyniel.verify import (
    THEOREMS,
    ExceptionClass,
    VerificationReport,
    digraph_at,
    index_of,
    merge_bound_report,
    oracle_report,
    universe_size,
)


def test_universe_size():
    assert universe_size(3) == 4 ** 9 == 262_144


def test_digraph_at_digits():
    assert digraph_at(2, 0).arc_count == 0
    assert set(map(tuple, map(lambda e: tuple(map(str, e)), digraph_at(2, 1).arcs()))) == {("x1", "y1")}
    assert set(tuple(map(str, e)) for e in digraph_at(2, 2).arcs()) == {("y1", "x1")}
    assert set(tuple(map(str, e)) for e in digraph_at(2, 3 << 2).arcs()) == {("x1", "y2"), ("y2", "x1")}
    assert digraph_at(2, universe_size(2) - 1).arc_count == 8


@given(st.integers(1, 3).flatmap(lambda a: st.tuples(st.just(a), st.integers(0, universe_size(a) - 1))))
def test_index_round_trip(ak):
    a, k = ak
    assert index_of(digraph_at(a, k)) == k


def test_digraph_at_range():
    with pytest.raises(IndexError):
        digraph_at(2, universe_size(2))


def test_exhaustive_a2_partition():
    rep = verify_theorem("1.3b", 2)
    rep.check_balance()
    assert rep.universe == 256 and rep.ok


def test_min_a_enforced():
    with pytest.raises(ValueError):
        verify_theorem("3.1", 2)
    with pytest.raises(ValueError):
        verify_theorem("nope", 3)
    with pytest.raises(ValueError):
        verify_theorem("3.1", 4)  # exhaustive too large


def test_sampled_reproducible():
    r1 = verify_theorem("3.1", 4, sample=300, seed=7)
    r2 = verify_theorem("3.1", 4, sample=300, seed=7, workers=2)
    assert r1.to_json() == r2.to_json()
    assert r1.mode == "sampled" and r1.sample_size == 300
    r1.check_balance()
    r3 = verify_theorem("3.1", 4, sample=300, seed=8)
    assert json.loads(r3.to_json())["seed"] == 8


def test_report_json_excludes_time_by_default():
    rep = verify_theorem("1.3a", 2)
    assert "wall_time" not in rep.to_dict()
    assert "wall_time" in rep.to_dict(timing=True)


def test_merge_is_order_independent():
    a = 3
    idx = [95741, 95743, 64953]
    parts = [VerificationReport("3.1", a, "exhaustive", 1, filtered=1) for _ in idx]
    fams = ["H1", "H1", "H2"]
    for p, k, f in zip(parts, idx, fams):
        p._add_exception(f, k)
    fwd = parts[0].merge(parts[1]).merge(parts[2])
    rev = parts[2].merge(parts[1]).merge(parts[0])
    assert fwd.to_json() == rev.to_json()
    assert fwd.exceptions["H1"] == [ExceptionClass(95741, 1), ExceptionClass(95743, 1)]


def test_merge_rejects_mismatch():
    with pytest.raises(ValueError):
        VerificationReport("3.1", 3, "exhaustive", 1).merge(VerificationReport("3.2", 3, "exhaustive", 1))


def test_merge_bound_small():
    rep = merge_bound_report(2)
    assert rep.ok and rep.digraphs == 256
    assert rep.unmergeable_pairs <= rep.cycle_pairs


def test_oracle_small():
    rep = oracle_report(2)
    assert rep.ok and rep.digraphs == 256


def test_theorem_labels():
    assert set(THEOREMS) == {"1.3a", "1.3b", "2.4", "3.1", "3.2", "4-ham", "4-pan"}


def test_partition_soundness():
    # exception classes must merge identically however the universe is split
    whole = verify_theorem("4-pan", 3, chunks=1).to_json()
    for chunks in (5, 13):
        assert verify_theorem("4-pan", 3, chunks=chunks).to_json() == whole
