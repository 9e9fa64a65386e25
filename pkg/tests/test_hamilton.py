from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given

from bimeyniel import (
    BudgetExhausted,
    Cycle,
    build,
    complete_bipartite,
    construct_hamiltonian,
    crossing_arcs,
    cycle_factor,
    even_cycle_lengths,
    find_hamiltonian_cycle,
    find_hamiltonian_path,
    near_complete_ham_path,
    reduce_factor,
    try_merge,
    x,
    y,
)
from bimeyniel.hamilton import (
    Hamiltonian,
    NoFactor,
    StuckFactor,
    has_cycle_of_length,
    is_bipancyclic,
    merge_attempt,
    simple_cycles,
    validate_path,
)

from conftest import dense_digraphs, digraphs


def cyc(D, *names):
    return Cycle.from_ids(D, [D.vid(n) for n in names])


def brute_ham_cycle(D):
    n = D.order
    for p in permutations(range(1, n)):
        seq = (0,) + p
        if all(D.has_arc_id(seq[k], seq[(k + 1) % n]) for k in range(n)):
            return True
    return False


def brute_ham_path(D):
    n = D.order
    return any(all(D.has_arc_id(p[k], p[k + 1]) for k in range(n - 1)) for p in permutations(range(n)))


def test_h2_not_hamiltonian_but_traceable(h2):
    assert find_hamiltonian_cycle(h2) is None
    p = find_hamiltonian_path(h2)
    validate_path(h2, p)
    validate_path(h2, ["x1", "y1", "x3", "y3", "x2", "y2"])
    assert even_cycle_lengths(h2) == {2, 4}


def test_h3_not_traceable(h3_4):
    assert find_hamiltonian_path(h3_4) is None


def test_validate_path_rejects(h2):
    with pytest.raises(ValueError):
        validate_path(h2, ["x1", "y3"])
    with pytest.raises(ValueError):
        validate_path(h2, ["x1", "y1", "x3"])


def test_complete_is_bipancyclic():
    K = complete_bipartite(3)
    assert even_cycle_lengths(K) == {2, 4, 6}
    assert is_bipancyclic(K)


@given(digraphs(max_a=3))
def test_cycle_and_path_against_brute_force(D):
    c = find_hamiltonian_cycle(D)
    assert (c is not None) == brute_ham_cycle(D)
    if c is not None:
        c.validate(D)
        assert len(c) == D.order
    p = find_hamiltonian_path(D)
    assert (p is not None) == brute_ham_path(D)
    if p is not None:
        validate_path(D, p)


@given(digraphs(max_a=3))
def test_even_cycle_lengths_against_backtracking(D):
    got = even_cycle_lengths(D)
    want = {L for L in range(2, D.order + 1, 2) if has_cycle_of_length(D, L)}
    assert got == want
    assert want == {len(c) for c in simple_cycles(D)}


# -- merging ---------------------------------------------------------------------


def test_two_cycles_merge():
    K = complete_bipartite(2)
    c1, c2 = cyc(K, "x1", "y1"), cyc(K, "x2", "y2")
    assert str(try_merge(K, c1, c2)) == "x1y2x2y1x1"
    assert crossing_arcs(K, c1, c2) == 4


def test_h2_pair_does_not_merge(h2):
    c1, c2 = cyc(h2, "x1", "y2", "x2", "y3"), cyc(h2, "x3", "y1")
    m = merge_attempt(h2, c1, c2)
    assert m.result is None
    assert m.crossing_arc_count == 4 and m.bound == Fraction(4)


def test_merge_rejects_overlap(h2):
    with pytest.raises(ValueError):
        crossing_arcs(h2, cyc(h2, "x1", "y1"), cyc(h2, "x1", "y2", "x2", "y3"))


@given(dense_digraphs(max_a=3))
def test_merge_result_is_a_cycle_on_the_union(D):
    cycles = list(simple_cycles(D))
    for i, c1 in enumerate(cycles):
        for c2 in cycles[i + 1 :]:
            if set(c1) & set(c2):
                continue
            C1, C2 = Cycle.from_ids(D, c1), Cycle.from_ids(D, c2)
            m = merge_attempt(D, C1, C2)
            if m.result is None:
                assert m.crossing_arc_count <= m.bound
            else:
                m.result.validate(D)
                assert set(m.result.vertices) == set(C1.vertices) | set(C2.vertices)


def test_reduce_factor_on_complete():
    K = complete_bipartite(3)
    f = cycle_factor(K)
    assert len(f) == 3
    t = reduce_factor(K, f)
    assert isinstance(t.outcome, Hamiltonian) and len(t.merge_steps) == 2
    t.outcome.cycle.validate(K)


def test_reduce_factor_stuck_on_h2(h2):
    t = reduce_factor(h2, cycle_factor(h2))
    assert isinstance(t.outcome, StuckFactor) and t.merge_steps == ()


def test_construct_traces(h2, h1_3_minimal):
    t = construct_hamiltonian(h2)
    assert not t.hamiltonian and t.used_fallback
    assert t.lines()[-1] == "used fallback: yes"
    t = construct_hamiltonian(h1_3_minimal)
    assert isinstance(t.outcome, NoFactor)
    t = construct_hamiltonian(complete_bipartite(4))
    assert t.hamiltonian and not t.used_fallback


@given(digraphs(max_a=3))
def test_construct_agrees_with_search(D):
    t = construct_hamiltonian(D)
    assert t.hamiltonian == (find_hamiltonian_cycle(D) is not None)
    if t.hamiltonian:
        t.outcome.cycle.validate(D)
        assert len(t.outcome.cycle) == D.order


def test_budget_exhaustion():
    D = build(4, [("x1", "y1"), ("y1", "x2")])
    with pytest.raises(BudgetExhausted):
        find_hamiltonian_path(complete_bipartite(5).with_arcs(remove=[("y5", "x1")]), budget=1)
    assert find_hamiltonian_cycle(D, budget=10_000) is None


# -- near-complete paths ------------------------------------------------------------


def test_near_complete_complete():
    p = near_complete_ham_path(complete_bipartite(3), "x1", "y3")
    assert "".join(map(str, p)) == "x1y1x2y2x3y3"


@pytest.mark.parametrize("a", [3, 4])
def test_near_complete_all_endpoints_all_missing_arcs(a):
    K = complete_bipartite(a)
    for u, v in K.arcs():
        D = K.with_arcs(remove=[(u, v)])
        for i in range(1, a + 1):
            for j in range(1, a + 1):
                p = near_complete_ham_path(D, x(i), y(j))
                validate_path(D, p)
                assert p[0] == x(i) and p[-1] == y(j)


def test_near_complete_small_rejected():
    D = complete_bipartite(2).with_arcs(remove=[("x1", "y1")])
    with pytest.raises(ValueError):
        near_complete_ham_path(D, "x1", "y2")
