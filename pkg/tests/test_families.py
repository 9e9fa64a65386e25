import random

import pytest

from bimeyniel import (
    ClassificationKind,
    H1Spec,
    build,
    classify_m_minus_one,
    complete_bipartite,
    condition_witness,
    degree_profile,
    directed_cycle,
    generate_h1,
    generate_h3,
    is_isomorphic,
    is_strong,
    recognize_extremal,
)
from bimeyniel.digraph import Side, Vertex, swap_sides
from bimeyniel.families import FamilyError, recognize_h1


def relabel(D, px, py):
    """Permute V1 indices by px and V2 indices by py (0-based lists)."""
    def f(v):
        return Vertex(v.side, (px if v.side is Side.ONE else py)[v.index])

    return build(D.a, [(f(u), f(v)) for u, v in D.arcs()])


def shuffled(D, seed):
    rng = random.Random(seed)
    px, py = list(range(D.a)), list(range(D.a))
    rng.shuffle(px)
    rng.shuffle(py)
    return relabel(D, px, py)


# -- generators -------------------------------------------------------------------


def test_h1_minimal_a3():
    D = generate_h1(H1Spec.minimal(3))
    assert D.arc_count == 13
    assert is_strong(D)
    assert condition_witness(D).min_sum == 8


def test_h1_full_a5_degrees():
    D = generate_h1(H1Spec.full(5))
    p = degree_profile(D)
    # S = x1..x3, R = x4..x5, U = y1..y2, W = y3..y5
    for v in ("x4", "x5", "y1", "y2"):
        assert p.of(D, v)[2] == 10
    for v in ("x1", "x2", "x3", "y3", "y4", "y5"):
        assert p.of(D, v)[2] == 7


@pytest.mark.parametrize("a, n_min, n_full", [(3, 13, 14), (5, 35, 41), (7, 70, 82)])
def test_h1_arc_counts(a, n_min, n_full):
    assert generate_h1(H1Spec.minimal(a)).arc_count == n_min
    assert generate_h1(H1Spec.full(a)).arc_count == n_full


@pytest.mark.parametrize(
    "spec",
    [
        H1Spec(4, frozenset({(0, 0)})),
        H1Spec(3, frozenset()),
        H1Spec(5, frozenset({(0, 0)})),  # r2, u2 fall below the (a-3)/2 floor
        H1Spec(3, frozenset({(0, 1)})),
    ],
)
def test_h1_invalid_specs(spec):
    with pytest.raises(FamilyError):
        generate_h1(spec)


def test_h1_even_a_rejected():
    with pytest.raises(FamilyError):
        H1Spec.minimal(4).validate()


def test_h3_errors():
    for a in (3, 5, 2):
        with pytest.raises(FamilyError):
            generate_h3(a)


def test_h2_arcs(h2):
    for arc in ["x1 y2", "y2 x3", "x3 y3", "y3 x1"]:
        u, v = arc.split()
        assert h2.has_arc(u, v) and not h2.has_arc(v, u)
    for u, v in [("x2", "y2"), ("x2", "y3"), ("y1", "x1"), ("y1", "x3")]:
        assert h2.has_arc(u, v) and h2.has_arc(v, u)


# -- isomorphism ----------------------------------------------------------------------


def check_iso(D1, D2, phi):
    assert len(set(phi.values())) == D1.order
    assert {(phi[u], phi[v]) for u, v in D1.arcs()} == set(D2.arcs())


def test_iso_relabelled_h2(h2):
    E = relabel(h2, [2, 0, 1], [0, 1, 2])
    phi = is_isomorphic(h2, E)
    check_iso(h2, E, phi)


def test_iso_negative(h2):
    assert is_isomorphic(h2, directed_cycle(3)) is None
    D = generate_h1(H1Spec.minimal(3))
    E = generate_h1(H1Spec(3, frozenset({(0, 0)}), frozenset({(0, 0)})))
    assert is_isomorphic(D, E) is None
    assert is_isomorphic(D, generate_h1(H1Spec.minimal(5))) is None


def test_iso_across_sides(h1_3_minimal):
    E = swap_sides(h1_3_minimal)
    phi = is_isomorphic(E, h1_3_minimal)
    check_iso(E, h1_3_minimal, phi)
    assert any(u.side is not v.side for u, v in phi.items())


@pytest.mark.parametrize("seed", range(5))
def test_iso_random_relabelling(seed):
    rng = random.Random(seed)
    a = 4
    arcs = [(u, v) for u, v in complete_bipartite(a).arcs() if rng.random() < 0.5]
    D = build(a, arcs)
    E = shuffled(D, seed)
    check_iso(D, E, is_isomorphic(D, E))


# -- recognition -------------------------------------------------------------------


@pytest.mark.parametrize("a", [3, 5, 7])
@pytest.mark.parametrize("pattern", ["minimal", "full"])
def test_h1_round_trip(a, pattern):
    spec = H1Spec.preset(a, pattern)
    D = generate_h1(spec)
    rec = recognize_extremal(D)
    assert rec.family == "H1"
    w = rec.witness
    assert not w.swapped and w.spec == spec
    assert len(w.S) == (a + 1) // 2 and len(w.U) == (a - 1) // 2
    for seed in range(3):
        assert recognize_extremal(shuffled(D, seed)).family == "H1"
    rec = recognize_h1(swap_sides(D))
    assert rec is not None and rec.swapped


def test_h2_round_trip(h2):
    for seed in range(5):
        rec = recognize_extremal(shuffled(h2, seed))
        assert rec.family == "H2"
    assert recognize_extremal(swap_sides(h2)).family == "H2"


def test_non_extremal():
    assert recognize_extremal(complete_bipartite(3)) is None
    assert recognize_extremal(complete_bipartite(4)) is None
    assert recognize_extremal(generate_h3(4)) is None
    extra = generate_h1(H1Spec.minimal(3)).with_arcs(add=[("x1", "y3")])  # s -> w is forbidden
    assert recognize_h1(extra) is None


# -- classification ---------------------------------------------------------------


def test_classify(h2, h3_4):
    assert classify_m_minus_one(h2).kind is ClassificationKind.EXTREMAL_H2
    c = classify_m_minus_one(complete_bipartite(5))
    assert c.kind is ClassificationKind.HAMILTONIAN and len(c.cycle) == 10
    c = classify_m_minus_one(h3_4)
    assert c.kind is ClassificationKind.HYPOTHESIS_FAILS and "10 < 11" in c.reason
    c = classify_m_minus_one(generate_h1(H1Spec.full(5)))
    assert c.kind is ClassificationKind.EXTREMAL_H1
    assert classify_m_minus_one(build(3, [("x1", "y1"), ("y1", "x1")])).reason == "not strong"
    assert classify_m_minus_one(complete_bipartite(2)).kind is ClassificationKind.HYPOTHESIS_FAILS
    assert "isomorphic to H2" in classify_m_minus_one(h2).describe()
