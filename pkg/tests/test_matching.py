from itertools import combinations, permutations

from hypothesis import given

from bimeyniel import Direction, HallViolator, build, cycle_factor, hall_violator, max_matching
from bimeyniel.digraph import Side
from bimeyniel.hamilton import simple_cycles
from bimeyniel.matching import CycleFactor, has_cycle_factor_bruteforce, out_neighbourhood

from conftest import dense_digraphs, digraphs


def rows(D, direction):
    return D.out12 if direction is Direction.ONE_TO_TWO else D.out21


def brute_matching_size(D, direction):
    """Largest k admitting an injective partial map along arcs."""
    r = rows(D, direction)
    a = D.a
    for k in range(a, 0, -1):
        for src in combinations(range(a), k):
            for dst in permutations(range(a), k):
                if all(r[s] >> t & 1 for s, t in zip(src, dst)):
                    return k
    return 0


def exact_cover_factor(D):
    """Second oracle: some set of disjoint simple cycles covers V exactly."""
    full = (1 << D.order) - 1
    masks = sorted({sum(1 << v for v in c) for c in simple_cycles(D)})

    def cover(rem):
        if rem == 0:
            return True
        low = rem & -rem
        return any(m & low and m & rem == m and cover(rem & ~m) for m in masks)

    return cover(full)


def test_h1_matching_is_deficient(h1_3_minimal):
    m = max_matching(h1_3_minimal, Direction.ONE_TO_TWO)
    assert len(m) == 2
    bad = hall_violator(h1_3_minimal, Direction.ONE_TO_TWO)
    assert bad.side is Side.ONE and len(bad.S) == 2 and len(bad.out_neighbourhood) == 1
    assert len(max_matching(h1_3_minimal, Direction.TWO_TO_ONE)) == 3


def test_h3_violator(h3_4):
    bad = hall_violator(h3_4, Direction.ONE_TO_TWO)
    assert bad.S == (0, 1, 2) and bad.out_neighbourhood == (0,)
    assert str(bad) == "S={x1,x2,x3} N+(S)={y1}"


def test_h2_factor(h2):
    f = cycle_factor(h2)
    assert isinstance(f, CycleFactor)
    f.validate(h2)
    assert str(f) == "x1y2x2y3x1 + x3y1x3"


def test_factor_none_reports_first_direction():
    # V1->V2 fine, V2->V1 deficient
    D = build(2, [("x1", "y1"), ("x2", "y2"), ("y1", "x1"), ("y2", "x1")])
    f = cycle_factor(D)
    assert isinstance(f, HallViolator) and f.side is Side.TWO


@given(digraphs(max_a=3))
def test_matching_size_matches_brute_force(D):
    for d in Direction:
        m = max_matching(D, d)
        assert len(m) == brute_matching_size(D, d)
        r = rows(D, d)
        assert len(set(m.pairs.values())) == len(m)
        assert all(r[s] >> t & 1 for s, t in m.pairs.items())


@given(digraphs(max_a=4))
def test_hall_duality(D):
    for d in Direction:
        bad = hall_violator(D, d)
        size = len(max_matching(D, d))
        if bad is None:
            assert size == D.a
        else:
            assert size < D.a
            assert bad.out_neighbourhood == out_neighbourhood(D, d.source, bad.S)
            assert bad.deficiency == D.a - size  # maximal violator is tight


@given(digraphs(max_a=3))
def test_cycle_factor_matches_oracles(D):
    f = cycle_factor(D)
    want = has_cycle_factor_bruteforce(D)
    assert want == exact_cover_factor(D)
    assert isinstance(f, CycleFactor) == want
    if want:
        f.validate(D)


@given(dense_digraphs(max_a=4))
def test_cycle_factor_dense(D):
    f = cycle_factor(D)
    if isinstance(f, CycleFactor):
        f.validate(D)
        assert exact_cover_factor(D)
    else:
        assert len(out_neighbourhood(D, f.side, f.S)) < len(f.S)
