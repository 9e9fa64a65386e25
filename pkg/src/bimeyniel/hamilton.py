"""Exact hamiltonicity searches, cycle merging and the factor-merging constructor.

All searches work on integer vertex ids and bitmasks (see
:mod:`bimeyniel.digraph`); public functions convert to ``Vertex`` values at
the boundary.  Exact searches take an optional ``budget`` (number of search
nodes); running out raises :class:`BudgetExhausted`, which is never
confused with a negative answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .digraph import (
    AdjacencyKind,
    BipartiteDigraph,
    Vertex,
    VertexLike,
    adjacency_class,
)
from .matching import Cycle, CycleFactor, HallViolator, cycle_factor

__all__ = [
    "BudgetExhausted",
    "MergeAttempt",
    "Hamiltonian",
    "StuckFactor",
    "NoFactor",
    "ConstructionTrace",
    "find_hamiltonian_cycle",
    "find_hamiltonian_path",
    "is_hamiltonian",
    "is_traceable",
    "validate_path",
    "even_cycle_lengths",
    "has_cycle_of_length",
    "is_bipancyclic",
    "simple_cycles",
    "crossing_arcs",
    "try_merge",
    "merge_attempt",
    "reduce_factor",
    "near_complete_ham_path",
    "construct_hamiltonian",
]


class BudgetExhausted(RuntimeError):
    """An exact search hit its step budget before reaching a verdict."""


def _bits(m: int) -> list[int]:
    out = []
    k = 0
    while m:
        if m & 1:
            out.append(k)
        m >>= 1
        k += 1
    return out


def _popcount(m: int) -> int:
    return bin(m).count("1")


class _Counter:
    __slots__ = ("left",)

    def __init__(self, budget: Optional[int]):
        self.left = budget

    def tick(self) -> None:
        if self.left is not None:
            self.left -= 1
            if self.left < 0:
                raise BudgetExhausted("search budget exhausted")


# -- exact oracles -------------------------------------------------------------


def _ham_cycle_ids(D: BipartiteDigraph, budget: Optional[int] = None) -> Optional[list[int]]:
    n = D.order
    om, im = D.out_masks, D.in_masks
    if not all(om) or not all(im):
        return None
    full = (1 << n) - 1
    dead: set[tuple[int, int]] = set()
    path = [0]
    counter = _Counter(budget)

    def extend(v: int, mask: int) -> bool:
        if mask == full:
            return bool(om[v] & 1)
        if (mask, v) in dead:
            return False
        counter.tick()
        free = full & ~mask
        # every unvisited vertex still needs a way in and a way out
        for w in _bits(free):
            if not im[w] & (free | 1 << v) or not om[w] & (free | 1):
                dead.add((mask, v))
                return False
        cands = _bits(om[v] & free)
        cands.sort(key=lambda w: _popcount(om[w] & free))
        for w in cands:
            path.append(w)
            if extend(w, mask | 1 << w):
                return True
            path.pop()
        dead.add((mask, v))
        return False

    return path if extend(0, 1) else None


def find_hamiltonian_cycle(D: BipartiteDigraph, budget: Optional[int] = None) -> Optional[Cycle]:
    ids = _ham_cycle_ids(D, budget)
    return None if ids is None else Cycle.from_ids(D, ids)


def is_hamiltonian(D: BipartiteDigraph, budget: Optional[int] = None) -> bool:
    return _ham_cycle_ids(D, budget) is not None


def _ham_path_ids(D: BipartiteDigraph, budget: Optional[int] = None) -> Optional[list[int]]:
    n = D.order
    om = D.out_masks
    full = (1 << n) - 1
    # completing a path from (mask, end) does not depend on where it started
    dead: set[tuple[int, int]] = set()
    counter = _Counter(budget)
    path: list[int] = []

    def extend(v: int, mask: int) -> bool:
        if mask == full:
            return True
        if (mask, v) in dead:
            return False
        counter.tick()
        free = full & ~mask
        cands = _bits(om[v] & free)
        cands.sort(key=lambda w: _popcount(om[w] & free))
        for w in cands:
            path.append(w)
            if extend(w, mask | 1 << w):
                return True
            path.pop()
        dead.add((mask, v))
        return False

    starts = sorted(range(n), key=lambda v: _popcount(D.in_masks[v]))
    for s in starts:
        path[:] = [s]
        if extend(s, 1 << s):
            return path
    return None


def find_hamiltonian_path(
    D: BipartiteDigraph, budget: Optional[int] = None
) -> Optional[tuple[Vertex, ...]]:
    ids = _ham_path_ids(D, budget)
    return None if ids is None else tuple(D.vertex(v) for v in ids)


def is_traceable(D: BipartiteDigraph, budget: Optional[int] = None) -> bool:
    return _ham_path_ids(D, budget) is not None


def validate_path(D: BipartiteDigraph, path: Sequence[VertexLike], spanning: bool = True) -> None:
    ids = [D.vid(v) for v in path]
    if len(set(ids)) != len(ids):
        raise ValueError("path repeats a vertex")
    if spanning and len(ids) != D.order:
        raise ValueError("path does not span the digraph")
    for u, v in zip(ids, ids[1:]):
        if not D.has_arc_id(u, v):
            raise ValueError(f"path uses missing arc {D.vertex(u)}->{D.vertex(v)}")


def even_cycle_lengths(D: BipartiteDigraph) -> set[int]:
    """All lengths of directed cycles in ``D`` (always even).

    Layered reachability: for each least vertex ``s``, track which ends are
    reachable by paths from ``s`` through exactly a given vertex set above
    ``s``; a length is present when some end closes back to ``s``.
    """
    n = D.order
    om, im = D.out_masks, D.in_masks
    full = (1 << n) - 1
    target = set(range(2, n + 1, 2))
    found: set[int] = set()
    for s in range(n):
        allowed = full & ~((1 << (s + 1)) - 1)
        layer = {1 << s: 1 << s}
        size = 1
        while layer:
            nxt: dict[int, int] = {}
            for mask, ends in layer.items():
                if size >= 2 and ends & im[s]:
                    found.add(size)
                for e in _bits(ends):
                    for w in _bits(om[e] & allowed & ~mask):
                        m2 = mask | 1 << w
                        nxt[m2] = nxt.get(m2, 0) | 1 << w
            layer = nxt
            size += 1
        if found == target:
            break
    return found


def has_cycle_of_length(D: BipartiteDigraph, length: int, budget: Optional[int] = None) -> bool:
    """Backtracking search for a single cycle of exactly ``length`` vertices."""
    n = D.order
    if length < 2 or length > n:
        return False
    om = D.out_masks
    counter = _Counter(budget)

    def extend(s: int, v: int, mask: int, depth: int) -> bool:
        counter.tick()
        if depth == length:
            return bool(om[v] >> s & 1)
        for w in _bits(om[v] & ~mask):
            if w > s and extend(s, w, mask | 1 << w, depth + 1):
                return True
        return False

    return any(extend(s, s, 1 << s, 1) for s in range(n))


def is_bipancyclic(D: BipartiteDigraph) -> bool:
    """Cycles of every even length 2, 4, ..., 2a (length 2 included)."""
    return even_cycle_lengths(D) == set(range(2, D.order + 1, 2))


def simple_cycles(D: BipartiteDigraph) -> Iterator[tuple[int, ...]]:
    """Every directed cycle once, as an id tuple starting at its least vertex."""
    om = D.out_masks
    n = D.order
    for s in range(n):
        stack = [s]

        def walk(v: int, mask: int) -> Iterator[tuple[int, ...]]:
            m = om[v]
            if len(stack) >= 2 and m >> s & 1:
                yield tuple(stack)
            for w in _bits(m & ~mask):
                if w > s:
                    stack.append(w)
                    yield from walk(w, mask | 1 << w)
                    stack.pop()

        yield from walk(s, 1 << s)


# -- merging -----------------------------------------------------------------


def _id_mask(ids: Sequence[int]) -> int:
    m = 0
    for v in ids:
        m |= 1 << v
    return m


def _crossing_ids(D: BipartiteDigraph, c1: Sequence[int], c2: Sequence[int]) -> int:
    om = D.out_masks
    m1, m2 = _id_mask(c1), _id_mask(c2)
    return sum(_popcount(om[v] & m2) for v in c1) + sum(_popcount(om[v] & m1) for v in c2)


def _merge_ids(D: BipartiteDigraph, c1: Sequence[int], c2: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Swap ``x_i x_i+``, ``x_j x_j+`` for ``x_i x_j+``, ``x_j x_i+`` at the first workable pair."""
    om = D.out_masks
    a = D.a
    l1, l2 = len(c1), len(c2)
    for p in range(l1):
        xi = c1[p]
        xi_next = c1[(p + 1) % l1]
        side = xi < a
        for q in range(l2):
            xj = c2[q]
            if (xj < a) != side:
                continue
            xj_next = c2[(q + 1) % l2]
            if om[xi] >> xj_next & 1 and om[xj] >> xi_next & 1:
                return (xi,) + tuple(c2[q + 1:]) + tuple(c2[: q + 1]) + tuple(c1[p + 1:]) + tuple(c1[:p])
    return None


def _check_disjoint(D: BipartiteDigraph, C1: Cycle, C2: Cycle) -> tuple[tuple[int, ...], tuple[int, ...]]:
    c1, c2 = C1.ids(D), C2.ids(D)
    if set(c1) & set(c2):
        raise ValueError("cycles are not vertex-disjoint")
    return c1, c2


def crossing_arcs(D: BipartiteDigraph, C1: Cycle, C2: Cycle) -> int:
    """Number of arcs with one end on each cycle, both directions counted."""
    return _crossing_ids(D, *_check_disjoint(D, C1, C2))


def try_merge(D: BipartiteDigraph, C1: Cycle, C2: Cycle) -> Optional[Cycle]:
    c1, c2 = _check_disjoint(D, C1, C2)
    merged = _merge_ids(D, c1, c2)
    return None if merged is None else Cycle.from_ids(D, merged)


@dataclass(frozen=True)
class MergeAttempt:
    base_cycles: tuple[Cycle, Cycle]
    result: Optional[Cycle]
    crossing_arc_count: int
    bound: Fraction

    def __str__(self) -> str:
        c1, c2 = self.base_cycles
        res = self.result if self.result is not None else "no merge"
        return f"{c1} & {c2} -> {res} (crossing {self.crossing_arc_count}, bound {self.bound})"


def merge_attempt(D: BipartiteDigraph, C1: Cycle, C2: Cycle) -> MergeAttempt:
    c1, c2 = _check_disjoint(D, C1, C2)
    merged = _merge_ids(D, c1, c2)
    return MergeAttempt(
        (C1, C2),
        None if merged is None else Cycle.from_ids(D, merged),
        _crossing_ids(D, c1, c2),
        Fraction(len(c1) * len(c2), 2),
    )


# -- construction ------------------------------------------------------------


@dataclass(frozen=True)
class Hamiltonian:
    cycle: Cycle


@dataclass(frozen=True)
class StuckFactor:
    factor: CycleFactor


@dataclass(frozen=True)
class NoFactor:
    violator: HallViolator


Outcome = Union[Hamiltonian, StuckFactor, NoFactor]


@dataclass(frozen=True)
class ConstructionTrace:
    initial_factor_size: int
    merge_steps: tuple[MergeAttempt, ...]
    outcome: Outcome
    used_fallback: bool = False

    @property
    def hamiltonian(self) -> bool:
        return isinstance(self.outcome, Hamiltonian)

    def lines(self) -> list[str]:
        out = [f"initial factor size: {self.initial_factor_size}"]
        out += [f"merge: {m}" for m in self.merge_steps]
        o = self.outcome
        if isinstance(o, Hamiltonian):
            out.append(f"outcome: hamiltonian {o.cycle}")
        elif isinstance(o, StuckFactor):
            out.append(f"outcome: stuck factor {o.factor}")
        else:
            out.append(f"outcome: no cycle factor, Hall violator {o.violator}")
        out.append(f"used fallback: {'yes' if self.used_fallback else 'no'}")
        return out


def _order_key(c: Sequence[int]) -> tuple[int, int]:
    return len(c), min(c)


def reduce_factor(D: BipartiteDigraph, factor: CycleFactor) -> ConstructionTrace:
    """Greedily merge cycles until one remains or no pair merges.

    Cycles are ordered by ascending length, then least vertex; the first
    mergeable pair in that order is merged at each step.
    """
    live = [c.ids(D) for c in factor.cycles]
    steps: list[MergeAttempt] = []
    while len(live) > 1:
        live.sort(key=_order_key)
        done = False
        for p in range(len(live)):
            for q in range(p + 1, len(live)):
                merged = _merge_ids(D, live[p], live[q])
                if merged is None:
                    continue
                c1, c2 = live[p], live[q]
                steps.append(
                    MergeAttempt(
                        (Cycle.from_ids(D, c1), Cycle.from_ids(D, c2)),
                        Cycle.from_ids(D, merged),
                        _crossing_ids(D, c1, c2),
                        Fraction(len(c1) * len(c2), 2),
                    )
                )
                live = [c for k, c in enumerate(live) if k not in (p, q)] + [merged]
                done = True
                break
            if done:
                break
        if not done:
            break
    if len(live) == 1:
        outcome: Outcome = Hamiltonian(Cycle.from_ids(D, live[0]))
    else:
        live.sort(key=_order_key)
        outcome = StuckFactor(CycleFactor(tuple(Cycle.from_ids(D, c) for c in live)))
    return ConstructionTrace(len(factor), tuple(steps), outcome)


def construct_hamiltonian(D: BipartiteDigraph, budget: Optional[int] = None) -> ConstructionTrace:
    """Cycle factor, then greedy merging, then exact search if merging stalls."""
    f = cycle_factor(D)
    if isinstance(f, HallViolator):
        return ConstructionTrace(0, (), NoFactor(f))
    trace = reduce_factor(D, f)
    if trace.hamiltonian:
        return trace
    found = find_hamiltonian_cycle(D, budget)
    if found is None:
        return ConstructionTrace(trace.initial_factor_size, trace.merge_steps, trace.outcome, True)
    return ConstructionTrace(trace.initial_factor_size, trace.merge_steps, Hamiltonian(found), True)


def near_complete_ham_path(D: BipartiteDigraph, x: VertexLike, y: VertexLike) -> tuple[Vertex, ...]:
    """Hamiltonian ``x``-``y`` path in a complete bipartite digraph, possibly minus one arc.

    Builds the chain ``x1 y1 x2 y2 ... xm ym`` over a perfect matching
    ``xi -> yi`` with ``x1 = x`` and ``ym = y``.  A missing V1->V2 arc is
    kept out of the matching by swapping two partners; a missing chain arc
    ``yr -> x(r+1)`` is bypassed by exchanging ``y1`` and ``yr`` in the
    chain.  Requires half-order at least 3 when an arc is missing.
    """
    xv, yv = D.vid(x), D.vid(y)
    a = D.a
    if not (xv < a <= yv):
        raise ValueError("x must lie in V1 and y in V2")
    cls = adjacency_class(D)
    if cls.kind is AdjacencyKind.COMPLETE_MINUS_ONE_ARC:
        if a < 3:
            raise ValueError("missing arc with half-order below 3: no construction")
        eu, ev = (D.vid(v) for v in cls.missing)
    elif cls.kind is AdjacencyKind.COMPLETE_BIPARTITE:
        eu = ev = -1
    else:
        raise ValueError(f"digraph is {cls.kind.value}, not complete bipartite (minus one arc)")

    xs = [xv] + [v for v in range(a) if v != xv]
    ys = [v for v in range(a, 2 * a) if v != yv] + [yv]
    if eu >= 0 and eu < a:
        # missing arc eu -> ev from V1: keep it out of the matching
        k = xs.index(eu)
        if ys[k] == ev:
            if k == a - 1:
                xs[k], xs[1] = xs[1], xs[k]
            else:
                other = 1 if k == 0 else 0
                ys[k], ys[other] = ys[other], ys[k]
    elif eu >= a:
        # missing arc eu -> ev from V2: detour if it is a chain arc y_r -> x_{r+1}
        r = ys.index(eu)
        if r < a - 1 and xs[r + 1] == ev:
            if r == 0:
                ys[0], ys[1] = ys[1], ys[0]
            else:
                ys[0], ys[r] = ys[r], ys[0]
    ids = [v for pair in zip(xs, ys) for v in pair]
    path = tuple(D.vertex(v) for v in ids)
    validate_path(D, path)
    return path
