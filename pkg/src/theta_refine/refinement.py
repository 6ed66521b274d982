"""The extended refinement loop over triples of reduction-domain cones.

State is a set of pairs (T, P): a cone T in the 9-dimensional product of
three copies of form space, and a covering parameter P recording, per factor,
the sequence of vector sets already pinned down as successive minima.  One
iteration discards pairs whose cone has an empty member set or is contained
in the stop set, then replaces each survivor by all of its refinements: for
every shape in the linset and every admissible choice of next minimal-vector
sets, intersect T with the corresponding product cone and value-equality
rows and extend P.

Counting convention for the per-iteration table: generation i holds every
pair produced by refining generation i-1's survivors, including pairs whose
member set is empty; those are only removed at the start of the next
iteration, together with the stop-set-contained ones.
"""

from __future__ import annotations

import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .geometry import Cone, Vector, product3
from .ksets import V_CONE, kset
from .minima import min_n
from .quadform import coeff_row

Pair = tuple[int, int]
Shape = tuple[int, int, int]

STOP_SET_KINDS = ("diagonal", "q1_eq_q3")


@dataclass(frozen=True)
class Linset:
    """Generators of the non-negative solutions of a x + b y = (a+b) z."""

    a: int
    b: int
    shapes: tuple[Shape, ...]
    minimal_variant: bool


def linset(a: int, b: int) -> Linset:
    """Shapes (1,1,1), (a+b,0,a)/g, (0,a+b,b)/g; the first is dropped when
    a*b = 0, where it is the sum of the other two."""
    if a < 0 or b < 0 or (a, b) == (0, 0):
        raise ValueError("need non-negative a, b with (a, b) != (0, 0)")
    g = gcd(a, b)
    l1: Shape = (1, 1, 1)
    l2: Shape = ((a + b) // g, 0, a // g)
    l3: Shape = (0, (a + b) // g, b // g)
    minimal = a == 0 or b == 0
    shapes = (l2, l3) if minimal else (l1, l2, l3)
    return Linset(a, b, shapes, minimal)


@dataclass(frozen=True)
class CoveringParameter:
    """Per-factor sequences of vector sets chosen along one refinement branch."""

    x_sets: tuple[tuple[Pair, ...], ...] = ()
    y_sets: tuple[tuple[Pair, ...], ...] = ()
    z_sets: tuple[tuple[Pair, ...], ...] = ()

    def extended(self, xs: tuple[Pair, ...], ys: tuple[Pair, ...], zs: tuple[Pair, ...]):
        return CoveringParameter(
            self.x_sets + (xs,), self.y_sets + (ys,), self.z_sets + (zs,)
        )

    def excluded(self, axis: int) -> frozenset[Pair]:
        seqs = (self.x_sets, self.y_sets, self.z_sets)[axis]
        return frozenset(v for s in seqs for v in s)

    def depth(self) -> int:
        return len(self.x_sets)


@dataclass(frozen=True)
class RefinementPair:
    cone: Cone
    param: CoveringParameter


@dataclass
class IterationRecord:
    """Exact per-generation counts; wall time is informational only.

    ``total`` counts every pair produced for the generation.  ``non_empty``
    counts pairs whose cone has a non-empty member set and is not contained
    in the stop set -- the pairs the next iteration refines, and the quantity
    the iteration tables report.  ``stop_absorbed`` counts pairs with a
    non-empty member set that are contained in the stop set; the remaining
    ``total - non_empty - stop_absorbed`` pairs have empty member sets.
    """

    index: int
    total: int
    non_empty: int
    stop_absorbed: int
    seconds: float


@dataclass
class RunResult:
    a: int
    b: int
    stop_kind: str
    max_iter: int
    generations: list[list[RefinementPair]] = field(default_factory=list)
    log: list[IterationRecord] = field(default_factory=list)

    @property
    def final_pairs(self) -> list[RefinementPair]:
        return self.generations[-1]

    def totals(self) -> list[int]:
        return [rec.total for rec in self.log]

    def non_empty_counts(self) -> list[int]:
        return [rec.non_empty for rec in self.log]


def stop_set(kind: str) -> tuple[Vector, ...]:
    """Equality rows (dim 9) of the stop subspace."""
    if kind == "diagonal":
        pairs = [(i, i + 3) for i in range(3)] + [(i + 3, i + 6) for i in range(3)]
    elif kind == "q1_eq_q3":
        pairs = [(i, i + 6) for i in range(3)]
    else:
        raise ValueError(f"unknown stop set {kind!r}; expected one of {STOP_SET_KINDS}")
    rows = []
    for i, j in pairs:
        row = [0] * 9
        row[i], row[j] = 1, -1
        rows.append(tuple(row))
    return tuple(rows)


def initial_pair() -> RefinementPair:
    """The whole product of three reduction domains, with no choices made."""
    return RefinementPair(product3(V_CONE, V_CONE, V_CONE), CoveringParameter())


def _cross_equality_rows(block_i: int, vi: Pair, block_j: int, vj: Pair) -> list[Vector]:
    row = [0] * 9
    ri, rj = coeff_row(vi), coeff_row(vj)
    for k in range(3):
        row[3 * block_i + k] += ri[k]
        row[3 * block_j + k] -= rj[k]
    return [tuple(row), tuple(-x for x in row)]


def aux_cones(
    param: CoveringParameter,
    xs: tuple[Pair, ...],
    ys: tuple[Pair, ...],
    zs: tuple[Pair, ...],
    shape: Shape,
) -> tuple[Cone, Cone]:
    """Product of the three extended chain cones, and the value-link rows.

    The link rows use one representative per linked pair of sets (their first
    elements); the remaining equalities are already enforced inside the chain
    cones.  Shape (1,1,1) links factor 1 to both others; a shape with no
    factor-2 part links factors 1 and 3; a shape with no factor-1 part links
    factors 2 and 3.  A link is omitted when either side is empty.
    """
    k1 = kset(param.x_sets + (xs,))
    k2 = kset(param.y_sets + (ys,))
    k3 = kset(param.z_sets + (zs,))
    product = product3(k1, k2, k3)
    rows: list[Vector] = []
    if shape == (1, 1, 1):
        rows += _cross_equality_rows(0, xs[0], 1, ys[0])
        rows += _cross_equality_rows(0, xs[0], 2, zs[0])
    elif shape[1] == 0:
        if xs and zs:
            rows += _cross_equality_rows(0, xs[0], 2, zs[0])
    else:
        if ys and zs:
            rows += _cross_equality_rows(1, ys[0], 2, zs[0])
    return product, Cone(9, rows)


def refine_pair(pair: RefinementPair, ls: Linset) -> list[RefinementPair]:
    """All children of one pair, in canonical order.

    Shapes are taken in linset order; within a shape the choice collections
    are each canonically sorted, and the nested product enumerates them
    lexicographically.  Children with empty member sets are kept.
    """
    exc = [pair.param.excluded(axis) for axis in range(3)]
    children = []
    for shape in ls.shapes:
        for xs in min_n(exc[0], shape[0]):
            for ys in min_n(exc[1], shape[1]):
                for zs in min_n(exc[2], shape[2]):
                    kc, qc = aux_cones(pair.param, xs, ys, zs, shape)
                    cone = pair.cone.intersect(kc, qc)
                    children.append(RefinementPair(cone, pair.param.extended(xs, ys, zs)))
    return children


def _survives(pair: RefinementPair, stop_rows: tuple[Vector, ...]) -> bool:
    return not pair.cone.is_member_empty() and not pair.cone.is_subset_of(stop_rows)


def check_y_projection_argument(
    pairs: Iterable[RefinementPair], stop_rows: Sequence[Vector]
) -> bool:
    """Every pair not absorbed by the stop set chose a non-empty factor-2 set.

    This is the machine-checkable core of the argument that, for the relation
    with zero second coefficient, the factor-2 choices carry no information
    and all genuine solutions already lie in the stop set.
    """
    for pair in pairs:
        if pair.cone.is_member_empty() or pair.cone.is_subset_of(stop_rows):
            continue
        if not any(len(s) > 0 for s in pair.param.y_sets):
            return False
    return True


def run_algorithm(
    a: int,
    b: int,
    stop_kind: str = "diagonal",
    max_iter: int = 13,
    threads: int = 1,
) -> RunResult:
    """The refinement loop: filter stop-set subsets, refine, repeat.

    Pairs whose member set is empty are subsets of every stop set and are
    removed in the same filtering step.  Runs for at most ``max_iter``
    refinements or until a generation is produced with no pairs at all.
    Results are deterministic and independent of ``threads``.
    """
    if (a, b) == (0, 0) or a < 0 or b < 0:
        raise ValueError("need non-negative a, b with (a, b) != (0, 0)")
    if gcd(a, b) != 1:
        warnings.warn(f"gcd({a}, {b}) != 1; the relation is not in lowest terms")
    ls = linset(a, b)
    rows = stop_set(stop_kind)
    result = RunResult(a, b, stop_kind, max_iter)

    start = time.perf_counter()
    generation = [initial_pair()]
    result.generations.append(generation)
    result.log.append(_record(0, generation, rows, time.perf_counter() - start))

    i = 0
    while result.log[i].total > 0 and i < max_iter:
        start = time.perf_counter()
        survivors = [p for p in generation if _survives(p, rows)]
        if threads > 1 and len(survivors) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                child_lists = list(pool.map(lambda p: refine_pair(p, ls), survivors))
        else:
            child_lists = [refine_pair(p, ls) for p in survivors]
        generation = [child for lst in child_lists for child in lst]
        result.generations.append(generation)
        i += 1
        result.log.append(_record(i, generation, rows, time.perf_counter() - start))
    return result


def _record(
    index: int,
    generation: Sequence[RefinementPair],
    stop_rows: tuple[Vector, ...],
    seconds: float,
) -> IterationRecord:
    surviving = 0
    stopped = 0
    for p in generation:
        if p.cone.is_member_empty():
            continue
        if p.cone.is_subset_of(stop_rows):
            stopped += 1
        else:
            surviving += 1
    return IterationRecord(index, len(generation), surviving, stopped, seconds)


def format_table(result: RunResult, verbose: bool = False) -> str:
    """Aligned per-iteration table: totals and non-empty counts."""
    indices = [str(rec.index) for rec in result.log]
    totals = [str(rec.total) for rec in result.log]
    nonempty = [str(rec.non_empty) for rec in result.log]
    rows = [("iteration", indices), ("pairs", totals), ("non-empty", nonempty)]
    if verbose:
        rows.append(("stop-absorbed", [str(rec.stop_absorbed) for rec in result.log]))
        rows.append(("seconds", [f"{rec.seconds:.2f}" for rec in result.log]))
    label_w = max(len(r[0]) for r in rows)
    col_w = [
        max(len(row[1][i]) for row in rows) for i in range(len(result.log))
    ]
    lines = []
    for label, cells in rows:
        line = label.ljust(label_w) + "  " + "  ".join(
            c.rjust(col_w[i]) for i, c in enumerate(cells)
        )
        lines.append(line.rstrip())
    return "\n".join(lines)
