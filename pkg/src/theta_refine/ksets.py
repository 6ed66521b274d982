"""Cones of reduced forms with a prescribed truncated successive-minima structure.

A chain x_1, ..., x_k of strongly primitive vectors pins down the forms Q in
the closed reduction domain with Q(x_1) <= ... <= Q(x_k) <= Q(w) for every
minimal vector w outside the chain.  Grouping the chain into sets adds the
equalities that each set takes a single value.  These cones carry closed rows
only; the open condition q11 > 0 is re-imposed where the refinement loop
judges emptiness.
"""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from .geometry import Cone
from .minima import min_complement
from .quadform import coeff_row, is_strongly_primitive

Pair = tuple[int, int]

V_CLOSED_ROWS: tuple[tuple[int, int, int], ...] = ((-1, 1, 0), (1, 0, -1), (0, 0, 1))
V_STRICT_ROWS: tuple[tuple[int, int, int], ...] = ((1, 0, 0),)

#: The reduction domain as a cone (strict row q11 > 0) and its closure.
V_CONE = Cone(3, V_CLOSED_ROWS, V_STRICT_ROWS)
V_CLOSURE_CONE = Cone(3, V_CLOSED_ROWS)


def _row_diff(larger: Pair, smaller: Pair) -> tuple[int, int, int]:
    lr, sr = coeff_row(larger), coeff_row(smaller)
    return (lr[0] - sr[0], lr[1] - sr[1], lr[2] - sr[2])


def kset_chain(vectors: Sequence[Pair]) -> Cone:
    """Forms in the closed reduction domain with the given successive minima.

    Rows: the domain closure, Q(x_{i+1}) >= Q(x_i) for consecutive vectors,
    and Q(w) >= Q(x_k) for every minimal vector w of the complement.
    """
    vecs = [tuple(v) for v in vectors]
    if len(vecs) != len(set(vecs)):
        raise ValueError("chain vectors must be distinct")
    for v in vecs:
        if not is_strongly_primitive(v):
            raise ValueError(f"{v} is not strongly primitive")
    rows = list(V_CLOSED_ROWS)
    for prev, nxt in zip(vecs, vecs[1:]):
        rows.append(_row_diff(nxt, prev))
    if vecs:
        last = vecs[-1]
        for w in min_complement(vecs):
            rows.append(_row_diff(w, last))
    return Cone(3, rows)


def _normalize_sets(sets: Iterable[Iterable[Pair]]) -> tuple[tuple[Pair, ...], ...]:
    normalized = tuple(tuple(tuple(v) for v in s) for s in sets)
    flat = [v for s in normalized for v in s]
    if len(flat) != len(set(flat)):
        raise ValueError("sets must be pairwise disjoint with distinct members")
    return normalized


_kset_cache: dict[tuple[tuple[Pair, ...], ...], Cone] = {}
_kset_lock = threading.Lock()


def kset(sets: Iterable[Iterable[Pair]]) -> Cone:
    """Cone for an ordered sequence of disjoint vector sets.

    Empty sets contribute nothing.  The chain on the flattened vectors is
    intersected with the within-set equalities Q(first) = Q(other), each as a
    pair of opposite closed rows.  Results are memoized; the same sequences
    recur constantly across refinement branches.
    """
    key = _normalize_sets(sets)
    with _kset_lock:
        cached = _kset_cache.get(key)
    if cached is not None:
        return cached
    flat = [v for s in key if s for v in s]
    cone = kset_chain(flat)
    eq_rows = []
    for s in key:
        for other in s[1:]:
            row = _row_diff(other, s[0])
            eq_rows.append(row)
            eq_rows.append(tuple(-x for x in row))
    if eq_rows:
        cone = cone.intersect(Cone(3, eq_rows))
    with _kset_lock:
        _kset_cache.setdefault(key, cone)
    return cone


def kset_zero_test(sets: Iterable[Iterable[Pair]]) -> bool:
    """Certificate that no reduced positive-definite form has this structure.

    True iff the cone collapses to forms with q11 = 0, i.e. re-imposing the
    open condition q11 > 0 of the reduction domain leaves no member.  (The
    closed cone itself may be a ray of degenerate forms such as y^2 rather
    than literally {0}: the degenerate form still satisfies the chain and
    equality rows, but never lies in the open domain.)
    """
    cone = kset(sets)
    return Cone(3, cone.closed, V_STRICT_ROWS).is_member_empty()


def clear_cache() -> None:
    with _kset_lock:
        _kset_cache.clear()
