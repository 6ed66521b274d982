"""Exact rational polyhedral cones with closed and strict half-space constraints.

A cone here is the solution set of finitely many homogeneous constraints
``a . x >= 0`` (closed rows) and ``b . x > 0`` (strict rows) over the
rationals.  All arithmetic is exact: rows and rays are stored as integer
tuples obtained by clearing denominators, so no floating point enters any
computation.

Extreme rays of the *closed* part are computed by an incremental double
description pass that inserts one constraint at a time.  The computation can
be seeded with the already-known rays of a parent cone, which is what makes
repeated intersection against a fixed cone cheap inside the refinement loop.
Strict rows are carried symbolically; they are consulted only by membership
and emptiness tests, never by ray enumeration.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]


class ConeDimensionError(ValueError):
    """A constraint row or cone operand disagrees about the ambient dimension."""


class NonPointedConeError(ValueError):
    """Extreme rays were requested for a closed cone containing a line."""


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def _vec_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def scale_primitive(v: Sequence) -> Vector:
    """Scale a rational vector by a positive factor to primitive integer form.

    Clears denominators and divides by the gcd of the entries.  The scale
    factor is always positive, so the direction of a ray is preserved.
    """
    fracs = [Fraction(x) for x in v]
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = _vec_gcd(ints)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def _dedup_rows(rows: Iterable[Sequence], dim: int, drop_zero: bool) -> tuple[Vector, ...]:
    out: list[Vector] = []
    seen: set[Vector] = set()
    for row in rows:
        if len(row) != dim:
            raise ConeDimensionError(f"row {tuple(row)} has length {len(row)}, expected {dim}")
        r = scale_primitive(row)
        if drop_zero and not any(r):
            continue
        if r not in seen:
            seen.add(r)
            out.append(r)
    return tuple(out)


def _extreme_rays(
    rows: Sequence[Vector],
    dim: int,
    seed_rays: Sequence[Vector] | None = None,
    seed_count: int = 0,
) -> tuple[list[Vector], list[Vector]]:
    """Double description on ``{x | r . x >= 0 for all r in rows}``.

    Returns ``(rays, lineality)`` where ``rays`` generate the cone modulo the
    lineality space spanned by ``lineality``.  The cone is pointed iff the
    lineality list is empty.  When ``seed_rays`` is given it must be the
    extreme-ray list of the (pointed) cone cut out by ``rows[:seed_count]``;
    insertion then resumes from row ``seed_count``.

    Each ray carries a bitmask of the already-inserted rows that are tight at
    it; the standard combinatorial adjacency test on those masks decides which
    positive/negative ray pairs combine when a new hyperplane is inserted.
    """
    rays: list[tuple[Vector, int]]
    if seed_rays is not None:
        lineality: list[Vector] = []
        rays = []
        for r in seed_rays:
            mask = 0
            for i in range(seed_count):
                if _dot(rows[i], r) == 0:
                    mask |= 1 << i
            rays.append((r, mask))
        start = seed_count
    else:
        lineality = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
        rays = []
        start = 0

    for j in range(start, len(rows)):
        a = rows[j]
        bit = 1 << j
        pivot = None
        for idx, l in enumerate(lineality):
            d = _dot(a, l)
            if d != 0:
                pivot = (idx, l, d)
                break
        if pivot is not None:
            # Pop one lineality generator out of the hyperplane; everything
            # else gets projected onto {a . x = 0}.
            idx, l0, d0 = pivot
            if d0 < 0:
                l0 = tuple(-x for x in l0)
                d0 = -d0
            new_lin = []
            for k, l in enumerate(lineality):
                if k == idx:
                    continue
                d = _dot(a, l)
                new_lin.append(scale_primitive(tuple(d0 * x - d * y for x, y in zip(l, l0))))
            lineality = new_lin
            new_rays = []
            for r, m in rays:
                d = _dot(a, r)
                if d == 0:
                    new_rays.append((r, m | bit))
                else:
                    proj = scale_primitive(tuple(d0 * x - d * y for x, y in zip(r, l0)))
                    new_rays.append((proj, m | bit))
            # l0 itself satisfies every earlier row with equality.
            new_rays.append((l0, (1 << j) - 1))
            rays = new_rays
            continue

        pos: list[tuple[Vector, int, int]] = []
        zero: list[tuple[Vector, int]] = []
        neg: list[tuple[Vector, int, int]] = []
        for r, m in rays:
            d = _dot(a, r)
            if d > 0:
                pos.append((r, m, d))
            elif d == 0:
                zero.append((r, m | bit))
            else:
                neg.append((r, m, d))
        if not neg:
            rays = [(r, m) for r, m, _ in pos] + zero
            continue
        if not pos:
            rays = zero
            continue
        current = rays
        kept = [(r, m) for r, m, _ in pos] + zero
        for rp, mp, dp in pos:
            for rn, mn, dn in neg:
                t = mp & mn
                adjacent = True
                for r3, m3 in current:
                    if r3 is rp or r3 is rn:
                        continue
                    if t & m3 == t:
                        adjacent = False
                        break
                if adjacent:
                    comb = scale_primitive(tuple(dp * x - dn * y for x, y in zip(rn, rp)))
                    kept.append((comb, t | bit))
        rays = kept

    return [r for r, _ in rays], lineality


class Cone:
    """A polyhedral cone ``{x | a.x >= 0 for a in closed, b.x > 0 for b in strict}``.

    Immutable after construction apart from the extreme-ray memo, which is a
    write-once cache; concurrent computations install identical canonical
    results.  The constructor only normalizes and deduplicates rows, it does
    no feasibility work.
    """

    __slots__ = ("dim", "closed", "strict", "_desc", "_seed")

    def __init__(self, dim: int, closed: Iterable[Sequence] = (), strict: Iterable[Sequence] = ()):
        if dim <= 0:
            raise ConeDimensionError("dimension must be positive")
        self.dim = dim
        self.closed = _dedup_rows(closed, dim, drop_zero=True)
        # A zero strict row 0 > 0 is unsatisfiable and must be kept as-is.
        self.strict = _dedup_rows(strict, dim, drop_zero=False)
        self._desc: tuple[tuple[Vector, ...], tuple[Vector, ...]] | None = None
        self._seed: tuple[tuple[Vector, ...], int] | None = None

    def __repr__(self) -> str:
        return f"Cone(dim={self.dim}, closed={len(self.closed)}, strict={len(self.strict)})"

    def _closed_description(self) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
        desc = self._desc
        if desc is None:
            if self._seed is not None:
                seed_rays, n = self._seed
                rays, lin = _extreme_rays(self.closed, self.dim, seed_rays, n)
            else:
                rays, lin = _extreme_rays(self.closed, self.dim)
            desc = (tuple(sorted(rays)), tuple(lin))
            self._desc = desc
        return desc

    def edges(self) -> tuple[Vector, ...]:
        """Canonically scaled extreme rays of the closed cone, sorted.

        Raises NonPointedConeError when the closed cone contains a line.
        """
        rays, lin = self._closed_description()
        if lin:
            raise NonPointedConeError(
                f"closed cone has a lineality space of dimension {len(lin)}"
            )
        return rays

    def has_cached_edges(self) -> bool:
        return self._desc is not None and not self._desc[1]

    def interior_witness(self) -> Vector:
        """Sum of the extreme rays: a relative-interior point of the closed cone."""
        rays, _ = self._closed_description()
        return tuple(sum(col) for col in zip(*rays)) if rays else (0,) * self.dim

    def is_member_empty(self) -> bool:
        """True iff no point satisfies all closed and all strict constraints.

        Decided on the ray-sum witness: the member set is non-empty exactly
        when the witness satisfies every strict row.  (Sound for the cones of
        the refinement algorithm, whose strict rows are non-negative on the
        closed cone.)
        """
        w = self.interior_witness()
        return not all(_dot(b, w) > 0 for b in self.strict)

    def is_zero_cone(self) -> bool:
        """True iff the closed cone is the single point 0."""
        return len(self.edges()) == 0

    def is_subset_of(self, equalities: Iterable[Sequence]) -> bool:
        """True iff every extreme ray lies on every hyperplane ``e . x = 0``."""
        rows = [scale_primitive(e) for e in equalities]
        for row in rows:
            if len(row) != self.dim:
                raise ConeDimensionError("equality row has wrong length")
        rays = self.edges()
        return all(_dot(e, r) == 0 for e in rows for r in rays)

    def intersect(self, *others: "Cone") -> "Cone":
        """Intersection; the result reuses this cone's cached rays as a DD seed."""
        closed = list(self.closed)
        seen = set(closed)
        strict = list(self.strict)
        seen_strict = set(strict)
        for o in others:
            if o.dim != self.dim:
                raise ConeDimensionError(f"cannot intersect dim {self.dim} with dim {o.dim}")
            for row in o.closed:
                if row not in seen:
                    seen.add(row)
                    closed.append(row)
            for row in o.strict:
                if row not in seen_strict:
                    seen_strict.add(row)
                    strict.append(row)
        result = Cone(self.dim, closed, strict)
        if self.has_cached_edges():
            result._seed = (self.edges(), len(self.closed))
        return result

    def member_contains(self, point: Sequence) -> bool:
        """Exact membership test for a rational point."""
        p = [Fraction(x) for x in point]
        if len(p) != self.dim:
            raise ConeDimensionError("point has wrong length")
        return all(_dot(a, p) >= 0 for a in self.closed) and all(
            _dot(b, p) > 0 for b in self.strict
        )

    def closed_contains(self, point: Sequence) -> bool:
        p = [Fraction(x) for x in point]
        return all(_dot(a, p) >= 0 for a in self.closed)


def product3(c1: Cone, c2: Cone, c3: Cone) -> Cone:
    """Cross product of three cones as one cone in the sum of the dimensions.

    Rows are zero-padded into their coordinate block.  When all factors have
    cached extreme rays, the product's rays (the block-embedded union, valid
    for pointed factors) are installed directly.
    """
    factors = (c1, c2, c3)
    dim = sum(c.dim for c in factors)
    offsets = (0, c1.dim, c1.dim + c2.dim)

    def embed(row: Vector, off: int, d: int) -> Vector:
        out = [0] * dim
        out[off : off + d] = row
        return tuple(out)

    closed = [embed(r, off, c.dim) for c, off in zip(factors, offsets) for r in c.closed]
    strict = [embed(r, off, c.dim) for c, off in zip(factors, offsets) for r in c.strict]
    result = Cone(dim, closed, strict)
    if all(c.has_cached_edges() for c in factors):
        rays = [embed(r, off, c.dim) for c, off in zip(factors, offsets) for r in c.edges()]
        result._desc = (tuple(sorted(rays)), ())
    return result


def cones_closed_equal(c1: Cone, c2: Cone) -> bool:
    """Member-set equality of the closed cones, via canonical extreme rays."""
    return c1.dim == c2.dim and c1.edges() == c2.edges()


def cones_equivalent(c1: Cone, c2: Cone) -> bool:
    """Closed cones equal and strict rows agree as sets."""
    return cones_closed_equal(c1, c2) and set(c1.strict) == set(c2.strict)


# ---------------------------------------------------------------------------
# Serialization: text matrices in the row convention of the golden fixtures,
# and JSON with decimal-string integers.


def format_matrix(rows: Sequence[Vector]) -> str:
    if not rows:
        return "[]"
    width = max(len(str(x)) for row in rows for x in row)
    lines = ["[ " + "  ".join(str(x).rjust(width) for x in row) + " ]" for row in rows]
    return "\n".join(lines)


def format_cone(cone: Cone) -> str:
    parts = ["A =", format_matrix(cone.closed), "B =", format_matrix(cone.strict)]
    return "\n".join(parts)


def cone_to_json_dict(cone: Cone, include_rays: bool = True) -> dict:
    out = {
        "dim": cone.dim,
        "A": [[str(x) for x in row] for row in cone.closed],
        "B": [[str(x) for x in row] for row in cone.strict],
    }
    if include_rays:
        out["rays"] = [[str(x) for x in r] for r in cone.edges()]
    return out


def cone_from_json_dict(data: dict) -> Cone:
    dim = int(data["dim"])
    closed = [[int(x) for x in row] for row in data["A"]]
    strict = [[int(x) for x in row] for row in data["B"]]
    cone = Cone(dim, closed, strict)
    if "rays" in data and data["rays"] is not None:
        rays = tuple(sorted(tuple(int(x) for x in r) for r in data["rays"]))
        cone._desc = (rays, ())
    return cone


def cone_to_json(cone: Cone, include_rays: bool = True) -> str:
    return json.dumps(cone_to_json_dict(cone, include_rays))


def cone_from_json(text: str) -> Cone:
    return cone_from_json_dict(json.loads(text))
