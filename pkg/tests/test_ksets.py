"""Chain cones and grouped-set cones, with membership verified independently."""

import random
from fractions import Fraction

import pytest

from theta_refine.geometry import Cone, cones_closed_equal
from theta_refine.ksets import (
    V_CLOSURE_CONE,
    V_CONE,
    kset,
    kset_chain,
    kset_zero_test,
)
from theta_refine.minima import is_successive_minima_prefix
from theta_refine.quadform import BQF, in_v, is_strongly_primitive


def test_reduction_domain_constants():
    assert V_CONE.strict == ((1, 0, 0),)
    assert V_CLOSURE_CONE.strict == ()
    assert V_CLOSURE_CONE.edges() == ((0, 1, 0), (1, 1, 0), (1, 1, 1))


def test_chain_examples():
    golden = Cone(3, [(-1, 1, 0), (1, 0, -1), (0, 0, 2)])
    assert cones_closed_equal(kset_chain([(1, 0), (0, 1), (-1, 1)]), golden)
    assert cones_closed_equal(kset_chain([]), V_CLOSURE_CONE)
    one = kset_chain([(1, 0)])
    assert cones_closed_equal(one, V_CLOSURE_CONE)
    with pytest.raises(ValueError):
        kset_chain([(1, 0), (1, 0)])
    with pytest.raises(ValueError):
        kset_chain([(0, 2)])


def test_grouped_examples():
    golden = Cone(3, [(-1, 1, 0), (1, 0, -1), (0, 0, 2), (1, -1, 0), (-1, 1, 0)])
    assert cones_closed_equal(kset([[(1, 0), (0, 1)], [], [(-1, 1)]]), golden)
    assert kset([[(1, 0), (0, 1), (-1, 1), (1, 1)]]).is_zero_cone()
    with pytest.raises(ValueError):
        kset([[(1, 0)], [(1, 0)]])


def test_zero_certificates():
    assert kset_zero_test([[(1, 0)], [(0, 1), (-1, 1), (1, 1), (-2, 1)]])
    assert kset_zero_test([[(1, 0)], [(0, 1)], [(-1, 1), (1, 1), (-2, 1), (-1, 2)]])
    assert kset_zero_test([[(1, 0)], [(0, 1)], [(-1, 1), (1, 1), (-2, 1), (2, 1)]])
    assert not kset_zero_test([[(1, 0)]])
    # The 2b cone is degenerate but not literally the origin: its closed part
    # is the ray of the form y^2.
    cone = kset([[(1, 0)], [(0, 1), (-1, 1), (1, 1), (-2, 1)]])
    assert cone.edges() == ((0, 1, 0),)


def test_grouped_equals_chain_plus_equalities():
    sets = [[(1, 0), (0, 1)], [(-1, 1), (1, 1)]]
    grouped = kset(sets)
    chain = kset_chain([(1, 0), (0, 1), (-1, 1), (1, 1)])
    eqs = Cone(
        3,
        [(-1, 1, 0), (1, -1, 0), (0, 0, 2), (0, 0, -2)],
    )
    assert cones_closed_equal(grouped, chain.intersect(eqs))


def test_order_within_set_is_irrelevant():
    rng = random.Random(23)
    pool = [
        (x, y)
        for x in range(-3, 4)
        for y in range(-3, 4)
        if is_strongly_primitive((x, y))
    ]
    for _ in range(30):
        chosen = rng.sample(pool, rng.randint(2, 5))
        cut = rng.randint(1, len(chosen) - 1)
        sets = [chosen[:cut], chosen[cut:]]
        base = kset(sets)
        shuffled = [list(s) for s in sets]
        for s in shuffled:
            rng.shuffle(s)
        assert cones_closed_equal(base, kset(shuffled))


def _random_member(rng, cone):
    rays = cone.edges()
    if not rays:
        return None
    coeffs = [Fraction(rng.randint(0, 6), rng.randint(1, 3)) for _ in rays]
    if all(c == 0 for c in coeffs):
        coeffs[rng.randrange(len(rays))] = Fraction(1)
    return BQF(*[sum(c * r[i] for c, r in zip(coeffs, rays)) for i in range(3)])


def test_members_have_prescribed_minima_structure():
    rng = random.Random(29)
    pool = [
        (x, y)
        for x in range(-3, 4)
        for y in range(-3, 4)
        if is_strongly_primitive((x, y))
    ]
    checked = 0
    attempts = 0
    while checked < 40 and attempts < 600:
        attempts += 1
        count = rng.randint(1, 3)
        chosen = rng.sample(pool, rng.randint(1, 3 * count))
        cuts = sorted(rng.sample(range(1, len(chosen) + 1), min(count, len(chosen))))
        sets, prev = [], 0
        for c in cuts:
            sets.append(tuple(chosen[prev:c]))
            prev = c
        try:
            cone = kset(sets)
        except ValueError:
            continue
        q = _random_member(rng, cone)
        if q is None or not in_v(q):
            continue
        assert is_successive_minima_prefix(q, [s for s in sets if s])
        checked += 1
    assert checked >= 30
