import random
from fractions import Fraction
from math import gcd

import pytest

from curvecount.errors import TangentUndefinedError
from curvecount.point_count import Curve
from curvecount.rational_points import (
    CollisionGroup,
    ParamQuadruple,
    RationalPoint,
    collision_search,
    d_from_param,
    double_point_rational,
    find_points_for_d,
    lemma11_applicable,
    lemma11_exhaustive,
    points_from_param,
    pythagorean_from_param,
)
from oracles import collision_groups_by_sorting, coprime_pairs


def test_pythagorean_examples():
    assert pythagorean_from_param(2, 2, 1) == (4, 3, 5)
    assert pythagorean_from_param(1, 3, 1) == (3, 4, 5)
    assert pythagorean_from_param(2, 3, 2) == (12, 5, 13)


def test_pythagorean_parity_rejected():
    # h(m^2 - e^2) = 3, so the even leg is not integral
    with pytest.raises(ValueError):
        pythagorean_from_param(1, 2, 1)
    with pytest.raises(ValueError):
        pythagorean_from_param(1, 1, 1)
    with pytest.raises(ValueError):
        pythagorean_from_param(0, 2, 1)


def test_pythagorean_random_triples():
    rng = random.Random(5)
    for _ in range(200):
        m = rng.randrange(2, 40)
        e = rng.randrange(1, m)
        h = rng.randrange(1, 10)
        if h * (m * m - e * e) % 2 != 0:
            h *= 2
        a, b, c = pythagorean_from_param(h, m, e)
        assert a * a + b * b == c * c


def test_param_quadruple_validation():
    ParamQuadruple(4, 1, 2, 1)
    with pytest.raises(ValueError):
        ParamQuadruple(0, 1, 2, 1)
    with pytest.raises(ValueError):
        ParamQuadruple(1, 1, 1, 1)
    with pytest.raises(ValueError):
        ParamQuadruple(1, 1, 4, 2)


def test_d_from_param_examples():
    assert d_from_param(ParamQuadruple(4, 1, 2, 1)) == 6
    assert d_from_param(ParamQuadruple(2, 1, 2, 1)) == Fraction(3, 2)
    # k = 2j leaves only the (m^2 - e^2)/(em) part
    assert d_from_param(ParamQuadruple(6, 3, 2, 1)) == Fraction(3, 2)


def test_points_from_param_examples():
    d, p1, p2 = points_from_param(ParamQuadruple(4, 1, 2, 1))
    assert d == 6
    assert (p1.x, p1.y) == (18, 72)
    assert (p2.x, p2.y) == (-2, -8)

    d, p1, p2 = points_from_param(ParamQuadruple(2, 1, 2, 1))
    assert d == Fraction(3, 2)
    assert (p1.x, p1.y) == (Fraction(9, 2), 9)
    assert (p2.x, p2.y) == (Fraction(-1, 2), -1)


def test_points_from_param_random_identities():
    rng = random.Random(5)
    checked = 0
    while checked < 200:
        m = rng.randrange(2, 30)
        e = rng.randrange(1, m)
        if gcd(m, e) != 1:
            continue
        q = ParamQuadruple(rng.randrange(1, 12), rng.randrange(1, 12), m, e)
        d, p1, p2 = points_from_param(q)
        beta = Fraction(q.k, q.j)
        assert p1.x * p2.x == -d * d
        assert p1.y == beta * p1.x and p2.y == beta * p2.x
        assert p1.on_curve(-d * d) and p2.on_curve(-d * d)
        checked += 1


def test_double_point_examples():
    curve = Curve(-36, 0)
    doubled = double_point_rational(curve, RationalPoint(-3, 9))
    assert (doubled.x, doubled.y) == (Fraction(25, 4), Fraction(35, 8))
    doubled = double_point_rational(curve, RationalPoint(18, 72))
    assert (doubled.x, doubled.y) == (Fraction(25, 4), Fraction(-35, 8))


def test_double_point_errors():
    curve = Curve(-36, 0)
    with pytest.raises(TangentUndefinedError):
        double_point_rational(curve, RationalPoint(6, 0))
    with pytest.raises(ValueError):
        double_point_rational(curve, RationalPoint(5, 5))


def test_double_point_iterates_on_curve():
    curve = Curve(-36, 0)
    point = RationalPoint(-3, 9)
    for _ in range(4):
        point = double_point_rational(curve, point)
        assert point.on_curve(-36, 0)
    # denominators explode quadratically but stay exact
    assert point.x.denominator > 10**6


def test_find_points_d6_smallest_bound():
    points = find_points_for_d(6, 2)
    assert [(p.x, p.y) for p in points] == [(-2, -8), (-2, 8), (18, -72), (18, 72)]


def test_find_points_d6_wider():
    points = {(p.x, p.y) for p in find_points_for_d(6, 16)}
    assert {(12, 36), (-3, 9), (18, 72), (-2, 8)} <= points


def test_find_points_d5_frozen():
    points = find_points_for_d(5, 9)
    assert [(p.x, p.y) for p in points] == [
        (Fraction(-5, 9), Fraction(-100, 27)),
        (Fraction(-5, 9), Fraction(100, 27)),
        (-4, -6),
        (-4, 6),
        (Fraction(25, 4), Fraction(-75, 8)),
        (Fraction(25, 4), Fraction(75, 8)),
        (45, -300),
        (45, 300),
    ]


def test_find_points_all_verify_exactly():
    for d in (5, 6, 10):
        for p in find_points_for_d(d, 30):
            assert p.y * p.y == p.x**3 - d * d * p.x


def test_find_points_square_d_empty():
    assert find_points_for_d(1, 200) == []
    assert find_points_for_d(4, 100) == []


def test_find_points_validation():
    with pytest.raises(ValueError):
        find_points_for_d(0, 10)
    with pytest.raises(ValueError):
        find_points_for_d(6, 1)


def test_lemma11_applicable():
    assert lemma11_applicable(3)
    assert lemma11_applicable(11)
    assert lemma11_applicable(19)
    assert not lemma11_applicable(5)
    assert not lemma11_applicable(7)  # 2 is a residue mod 7
    assert not lemma11_applicable(17)
    assert not lemma11_applicable(2)
    assert not lemma11_applicable(9)
    assert not lemma11_applicable(1)
    assert not lemma11_applicable(-3)


def test_lemma11_exhaustive_control():
    hits = lemma11_exhaustive(6, 10)
    assert [(q.k, q.j, q.m, q.e) for q in hits] == [(4, 1, 2, 1), (3, 1, 3, 1)]
    assert not lemma11_applicable(6)


def test_lemma11_exhaustive_empty_for_applicable():
    assert lemma11_exhaustive(3, 200) == []
    assert lemma11_exhaustive(11, 100) == []


def test_collision_search_no_group_below_20():
    assert len(coprime_pairs(10)) == 31
    assert collision_search(10) == []
    assert collision_search(19) == []


def test_collision_search_first_group():
    groups = collision_search(20)
    assert len(groups) == 1
    group = groups[0]
    assert group.v == 8820
    assert group.shared_x == 8820
    assert group.members == ((1, 20), (5, 9))
    assert group.d_values == (7980, 2520)


def test_collision_search_matches_oracle():
    for bound in (20, 50, 100):
        got = {g.v: list(g.members) for g in collision_search(bound)}
        assert got == collision_groups_by_sorting(bound)


def test_collision_search_worker_invariance():
    reference = collision_search(60)
    assert collision_search(60, workers=2) == reference
    assert collision_search(60, workers=3) == reference


def test_collision_search_non_coprime_lattice():
    groups = collision_search(20, coprime_only=False)
    by_v = {g.v: g.members for g in groups}
    assert by_v[8820] == ((1, 20), (5, 9))


def test_collision_search_validation():
    with pytest.raises(ValueError):
        collision_search(1)
    with pytest.raises(ValueError):
        collision_search(10, workers=0)


def test_collision_group_rejects_bad_data():
    with pytest.raises(ValueError):
        CollisionGroup(8820, ((1, 20),), (7980,), 8820)
    with pytest.raises(ValueError):
        CollisionGroup(8820, ((1, 20), (1, 20)), (7980, 7980), 8820)
    with pytest.raises(ValueError):
        CollisionGroup(8820, ((1, 20), (5, 9)), (7980, 2520), 8821)
    with pytest.raises(ValueError):
        CollisionGroup(18, ((1, 20), (5, 9)), (7980, 2520), 18)
    with pytest.raises(ValueError):
        CollisionGroup(8820, ((1, 20), (5, 9)), (7980, 2521), 8820)
