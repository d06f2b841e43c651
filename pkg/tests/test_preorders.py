import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_complete_fan
from oracles import brute_agreement_radius
from toric_tools.cones import Cone, hilbert_basis
from toric_tools.errors import DimensionMismatch, InputError, NoDominatedCone
from toric_tools.fans import (
    barycentric_stage,
    closed_points,
    enumerate_complete_fans,
    quadrant_fan,
    stellar_subdivision,
    validate_fan,
)
from toric_tools.preorders import (
    INDISTINGUISHABLE_TO_CAP,
    INDISTINGUISHABLE_TO_HEIGHT,
    Comparison,
    Preorder,
    agreement_radius,
    cantor_fiber_experiment,
    compare,
    distance_d,
    distance_dtilde,
    dominated_cone,
    dominating_cones,
    in_U_sigma,
    is_order,
    metric_comparison_experiment,
    random_order,
    separation_height,
    thread,
)

LEX = Preorder.lex(2)
LEX_SWAPPED = Preorder(2, ((0, 1), (1, 0)))
Q = quadrant_fan(2)

vec = st.tuples(st.integers(-20, 20), st.integers(-20, 20))
rows2 = st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=0, max_size=2)


def cone(*rays):
    return Cone.from_generators(rays)


def test_compare_examples():
    assert compare(LEX, (1, -5), (0, 100)) is Comparison.GREATER
    assert compare(Preorder.trivial(2), (3, 4), (-7, 1)) is Comparison.EQUAL
    assert compare(Preorder(2, ((1, 1),)), (2, -2), (0, 0)) is Comparison.EQUAL


def test_compare_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        compare(LEX, (1, 2, 3), (0, 0))
    with pytest.raises(InputError):
        Preorder(2, ((1, 0), (0, 1), (1, 1)))


@settings(max_examples=500, deadline=None)
@given(rows2, vec, vec, vec)
def test_compare_additive(rows, m, n, o):
    w = Preorder(2, tuple(rows))
    shift = lambda v: (v[0] + o[0], v[1] + o[1])
    assert compare(w, m, n) == compare(w, shift(m), shift(n))
    assert compare(w, m, n) == -compare(w, n, m)


@settings(max_examples=200, deadline=None)
@given(rows2, vec, vec, st.integers(1, 9), st.integers(0, 1))
def test_row_scaling_invariance(rows, m, n, k, i):
    w = Preorder(2, tuple(rows))
    if i >= len(rows):
        return
    scaled = list(rows)
    scaled[i] = tuple(k * x for x in rows[i])
    assert compare(w, m, n) == compare(Preorder(2, tuple(scaled)), m, n)


def test_is_order():
    assert is_order(LEX)
    assert not is_order(Preorder(2, ((1, 1),)))
    assert is_order(Preorder(2, ((1, 1), (0, 1))))
    assert not is_order(Preorder.trivial(2))


def test_in_U_sigma():
    assert in_U_sigma(LEX, cone((1, 0), (0, 1)))
    assert not in_U_sigma(LEX, cone((-1, 0), (0, -1)))
    assert in_U_sigma(Preorder.trivial(2), cone((1, 2), (-3, 1)))


def test_dominated_cone_examples():
    assert dominated_cone(LEX, Q).cone == cone((1, 0), (0, 1))
    r = dominated_cone(Preorder(2, ((1, 1),)), Q)
    assert r.cone == cone((1, 0), (0, 1))
    assert r.equivalence_face == Cone.zero(2)
    t = dominated_cone(Preorder.trivial(2), Q)
    assert t.cone == Cone.zero(2)
    assert t.equivalence_face.dim == 2


def test_rank_one_preorder_has_nontrivial_equivalence_face():
    r = dominated_cone(Preorder(2, ((1, 0),)), Q)
    assert r.cone == cone((1, 0))
    assert r.equivalence_face.lineality == ((0, 1),)


def test_no_dominated_cone_on_incomplete_fan():
    f = validate_fan([cone((1, 0), (0, 1))])
    with pytest.raises(NoDominatedCone):
        dominated_cone(Preorder(2, ((-1, 0), (0, -1))), f)


def test_domination_unique_random():
    rng = random.Random(11)
    fans = [random_complete_fan(rng) for _ in range(5)]
    for _ in range(40):
        w = random_order(rng)
        for f in fans:
            found = dominating_cones(w, f)
            assert len(found) == 1 and found[0].dim == 2


def test_every_maximal_cone_is_dominated_by_some_order():
    rng = random.Random(5)
    for f in [random_complete_fan(rng) for _ in range(5)] + [quadrant_fan(2)]:
        for c in closed_points(f):
            v = tuple(map(sum, zip(*c.rays)))
            w = Preorder(2, (v, (1, 0) if v[0] * 0 - v[1] * 1 != 0 else (0, 1)))
            assert is_order(w)
            assert dominated_cone(w, f).cone == c


def test_domination_rank3():
    f = quadrant_fan(3)
    w = Preorder.lex(3)
    assert dominated_cone(w, f).cone == Cone.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    w2 = Preorder(3, ((1, 0, 0),))
    r = dominated_cone(w2, f)
    assert r.cone == Cone.from_generators([(1, 0, 0)])
    assert r.equivalence_face.dim == 2


def test_thread_examples():
    tower = [Q]
    for v in [(1, 1), (2, 1), (3, 1)]:
        tower.append(stellar_subdivision(tower[-1], v))
    th = thread(LEX, tower)
    assert th.cones == (cone((1, 0), (0, 1)), cone((1, 0), (1, 1)), cone((1, 0), (2, 1)), cone((1, 0), (3, 1)))
    assert thread(LEX, [Q, Q, Q]).cones == (cone((1, 0), (0, 1)),) * 3
    assert set(thread(Preorder.trivial(2), tower).cones) == {Cone.zero(2)}


def test_thread_nesting_random():
    rng = random.Random(2)
    tower = [Q]
    for _ in range(3):
        tower.append(barycentric_stage(tower[-1]))
    for _ in range(20):
        th = thread(random_order(rng), tower)
        assert all(a.contains_cone(b) for a, b in zip(th.cones, th.cones[1:]))


def test_dtilde_examples():
    assert distance_dtilde(LEX, LEX) == 0
    assert distance_dtilde(LEX, Preorder(2, ((2, 0), (0, 3)))) == 0
    assert distance_dtilde(LEX, LEX_SWAPPED) == 1
    prev = Fraction(1)
    for N in (5, 10, 20):
        d = distance_dtilde(LEX, Preorder(2, ((N, 1), (0, 1))))
        assert d <= prev
        prev = d
    assert prev < Fraction(1, 5)


@pytest.mark.parametrize("seed", range(4))
def test_agreement_radius_matches_pair_scan(seed):
    rng = random.Random(seed)
    w1, w2 = random_order(rng, bound=2), random_order(rng, bound=2)
    assert agreement_radius(w1, w2, 6) == brute_agreement_radius(w1.rows, w2.rows, 6)


def test_dtilde_cap_marker():
    w2 = Preorder(2, ((100, 1), (0, 1)))
    assert distance_dtilde(LEX, w2, cap=5) == INDISTINGUISHABLE_TO_CAP


def test_d_examples():
    assert distance_d(LEX, LEX) == 0
    assert distance_d(LEX, Preorder(2, ((-1, 0), (0, 1)))) == 1
    assert distance_d(LEX, LEX_SWAPPED) == 1
    near = Preorder(2, ((20, 1), (0, 1)))
    assert distance_d(LEX, near, 3) == INDISTINGUISHABLE_TO_HEIGHT
    assert separation_height(LEX, Preorder(2, ((2, 1), (0, 1))), 5) == 2


def test_d_matches_enumeration_at_height_one():
    fans = list(enumerate_complete_fans(2, 1))
    rng = random.Random(9)
    for _ in range(15):
        w1, w2 = random_order(rng), random_order(rng)
        brute = any(dominated_cone(w1, f).cone != dominated_cone(w2, f).cone for f in fans)
        assert brute == (separation_height(w1, w2, 1) == 1)


def test_ultrametric_d():
    rng = random.Random(4)
    for _ in range(15):
        a, b, c = (random_order(rng) for _ in range(3))
        r_ac, r_ab, r_bc = (separation_height(x, y, 3) for x, y in [(a, c), (a, b), (b, c)])
        if r_ac is not None:
            assert min(r for r in (r_ab, r_bc) if r is not None) <= r_ac


def test_ultrametric_dtilde():
    rng = random.Random(6)
    for _ in range(15):
        a, b, c = (random_order(rng) for _ in range(3))
        dac, dab, dbc = (agreement_radius(x, y, 20) for x, y in [(a, c), (a, b), (b, c)])
        if dac is not None:
            assert min(r for r in (dab, dbc) if r is not None) <= dac


def test_cantor_fibers():
    tower = [Q, stellar_subdivision(stellar_subdivision(stellar_subdivision(stellar_subdivision(Q, (1, 1)), (1, -1)), (-1, 1)), (-1, -1))]
    tower.append(barycentric_stage(tower[-1]))
    rows = cantor_fiber_experiment(tower)
    assert {r["fiber"] for r in rows} == {2}
    flat = cantor_fiber_experiment([Q, stellar_subdivision(Q, (1, 1))])
    assert sorted(r["fiber"] for r in flat) == [1, 1, 1, 2]


def test_cantor_fibers_rejects_non_refinement():
    with pytest.raises(InputError):
        cantor_fiber_experiment([stellar_subdivision(Q, (1, 1)), Q])


def test_metric_comparison_report():
    rep = metric_comparison_experiment(samples=6, seed=1, height_cap=2, radius_cap=10)
    assert len(rep["table"]) == 6
    assert rep == metric_comparison_experiment(samples=6, seed=1, height_cap=2, radius_cap=10)
    for row in rep["table"]:
        assert not isinstance(row["d"], float) and not isinstance(row["dtilde"], float)


def test_canonical_form():
    assert Preorder(2, ((2, 0), (5, 3))).canonical() == ((1, 0), (0, 1))
    assert Preorder(2, ((1, 1), (2, 2))).canonical() == ((1, 1),)
    assert Preorder.trivial(2).canonical() == ()


def test_hilbert_basis_signs_decide_U_sigma():
    c = cone((1, 0), (1, 2))
    w = Preorder(2, ((1, 0), (0, 1)))
    assert in_U_sigma(w, c) == all(compare(w, h, (0, 0)) >= 0 for h in hilbert_basis(c))
