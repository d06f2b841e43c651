import pytest
import sympy

from toric_tools.binomial import (
    Binomial,
    BinomialSystem,
    campillo_plane_pair,
    campillo_system,
    is_overweight,
    is_overweight_deformation_of_prime,
    laurent_membership,
    lattice_of,
    primality_report,
)
from toric_tools.errors import DimensionMismatch, InconsistentCharacter, InputError
from toric_tools.exact_linalg import Lattice, lattice_contains
from toric_tools.series import CoefficientField


@pytest.mark.parametrize("p", [2, 3, 5])
def test_campillo_system_is_saturated(p):
    rep = primality_report(campillo_system(p))
    assert rep.saturated and rep.prime
    assert rep.torsion_divisors == ()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_campillo_system_is_overweight_deformation_of_prime(p):
    assert is_overweight_deformation_of_prime(campillo_system(p))
    ok, rows = is_overweight(campillo_system(p))
    assert [r.deformation_weights for r in rows][:2] == [
        (campillo_system(p).weights[2],),
        (campillo_system(p).weights[3],),
    ]


def test_pair_p2_not_saturated():
    system = campillo_plane_pair(2)
    rep = primality_report(system)
    lat, _ = lattice_of(system)
    assert not rep.saturated
    assert rep.torsion_divisors == (2,)
    w = rep.witness
    assert not lattice_contains(lat, w)
    assert lattice_contains(lat, tuple(2 * x for x in w))
    # u2^2 - x^6 y is the class of the report's witness
    assert lattice_contains(lat, tuple(a - b for a, b in zip(w, (-6, -1, 2))))
    assert rep.notes


@pytest.mark.parametrize("p", [3, 5])
def test_pair_odd_p_witness(p):
    rep = primality_report(campillo_plane_pair(p))
    assert rep.torsion_divisors == (p,)
    assert rep.witness == (-p * (p + 1), -1, p)
    assert rep.witness_multiplier == p


def test_pair_lattice_matches_closed_form():
    for p in (2, 3, 5):
        lat, _ = lattice_of(campillo_plane_pair(p))
        assert lat == Lattice(3, ((-(p + 1), p, 0), (-p * p * (p + 1), -p, p * p)))


def test_laurent_membership_p2():
    system = campillo_plane_pair(2)
    _, chi = lattice_of(system)
    b = Binomial((0, 0, 2), (6, 1, 0))
    b2 = Binomial((0, 0, 4), (12, 2, 0))
    assert not laurent_membership(b, chi)
    assert laurent_membership(b2, chi)


def test_laurent_membership_p3_character():
    system = campillo_plane_pair(3)
    _, chi = lattice_of(system)
    assert not laurent_membership(Binomial((0, 0, 3), (12, 1, 0), 2), chi)
    # (u2^3 - 2 x^12 y)^3 = u2^9 - 8 x^36 y^3 = u2^9 - 2 x^36 y^3 in characteristic 3
    assert laurent_membership(Binomial((0, 0, 9), (36, 3, 0), 8), chi)
    assert not laurent_membership(Binomial((0, 0, 9), (36, 3, 0), 1), chi)


def test_frobenius_identity_p3():
    x, y, u = sympy.symbols("x y u2")
    lhs = sympy.Poly((u**3 - 2 * x**12 * y) ** 3, x, y, u, modulus=3)
    rhs = sympy.Poly(u**9 - 2 * x**36 * y**3, x, y, u, modulus=3)
    assert lhs == rhs


def test_p2_square_identity():
    # (u2^2 - x^6 y)^2 = (u2^4 - x^15) + x^12 (x^3 - y^2) mod 2
    x, y, u = sympy.symbols("x y u2")
    lhs = (u**2 - x**6 * y) ** 2
    rhs = (u**4 - x**15) + x**12 * (x**3 - y**2)
    assert sympy.Poly(lhs - rhs, x, y, u, modulus=2).is_zero


def test_overweight_report_p2_pair():
    ok, rows = is_overweight(campillo_plane_pair(2, deformed=True))
    assert ok
    assert (rows[0].weight_m, rows[0].weight_n, rows[0].deformation_weights) == (24, 24, (30,))
    assert (rows[1].weight_m, rows[1].weight_n) == (120, 120)
    assert not is_overweight_deformation_of_prime(campillo_plane_pair(2, deformed=True))


def test_unbalanced_system_not_overweight():
    fld = CoefficientField(2)
    s = BinomialSystem(("x", "y"), (2, 3), fld, (Binomial((0, 2), (2, 0)),), ((((1, 1), 1),),))
    ok, rows = is_overweight(s)
    assert not ok and not rows[0].balanced


def test_inconsistent_character():
    fld = CoefficientField(5)
    s = BinomialSystem(("x", "y"), (1, 1), fld, (Binomial((1, 0), (0, 1), 2), Binomial((2, 0), (0, 2), 3)))
    with pytest.raises(InconsistentCharacter):
        lattice_of(s)


def test_binomial_validation():
    with pytest.raises(InputError):
        Binomial((1, 0), (1, 0))
    with pytest.raises(InputError):
        Binomial((-1, 0), (0, 1))
    with pytest.raises(DimensionMismatch):
        Binomial((1, 0), (0, 1, 0))
    with pytest.raises(DimensionMismatch):
        BinomialSystem(("x",), (1, 2), CoefficientField(2), ())


def test_cancelled():
    assert Binomial((3, 1), (1, 2)).cancelled() == Binomial((2, 0), (0, 1))
