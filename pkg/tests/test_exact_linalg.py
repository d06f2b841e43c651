import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from toric_tools.errors import InputError
from toric_tools.exact_linalg import (
    Lattice,
    det,
    integer_kernel,
    inverse_unimodular,
    is_saturated,
    lattice_contains,
    lattice_coordinates,
    matmul,
    primitive,
    saturate,
    smith_normal_form,
    sublattice_index,
    torsion,
)

small = st.integers(-9, 9)


def matrices(max_rows=3, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def test_snf_diagonal_small():
    assert smith_normal_form([[2, 0], [0, 3]]).elementary_divisors == (1, 6)


def test_snf_of_pair_lattice():
    snf = smith_normal_form([[-3, 2, 0], [-12, -2, 4]])
    assert snf.elementary_divisors == (1, 2)


def test_empty_matrix_rejected():
    with pytest.raises(InputError):
        smith_normal_form([])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_transforms(a):
    snf = smith_normal_form(a)
    m, n = len(a), len(a[0])
    assert matmul(matmul(snf.left, a), snf.right) == snf.diagonal_matrix((m, n))
    assert abs(det(snf.left)) == 1 and abs(det(snf.right)) == 1
    divs = snf.elementary_divisors
    assert all(d > 0 for d in divs)
    assert all(b % a == 0 for a, b in zip(divs, divs[1:]))


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_snf_matches_sympy(a):
    ours = smith_normal_form(a).elementary_divisors
    theirs = sympy_snf(Matrix(a), domain=ZZ)
    diag = [abs(int(theirs[i, i])) for i in range(min(theirs.shape))]
    assert ours == tuple(d for d in diag if d)


def test_membership_and_torsion_witness():
    lat = Lattice(3, ((-3, 2, 0), (-12, -2, 4)))
    assert (-6, -1, 2) not in lat
    assert (-12, -2, 4) in lat
    assert not is_saturated(lat)
    [(d, w)] = torsion(lat)
    assert d == 2
    assert w not in lat and tuple(2 * x for x in w) in lat
    # same class as (-6, -1, 2) modulo L
    assert tuple(a - b for a, b in zip(w, (-6, -1, 2))) in lat


@pytest.mark.parametrize("p", [2, 3, 5])
def test_torsion_of_family(p):
    lat = Lattice(3, ((-(p + 1), p, 0), (-p * p * (p + 1), -p, p * p)))
    tors = torsion(lat)
    assert [d for d, _ in tors] == [p]
    w = tors[0][1]
    assert not lattice_contains(lat, w)
    assert lattice_contains(lat, tuple(p * x for x in w))


def test_saturation_contains_lattice():
    lat = Lattice(3, ((-3, 2, 0), (-12, -2, 4)))
    sat = saturate(lat)
    assert is_saturated(sat)
    assert all(g in sat for g in lat.generators)
    assert (-6, -1, 2) in sat


def test_index():
    assert sublattice_index(Lattice(1, ((8,), (12,), (30,), (63,)))) == 1
    assert sublattice_index(Lattice(2, ((2, 0), (0, 3)))) == 6
    assert math.isinf(sublattice_index(Lattice(2, ((1, 0),))))


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(small, min_size=3, max_size=3))
def test_coordinates_reproduce_vector(a, coeffs):
    n = len(a[0])
    lat = Lattice(n, tuple(map(tuple, a)))
    v = tuple(sum(c * row[j] for c, row in zip(coeffs, a)) for j in range(n))
    coords = lattice_coordinates(lat, v)
    assert coords is not None
    assert tuple(sum(c * row[j] for c, row in zip(coords, a)) for j in range(n)) == v
    assert lattice_contains(lat, v)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_is_saturated_and_annihilated(a):
    n = len(a[0])
    ker = integer_kernel(a, n)
    for k in ker:
        assert all(sum(x * y for x, y in zip(row, k)) == 0 for row in a)
    if ker:
        assert is_saturated(Lattice(n, ker))


def test_primitive_and_unimodular_inverse():
    assert primitive((4, -6, 0)) == (2, -3, 0)
    m = ((2, 1), (1, 1))
    assert matmul(m, inverse_unimodular(m)) == ((1, 0), (0, 1))
    with pytest.raises(InputError):
        inverse_unimodular(((2, 0), (0, 1)))


def test_lattice_equality_is_mutual_membership():
    assert Lattice(2, ((1, 0), (0, 1))) == Lattice(2, ((1, 1), (0, 1)))
    assert Lattice(2, ((2, 0), (0, 1))) != Lattice(2, ((1, 0), (0, 1)))
