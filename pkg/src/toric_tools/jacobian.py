"""Jacobians of binomial systems, relation-matrix minors and tame projections."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .binomial import BinomialSystem, lattice_of
from .errors import ComputationError, DimensionMismatch, InputError, NoTameProjection
from .exact_linalg import IntMatrix, IntVector, Lattice, det, is_saturated, rank, solve_rational, sublattice_index
from .gf import MERSENNE_61, ExtensionField, PrimeField

# A polynomial is a dict exponent-tuple -> integer coefficient.
Poly = dict


def _poly_add_term(poly: Poly, exp, coeff, p: int):
    c = poly.get(exp, 0) + coeff
    if p:
        c %= p
    if c:
        poly[exp] = c
    else:
        poly.pop(exp, None)


def poly_mul(a: Poly, b: Poly, p: int = 0) -> Poly:
    out: Poly = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            _poly_add_term(out, tuple(x + y for x, y in zip(e1, e2)), c1 * c2, p)
    return out


def poly_add(a: Poly, b: Poly, p: int = 0, sign: int = 1) -> Poly:
    out = dict(a)
    for e, c in b.items():
        _poly_add_term(out, e, sign * c, p)
    return out


def poly_pow(a: Poly, n: int, p: int = 0) -> Poly:
    nvar = len(next(iter(a))) if a else 0
    out: Poly = {(0,) * nvar: 1}
    for _ in range(n):
        out = poly_mul(out, a, p)
    return out


def equation_polys(system: BinomialSystem, reduce_mod_p: bool = True) -> list[Poly]:
    """U^m - lam U^n + deformation terms, as integer (or mod p) polynomials."""
    p = system.field.characteristic if reduce_mod_p else 0
    out = []
    for b, terms in zip(system.binomials, system.deformations):
        f: Poly = {}
        _poly_add_term(f, b.m, 1, p)
        _poly_add_term(f, b.n, -_as_int(b.lam), p)
        for e, c in terms:
            _poly_add_term(f, e, _as_int(c), p)
        out.append(f)
    return out


def _as_int(c) -> int:
    c = Fraction(c)
    if c.denominator != 1:
        raise InputError(f"coefficient {c} is not an integer")
    return int(c)


def derivative(f: Poly, j: int, p: int = 0) -> Poly:
    out: Poly = {}
    for e, c in f.items():
        if e[j]:
            e2 = e[:j] + (e[j] - 1,) + e[j + 1 :]
            _poly_add_term(out, e2, c * e[j], p)
    return out


@dataclass(frozen=True)
class SymbolicJacobian:
    """entries[l][j] = d(equation l)/d(variable j), coefficients in F_p."""

    variables: tuple[str, ...]
    characteristic: int
    entries: tuple[tuple[Poly, ...], ...]

    def minor(self, columns: Sequence[int], rows: Sequence[int]) -> Poly:
        return poly_det([[self.entries[i][j] for j in columns] for i in rows], self.characteristic)

    def format_entry(self, i: int, j: int) -> str:
        return format_poly(self.entries[i][j], self.variables)


def format_poly(f: Poly, names: Sequence[str]) -> str:
    if not f:
        return "0"
    parts = []
    for e, c in sorted(f.items(), reverse=True):
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def jacobian(system: BinomialSystem) -> SymbolicJacobian:
    """Formal jacobian matrix with coefficients reduced modulo the characteristic."""
    p = system.field.characteristic
    if not p:
        raise InputError("the jacobian is taken over a field of prime characteristic")
    polys = equation_polys(system)
    nvar = len(system.variables)
    entries = tuple(tuple(derivative(f, j, p) for j in range(nvar)) for f in polys)
    # coefficient -1 written as p - 1 by the reduction; present it symmetrically
    entries = tuple(
        tuple({e: (c - p if c > p // 2 else c) for e, c in entry.items()} for entry in row)
        for row in entries
    )
    return SymbolicJacobian(system.variables, p, entries)


def poly_det(mat: Sequence[Sequence[Poly]], p: int = 0) -> Poly:
    """Leibniz expansion; matrices here are at most a few rows."""
    n = len(mat)
    total: Poly = {}
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        term = None
        for i, j in enumerate(perm):
            entry = mat[i][j]
            if not entry:
                term = {}
                break
            term = entry if term is None else poly_mul(term, entry, p)
        if term:
            total = poly_add(total, term, p, sign)
    return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def relation_matrix(system: BinomialSystem) -> IntMatrix:
    return tuple(b.difference for b in system.binomials)


@dataclass(frozen=True)
class TameProjection:
    kept_variables: tuple[int, ...]
    differentiated: tuple[int, ...]
    rows: tuple[int, ...]
    minor_value: int
    index: int

    def names(self, variables: Sequence[str]) -> tuple[str, ...]:
        return tuple(variables[i] for i in self.kept_variables)


def find_tame_projections(
    relations: Sequence[Sequence[int]], gamma: Sequence[Sequence[int]], p: int
) -> list[TameProjection]:
    """All projections to r coordinates whose relation minor is prime to p.

    ``relations`` has one row m - n per binomial (L rows, N columns); ``gamma``
    has one row per variable in Z^r.
    """
    relations = [tuple(r) for r in relations]
    gamma = [tuple(g) for g in gamma]
    if not relations or not gamma:
        raise InputError("empty relation or generator matrix")
    nvar = len(gamma)
    r = len(gamma[0])
    if any(len(row) != nvar for row in relations):
        raise DimensionMismatch("relation rows must have one entry per variable")
    c = nvar - r
    if c <= 0 or len(relations) < c:
        raise InputError(f"need at least c = N - r = {c} > 0 relations")
    row_choices = (
        [tuple(range(c))] if len(relations) == c else list(itertools.combinations(range(len(relations)), c))
    )
    full_rows = len(relations) == c
    rel_lattice = Lattice(nvar, tuple(relations))
    gale = full_rows and is_saturated(rel_lattice) and rel_lattice.rank == c
    found = []
    for cols in itertools.combinations(range(nvar), c):
        kept = tuple(i for i in range(nvar) if i not in cols)
        for rows in row_choices:
            minor = det([[relations[i][j] for j in cols] for i in rows])
            if minor % p == 0:
                continue
            kept_gamma = [gamma[i] for i in kept]
            index = sublattice_index(Lattice(r, tuple(kept_gamma)))
            if math.isinf(index):
                continue
            if gale and abs(minor) != index:
                raise ComputationError(
                    f"|minor| = {abs(minor)} differs from the index {index} for kept {kept}"
                )
            found.append(TameProjection(kept, cols, rows, minor, int(index)))
    if not found:
        raise NoTameProjection(f"no minor prime to {p}")
    return found


def _gamma_for(system: BinomialSystem, gamma) -> list[IntVector]:
    if gamma is None:
        return [(w,) for w in system.weights]
    gamma = [tuple(g) for g in gamma]
    if len(gamma) != len(system.variables):
        raise DimensionMismatch("one gamma row per variable")
    return gamma


def _eval_poly(f: Poly, point, fld):
    total = fld.element(0)
    for e, c in f.items():
        term = fld.element(c)
        for x, k in zip(point, e):
            if k:
                term = fld.mul(term, fld.pow(x, k))
        total = fld.add(total, term)
    return total


def _eval_det(mat, fld):
    n = len(mat)
    total = fld.element(0)
    for perm in itertools.permutations(range(n)):
        term = fld.element(1)
        for i, j in enumerate(perm):
            term = fld.mul(term, mat[i][j])
        total = fld.add(total, term) if _perm_sign(perm) > 0 else fld.sub(total, term)
    return total


def _torus_point(gamma, fld):
    r = len(gamma[0])
    t = [fld.random_nonzero() for _ in range(r)]
    point = []
    for g in gamma:
        u = fld.element(1)
        for tj, k in zip(t, g):
            if k < 0:
                raise InputError("parametrization exponents must be non-negative")
            u = fld.mul(u, fld.pow(tj, k))
        point.append(u)
    return point


def minor_congruence_check(
    system: BinomialSystem,
    columns: Sequence[int],
    rows: Sequence[int] | None = None,
    trials: int = 20,
    seed: int = 0,
    gamma: Sequence[Sequence[int]] | None = None,
) -> bool:
    """U_{k_1}...U_{k_c} J_{G,L'} == (prod U^{m^l}) Det_{G,L'}(<m - n>) on the variety.

    Both sides are evaluated at ``trials`` random points u_i = t^{gamma_i} of the
    parametrized torus, once over the 61-bit prime field (integer coefficients)
    and once over an extension of F_p of at least 2^61 elements (coefficients
    reduced mod p).  Probabilistic: agreement is checked, not proved.
    """
    if not system.is_pure:
        raise InputError("the congruence is stated for pure binomial systems")
    columns = tuple(columns)
    rows = tuple(range(len(system.binomials))) if rows is None else tuple(rows)
    if len(columns) != len(rows):
        raise InputError("need as many rows as differentiated columns")
    gamma = _gamma_for(system, gamma)
    rng = random.Random(seed)
    rel = relation_matrix(system)
    minor = det([[rel[i][j] for j in columns] for i in rows])
    p = system.field.characteristic
    fields = [(PrimeField(MERSENNE_61, rng), 0)]
    if p:
        fields.append((ExtensionField.with_bits(p, 61, rng), p))
    for fld, modulus in fields:
        polys = equation_polys(system, reduce_mod_p=bool(modulus))
        jac = [[derivative(polys[i], j, modulus) for j in columns] for i in rows]
        for _ in range(trials):
            point = _torus_point(gamma, fld)
            if any(not fld.is_zero(_eval_poly(f, point, fld)) for f in polys):
                raise InputError("the parametrization t^gamma does not satisfy the binomials")
            lhs = _eval_det([[_eval_poly(e, point, fld) for e in row] for row in jac], fld)
            for k in columns:
                lhs = fld.mul(lhs, point[k])
            rhs = fld.element(minor)
            for i in rows:
                rhs = fld.mul(rhs, _eval_poly({system.binomials[i].m: 1}, point, fld))
            if not fld.is_zero(fld.sub(lhs, rhs)):
                return False
    return True


def minor_nonvanishing(
    system: BinomialSystem,
    columns: Sequence[int],
    rows: Sequence[int] | None = None,
    trials: int = 20,
    seed: int = 0,
) -> bool:
    """Evaluate the jacobian minor at random torus points over an extension of F_p.

    True iff the minor is nonzero at every sampled point (all coordinates nonzero).
    """
    rows = tuple(range(len(system.binomials))) if rows is None else tuple(rows)
    jac = jacobian(system)
    minor = jac.minor(columns, rows)
    rng = random.Random(seed)
    fld = ExtensionField.with_bits(system.field.characteristic, 61, rng)
    for _ in range(trials):
        point = [fld.random_nonzero() for _ in system.variables]
        if fld.is_zero(_eval_poly(minor, point, fld)):
            return False
    return True


def projection_is_finite(gamma: Sequence[Sequence[int]], kept: Sequence[int]) -> bool:
    """Whether every gamma_j lies in the cone spanned by the kept gamma's."""
    gamma = [tuple(g) for g in gamma]
    basis = [gamma[i] for i in kept]
    if rank(basis) != len(basis):
        raise InputError("kept generators are linearly dependent")
    for g in gamma:
        coeffs = solve_rational(basis, g)
        if coeffs is None or any(c < 0 for c in coeffs):
            return False
    return True
