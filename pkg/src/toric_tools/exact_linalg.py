"""Exact integer linear algebra: Smith form, lattices, saturation and indices.

Everything works on plain Python ints (arbitrary precision).  Matrices are
tuples of row tuples; vectors are tuples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InputError

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


def as_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    mat = tuple(tuple(int(a) for a in row) for row in rows)
    if mat and len({len(r) for r in mat}) != 1:
        raise DimensionMismatch("rows of unequal length")
    return mat


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence[int]) -> IntVector:
    """Divide out the gcd of the entries (the zero vector is returned as is)."""
    g = math.gcd(*v)
    if g == 0:
        return tuple(v)
    return tuple(a // g for a in v)


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    if any(len(r) != n for r in a):
        raise DimensionMismatch("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals."""
    a = [list(map(Fraction, r)) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def solve_rational(a: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Solve ``x @ a == b`` for a rational row vector ``x``.

    Returns ``None`` when the system is inconsistent.  When the solution is not
    unique, free variables are set to zero.
    """
    rows = len(a)
    cols = len(b)
    # columns of the augmented system: unknowns are x_0..x_{rows-1}
    aug = [[Fraction(a[i][j]) for i in range(rows)] + [Fraction(b[j])] for j in range(cols)]
    pivots = []
    r = 0
    for c in range(rows):
        piv = next((i for i in range(r, cols) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(cols):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in aug[r:]):
        return None
    x = [Fraction(0)] * rows
    for i, c in enumerate(pivots):
        x[c] = aug[i][-1]
    return tuple(x)


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ A @ right == diag(diagonal)`` with unimodular transforms."""

    left: IntMatrix
    right: IntMatrix
    diagonal: IntVector

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def elementary_divisors(self) -> IntVector:
        return tuple(d for d in self.diagonal if d)

    def diagonal_matrix(self, shape: tuple[int, int]) -> IntMatrix:
        m, n = shape
        return tuple(
            tuple(self.diagonal[i] if i == j else 0 for j in range(n)) for i in range(m)
        )


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with left and right unimodular transforms."""
    a = [list(map(int, r)) for r in a]
    if not a or not a[0]:
        raise InputError("empty matrix")
    m, n = len(a), len(a[0])
    u = [list(r) for r in identity(m)]
    v = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            # clear column t and row t by euclidean steps
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        dirty = True
            if dirty:
                cand = [(abs(a[i][t]), i, None) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), None, j) for j in range(t + 1, n) if a[t][j]]
                best = min(cand, key=lambda c: c[0])
                if best[0] < abs(a[t][t]):
                    if best[1] is not None:
                        swap_rows(t, best[1])
                    else:
                        swap_cols(t, best[2])
                continue
            # divisibility of the remaining block
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    diagonal = tuple(a[i][i] for i in range(min(m, n)))
    return SmithDecomposition(as_matrix(u), as_matrix(v), diagonal)


def inverse_unimodular(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    out = []
    for row in aug:
        tail = row[n:]
        if any(x.denominator != 1 for x in tail):
            raise InputError("matrix is not unimodular")
        out.append(tuple(int(x) for x in tail))
    return tuple(out)


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Basis (as rows) of the saturated lattice ``{x in Z^n : rows @ x == 0}``."""
    rows = [r for r in rows]
    if ncols is None:
        ncols = len(rows[0])
    if not rows or not any(any(r) for r in rows):
        return identity(ncols)
    snf = smith_normal_form(rows)
    k = snf.rank
    return tuple(tuple(snf.right[i][j] for i in range(ncols)) for j in range(k, ncols))


def _hermite_rows(gens: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row echelon basis of the row lattice (integer row operations only)."""
    a = [list(r) for r in gens if any(r)]
    if not a:
        return []
    n = len(a[0])
    out = []
    col = 0
    while a and col < n:
        nz = [r for r in a if r[col]]
        rest = [r for r in a if not r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            nxt = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            nz = nxt
        p = nz[0]
        if p[col] < 0:
            p = [-x for x in p]
        out.append(p)
        a = rest
        col += 1
    return out


@dataclass(frozen=True, eq=False)
class Lattice:
    """Integer row span of ``generators`` inside ``Z^ambient_rank``.

    Zero rows are allowed and ignored.  Equality is equality of subgroups.
    """

    ambient_rank: int
    generators: IntMatrix

    def __post_init__(self):
        if self.ambient_rank <= 0:
            raise InputError("ambient rank must be positive")
        gens = as_matrix(self.generators)
        if any(len(g) != self.ambient_rank for g in gens):
            raise DimensionMismatch("generator length differs from ambient rank")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ambient_rank: int | None = None) -> "Lattice":
        rows = as_matrix(rows)
        if ambient_rank is None:
            if not rows:
                raise InputError("ambient rank needed for an empty generator list")
            ambient_rank = len(rows[0])
        return cls(ambient_rank, rows)

    @property
    def nonzero_generators(self) -> IntMatrix:
        return tuple(g for g in self.generators if any(g))

    @property
    def rank(self) -> int:
        return rank(self.generators) if self.generators else 0

    def basis(self) -> IntMatrix:
        return as_matrix(_hermite_rows(self.generators))

    def smith(self) -> SmithDecomposition | None:
        gens = self.nonzero_generators
        return smith_normal_form(gens) if gens else None

    def __contains__(self, v) -> bool:
        return lattice_contains(self, v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return (
            self.ambient_rank == other.ambient_rank
            and all(lattice_contains(other, g) for g in self.generators)
            and all(lattice_contains(self, g) for g in other.generators)
        )

    def __hash__(self):
        return hash((self.ambient_rank, self.rank))


def lattice_contains(lat: Lattice, v: Sequence[int]) -> bool:
    """Exact membership of ``v`` in the lattice, by Hermite reduction."""
    v = list(map(int, v))
    if len(v) != lat.ambient_rank:
        raise DimensionMismatch(f"vector of length {len(v)} in Z^{lat.ambient_rank}")
    for row in _hermite_rows(lat.generators):
        c = next(i for i, x in enumerate(row) if x)
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def lattice_coordinates(lat: Lattice, v: Sequence[int]) -> IntVector | None:
    """Integer coefficients ``x`` with ``x @ generators == v``, or None.

    Coefficients refer to ``lat.generators`` including any zero rows (which get 0).
    """
    v = tuple(map(int, v))
    if len(v) != lat.ambient_rank:
        raise DimensionMismatch(f"vector of length {len(v)} in Z^{lat.ambient_rank}")
    idx = [i for i, g in enumerate(lat.generators) if any(g)]
    if not idx:
        return (0,) * len(lat.generators) if not any(v) else None
    snf = smith_normal_form([lat.generators[i] for i in idx])
    w = matmul([v], snf.right)[0]
    y = []
    for i, wi in enumerate(w):
        d = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if d == 0:
            if wi:
                return None
            y.append(0)
        else:
            if wi % d:
                return None
            y.append(wi // d)
    y = y[: len(idx)] + [0] * max(0, len(idx) - len(y))
    x_short = matmul([y], snf.left)[0]
    x = [0] * len(lat.generators)
    for i, c in zip(idx, x_short):
        x[i] = c
    return tuple(x)


def saturate(lat: Lattice) -> Lattice:
    """``(L tensor Q) intersected with Z^n``, via the Smith form."""
    snf = lat.smith()
    if snf is None:
        return Lattice(lat.ambient_rank, ())
    inv = inverse_unimodular(snf.right)
    return Lattice(lat.ambient_rank, inv[: snf.rank])


def is_saturated(lat: Lattice) -> bool:
    snf = lat.smith()
    return snf is None or all(d == 1 for d in snf.elementary_divisors)


def torsion(lat: Lattice) -> list[tuple[int, IntVector]]:
    """Pairs ``(d, v)``: ``v`` lies in the saturation but not in ``L``, and ``d*v`` does.

    One pair per elementary divisor ``d > 1``; the ``d`` values are the invariant
    factors of ``saturate(L) / L``.
    """
    snf = lat.smith()
    if snf is None:
        return []
    inv = inverse_unimodular(snf.right)
    basis = lat.basis()
    return [
        (d, _shorten(inv[i], basis)) for i, d in enumerate(snf.elementary_divisors) if d > 1
    ]


def _shorten(v: Sequence[int], basis: Sequence[Sequence[int]]) -> IntVector:
    """A short representative of ``v + L``: greedy nearest-multiple subtraction."""
    v = list(v)
    norm = dot(v, v)
    improved = True
    while improved:
        improved = False
        for b in basis:
            bb = dot(b, b)
            q = round(Fraction(dot(v, b), bb))
            if q:
                w = [x - q * y for x, y in zip(v, b)]
                if dot(w, w) < norm:
                    v, norm, improved = w, dot(w, w), True
    return tuple(v)


def sublattice_index(lat: Lattice) -> int | float:
    """``[Z^r : L]`` for full-rank ``L``; ``math.inf`` when the rank is deficient."""
    snf = lat.smith()
    if snf is None or snf.rank < lat.ambient_rank:
        return math.inf
    return math.prod(snf.elementary_divisors)
