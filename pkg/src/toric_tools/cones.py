"""Rational polyhedral cones: double description, duals, faces, Hilbert bases.

Cones are normalized on construction: generators become primitive, redundant
ones are dropped, and the lineality space (if any) is kept separately in
Hermite form so that equal cones compare equal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InputError, UnsupportedRank
from .exact_linalg import (
    IntVector,
    det,
    dot,
    integer_kernel,
    inverse_unimodular,
    matmul,
    primitive,
    rank,
    smith_normal_form,
)


def _neg(v: Sequence[int]) -> IntVector:
    return tuple(-a for a in v)


def _dedupe(vectors: Iterable[Sequence[int]]) -> list[IntVector]:
    seen = {}
    for v in vectors:
        v = primitive(v)
        if any(v):
            seen.setdefault(v, None)
    return list(seen)


def double_description(inequalities: Sequence[Sequence[int]], r: int) -> tuple[list[IntVector], list[IntVector]]:
    """Generators of ``{u : <a, u> >= 0 for all a}`` as (lineality basis, rays)."""
    lin = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    rays: list[IntVector] = []
    processed: list[IntVector] = []
    for a in inequalities:
        a = tuple(a)
        if len(a) != r:
            raise DimensionMismatch("inequality length differs from ambient rank")
        if not any(a):
            continue
        vals = [dot(a, b) for b in lin]
        nz = [k for k, v in enumerate(vals) if v]
        if nz:
            k = min(nz, key=lambda k: abs(vals[k]))
            b0, s = lin[k], vals[k]
            if s < 0:
                b0, s = _neg(b0), -s
            lin = [
                primitive(tuple(s * x - vals[i] * y for x, y in zip(b, b0)))
                for i, b in enumerate(lin)
                if i != k
            ]
            rays = [primitive(tuple(s * x - dot(a, rho) * y for x, y in zip(rho, b0))) for rho in rays]
            rays.append(primitive(b0))
        else:
            pos, zero, neg = [], [], []
            for rho in rays:
                v = dot(a, rho)
                (pos if v > 0 else neg if v < 0 else zero).append((rho, v))
            rays = [rho for rho, _ in pos + zero]
            for (p, vp), (n, vn) in itertools.product(pos, neg):
                rays.append(primitive(tuple(vp * x - vn * y for x, y in zip(n, p))))
        processed.append(a)
        rays = _extreme(_dedupe(rays), processed, len(lin), r)
    return lin, rays


def _extreme(rays: list[IntVector], constraints: Sequence[IntVector], lin_dim: int, r: int) -> list[IntVector]:
    target = r - lin_dim - 1
    out = []
    for rho in rays:
        tight = [a for a in constraints if dot(a, rho) == 0]
        if len(tight) == len(constraints) and lin_dim + 1 == r - 0 and not constraints:
            out.append(rho)
        elif rank(tight) == target:
            out.append(rho)
    return out


def _hermite(rows: Sequence[Sequence[int]]) -> tuple[IntVector, ...]:
    """Fully reduced row Hermite form (canonical for the row lattice)."""
    from .exact_linalg import _hermite_rows

    h = _hermite_rows(rows)
    pivots = [next(i for i, x in enumerate(r) if x) for r in h]
    for i, c in enumerate(pivots):
        for k in range(i):
            q = h[k][c] // h[i][c]
            if q:
                h[k] = [x - q * y for x, y in zip(h[k], h[i])]
    return tuple(tuple(r) for r in h)


@dataclass(frozen=True)
class Cone:
    """Cone positively generated by ``rays`` plus the linear span of ``lineality``.

    For strictly convex cones ``lineality`` is empty and ``rays`` are the
    primitive extreme rays in sorted order.
    """

    ambient_rank: int
    rays: tuple[IntVector, ...] = ()
    lineality: tuple[IntVector, ...] = ()

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], ambient_rank: int | None = None) -> "Cone":
        gens = [tuple(map(int, g)) for g in gens]
        if ambient_rank is None:
            if not gens:
                raise InputError("ambient rank needed for the zero cone")
            ambient_rank = len(gens[0])
        if any(len(g) != ambient_rank for g in gens):
            raise DimensionMismatch("generator length differs from ambient rank")
        gens = _dedupe(gens)
        if not gens:
            return cls(ambient_rank)
        dlin, drays = double_description(gens, ambient_rank)
        hrep = drays + dlin + [_neg(v) for v in dlin]
        if hrep:
            lin = integer_kernel(hrep, ambient_rank)
        else:
            lin = tuple(tuple(int(i == j) for j in range(ambient_rank)) for i in range(ambient_rank))
        lin = _hermite(lin) if lin else ()
        target = ambient_rank - len(lin) - 1
        extreme = []
        for g in gens:
            if all(dot(a, g) == 0 for a in hrep):
                continue  # inside the lineality space
            if rank([a for a in hrep if dot(a, g) == 0]) == target:
                extreme.append(_project_out(g, lin))
        return cls(ambient_rank, tuple(sorted(set(extreme))), lin)

    @classmethod
    def zero(cls, r: int) -> "Cone":
        return cls(r)

    @classmethod
    def full(cls, r: int) -> "Cone":
        return cls.from_generators([tuple(int(i == j) * s for j in range(r)) for i in range(r) for s in (1, -1)], r)

    @property
    def generators(self) -> tuple[IntVector, ...]:
        return self.rays + self.lineality + tuple(_neg(v) for v in self.lineality)

    @property
    def is_strictly_convex(self) -> bool:
        return not self.lineality

    @cached_property
    def dim(self) -> int:
        return rank(self.generators) if self.generators else 0

    @cached_property
    def inequalities(self) -> tuple[IntVector, ...]:
        """Normals a with the cone equal to {v : <a, v> >= 0 for all a}."""
        if not self.generators:
            r = self.ambient_rank
            basis = [tuple(int(i == j) for j in range(r)) for i in range(r)]
            return tuple(basis + [_neg(b) for b in basis])
        dlin, drays = double_description(self.generators, self.ambient_rank)
        return tuple(drays + dlin + [_neg(v) for v in dlin])

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.ambient_rank:
            raise DimensionMismatch("vector length differs from ambient rank")
        return all(dot(a, v) >= 0 for a in self.inequalities)

    __contains__ = contains

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def in_relative_interior(self, v: Sequence[int]) -> bool:
        if not self.contains(v):
            return False
        for a in self.inequalities:
            if any(dot(a, g) for g in self.generators) and dot(a, v) == 0:
                return False
        return True

    def dual(self) -> "Cone":
        return Cone.from_generators(self.inequalities, self.ambient_rank)

    def intersection(self, other: "Cone") -> "Cone":
        return _intersection(self, other)

    def faces(self) -> list["Cone"]:
        """All faces of a strictly convex cone, the zero cone and the cone itself included."""
        if self.lineality:
            raise InputError("faces are enumerated for strictly convex cones only")
        return list(_faces(self))

    def facets(self) -> list["Cone"]:
        return [f for f in self.faces() if f.dim == self.dim - 1]

    def join(self, v: Sequence[int]) -> "Cone":
        return Cone.from_generators(list(self.generators) + [tuple(v)], self.ambient_rank)

    def orthogonal_lattice(self) -> tuple[IntVector, ...]:
        """Basis of sigma-perp intersected with the dual lattice."""
        if not self.generators:
            r = self.ambient_rank
            return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        return integer_kernel(self.generators, self.ambient_rank)

    def __str__(self):
        body = ", ".join(str(list(r)) for r in self.rays)
        if self.lineality:
            body += " | lin " + ", ".join(str(list(v)) for v in self.lineality)
        return f"cone({body})"


def _project_out(g: IntVector, lin: Sequence[IntVector]) -> IntVector:
    """Primitive representative of g modulo span(lin), orthogonal to lin."""
    if not lin:
        return primitive(g)
    # Gram-Schmidt against the lineality basis, exactly
    basis: list[list[Fraction]] = []
    for b in lin:
        v = [Fraction(x) for x in b]
        for q in basis:
            c = sum(x * y for x, y in zip(v, q)) / sum(y * y for y in q)
            v = [x - c * y for x, y in zip(v, q)]
        basis.append(v)
    v = [Fraction(x) for x in g]
    for q in basis:
        c = sum(x * y for x, y in zip(v, q)) / sum(y * y for y in q)
        v = [x - c * y for x, y in zip(v, q)]
    den = 1
    for x in v:
        den = den * x.denominator // __import__("math").gcd(den, x.denominator)
    return primitive(tuple(int(x * den) for x in v))


@lru_cache(maxsize=None)
def _intersection(a: Cone, b: Cone) -> Cone:
    if a.ambient_rank != b.ambient_rank:
        raise DimensionMismatch("cones in different ambient ranks")
    lin, rays = double_description(a.inequalities + b.inequalities, a.ambient_rank)
    return Cone.from_generators(rays + lin + [_neg(v) for v in lin], a.ambient_rank)


@lru_cache(maxsize=None)
def _faces(c: Cone) -> tuple[Cone, ...]:
    rays = c.rays
    full = frozenset(range(len(rays)))
    family = {full}
    for a in c.inequalities:
        family.add(frozenset(i for i, rho in enumerate(rays) if dot(a, rho) == 0))
    changed = True
    while changed:
        changed = False
        for s, t in itertools.combinations(list(family), 2):
            u = s & t
            if u not in family:
                family.add(u)
                changed = True
    faces = {Cone(c.ambient_rank, tuple(rays[i] for i in sorted(s))) for s in family}
    return tuple(sorted(faces, key=lambda f: (f.dim, f.rays)))


def dual_cone(c: Cone) -> Cone:
    """The dual cone in the dual lattice (rank 3 at most)."""
    if c.ambient_rank > 3:
        raise UnsupportedRank(f"rank {c.ambient_rank} is outside the supported range 1..3")
    return c.dual()


@dataclass(frozen=True)
class HilbertBasis:
    elements: tuple[IntVector, ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, v):
        return tuple(v) in self.elements


def _triangulate(c: Cone) -> list[tuple[IntVector, ...]]:
    """Simplicial cones (as ray tuples) covering a full-dimensional pointed cone."""
    d = c.ambient_rank
    if len(c.rays) == d:
        return [c.rays]
    if d == 2:
        raise AssertionError("a pointed 2-dimensional cone has exactly two rays")
    apex = c.rays[0]
    out = []
    for a in c.inequalities:
        facet = tuple(rho for rho in c.rays if dot(a, rho) == 0)
        if apex not in facet and len(facet) == d - 1:
            out.append((apex,) + facet)
    return out


def _parallelepiped_points(simplex: Sequence[IntVector]) -> list[IntVector]:
    """Nonzero lattice points sum(l_i v_i) with 0 <= l_i < 1."""
    d = len(simplex)
    D = det(simplex)
    if D == 0:
        raise InputError("degenerate simplicial cone")
    sgn = 1 if D > 0 else -1
    absd = abs(D)
    # x = l @ V  =>  l = x @ adj(V) / D
    adj = _adjugate(simplex)
    lo = [sum(min(0, v[j]) for v in simplex) for j in range(d)]
    hi = [sum(max(0, v[j]) for v in simplex) for j in range(d)]
    pts = []
    for x in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if not any(x):
            continue
        lam = [sgn * sum(x[k] * adj[k][i] for k in range(d)) for i in range(d)]
        if all(0 <= t < absd for t in lam):
            pts.append(tuple(x))
    return pts


def _adjugate(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """adj with m @ adj == det(m) * I."""
    n = len(m)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(map(list, m)) if k != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return adj


@lru_cache(maxsize=None)
def lattice_point_basis(c: Cone) -> tuple[IntVector, ...]:
    """Hilbert basis of ``c`` intersected with Z^d for a full-dimensional pointed cone."""
    d = c.ambient_rank
    if d > 3:
        raise UnsupportedRank(f"Hilbert bases are supported up to rank 3, got {d}")
    if not c.is_strictly_convex or c.dim != d:
        raise InputError("cone must be strictly convex and full-dimensional")
    candidates = set(c.rays)
    for simplex in _triangulate(c):
        candidates.update(_parallelepiped_points(simplex))
    ineq = c.inequalities
    irreducible = []
    for h in candidates:
        reducible = False
        for g in candidates:
            if g == h:
                continue
            diff = tuple(x - y for x, y in zip(h, g))
            if any(diff) and all(dot(a, diff) >= 0 for a in ineq):
                reducible = True
                break
        if not reducible:
            irreducible.append(h)
    return tuple(sorted(irreducible))


def hilbert_basis(c: Cone) -> HilbertBasis:
    """Minimal generators of the semigroup of lattice points of the dual cone."""
    if c.ambient_rank > 3:
        raise UnsupportedRank(f"rank {c.ambient_rank} is outside the supported range 1..3")
    if not c.is_strictly_convex:
        raise InputError("cone must be strictly convex")
    if c.dim != c.ambient_rank:
        raise InputError("the dual of a cone that is not full-dimensional is not strictly convex")
    return HilbertBasis(lattice_point_basis(c.dual()))


@lru_cache(maxsize=None)
def dual_semigroup_generators(c: Cone) -> tuple[IntVector, ...]:
    """A finite generating set of the semigroup (dual cone) cap M for any strictly convex cone.

    Full-dimensional cones give their Hilbert basis.  Otherwise the result is a
    basis of sigma-perp cap M with both signs, plus lifts of the Hilbert basis
    of the image of the dual cone in M / (sigma-perp cap M).
    """
    r = c.ambient_rank
    if not c.is_strictly_convex:
        raise InputError("cone must be strictly convex")
    if c.dim == r:
        return lattice_point_basis(c.dual())
    perp = c.orthogonal_lattice()
    k = len(perp)
    if k == r:
        basis = perp
        return tuple(sorted(set(basis) | {_neg(b) for b in basis}))
    snf = smith_normal_form(perp)
    w = inverse_unimodular(snf.right)  # first k rows span perp
    # quotient coordinates of the rays: (w @ rho)[k:]
    images = [tuple(dot(w[i], rho) for i in range(k, r)) for rho in c.rays]
    quotient = Cone.from_generators(images, r - k)
    gens = set()
    for h in lattice_point_basis(quotient.dual()):
        coords = (0,) * k + h
        gens.add(tuple(sum(coords[i] * w[i][j] for i in range(r)) for j in range(r)))
    for b in w[:k]:
        gens.add(tuple(b))
        gens.add(_neg(b))
    return tuple(sorted(gens))
