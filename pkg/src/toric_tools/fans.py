"""Fans: validation, refinement, stellar subdivision, orbits, heights."""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .cones import Cone
from .errors import DimensionMismatch, InputError, NotAFan, UnsupportedRank
from .exact_linalg import IntVector, primitive


@dataclass(frozen=True)
class Fan:
    """A face-closed set of strictly convex cones meeting along common faces.

    Build through :func:`validate_fan`; the constructor itself trusts its input.
    """

    ambient_rank: int
    cones: tuple[Cone, ...]

    @cached_property
    def maximal_cones(self) -> tuple[Cone, ...]:
        cs = set(self.cones)
        faces_of_others = set()
        for c in self.cones:
            for f in c.faces():
                if f != c:
                    faces_of_others.add(f)
        return tuple(sorted(cs - faces_of_others, key=_cone_key))

    @cached_property
    def rays(self) -> tuple[IntVector, ...]:
        return tuple(sorted(c.rays[0] for c in self.cones if c.dim == 1))

    def __contains__(self, c: Cone) -> bool:
        return c in self._cone_set

    @cached_property
    def _cone_set(self) -> frozenset:
        return frozenset(self.cones)

    def support_contains(self, v: Sequence[int]) -> bool:
        return any(c.contains(v) for c in self.maximal_cones)

    @cached_property
    def is_complete(self) -> bool:
        r = self.ambient_rank
        top = [c for c in self.cones if c.dim == r]
        if not top:
            return False
        for c in self.cones:
            if c.dim == r - 1:
                if sum(1 for t in top if c in t.faces()) != 2:
                    return False
        return True

    def cones_of_dim(self, d: int) -> list[Cone]:
        return [c for c in self.cones if c.dim == d]

    def __len__(self):
        return len(self.cones)

    def __str__(self):
        return "fan[" + "; ".join(str(c) for c in self.maximal_cones) + "]"


def _cone_key(c: Cone):
    return (c.dim, c.rays)


def _trusted_fan(r: int, maximal: Iterable[Cone]) -> Fan:
    closure = set()
    for c in maximal:
        closure.update(c.faces())
    return Fan(r, tuple(sorted(closure, key=_cone_key)))


def validate_fan(cones: Iterable[Cone | Sequence[Sequence[int]]], ambient_rank: int | None = None) -> Fan:
    """Complete a list of cones under faces and check the intersection property."""
    cones = [c if isinstance(c, Cone) else Cone.from_generators(c, ambient_rank) for c in cones]
    if ambient_rank is None:
        if not cones:
            raise InputError("ambient rank needed for an empty fan")
        ambient_rank = cones[0].ambient_rank
    for c in cones:
        if c.ambient_rank != ambient_rank:
            raise DimensionMismatch("cones of different ambient ranks")
        if not c.is_strictly_convex:
            raise NotAFan(f"{c} is not strictly convex", (c, c))
    closure = set()
    for c in cones:
        closure.update(c.faces())
    if not closure:
        closure.add(Cone.zero(ambient_rank))
    fan = Fan(ambient_rank, tuple(sorted(closure, key=_cone_key)))
    for a, b in itertools.combinations(fan.maximal_cones, 2):
        meet = a.intersection(b)
        if meet not in a.faces() or meet not in b.faces():
            raise NotAFan(f"{a} and {b} meet in {meet}, which is not a face of both", (a, b))
    return fan


def _covered(sigma: Cone, fan: Fan) -> bool:
    """Do the cones of ``fan`` inside ``sigma`` cover it?"""
    d = sigma.dim
    pieces = [c for c in fan.cones if c.dim == d and sigma.contains_cone(c)]
    if not pieces:
        return False
    if d <= 1:
        return True
    boundary = [f for f in sigma.faces() if f.dim == d - 1]
    counts: dict[Cone, int] = {}
    for p in pieces:
        for f in p.faces():
            if f.dim == d - 1:
                counts[f] = counts.get(f, 0) + 1
    for f, n in counts.items():
        on_boundary = any(b.contains_cone(f) for b in boundary)
        if n != (1 if on_boundary else 2):
            return False
    return True


def refine_check(f2: Fan, f1: Fan) -> bool:
    """Every cone of f2 lies in a cone of f1, and the supports agree."""
    if f2.ambient_rank != f1.ambient_rank:
        raise DimensionMismatch("fans of different ambient ranks")
    for c in f2.maximal_cones:
        if not any(s.contains_cone(c) for s in f1.maximal_cones):
            return False
    return all(_covered(s, f2) for s in f1.maximal_cones)


def stellar_subdivision(f: Fan, v: Sequence[int]) -> Fan:
    v = primitive(tuple(v))
    if len(v) != f.ambient_rank:
        raise DimensionMismatch("vector length differs from ambient rank")
    if not any(v):
        raise InputError("cannot subdivide at the origin")
    if v in f.rays:
        return f
    if not f.support_contains(v):
        raise InputError(f"{list(v)} is outside the support of the fan")
    new = []
    for c in f.maximal_cones:
        if not c.contains(v):
            new.append(c)
            continue
        for tau in c.faces():
            if not tau.contains(v):
                new.append(tau.join(v))
    return validate_fan(new, f.ambient_rank)


def common_refinement(f1: Fan, f2: Fan) -> Fan:
    if f1.ambient_rank != f2.ambient_rank:
        raise DimensionMismatch("fans of different ambient ranks")
    meets = [a.intersection(b) for a in f1.maximal_cones for b in f2.maximal_cones]
    out = validate_fan(meets, f1.ambient_rank)
    if not (refine_check(out, f1) and refine_check(out, f2)):
        raise InputError("the fans have different supports")
    return out


@dataclass(frozen=True)
class OrbitPoset:
    """Cones of a fan ordered like the closures of the corresponding orbits."""

    elements: tuple[Cone, ...]
    ambient_rank: int

    def leq(self, a: Cone, b: Cone) -> bool:
        """The orbit of ``a`` lies in the closure of the orbit of ``b`` (b is a face of a)."""
        return b in a.faces()

    @property
    def closed(self) -> tuple[Cone, ...]:
        return tuple(c for c in self.elements if c.dim == self.ambient_rank)

    def __len__(self):
        return len(self.elements)


def orbit_poset(f: Fan) -> OrbitPoset:
    return OrbitPoset(f.cones, f.ambient_rank)


def closed_points(f: Fan) -> tuple[Cone, ...]:
    return orbit_poset(f).closed


def orbit_map(f2: Fan, f1: Fan, c: Cone) -> Cone:
    """Smallest cone of f1 containing the cone c of f2."""
    if c not in f2:
        raise InputError(f"{c} is not a cone of the refining fan")
    holders = [s for s in f1.cones if s.contains_cone(c)]
    if not holders:
        raise InputError(f"no cone of the coarser fan contains {c}")
    return min(holders, key=_cone_key)


def height(f: Fan) -> int:
    if not f.rays:
        raise InputError("fan has no rays")
    return max(abs(x) for r in f.rays for x in r)


def _half(v: IntVector) -> int:
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angle_cmp(a: IntVector, b: IntVector) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def angle_sorted(vectors: Iterable[IntVector]) -> list[IntVector]:
    """Counter-clockwise order starting from the positive x-axis."""
    return sorted(vectors, key=functools.cmp_to_key(_angle_cmp))


def primitive_vectors(n: int) -> list[IntVector]:
    """Primitive vectors of Z^2 with max |coordinate| <= n, in angular order."""
    vs = [(a, b) for a in range(-n, n + 1) for b in range(-n, n + 1) if (a or b) and math.gcd(a, b) == 1]
    return angle_sorted(vs)


def fan_from_cyclic_rays(rays: Sequence[IntVector]) -> Fan:
    """The complete plane fan with the given rays, listed counter-clockwise."""
    k = len(rays)
    top = [Cone(2, tuple(sorted((rays[i], rays[(i + 1) % k])))) for i in range(k)]
    return _trusted_fan(2, top)


def _cyclic_complete(rays: Sequence[IntVector]) -> bool:
    k = len(rays)
    if k < 3:
        return False
    for i in range(k):
        a, b = rays[i], rays[(i + 1) % k]
        if a[0] * b[1] - a[1] * b[0] <= 0:
            return False
    return True


def enumerate_complete_fans(r: int, max_height: int) -> Iterator[Fan]:
    """All complete fans in Z^r (r = 2) with rays of height at most ``max_height``."""
    if r != 2:
        raise UnsupportedRank("complete fans are enumerated in rank 2 only")
    if max_height < 1:
        raise InputError("max_height must be positive")
    vs = primitive_vectors(max_height)
    for mask in range(1, 1 << len(vs)):
        rays = [v for i, v in enumerate(vs) if mask >> i & 1]
        if _cyclic_complete(rays):
            yield fan_from_cyclic_rays(rays)


def finest_fan(max_height: int) -> Fan:
    """The plane fan using every primitive ray of height at most ``max_height``."""
    return fan_from_cyclic_rays(primitive_vectors(max_height))


def quadrant_fan(r: int = 2) -> Fan:
    basis = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    top = []
    for signs in itertools.product((1, -1), repeat=r):
        top.append(Cone.from_generators([tuple(s * x for x in b) for s, b in zip(signs, basis)], r))
    return _trusted_fan(r, top)


def barycentric_stage(f: Fan) -> Fan:
    """Subdivide every maximal cone at the sum of its rays."""
    out = f
    for c in f.maximal_cones:
        v = primitive(tuple(map(sum, zip(*c.rays))))
        out = stellar_subdivision(out, v)
    return out
