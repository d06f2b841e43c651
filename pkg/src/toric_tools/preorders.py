"""Additive preorders on Z^r given by integer matrices, domination, and the two metrics."""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cones import Cone, dual_semigroup_generators
from .errors import ComputationError, DimensionMismatch, InputError, NoDominatedCone, UnsupportedRank
from .exact_linalg import IntVector, dot, primitive, rank
from .fans import Fan, closed_points, finest_fan, orbit_map, refine_check

INDISTINGUISHABLE_TO_CAP = "indistinguishable-to-cap"
INDISTINGUISHABLE_TO_HEIGHT = "indistinguishable-to-height"


class Comparison(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Preorder:
    """m <= n iff (<m,v_1>, ..., <m,v_s>) <=_lex (<n,v_1>, ..., <n,v_s>)."""

    rank: int
    rows: tuple[IntVector, ...] = ()

    def __post_init__(self):
        rows = tuple(tuple(map(int, v)) for v in self.rows)
        if len(rows) > self.rank:
            raise InputError(f"at most {self.rank} rows allowed, got {len(rows)}")
        if any(len(v) != self.rank for v in rows):
            raise DimensionMismatch("row length differs from rank")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def lex(cls, r: int) -> "Preorder":
        return cls(r, tuple(tuple(int(i == j) for j in range(r)) for i in range(r)))

    @classmethod
    def trivial(cls, r: int) -> "Preorder":
        return cls(r, ())

    def key(self, m: Sequence[int]) -> tuple[int, ...]:
        if len(m) != self.rank:
            raise DimensionMismatch("vector length differs from rank")
        return tuple(dot(m, v) for v in self.rows)

    def canonical(self) -> tuple[IntVector, ...]:
        """Rows orthogonalized and made primitive; equal exactly for equal preorders."""
        out: list[list[Fraction]] = []
        for v in self.rows:
            u = [Fraction(x) for x in v]
            for q in out:
                c = sum(a * b for a, b in zip(u, q)) / sum(b * b for b in q)
                u = [a - c * b for a, b in zip(u, q)]
            if any(u):
                out.append(u)
        result = []
        for u in out:
            den = math.lcm(*(x.denominator for x in u))
            result.append(primitive(tuple(int(x * den) for x in u)))
        return tuple(result)

    def __str__(self):
        return "preorder(" + ", ".join(str(list(v)) for v in self.rows) + ")"


def compare(w: Preorder, m: Sequence[int], n: Sequence[int]) -> Comparison:
    a, b = w.key(m), w.key(n)
    return Comparison.LESS if a < b else Comparison.GREATER if a > b else Comparison.EQUAL


def is_order(w: Preorder) -> bool:
    return bool(w.rows) and rank(w.rows) == w.rank


def _nonneg(w: Preorder, m) -> bool:
    return w.key(m) >= (0,) * len(w.rows)


def in_U_sigma(w: Preorder, c: Cone) -> bool:
    """0 <=_w every element of the dual semigroup of ``c``."""
    if c.ambient_rank != w.rank:
        raise DimensionMismatch("cone and preorder of different ranks")
    if c.ambient_rank > 3:
        raise UnsupportedRank(f"rank {c.ambient_rank} is outside the supported range 1..3")
    return all(_nonneg(w, g) for g in dual_semigroup_generators(c))


def _dominates(w: Preorder, c: Cone) -> bool:
    zero = (0,) * len(w.rows)
    for g in dual_semigroup_generators(c):
        k = w.key(g)
        if k < zero:
            return False
        perp = all(dot(g, rho) == 0 for rho in c.rays)
        if (k == zero) != perp:
            return False
    return True


@dataclass(frozen=True)
class DominationResult:
    cone: Cone
    # sigma-perp, the face of the dual cone made of w-equivalences with 0
    equivalence_face: Cone


def dominating_cones(w: Preorder, f: Fan) -> list[Cone]:
    if f.ambient_rank != w.rank:
        raise DimensionMismatch("fan and preorder of different ranks")
    if f.ambient_rank > 3:
        raise UnsupportedRank(f"rank {f.ambient_rank} is outside the supported range 1..3")
    return [c for c in f.cones if _dominates(w, c)]


def dominated_cone(w: Preorder, f: Fan) -> DominationResult:
    found = dominating_cones(w, f)
    if not found:
        raise NoDominatedCone(f"{w} dominates no cone of the fan (is it complete?)")
    if len(found) > 1:
        raise ComputationError(f"{w} dominates several cones: {', '.join(map(str, found))}")
    c = found[0]
    perp = c.orthogonal_lattice()
    face = Cone.from_generators(list(perp) + [tuple(-x for x in v) for v in perp], c.ambient_rank) if perp else Cone.zero(
        c.ambient_rank
    )
    return DominationResult(c, face)


@dataclass(frozen=True)
class Thread:
    tower: tuple[Fan, ...]
    cones: tuple[Cone, ...]


def thread(w: Preorder, tower: Sequence[Fan]) -> Thread:
    cones = []
    for k, f in enumerate(tower):
        c = dominated_cone(w, f).cone
        if cones and not cones[-1].contains_cone(c):
            raise ComputationError(f"stage {k}: {c} is not inside {cones[-1]}")
        cones.append(c)
    return Thread(tuple(tower), tuple(cones))


def ball_points(r: int, radius: int) -> list[IntVector]:
    """Lattice points of the closed Euclidean ball of the given radius."""
    pts = [()]
    for _ in range(r):
        pts = [p + (x,) for p in pts for x in range(-radius, radius + 1)]
    return [p for p in pts if sum(x * x for x in p) <= radius * radius]


def agree_on(w1: Preorder, w2: Preorder, points: Sequence[IntVector]) -> bool:
    """Same comparison relation on ``points``; consecutive pairs in w1-order suffice."""
    ordered = sorted(points, key=w1.key)
    for a, b in zip(ordered, ordered[1:]):
        if compare(w1, a, b) != compare(w2, a, b):
            return False
    return True


def agreement_radius(w1: Preorder, w2: Preorder, cap: int) -> int | None:
    """Largest D <= cap with agreement on the ball B(0, D), at least 1; None if D >= cap."""
    if w1.rank != w2.rank:
        raise DimensionMismatch("preorders of different ranks")
    if cap < 1:
        raise InputError("cap must be positive")
    if agree_on(w1, w2, ball_points(w1.rank, cap)):
        return None
    lo, hi = 0, cap  # agreement on B(0, lo) (trivially for lo = 0), not on B(0, hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if agree_on(w1, w2, ball_points(w1.rank, mid)):
            lo = mid
        else:
            hi = mid
    return max(lo, 1)


def distance_dtilde(w1: Preorder, w2: Preorder, cap: int = 40) -> Fraction | str:
    if w1.rank != w2.rank:
        raise DimensionMismatch("preorders of different ranks")
    if w1.canonical() == w2.canonical():
        return Fraction(0)
    d = agreement_radius(w1, w2, cap)
    return INDISTINGUISHABLE_TO_CAP if d is None else Fraction(1, d)


def separation_height(w1: Preorder, w2: Preorder, max_height: int) -> int | None:
    """Least h such that the finest fan of height h separates the two preorders.

    Any complete fan of height <= h is refined by that finest fan, and
    domination passes to coarsenings through the orbit map, so the finest fan
    separates whenever some fan of that height does.
    """
    if w1.rank != 2 or w2.rank != 2:
        raise UnsupportedRank("the metric d is computed in rank 2 only")
    for h in range(1, max_height + 1):
        f = finest_fan(h)
        if dominated_cone(w1, f).cone != dominated_cone(w2, f).cone:
            return h
    return None


def distance_d(w1: Preorder, w2: Preorder, max_height: int = 3) -> Fraction | str:
    if w1.rank != 2 or w2.rank != 2:
        raise UnsupportedRank("the metric d is computed in rank 2 only")
    if w1.canonical() == w2.canonical():
        return Fraction(0)
    h = separation_height(w1, w2, max_height)
    return INDISTINGUISHABLE_TO_HEIGHT if h is None else Fraction(1, h)


def cantor_fiber_experiment(tower: Sequence[Fan]) -> list[dict]:
    """For each stage and closed point, how many closed points of the next stage map to it."""
    rows = []
    for k, (coarse, fine) in enumerate(zip(tower, tower[1:])):
        if not refine_check(fine, coarse):
            raise InputError(f"stage {k + 1} does not refine stage {k}")
        fibers = {c: 0 for c in closed_points(coarse)}
        for c in closed_points(fine):
            image = orbit_map(fine, coarse, c)
            if image not in fibers:
                raise ComputationError(f"{c} maps to {image}, which is not a closed point")
            fibers[image] += 1
        for c, n in fibers.items():
            rows.append({"stage": k, "cone": [list(r) for r in c.rays], "fiber": n})
    return rows


def random_order(rng: random.Random, r: int = 2, bound: int = 3) -> Preorder:
    while True:
        rows = tuple(tuple(rng.randint(-bound, bound) for _ in range(r)) for _ in range(r))
        if rank(rows) == r:
            return Preorder(r, rows)


def _as_float_free(x):
    return str(x) if isinstance(x, Fraction) else x


def metric_comparison_experiment(samples: int = 50, seed: int = 0, height_cap: int = 3, radius_cap: int = 40) -> dict:
    """Tabulate (d, d-tilde) over random pairs of rank-2 orders."""
    if samples < 1 or height_cap < 1 or radius_cap < 1:
        raise InputError("caps and sample count must be positive")
    rng = random.Random(seed)
    table = []
    for _ in range(samples):
        w1, w2 = random_order(rng), random_order(rng)
        d = distance_d(w1, w2, height_cap)
        dt = distance_dtilde(w1, w2, radius_cap)
        table.append({"w1": [list(v) for v in w1.rows], "w2": [list(v) for v in w2.rows], "d": d, "dtilde": dt})
    # envelopes: for each value of d the range of d-tilde, and the reverse
    def envelope(src, dst):
        env: dict = {}
        for row in table:
            a, b = row[src], row[dst]
            if isinstance(b, str):
                continue
            lo, hi = env.get(a, (b, b))
            env[a] = (min(lo, b), max(hi, b))
        return [
            {src: _as_float_free(a), "min_" + dst: _as_float_free(lo), "max_" + dst: _as_float_free(hi)}
            for a, (lo, hi) in sorted(env.items(), key=lambda kv: (isinstance(kv[0], str), str(kv[0])))
        ]

    return {
        "samples": samples,
        "seed": seed,
        "height_cap": height_cap,
        "radius_cap": radius_cap,
        "table": [{k: _as_float_free(v) for k, v in row.items()} for row in table],
        "envelope_d": envelope("d", "dtilde"),
        "envelope_dtilde": envelope("dtilde", "d"),
    }
