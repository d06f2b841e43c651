"""Independent brute-force references used by the tests.

Nothing here imports the package's polyhedral or lattice code.
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np


def semigroup_members(gens, bound):
    """Naive closure of a numerical semigroup up to ``bound``."""
    members = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a + g
                if b <= bound and b not in members:
                    members.add(b)
                    nxt.append(b)
        frontier = nxt
    return members


def minimal_generators(members, bound):
    nonzero = sorted(m for m in members if 0 < m <= bound)
    gens = []
    for m in nonzero:
        if not any((m - a) in members and (m - a) > 0 for a in nonzero if a < m):
            gens.append(m)
    return gens


def zariski_semigroup(beta):
    """Semigroup generators from characteristic exponents, computed from scratch."""
    e = [beta[0]]
    for b in beta[1:]:
        e.append(math.gcd(e[-1], b))
    sbar = [beta[0], beta[1]]
    for i in range(1, len(beta) - 1):
        n = e[i - 1] // e[i]
        sbar.append(n * sbar[i] + beta[i + 1] - beta[i])
    return sbar


def in_dual(m, rays):
    return all(m[0] * r[0] + m[1] * r[1] >= 0 for r in rays)


def brute_hilbert_2d(rays, bound=15):
    """Irreducible lattice points of the dual of cone(rays) with max |coord| <= bound.

    Summands of a reducible point can be taken among Hilbert basis elements,
    which lie in the half-open parallelogram of the dual rays; its coordinates
    are at most twice the largest ray coordinate, so the search box for
    summands is that wide.
    """
    R = np.array(rays, dtype=np.int64).T  # 2 x k
    reach = max(bound, 2 * int(np.abs(R).max()))
    g = np.arange(-reach, reach + 1)
    pts = np.array(list(itertools.product(g, g)), dtype=np.int64)
    pts = pts[(pts @ R >= 0).all(axis=1) & pts.any(axis=1)]
    targets = pts[np.abs(pts).max(axis=1) <= bound]
    out = set()
    for m in targets:
        rest = m - pts
        ok = (rest @ R >= 0).all(axis=1) & rest.any(axis=1)
        if not ok.any():
            out.add((int(m[0]), int(m[1])))
    return out


def generated_by(points, basis, in_cone, grade):
    """Every point is an N-combination of ``basis`` (memoized recursion on a positive grading)."""
    basis = [tuple(b) for b in basis]

    @lru_cache(maxsize=None)
    def ok(m):
        if not any(m):
            return True
        for b in basis:
            rest = tuple(x - y for x, y in zip(m, b))
            if in_cone(rest) and grade(rest) < grade(m) and ok(rest):
                return True
        return False

    return all(ok(tuple(p)) for p in points)


def plane_rays_by_angle(n):
    vs = [(a, b) for a in range(-n, n + 1) for b in range(-n, n + 1) if (a or b) and math.gcd(a, b) == 1]
    return sorted(vs, key=lambda v: math.atan2(v[1], v[0]) % (2 * math.pi))


def count_complete_fans_float(n):
    """Complete plane fans with rays of height <= n, via floating-point angles."""
    vs = plane_rays_by_angle(n)
    angles = [math.atan2(v[1], v[0]) % (2 * math.pi) for v in vs]
    count = 0
    for k in range(3, len(vs) + 1):
        for sub in itertools.combinations(range(len(vs)), k):
            gaps = [(angles[sub[(i + 1) % k]] - angles[sub[i]]) % (2 * math.pi) for i in range(k)]
            if max(gaps) < math.pi - 1e-9:
                count += 1
    return count


def lex_key(rows, m):
    return tuple(sum(a * b for a, b in zip(m, v)) for v in rows)


def brute_agreement_radius(rows1, rows2, cap):
    """Largest D <= cap with identical pairwise comparisons on the ball, by full pair scan."""
    best = 0
    for D in range(1, cap + 1):
        pts = [(a, b) for a in range(-D, D + 1) for b in range(-D, D + 1) if a * a + b * b <= D * D]
        k1 = [lex_key(rows1, p) for p in pts]
        k2 = [lex_key(rows2, p) for p in pts]
        for i in range(len(pts)):
            for j in range(len(pts)):
                c1 = (k1[i] > k1[j]) - (k1[i] < k1[j])
                c2 = (k2[i] > k2[j]) - (k2[i] < k2[j])
                if c1 != c2:
                    return max(best, 1)
        best = D
    return None

