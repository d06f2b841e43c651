"""Value semigroups of plane branches and the Zariski exponent relations.

The value semigroup of ``k[[x(t), y(t)]]`` is computed by subduction: the
algebra is explored by multiplying known elements by ``x`` and ``y``, and every
new product is reduced against the elements found so far (one per order, with
leading coefficient 1) until its order is either new or beyond the precision.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    InputError,
    MalformedExponents,
    NotAPlaneBranchSemigroup,
    TruncationExhausted,
    TruncationTooSmall,
)
from .series import CoefficientField, TruncatedSeries, series_order


def _members_up_to(generators: Sequence[int], bound: int) -> list[bool]:
    """Membership table of the monoid generated by ``generators`` on [0, bound]."""
    table = [False] * (bound + 1)
    table[0] = True
    for n in range(1, bound + 1):
        table[n] = any(g <= n and table[n - g] for g in generators)
    return table


def _conductor_from_table(table: list[bool], run: int) -> int | None:
    """Smallest c with [c, end] all members, provided the tail run is long enough."""
    c = len(table)
    while c > 0 and table[c - 1]:
        c -= 1
    if len(table) - c < run:
        return None
    return c


@dataclass(frozen=True)
class NumericalSemigroup:
    """A numerical semigroup given by its minimal generators and its conductor."""

    generators: tuple[int, ...]
    conductor: int

    def __post_init__(self):
        g = self.generators
        if not g or any(a <= 0 for a in g) or list(g) != sorted(set(g)):
            raise InputError("generators must be strictly increasing positive integers")
        if math.gcd(*g) != 1:
            raise InputError("generators must be coprime")

    @classmethod
    def from_generators(cls, gens: Iterable[int]) -> "NumericalSemigroup":
        """Minimal generators and conductor by dynamic programming."""
        gens = sorted(set(int(a) for a in gens if a))
        if not gens or math.gcd(*gens) != 1:
            raise InputError("generators must be positive and coprime")
        m = gens[0]
        bound = 2 * m
        while True:
            table = _members_up_to(gens, bound)
            c = _conductor_from_table(table, m)
            if c is not None:
                break
            bound *= 2
        return cls(_minimal(gens, max(gens) + 1), c)

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n >= self.conductor:
            return True
        return _members_up_to(self.generators, n)[n]

    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    def gaps(self) -> list[int]:
        table = _members_up_to(self.generators, self.conductor)
        return [n for n in range(self.conductor) if not table[n]]


def _minimal(gens: Sequence[int], bound: int) -> tuple[int, ...]:
    """Drop generators that are sums of smaller ones."""
    keep: list[int] = []
    for g in sorted(gens):
        if not keep or not _members_up_to(keep, g)[g]:
            keep.append(g)
    return tuple(keep)


@dataclass(frozen=True)
class CharExponents:
    """Characteristic exponents beta_0 < beta_1 < ... < beta_g of a plane branch."""

    beta: tuple[int, ...]

    def __post_init__(self):
        b = tuple(int(x) for x in self.beta)
        object.__setattr__(self, "beta", b)
        if not b or b[0] <= 0 or any(x >= y for x, y in zip(b, b[1:])):
            raise MalformedExponents("exponents must be strictly increasing and positive")
        e = b[0]
        for x in b[1:]:
            e2 = math.gcd(e, x)
            if e2 == e:
                raise MalformedExponents(f"gcd chain does not drop at {x}")
            e = e2
        if e != 1:
            raise MalformedExponents("gcd of the exponents must be 1")

    @property
    def gcd_chain(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate(self.beta, math.gcd))


def _branch_conductor(gens: Sequence[int]) -> int:
    e = list(itertools.accumulate(gens, math.gcd))
    n = [e[i - 1] // e[i] for i in range(1, len(gens))]
    return sum((ni - 1) * b for ni, b in zip(n, gens[1:])) - gens[0] + 1


def semigroup_from_char_exponents(b: CharExponents) -> NumericalSemigroup:
    """Zariski's relations: sbar_{i+1} = n_i sbar_i + beta_{i+1} - beta_i."""
    beta = b.beta
    e = b.gcd_chain
    gens = list(beta[:2])
    for i in range(1, len(beta) - 1):
        n_i = e[i - 1] // e[i]
        gens.append(n_i * gens[i] + beta[i + 1] - beta[i])
    gens = tuple(gens)
    return NumericalSemigroup(gens, _branch_conductor(gens) if len(gens) > 1 else 0)


def _in_branch_prefix(x: int, gens: Sequence[int], e: Sequence[int]) -> bool:
    """Membership in <gens[0..k]> for a prefix satisfying the plane-branch conditions.

    Uses the unique standard representation x = c_0 g_0 + sum c_j g_j with
    0 <= c_j < n_j for j >= 1.
    """
    k = len(gens) - 1
    if x < 0 or x % e[k]:
        return False
    for j in range(k, 0, -1):
        n_j = e[j - 1] // e[j]
        # c_j * g_j must be congruent to x modulo e_{j-1}
        step = gens[j] // e[j]
        target = (x // e[j]) % n_j
        c_j = target * pow(step % n_j, -1, n_j) % n_j if n_j > 1 else 0
        x -= c_j * gens[j]
        if x < 0:
            return False
    return x % gens[0] == 0


def char_exponents_from_semigroup(g: NumericalSemigroup | Sequence[int]) -> CharExponents:
    """Inverse of :func:`semigroup_from_char_exponents`."""
    gens = tuple(g.generators if isinstance(g, NumericalSemigroup) else g)
    if len(gens) == 1:
        if gens != (1,):
            raise NotAPlaneBranchSemigroup("a single generator must be 1")
        return CharExponents((1,))
    e = list(itertools.accumulate(gens, math.gcd))
    if e[-1] != 1:
        raise NotAPlaneBranchSemigroup("generators are not coprime")
    beta = list(gens[:2])
    for i in range(1, len(gens)):
        n_i = e[i - 1] // e[i]
        if n_i <= 1:
            raise NotAPlaneBranchSemigroup(f"gcd does not drop at generator {gens[i]}")
        if not _in_branch_prefix(n_i * gens[i], gens[:i], e[:i]):
            raise NotAPlaneBranchSemigroup(
                f"{n_i}*{gens[i]} is not in the semigroup of the previous generators"
            )
        if i + 1 < len(gens):
            if gens[i + 1] <= n_i * gens[i]:
                raise NotAPlaneBranchSemigroup(f"{gens[i + 1]} <= {n_i}*{gens[i]}")
            beta.append(gens[i + 1] - n_i * gens[i] + beta[i])
    return CharExponents(tuple(beta))


def default_truncation(x: TruncatedSeries, y: TruncatedSeries) -> int:
    return 4 * series_order(x) * series_order(y)


def value_semigroup(
    x: TruncatedSeries, y: TruncatedSeries, truncation: int | None = None
) -> NumericalSemigroup:
    """Semigroup of t-orders of the algebra generated by ``x`` and ``y``.

    ``truncation`` defaults to ``4 * ord(x) * ord(y)``; the inputs are used modulo
    ``t^truncation``.  Raises :class:`TruncationExhausted` if the semigroup cannot
    be certified at that precision.
    """
    if x.field != y.field:
        raise InputError("x and y live over different fields")
    ox, oy = series_order(x), series_order(y)
    if math.isinf(ox) or math.isinf(oy):
        raise InputError("x and y must be nonzero")
    if ox == 0 or oy == 0:
        raise InputError("x and y must vanish at t = 0")
    T = truncation or default_truncation(x, y)
    if T > min(x.truncation, y.truncation):
        raise TruncationTooSmall(
            f"inputs are known modulo t^{min(x.truncation, y.truncation)}, asked for t^{T}"
        )
    orders = _subduction_orders(x, y, T)
    gens = _minimal(sorted(o for o in orders if o), max(orders) + 1)
    table = [o in orders for o in range(max(orders) + 1)]
    # the final run of min(ox, oy) consecutive orders certifies everything above
    return NumericalSemigroup(gens, _conductor_from_table(table, min(ox, oy)))


def _subduction_orders(x: TruncatedSeries, y: TruncatedSeries, T: int) -> set[int]:
    fld = x.field
    p = fld.characteristic
    xs = [(e, c) for e, c in x.coefficients.items() if e < T]
    ys = [(e, c) for e, c in y.coefficients.items() if e < T]
    m = min(xs[0][0], ys[0][0])

    def times(f: np.ndarray, terms) -> np.ndarray:
        out = fld.zeros(T)
        for e, c in terms:
            out[e:] = out[e:] + c * f[: T - e]
        return fld.reduce(out)

    # order -> element with leading coefficient 1 (earliest discovered wins)
    basis: dict[int, np.ndarray] = {}
    one = fld.zeros(T)
    one[0] = fld(1)
    queue = [(0, 0, one)]
    counter = itertools.count(1)
    while queue:
        start, _, f = heapq.heappop(queue)
        # everything below `start` is final: reductions only raise orders
        if start >= m and all(o in basis for o in range(start - m, start)):
            return {o for o in basis if o < start}
        order = start
        while True:
            nz = np.flatnonzero(f[order:])
            if not nz.size:
                order = None
                break
            order += int(nz[0])
            g = basis.get(order)
            if g is None:
                break
            f = fld.reduce(f - f[order] * g)
        if order is None:
            continue
        f = fld.reduce(f * fld.inv(f[order]))
        basis[order] = f
        for terms, o in ((xs, xs[0][0]), (ys, ys[0][0])):
            if order + o < T:
                heapq.heappush(queue, (order + o, next(counter), times(f, terms)))
    raise TruncationExhausted(
        f"semigroup not certified below t^{T}; orders found: {sorted(basis)[:20]}..."
    )


def campillo_parametrization(p: int, truncation: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """x = t^{p^3}, y = t^{p^3+p^2} + t^{p^3+p^2+p+1} over F_p."""
    fld = CoefficientField(p)
    x = TruncatedSeries(fld, truncation, {p**3: 1})
    y = TruncatedSeries(fld, truncation, {p**3 + p**2: 1, p**3 + p**2 + p + 1: 1})
    return x, y


def campillo_semigroup(p: int) -> tuple[int, ...]:
    return (p**3, p**3 + p**2, p**4 + p**3 + p**2 + p, p**5 + p**4 + p**3 + p**2 + p + 1)


def campillo_char_exponents(p: int) -> tuple[int, ...]:
    return (p**3, p**3 + p**2, p**3 + 2 * p**2 + p, p**3 + 2 * p**2 + 2 * p + 1)


def curve_equation_top_exponent(p: int) -> int:
    return p**3 * (p**2 + 1) * (p + 1)


def curve_equation_residual(p: int, truncation: int, y: TruncatedSeries | None = None) -> TruncatedSeries:
    """(y^p - x^{p+1})^{p^2} - 2 x^{p^2(p+1)} y^p + x^{(p^2+1)(p+1)} at the parametrization."""
    if truncation <= curve_equation_top_exponent(p):
        raise TruncationTooSmall(
            f"truncation {truncation} does not exceed the top exponent "
            f"{curve_equation_top_exponent(p)}"
        )
    x, y0 = campillo_parametrization(p, truncation)
    y = y0 if y is None else y
    yp = y**p
    return (yp - x ** (p + 1)) ** (p**2) - x ** (p**2 * (p + 1)) * yp * 2 + x ** ((p**2 + 1) * (p + 1))


def verify_curve_equation(p: int, truncation: int, y: TruncatedSeries | None = None) -> bool:
    """True iff the eliminated equation vanishes at the parametrization mod t^truncation.

    ``y`` overrides the second coordinate (used to check perturbed inputs).
    """
    return curve_equation_residual(p, truncation, y).is_zero()
