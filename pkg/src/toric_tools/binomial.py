"""Weighted binomial systems, their lattices, and Laurent-level primality."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, InconsistentCharacter, InputError
from .exact_linalg import (
    IntVector,
    Lattice,
    dot,
    is_saturated,
    lattice_contains,
    lattice_coordinates,
    smith_normal_form,
    torsion,
)
from .series import CoefficientField


@dataclass(frozen=True)
class Binomial:
    """U^m - lam * U^n."""

    m: IntVector
    n: IntVector
    lam: int | Fraction = 1

    def __post_init__(self):
        m, n = tuple(map(int, self.m)), tuple(map(int, self.n))
        if len(m) != len(n):
            raise DimensionMismatch("exponent vectors of different lengths")
        if any(a < 0 for a in m + n):
            raise InputError("exponents must be non-negative")
        if m == n:
            raise InputError("the two monomials coincide")
        if self.lam == 0:
            raise InputError("lambda must be nonzero")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)

    @property
    def difference(self) -> IntVector:
        return tuple(a - b for a, b in zip(self.m, self.n))

    def cancelled(self) -> "Binomial":
        """Divide out the common monomial factor."""
        common = [min(a, b) for a, b in zip(self.m, self.n)]
        return Binomial(
            tuple(a - c for a, c in zip(self.m, common)),
            tuple(b - c for b, c in zip(self.n, common)),
            self.lam,
        )


@dataclass(frozen=True)
class BinomialSystem:
    variables: tuple[str, ...]
    weights: tuple[int, ...]
    field: CoefficientField
    binomials: tuple[Binomial, ...]
    # per binomial: extra terms (exponent, coefficient) added to U^m - lam U^n
    deformations: tuple[tuple[tuple[IntVector, int | Fraction], ...], ...] = ()

    def __post_init__(self):
        nvar = len(self.variables)
        if len(self.weights) != nvar:
            raise DimensionMismatch("one weight per variable")
        if any(w <= 0 for w in self.weights):
            raise InputError("weights must be positive")
        for b in self.binomials:
            if len(b.m) != nvar:
                raise DimensionMismatch("binomial exponent length differs from variable count")
        defs = tuple(
            tuple((tuple(map(int, e)), self.field(c)) for e, c in terms) for terms in self.deformations
        )
        if not defs:
            defs = ((),) * len(self.binomials)
        if len(defs) != len(self.binomials):
            raise InputError("one deformation list per binomial")
        for terms in defs:
            for e, _ in terms:
                if len(e) != nvar or any(a < 0 for a in e):
                    raise InputError(f"bad deformation exponent {e}")
        object.__setattr__(
            self,
            "binomials",
            tuple(Binomial(b.m, b.n, self.field(b.lam)) for b in self.binomials),
        )
        object.__setattr__(self, "deformations", defs)

    @property
    def is_pure(self) -> bool:
        return not any(self.deformations)

    def undeformed(self) -> "BinomialSystem":
        return BinomialSystem(self.variables, self.weights, self.field, self.binomials)

    def weight(self, exponent: Sequence[int]) -> int:
        return dot(exponent, self.weights)


@dataclass(frozen=True)
class PartialCharacter:
    """Values of a character on the generators of a lattice."""

    lattice: Lattice
    values: tuple[int | Fraction, ...]
    field: CoefficientField

    def value(self, coords: Sequence[int]):
        out = self.field(1)
        for c, v in zip(coords, self.values):
            if c:
                out = self.field.mul(out, self.field.pow(v if c > 0 else self.field.inv(v), abs(c)))
        return out


def lattice_of(system: BinomialSystem) -> tuple[Lattice, PartialCharacter]:
    """Lattice spanned by the m - n together with the character lam on each."""
    rows = tuple(b.difference for b in system.binomials)
    lat = Lattice(len(system.variables), rows)
    chi = PartialCharacter(lat, tuple(b.lam for b in system.binomials), system.field)
    # relations among generators must map to 1
    if rows:
        snf = smith_normal_form(rows)
        for rel in snf.left[snf.rank :]:
            if chi.value(rel) != system.field(1):
                raise InconsistentCharacter(f"relation {rel} forces a character value != 1")
    return lat, chi


@dataclass(frozen=True)
class PrimalityReport:
    saturated: bool
    torsion_divisors: tuple[int, ...]
    witness: IntVector | None = None
    witness_multiplier: int | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def prime(self) -> bool:
        return self.saturated


def primality_report(system: BinomialSystem) -> PrimalityReport:
    """Saturation-based primality of the lattice ideal on the torus."""
    lat, _ = lattice_of(system)
    if is_saturated(lat):
        return PrimalityReport(True, ())
    tors = torsion(lat)
    divisors = tuple(d for d, _ in tors)
    d, v = _generator_witness(lat) or tors[-1]
    notes = (
        f"saturate(L)/L has invariant factors {list(divisors)}; over a field containing "
        f"the required roots of the character values the ideal splits into "
        f"components indexed by these torsion classes",
    )
    return PrimalityReport(False, divisors, v, d, notes)


def _generator_witness(lat: Lattice) -> tuple[int, IntVector] | None:
    """A generator g with content c > 1 and g/c outside L gives the witness g/c.

    The multiplier reported is the least k with k * (g/c) in L.
    """
    for g in lat.generators:
        c = math.gcd(*g)
        if c <= 1:
            continue
        v = tuple(x // c for x in g)
        if lattice_contains(lat, v):
            continue
        k = min(k for k in range(2, c + 1) if c % k == 0 and lattice_contains(lat, tuple(k * x for x in v)))
        return k, v
    return None


def laurent_membership(b: Binomial, chi: PartialCharacter) -> bool:
    """Membership of U^m - lam U^n in the Laurent lattice ideal of ``chi``."""
    coords = lattice_coordinates(chi.lattice, b.difference)
    if coords is None:
        return False
    return chi.value(coords) == chi.field(b.lam)


@dataclass(frozen=True)
class EquationWeights:
    index: int
    weight_m: int
    weight_n: int
    deformation_weights: tuple[int, ...]

    @property
    def balanced(self) -> bool:
        return self.weight_m == self.weight_n

    @property
    def overweight(self) -> bool:
        return all(w > self.weight_m for w in self.deformation_weights)


def is_overweight(system: BinomialSystem) -> tuple[bool, list[EquationWeights]]:
    """Balanced binomials with strictly heavier deformation terms."""
    report = [
        EquationWeights(
            i,
            system.weight(b.m),
            system.weight(b.n),
            tuple(system.weight(e) for e, _ in terms),
        )
        for i, (b, terms) in enumerate(zip(system.binomials, system.deformations))
    ]
    return all(r.balanced and r.overweight for r in report), report


def is_overweight_deformation_of_prime(system: BinomialSystem) -> bool:
    return is_overweight(system)[0] and primality_report(system).saturated


def campillo_system(p: int, deformed: bool = True) -> BinomialSystem:
    """y^p - x^{p+1} - u2, u2^p - x^{p(p+1)} y - u3, u3^p - x^{p^2(p+1)} u2 over F_p."""
    binomials = (
        Binomial((0, p, 0, 0), (p + 1, 0, 0, 0)),
        Binomial((0, 0, p, 0), (p * (p + 1), 1, 0, 0)),
        Binomial((0, 0, 0, p), (p * p * (p + 1), 0, 1, 0)),
    )
    deformations = (
        (((0, 0, 1, 0), -1),),
        (((0, 0, 0, 1), -1),),
        (),
    ) if deformed else ()
    weights = (p**3, p**3 + p**2, p**4 + p**3 + p**2 + p, p**5 + p**4 + p**3 + p**2 + p + 1)
    return BinomialSystem(("x", "y", "u2", "u3"), weights, CoefficientField(p), binomials, deformations)


def campillo_plane_pair(p: int, deformed: bool = False) -> BinomialSystem:
    """The three-variable presentation that looks like an overweight deformation.

    p = 2: y^2 - x^3 (- u2), u2^4 - x^15.
    p odd: y^p - x^{p+1} (- u2), u2^{p^2} - 2 x^{p^2(p+1)} y^p.
    """
    fld = CoefficientField(p)
    b1 = Binomial((0, p, 0), (p + 1, 0, 0))
    if p == 2:
        b2 = Binomial((0, 0, 4), (15, 0, 0))
    else:
        b2 = Binomial((0, 0, p * p), (p * p * (p + 1), p, 0), 2)
    deformations = ((((0, 0, 1), -1),), ()) if deformed else ()
    weights = (p**3, p**3 + p**2, p**4 + p**3 + p**2 + p)
    return BinomialSystem(("x", "y", "u2"), weights, fld, (b1, b2), deformations)
