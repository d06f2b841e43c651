"""Prime fields, the rationals, and truncated power series in one variable t."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np
import sympy

from .errors import InputError


@dataclass(frozen=True)
class CoefficientField:
    """F_p for a prime ``characteristic``, or Q when it is 0."""

    characteristic: int

    def __post_init__(self):
        c = self.characteristic
        if c < 0 or (c and not sympy.isprime(c)):
            raise InputError(f"characteristic must be 0 or prime, got {c}")

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic > 0

    def __call__(self, value) -> int | Fraction:
        """Coerce an int, Fraction or 'a/b' string into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        p = self.characteristic
        if not p:
            return Fraction(value)
        value = Fraction(value)
        num, den = value.numerator % p, value.denominator % p
        if den == 0:
            raise InputError(f"{value} has no image in F_{p}")
        return num * pow(den, -1, p) % p

    def inv(self, a):
        if self.characteristic:
            return pow(int(a), -1, self.characteristic)
        return 1 / Fraction(a)

    def pow(self, a, n: int):
        if self.characteristic:
            return pow(a, n, self.characteristic)
        return Fraction(a) ** n

    def mul(self, a, b):
        return a * b % self.characteristic if self.characteristic else a * b

    def is_zero(self, a) -> bool:
        return a % self.characteristic == 0 if self.characteristic else a == 0

    @property
    def dtype(self):
        # int64 holds products of two residues for p < 2**31
        if self.characteristic and self.characteristic < 2**31:
            return np.int64
        return object

    def zeros(self, n: int) -> np.ndarray:
        if self.dtype is object:
            return np.array([self(0)] * n, dtype=object)
        return np.zeros(n, dtype=np.int64)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.characteristic:
            return arr % self.characteristic
        return arr

    def __str__(self):
        return f"F_{self.characteristic}" if self.characteristic else "Q"


@dataclass(frozen=True)
class TruncatedSeries:
    """A power series in t known modulo t^truncation.

    ``coefficients`` maps exponents to nonzero field elements.
    """

    field: CoefficientField
    truncation: int
    coefficients: Mapping[int, int | Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.truncation <= 0:
            raise InputError("truncation must be positive")
        coeffs = {}
        for e, c in self.coefficients.items():
            if e < 0:
                raise InputError("negative exponent")
            c = self.field(c)
            if e < self.truncation and not self.field.is_zero(c):
                coeffs[int(e)] = c
        object.__setattr__(self, "coefficients", dict(sorted(coeffs.items())))

    @classmethod
    def monomial(cls, fld: CoefficientField, truncation: int, exponent: int, coeff=1):
        return cls(fld, truncation, {exponent: coeff})

    @classmethod
    def from_array(cls, fld: CoefficientField, arr) -> "TruncatedSeries":
        return cls(fld, len(arr), {i: c for i, c in enumerate(arr) if c})

    def to_array(self) -> np.ndarray:
        out = self.field.zeros(self.truncation)
        for e, c in self.coefficients.items():
            out[e] = c
        return out

    def _check(self, other: "TruncatedSeries"):
        if self.field != other.field:
            raise InputError("series over different fields")

    def __add__(self, other):
        self._check(other)
        t = min(self.truncation, other.truncation)
        c = dict(self.coefficients)
        for e, v in other.coefficients.items():
            c[e] = c.get(e, 0) + v
        return TruncatedSeries(self.field, t, c)

    def __neg__(self):
        return TruncatedSeries(self.field, self.truncation, {e: -c for e, c in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(
                self.field, self.truncation, {e: c * other for e, c in self.coefficients.items()}
            )
        self._check(other)
        t = min(self.truncation, other.truncation)
        out: dict[int, int | Fraction] = {}
        for e1, c1 in self.coefficients.items():
            for e2, c2 in other.coefficients.items():
                e = e1 + e2
                if e < t:
                    out[e] = out.get(e, 0) + c1 * c2
        return TruncatedSeries(self.field, t, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative power")
        result = TruncatedSeries(self.field, self.truncation, {0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return not self.coefficients

    def __str__(self):
        if not self.coefficients:
            return f"O(t^{self.truncation})"
        terms = " + ".join(f"{c}*t^{e}" for e, c in self.coefficients.items())
        return f"{terms} + O(t^{self.truncation})"


def series_order(s: TruncatedSeries) -> int | float:
    """The t-adic order; ``math.inf`` when the series vanishes to its precision."""
    return next(iter(s.coefficients), math.inf)
