"""Arithmetic in GF(p^k), used to sample torus points in characteristic p.

Elements are coefficient lists (highest degree first) reduced modulo a random
irreducible polynomial; the polynomial arithmetic comes from sympy.
"""
from __future__ import annotations

import math
import random

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_from_int_poly,
    gf_irreducible_p,
    gf_mul,
    gf_pow_mod,
    gf_rem,
    gf_sub,
)


class ExtensionField:
    """GF(p^k) with a fixed modulus; elements are tuples of ints."""

    def __init__(self, p: int, degree: int, rng: random.Random):
        self.p = p
        self.degree = degree
        self.rng = rng
        while True:
            f = [1] + [rng.randrange(p) for _ in range(degree)]
            if gf_irreducible_p(f, p, ZZ):
                self.modulus = f
                break

    @classmethod
    def with_bits(cls, p: int, bits: int, rng: random.Random) -> "ExtensionField":
        """Smallest extension with at least 2**bits elements."""
        return cls(p, max(1, math.ceil(bits / math.log2(p))), rng)

    def _norm(self, a) -> tuple[int, ...]:
        return tuple(gf_rem(list(a), self.modulus, self.p, ZZ))

    def element(self, n: int) -> tuple[int, ...]:
        return self._norm(gf_from_int_poly([n], self.p))

    def add(self, a, b):
        return tuple(gf_add(list(a), list(b), self.p, ZZ))

    def sub(self, a, b):
        return tuple(gf_sub(list(a), list(b), self.p, ZZ))

    def mul(self, a, b):
        return self._norm(gf_mul(list(a), list(b), self.p, ZZ))

    def pow(self, a, n: int):
        return tuple(gf_pow_mod(list(a), n, self.modulus, self.p, ZZ))

    def is_zero(self, a) -> bool:
        return not any(a)

    def random_nonzero(self):
        while True:
            a = self._norm([self.rng.randrange(self.p) for _ in range(self.degree)])
            if any(a):
                return a


class PrimeField:
    """F_P with the same interface as :class:`ExtensionField`."""

    def __init__(self, p: int, rng: random.Random):
        self.p = p
        self.rng = rng

    def element(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def pow(self, a, n: int):
        return pow(a, n, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def random_nonzero(self):
        return self.rng.randrange(1, self.p)


MERSENNE_61 = 2**61 - 1
