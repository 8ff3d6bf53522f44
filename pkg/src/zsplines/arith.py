"""Exact residue arithmetic: factorization, CRT, linear congruences.

Everything here works on Python ints, so intermediate products never
overflow regardless of the modulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable

from .errors import InvalidModulus, NoSolution, NonCoprimeModuli


@dataclass(frozen=True)
class PrimePowerDecomposition:
    """Factorization ``m = p_1^e_1 ... p_t^e_t`` with ``p_1 < ... < p_t``."""

    factors: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**e for p, e in self.factors)

    @property
    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)


@dataclass(frozen=True)
class Residue:
    """A residue class stored by its minimal nonnegative representative."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)


def _trial_division(m: int):
    # 2, 3, then the 6k +/- 1 wheel
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            yield p, e
    d = 5
    while d * d <= m:
        for p in (d, d + 2):
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                yield p, e
        d += 6
    if m > 1:
        yield m, 1


def factorize(m: int) -> PrimePowerDecomposition:
    """Deterministic trial-division factorization of ``m >= 2``."""
    if m < 2:
        raise InvalidModulus(f"cannot factorize {m}: need m >= 2")
    return PrimePowerDecomposition(tuple(_trial_division(m)))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = factorize(n).factors
    return f == ((n, 1),)


def smallest_prime_factor(n: int) -> int:
    return factorize(n).factors[0][0]


def valuation(x: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def min_coset_rep(x: int, m: int) -> int:
    """Representative of ``x + mZ`` in ``[0, m)``."""
    if m < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {m}")
    return x % m


def lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def crt_combine(residues: Iterable[Residue]) -> Residue:
    """Combine residues with pairwise coprime moduli into one residue."""
    residues = list(residues)
    if not residues:
        raise ValueError("crt_combine needs at least one residue")
    value, modulus = residues[0].value, residues[0].modulus
    for r in residues[1:]:
        if math.gcd(modulus, r.modulus) != 1:
            raise NonCoprimeModuli(f"moduli {modulus} and {r.modulus} share a factor")
        # value + modulus * t == r.value  (mod r.modulus)
        t = ((r.value - value) * pow(modulus, -1, r.modulus)) % r.modulus
        value += modulus * t
        modulus *= r.modulus
    return Residue(value, modulus)


def solve_linear_congruence(a: int, b: int, m: int) -> int:
    """Smallest ``x >= 0`` with ``a*x == b (mod m)``.

    Raises :class:`NoSolution` when ``gcd(a, m)`` does not divide ``b``.
    """
    if m < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {m}")
    a, b = a % m, b % m
    g = math.gcd(a, m)
    if b % g:
        raise NoSolution(f"{a}*x = {b} (mod {m}) has no solution")
    mg = m // g
    if mg == 1:
        return 0
    # solutions form the single class x0 + (m/g)Z; x0 is its least member
    return (b // g) * pow(a // g, -1, mg) % mg
