"""Pointwise spline multiplication and structure-constant tables.

Three table builders exist: a closed form for squarefree moduli
(orthogonal idempotents), a closed form for prime powers (nested
supports), and a general one that expands each product back into the
generating set.  The closed forms are checked against pointwise products
before they are returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .arith import Residue, crt_combine, factorize, solve_linear_congruence, valuation
from .errors import (
    ContextMismatch,
    ExpressionFailure,
    NoSolution,
    NonSquarefreeModulus,
    NotPrimePower,
    VerificationFailure,
)
from .splines import GeneratingSet, Spline


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class ScalarMultiple:
    coefficient: int
    index: int


@dataclass(frozen=True)
class GeneralCombination:
    coefficients: tuple[int, ...]


Entry = Union[Zero, ScalarMultiple, GeneralCombination]


def multiply(f: Spline, g: Spline) -> Spline:
    if f.modulus != g.modulus or len(f) != len(g):
        raise ContextMismatch("cannot multiply splines over different rings or graphs")
    return Spline(tuple(a * b for a, b in zip(f, g)), f.modulus)


def support(f: Spline) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(f) if x)


def expand(entry: Entry, basis: GeneratingSet) -> Spline:
    splines = basis.splines
    n = len(splines[0])
    if isinstance(entry, Zero):
        return Spline.zero(n, basis.modulus)
    if isinstance(entry, ScalarMultiple):
        return splines[entry.index].scale(entry.coefficient)
    total = Spline.zero(n, basis.modulus)
    for c, s in zip(entry.coefficients, splines):
        total = total + s.scale(c)
    return total


@dataclass(frozen=True)
class MultiplicationTable:
    generators: GeneratingSet
    entries: tuple[tuple[Entry, ...], ...]
    kind: str

    def __getitem__(self, ij: tuple[int, int]) -> Entry:
        i, j = ij
        return self.entries[i][j]

    def __len__(self) -> int:
        return len(self.entries)

    def product(self, i: int, j: int) -> Spline:
        return expand(self.entries[i][j], self.generators)

    def is_symmetric(self) -> bool:
        r = len(self.entries)
        return all(self.entries[i][j] == self.entries[j][i] for i in range(r) for j in range(r))


def _verified(basis: GeneratingSet, entries, kind: str) -> MultiplicationTable:
    table = MultiplicationTable(basis, tuple(tuple(row) for row in entries), kind)
    splines = basis.splines
    for i, bi in enumerate(splines):
        for j, bj in enumerate(splines):
            if table.product(i, j) != multiply(bi, bj):
                raise VerificationFailure(
                    f"{kind} table entry ({i}, {j}) = {table[i, j]} "
                    f"disagrees with the pointwise product"
                )
    return table


def multable_distinct_primes(basis: GeneratingSet) -> MultiplicationTable:
    """Table for a squarefree modulus: generators are orthogonal idempotents."""
    m = basis.modulus
    if m is None or not factorize(m).is_squarefree:
        raise NonSquarefreeModulus(f"modulus {m} is not squarefree")
    r = len(basis)
    entries = [[ScalarMultiple(1, i) if i == j else Zero() for j in range(r)] for i in range(r)]
    return _verified(basis, entries, "distinct-primes")


def multable_prime_power(basis: GeneratingSet) -> MultiplicationTable:
    """Table for a ``p^k`` generating set of constant ``p^s`` splines.

    With ``s <= r`` the levels of two generators, their product is
    ``p^s`` times the higher-level one when the supports meet and
    ``s + r < k``, and zero otherwise.
    """
    m = basis.modulus
    fac = factorize(m) if m is not None else None
    if fac is None or not fac.is_prime_power:
        raise NotPrimePower(f"modulus {m} is not a prime power")
    (p, k), = fac.factors
    levels = []
    for gen in basis:
        c = gen.constant_value
        if c is None:
            raise VerificationFailure(f"generator {gen.spline} is not constant")
        levels.append(valuation(c, p))
    supports = [support(s) for s in basis.splines]
    r = len(basis)
    entries = [[Zero()] * r for _ in range(r)]
    for i in range(r):
        for j in range(r):
            lo, hi = (i, j) if (levels[i], i) <= (levels[j], j) else (j, i)
            s, t = levels[lo], levels[hi]
            if supports[i] & supports[j] and s + t < k:
                entries[i][j] = ScalarMultiple(p**s % m, hi)
    return _verified(basis, entries, "prime-power")


def _express_prime_power(product: Spline, gens: list[tuple[int, Spline]], q: int) -> dict[int, Residue]:
    """Greedy flow-up back-substitution over ``Z/q`` for constant generators.

    Returns, per generator position, the coefficient modulo the additive
    order of that generator (the only part that affects the product).
    """
    residual = Spline(product.values, q)
    coeffs = {}
    for pos, b in gens:
        v = b.leading_vertex
        try:
            c = solve_linear_congruence(b[v], residual[v], q)
        except NoSolution:
            raise ExpressionFailure(
                f"cannot clear vertex {v} modulo {q} with generator {pos}"
            ) from None
        order = q // math.gcd(b[v], q)
        if order > 1:
            coeffs[pos] = Residue(c, order)
        residual = residual - b.scale(c)
    if not residual.is_zero:
        raise ExpressionFailure(f"nonzero residual {residual.values} modulo {q}")
    return coeffs


def express(f: Spline, basis: GeneratingSet) -> tuple[int, ...]:
    """Coefficients writing ``f`` as a combination of a ``gens_mod_m`` set.

    Each primary component is solved separately by back-substitution at
    leading vertices, where the generators are constant and triangular.
    The coefficient reported for a generator is the least nonnegative
    integer that reproduces its contribution in every component.
    """
    m = basis.modulus
    per_prime = []
    for q in factorize(m).prime_powers:
        gens = [(pos, Spline(s.values, q)) for pos, s in enumerate(basis.splines)]
        gens = sorted(
            ((pos, s) for pos, s in gens if not s.is_zero),
            key=lambda t: t[1].leading_vertex,
        )
        per_prime.append(_express_prime_power(f, gens, q))
    coeffs = []
    for pos in range(len(basis)):
        parts = [c[pos] for c in per_prime if pos in c]
        coeffs.append(crt_combine(parts).value if parts else 0)
    return tuple(coeffs)


def _simplify(coeffs: tuple[int, ...]) -> Entry:
    nonzero = [(i, c) for i, c in enumerate(coeffs) if c]
    if not nonzero:
        return Zero()
    if len(nonzero) == 1:
        i, c = nonzero[0]
        return ScalarMultiple(c, i)
    return GeneralCombination(coeffs)


def multable_general(basis: GeneratingSet) -> MultiplicationTable:
    splines = basis.splines
    r = len(splines)
    entries = [[Zero()] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            entries[i][j] = entries[j][i] = _simplify(express(multiply(splines[i], splines[j]), basis))
    return _verified(basis, entries, "general")


def multiplication_table(basis: GeneratingSet) -> MultiplicationTable:
    """Pick the closed form that applies to the modulus, else the general one."""
    fac = factorize(basis.modulus)
    if fac.is_prime_power:
        return multable_prime_power(basis)
    if fac.is_squarefree:
        return multable_distinct_primes(basis)
    return multable_general(basis)
