"""Brute-force ground truth for small instances.

Nothing in here uses zero-connected components, factorization-based
constructions or the CRT: splines are found by exhaustive search over
``(Z/mZ)^n`` and spans by exhaustive linear combination.  The search is
an odometer in vertex order that discards a partial labeling as soon as
an edge between assigned vertices fails, so rows come out in
lexicographic order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import BudgetExceeded, NoFlowUpSpline
from .graph import EdgeLabeledGraph, reduce_labels
from .splines import GeneratingSet, Spline

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True, eq=False)
class SplineSet:
    """Deduplicated splines over ``Z/mZ``, one per row, sorted lexicographically."""

    rows: np.ndarray
    modulus: int

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        for row in self.rows:
            yield Spline(tuple(int(x) for x in row), self.modulus)

    def __contains__(self, f: Spline) -> bool:
        if len(self.rows) == 0:
            return False
        target = np.array([x % self.modulus for x in f], dtype=self.rows.dtype)
        return bool((self.rows == target).all(axis=1).any())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SplineSet):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.rows.shape == other.rows.shape
            and bool((self.rows == other.rows).all())
        )

    def as_set(self) -> set[tuple[int, ...]]:
        return {tuple(int(x) for x in row) for row in self.rows}


def _canonical(rows: np.ndarray) -> np.ndarray:
    if len(rows) == 0:
        return rows
    return np.unique(rows, axis=0)


def _odometer(g: EdgeLabeledGraph, m: int, budget: int, fixed_zeros: int = 0) -> np.ndarray:
    """All splines mod ``m`` on ``g`` with the first ``fixed_zeros`` values 0."""
    n = g.n
    # modulus of the congruence each edge imposes inside Z/m
    mods = [(e.u, e.v, math.gcd(e.label, m)) for e in g.edges]
    rows = np.zeros((1, 0), dtype=np.int64)
    spent = 0
    y = np.arange(m, dtype=np.int64)
    for j in range(n):
        choices = np.zeros(1, dtype=np.int64) if j < fixed_zeros else y
        spent += len(rows) * len(choices)
        if spent > budget:
            raise BudgetExceeded(
                f"enumeration mod {m} on {n} vertices exceeds budget {budget}"
            )
        ok = np.ones((len(rows), len(choices)), dtype=bool)
        for u, v, d in mods:
            if d == 1:
                continue
            if v == j and u < j:
                u, v = v, u
            if u == j and v < j:
                ok &= (choices[None, :] - rows[:, v][:, None]) % d == 0
        ri, ci = np.nonzero(ok)
        rows = np.hstack([rows[ri], choices[ci][:, None]])
    return rows


def enumerate_splines(g: EdgeLabeledGraph, m: int, budget: int = DEFAULT_BUDGET) -> SplineSet:
    """Every ``f`` in ``(Z/mZ)^n`` satisfying all edge congruences."""
    gm = g if g.modulus == m else reduce_labels(g, m)
    return SplineSet(_odometer(gm, m, budget), m)


def span_mod_m(basis: GeneratingSet, m: int, budget: int = DEFAULT_BUDGET) -> SplineSet:
    """All ``Z/mZ``-linear combinations of the generators."""
    splines = basis.splines
    if not splines:
        raise ValueError("empty generating set")
    n = len(splines[0])
    rows = np.zeros((1, n), dtype=np.int64)
    coeffs = np.arange(m, dtype=np.int64)
    spent = 0
    for s in splines:
        spent += len(rows) * m
        if spent > budget:
            raise BudgetExceeded(f"span mod {m} of {len(splines)} generators exceeds budget {budget}")
        vec = np.array([x % m for x in s], dtype=np.int64)
        combos = (rows[:, None, :] + coeffs[None, :, None] * vec[None, None, :]) % m
        rows = _canonical(combos.reshape(-1, n))
    return SplineSet(rows, m)


def verify_generating(basis: GeneratingSet, g: EdgeLabeledGraph, m: int, budget: int = DEFAULT_BUDGET) -> bool:
    return span_mod_m(basis, m, budget) == enumerate_splines(g, m, budget)


def check_bt_criteria(basis: GeneratingSet) -> bool:
    """Sufficient conditions for a flow-up set to be a minimum generating set.

    (a) the first spline is nonzero at the first vertex, (b) every spline
    is flow-up at a distinct vertex and takes a single nonzero value, the
    first one taking the value 1, and (c) those values form a divisibility
    chain once sorted.
    """
    splines = basis.splines
    if not splines or splines[0][0] == 0:
        return False
    leads = [s.leading_vertex for s in splines]
    if None in leads or len(set(leads)) != len(leads):
        return False
    values = []
    for s in splines:
        nonzero = {x for x in s if x}
        if len(nonzero) != 1:
            return False
        values.append(nonzero.pop())
    if values[0] != 1:
        return False
    chain = sorted(values)
    return all(b % a == 0 for a, b in zip(chain, chain[1:]))


def min_leading_oracle(g: EdgeLabeledGraph, i: int, m: int, budget: int = DEFAULT_BUDGET) -> int:
    """Least positive leading value at vertex ``i`` of a flow-up spline.

    Searches splines mod ``m`` vanishing before ``i``; their values at
    ``i`` form a subgroup of ``Z/mZ`` whose least positive generator is
    the gcd of those values with ``m``.
    """
    rows = _odometer(reduce_labels(g, m), m, budget, fixed_zeros=i)
    lead = [int(x) for x in np.unique(rows[:, i]) if x]
    if not lead:
        raise NoFlowUpSpline(f"no flow-up spline mod {m} is nonzero at vertex {i}")
    return reduce(math.gcd, lead, m)


def agreement_classes(splines: SplineSet, n: int) -> list[tuple[int, ...]]:
    """Group vertices on which every spline of the set agrees."""
    rows = splines.rows
    classes: list[list[int]] = []
    for v in range(n):
        for cls in classes:
            if (rows[:, cls[0]] == rows[:, v]).all():
                cls.append(v)
                break
        else:
            classes.append([v])
    return sorted(tuple(c) for c in classes)


def integer_combination(f: np.ndarray, basis: GeneratingSet) -> np.ndarray:
    """Triangular back-substitution of integer rows against a flow-up basis.

    Returns the residual rows; an all-zero result means every row is an
    integer combination of the basis.
    """
    residual = np.array(f, dtype=object if f.dtype == object else np.int64, copy=True)
    for s in basis.splines:
        v = s.leading_vertex
        lead = s[v]
        vec = np.array(s.values, dtype=residual.dtype)
        col = residual[:, v]
        divisible = col % lead == 0
        c = np.where(divisible, col // lead, 0)
        residual = residual - c[:, None] * vec[None, :]
    return residual
