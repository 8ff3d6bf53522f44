"""Splines and flow-up generating sets over Z/mZ and Z.

A spline is a vertex labeling ``f`` with ``f[u] - f[v]`` in the ideal of
every edge ``uv``.  The constructions here build flow-up minimum
generating sets level by level over prime powers, glue the prime-power
pieces together with the CRT, and derive a flow-up basis over Z from a
suitably chosen modulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .arith import (
    Residue,
    crt_combine,
    factorize,
    is_prime,
    lcm,
    min_coset_rep,
    smallest_prime_factor,
    solve_linear_congruence,
)
from .errors import (
    ContextMismatch,
    InvalidModulus,
    NonDivisorLift,
    NotPrime,
    NotPrimePower,
    ZeroSpline,
)
from .graph import (
    Edge,
    EdgeLabeledGraph,
    UnionFind,
    reduce_labels,
    zero_components,
)


@dataclass(frozen=True)
class Spline:
    """Vertex values in vertex order; ``modulus=None`` means integer values."""

    values: tuple[int, ...]
    modulus: int | None = None

    def __post_init__(self) -> None:
        values = tuple(self.values)
        if self.modulus is not None:
            values = tuple(x % self.modulus for x in values)
        object.__setattr__(self, "values", values)

    @classmethod
    def zero(cls, n: int, modulus: int | None = None) -> "Spline":
        return cls((0,) * n, modulus)

    @classmethod
    def constant(cls, n: int, value: int, modulus: int | None = None) -> "Spline":
        return cls((value,) * n, modulus)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def _check(self, other: "Spline") -> None:
        if self.modulus != other.modulus or len(self) != len(other):
            raise ContextMismatch("splines live over different rings or graphs")

    def __add__(self, other: "Spline") -> "Spline":
        self._check(other)
        return Spline(tuple(a + b for a, b in zip(self, other)), self.modulus)

    def __sub__(self, other: "Spline") -> "Spline":
        self._check(other)
        return Spline(tuple(a - b for a, b in zip(self, other)), self.modulus)

    def __neg__(self) -> "Spline":
        return Spline(tuple(-a for a in self), self.modulus)

    def scale(self, c: int) -> "Spline":
        return Spline(tuple(c * a for a in self), self.modulus)

    @property
    def is_zero(self) -> bool:
        return not any(self.values)

    @property
    def leading_vertex(self) -> int | None:
        """Smallest vertex index with a nonzero value."""
        for i, x in enumerate(self.values):
            if x:
                return i
        return None

    @property
    def constant_value(self) -> int | None:
        """The single nonzero value, if the spline takes exactly one."""
        nonzero = {x for x in self.values if x}
        return nonzero.pop() if len(nonzero) == 1 else None

    def as_dict(self, g: EdgeLabeledGraph) -> dict[str, int]:
        return {g.name(i): x for i, x in enumerate(self.values)}


@dataclass(frozen=True)
class Generator:
    spline: Spline
    # reduction level beta at which the spline was introduced, if any
    level: int | None = None

    @property
    def leading_vertex(self) -> int | None:
        return self.spline.leading_vertex

    @property
    def constant_value(self) -> int | None:
        return self.spline.constant_value


@dataclass(frozen=True)
class GeneratingSet:
    generators: tuple[Generator, ...]
    modulus: int | None = None

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, i: int) -> Generator:
        return self.generators[i]

    @property
    def splines(self) -> tuple[Spline, ...]:
        return tuple(gen.spline for gen in self.generators)

    @property
    def leading_vertices(self) -> tuple[int | None, ...]:
        return tuple(gen.leading_vertex for gen in self.generators)

    @classmethod
    def of(cls, splines: Iterable[Spline], modulus: int | None = None) -> "GeneratingSet":
        splines = list(splines)
        if modulus is None and splines:
            modulus = splines[0].modulus
        return cls(tuple(Generator(s) for s in splines), modulus)


def _sorted_by_leading(gens: Iterable[Generator]) -> tuple[Generator, ...]:
    gens = tuple(gens)
    leads = [g.leading_vertex for g in gens]
    if None in leads:
        raise ZeroSpline("zero splines never appear in an emitted generating set")
    if len(set(leads)) != len(leads):
        raise AssertionError(f"two generators share a leading vertex: {leads}")
    return tuple(sorted(gens, key=lambda g: g.leading_vertex))


def _divides_label(diff: int, label: int, modulus: int | None) -> bool:
    if modulus is None:
        return diff == 0 if label == 0 else diff % label == 0
    return diff % math.gcd(label, modulus) == 0


def is_spline(g: EdgeLabeledGraph, f: Spline) -> bool:
    if f.modulus != g.modulus or len(f) != g.n:
        raise ContextMismatch(
            f"spline over modulus {f.modulus} with {len(f)} entries "
            f"does not match graph over {g.modulus} with {g.n} vertices"
        )
    return all(_divides_label(f[e.u] - f[e.v], e.label, g.modulus) for e in g.edges)


def _prime_power(q: int) -> tuple[int, int]:
    fac = factorize(q)
    if not fac.is_prime_power:
        raise NotPrimePower(f"{q} is not a prime power")
    return fac.factors[0]


def component_indicator_spline(g: EdgeLabeledGraph, comp: Iterable[int]) -> Spline:
    """``p^(beta-1)`` on ``comp`` and 0 elsewhere, for ``g`` over ``Z/p^beta``."""
    if g.modulus is None:
        raise NotPrimePower("indicator splines need a prime-power modulus")
    p, beta = _prime_power(g.modulus)
    comp = set(comp)
    value = p ** (beta - 1)
    return Spline(tuple(value if v in comp else 0 for v in range(g.n)), g.modulus)


def _reduced(g: EdgeLabeledGraph, q: int) -> EdgeLabeledGraph:
    return g if g.modulus == q else reduce_labels(g, q)


def prime_power_tower(g: EdgeLabeledGraph, p: int, k: int) -> list[GeneratingSet]:
    """Flow-up minimum generating sets over ``Z/p^beta`` for ``beta = 1..k``.

    Level ``beta`` keeps the (lifted) generators of level ``beta - 1`` and
    adds one indicator spline for every zero-connected component whose
    index first appears at level ``beta``.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError(f"exponent must be >= 1, got {k}")
    tower: list[GeneratingSet] = []
    gens: list[Generator] = []
    seen: set[int] = set()
    for beta in range(1, k + 1):
        q = p**beta
        gq = _reduced(g, q)
        part = zero_components(gq)
        lifted = [Generator(lift_spline(gen.spline, q), gen.level) for gen in gens]
        new = [
            Generator(component_indicator_spline(gq, comp), beta)
            for comp in part
            if comp[0] not in seen
        ]
        gens = list(_sorted_by_leading(lifted + new))
        seen = set(part.indices)
        tower.append(GeneratingSet(tuple(gens), q))
    return tower


def gens_mod_p(g: EdgeLabeledGraph, p: int) -> GeneratingSet:
    return prime_power_tower(g, p, 1)[0]


def gens_mod_prime_power(g: EdgeLabeledGraph, p: int, k: int) -> GeneratingSet:
    return prime_power_tower(g, p, k)[-1]


def lift_spline(f: Spline, target: int | None) -> Spline:
    """Reinterpret ``f`` over ``Z/target`` (or Z) via minimal representatives."""
    if f.modulus is None:
        raise NonDivisorLift("cannot lift an integer spline")
    if target is not None and target % f.modulus:
        raise NonDivisorLift(f"{f.modulus} does not divide {target}")
    return Spline(tuple(min_coset_rep(x, f.modulus) for x in f), target)


def gens_mod_m(g: EdgeLabeledGraph, m: int, *, pairing: str = "position") -> GeneratingSet:
    """Flow-up minimum generating set over ``Z/mZ``.

    The prime-power sets are each ordered by leading vertex and combined
    with the CRT.  With ``pairing="position"`` the r-th generator is built
    from the r-th spline of every prime-power set (zero once a set runs
    out), which gives a minimum generating set.  With
    ``pairing="leading"`` splines are grouped by their leading vertex
    instead; the result may be larger than the rank, but its leading
    value at each vertex generates every flow-up leading value there.
    """
    if m < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {m}")
    if pairing not in ("position", "leading"):
        raise ValueError(f"unknown pairing {pairing!r}")
    gm = _reduced(g, m)
    fac = factorize(m)
    if fac.is_prime_power:
        (p, e), = fac.factors
        return gens_mod_prime_power(gm, p, e)

    per_factor = []
    for p, e in fac:
        q = p**e
        splines = gens_mod_prime_power(gm, p, e).splines
        if pairing == "position":
            slots = dict(enumerate(splines))
        else:
            slots = {s.leading_vertex: s for s in splines}
        per_factor.append((q, slots))
    keys = sorted(set().union(*(slots for _, slots in per_factor)))
    out = []
    for key in keys:
        values = []
        for v in range(g.n):
            parts = [
                Residue(slots[key][v] if key in slots else 0, q)
                for q, slots in per_factor
            ]
            values.append(crt_combine(parts).value)
        out.append(Generator(Spline(tuple(values), m)))
    return GeneratingSet(_sorted_by_leading(out), m)


def minimize_leading(b: Spline) -> Spline:
    """Scale ``b`` so its leading value becomes ``gcd(leading, m)``."""
    if b.modulus is None:
        raise InvalidModulus("minimize_leading works over Z/mZ")
    i = b.leading_vertex
    if i is None:
        raise ZeroSpline("cannot minimize the zero spline")
    m = b.modulus
    target = math.gcd(b[i], m)
    return b.scale(solve_linear_congruence(b[i], target, m))


def integer_modulus(g: EdgeLabeledGraph) -> int | None:
    """``lcm(labels) * p`` with ``p`` the smallest prime dividing a label.

    Returns None when every label is a unit (or there are no edges);
    zero labels must be contracted away first.
    """
    labels = [e.label for e in g.edges]
    if any(x == 0 for x in labels):
        raise ValueError("contract zero-labeled edges before choosing a modulus")
    nonunit = [x for x in labels if x > 1]
    if not nonunit:
        return None
    p1 = min(smallest_prime_factor(x) for x in nonunit)
    return lcm(nonunit) * p1


def _contract_zero_edges(g: EdgeLabeledGraph):
    """Merge vertices joined by zero-labeled edges.

    Returns the contracted graph and, for every original vertex, the index
    of its class in the contracted graph.  Classes are ordered by their
    smallest member.
    """
    uf = UnionFind(g.n)
    for e in g.edges:
        if e.label == 0:
            uf.union(e.u, e.v)
    classes = uf.groups()
    where = {}
    for ci, cls in enumerate(classes):
        for v in cls:
            where[v] = ci
    edges = tuple(
        Edge(where[e.u], where[e.v], e.label)
        for e in g.edges
        if e.label != 0 and where[e.u] != where[e.v]
    )
    names = tuple(g.name(c[0]) for c in classes)
    return EdgeLabeledGraph(names, edges, None), [where[v] for v in range(g.n)]


def integer_basis(g: EdgeLabeledGraph) -> GeneratingSet:
    """Flow-up basis of the Z-module of integer splines on ``g``.

    Zero-labeled edges are contracted first (their endpoints always carry
    equal values), so the basis has one element per contracted vertex.
    """
    if g.modulus is not None:
        raise ContextMismatch("integer_basis needs a graph over the integers")
    h, where = _contract_zero_edges(g)
    m = integer_modulus(h)
    if m is None:
        small = [Spline(tuple(int(i == j) for j in range(h.n))) for i in range(h.n)]
    else:
        gm = reduce_labels(h, m)
        # every vertex leads a generator mod p1^e1, so leading-vertex
        # pairing yields exactly one generator per vertex
        bm = gens_mod_m(gm, m, pairing="leading")
        if len(bm) != h.n:
            raise AssertionError(f"expected {h.n} generators mod {m}, got {len(bm)}")
        small = [lift_spline(minimize_leading(b), None) for b in bm.splines]
    full = [Spline(tuple(s[where[v]] for v in range(g.n))) for s in small]
    return GeneratingSet(_sorted_by_leading(Generator(s) for s in full), None)


def reduce_integer_basis(basis: GeneratingSet) -> GeneratingSet:
    """Shrink entries by subtracting multiples of the next basis element.

    Working from the back, each element loses the largest nonnegative
    multiple of its successor that keeps every entry nonnegative.
    """
    splines = list(basis.splines)
    for i in range(len(splines) - 2, -1, -1):
        cur, nxt = splines[i], splines[i + 1]
        ratios = [a // b for a, b in zip(cur, nxt) if b > 0]
        c = max(0, min(ratios)) if ratios else 0
        if c:
            splines[i] = cur - nxt.scale(c)
    return GeneratingSet(tuple(Generator(s) for s in splines), basis.modulus)


def rank(g: EdgeLabeledGraph, m: int) -> int:
    """Size of a minimum generating set over ``Z/mZ``."""
    gm = _reduced(g, m)
    return max(
        len(zero_components(reduce_labels(gm, q))) for q in factorize(m).prime_powers
    )


def forced_equal_classes(g: EdgeLabeledGraph, m: int) -> list[tuple[int, ...]]:
    """Vertex classes on which every spline over ``Z/mZ`` is constant."""
    gm = _reduced(g, m)
    parts = [zero_components(reduce_labels(gm, q)) for q in factorize(m).prime_powers]
    keys: dict[tuple[int, ...], list[int]] = {}
    for v in range(g.n):
        key = tuple(part.component_of(v)[0] for part in parts)
        keys.setdefault(key, []).append(v)
    return sorted(tuple(vs) for vs in keys.values())
