"""Edge-labeled graphs, label reduction and zero-connected components.

Vertices are stored by position: index 0 is the first declared vertex
(``v_1`` in the usual 1-based notation).  A graph with ``modulus=None``
has labels in the integers; otherwise labels live in ``Z/mZ`` and are
stored as minimal nonnegative representatives.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    Disconnected,
    InvalidModulus,
    LabelOutOfRange,
    MalformedDocument,
    NegativeLabel,
    NonDivisorReduction,
    SelfLoop,
    UnknownVertex,
)


class UnionFind:
    """Union-find with path compression over ``range(size)``."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        # keep the smaller index as root so roots are canonical
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra

    def groups(self) -> list[tuple[int, ...]]:
        buckets: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            buckets.setdefault(self.find(x), []).append(x)
        return sorted(tuple(v) for v in buckets.values())


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    label: int


@dataclass(frozen=True)
class EdgeLabeledGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    modulus: int | None = None

    @classmethod
    def build(
        cls,
        vertices: int | Sequence[str],
        edges: Iterable[tuple[int, int, int]],
        modulus: int | None = None,
    ) -> "EdgeLabeledGraph":
        """Convenience constructor taking 0-based ``(u, v, label)`` triples.

        ``vertices`` may be a count, in which case names ``v1..vn`` are used.
        Labels are reduced modulo ``modulus`` and the result is validated.
        """
        if isinstance(vertices, int):
            vertices = [f"v{i + 1}" for i in range(vertices)]
        if modulus is not None and modulus < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {modulus}")
        es = []
        for u, v, label in edges:
            if label < 0:
                raise NegativeLabel(f"edge ({u}, {v}) has negative label {label}")
            es.append(Edge(u, v, label % modulus if modulus else label))
        g = cls(tuple(vertices), tuple(es), modulus)
        validate_graph(g)
        return g

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def is_integral(self) -> bool:
        return self.modulus is None

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(e.label for e in self.edges)

    def ideal_generators(self) -> tuple[int, ...]:
        """Labels canonicalized to ``gcd(label, m)``, with the zero ideal as 0."""
        if self.modulus is None:
            return self.labels
        m = self.modulus
        return tuple(math.gcd(e.label, m) % m for e in self.edges)

    def name(self, i: int) -> str:
        return self.vertices[i]

    def index(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise UnknownVertex(f"unknown vertex {name!r}") from None

    def to_dict(self) -> dict:
        doc: dict = {"mode": "integers" if self.modulus is None else "mod-m"}
        if self.modulus is not None:
            doc["modulus"] = self.modulus
        doc["vertices"] = list(self.vertices)
        doc["edges"] = [
            {"u": self.vertices[e.u], "v": self.vertices[e.v], "label": e.label}
            for e in self.edges
        ]
        return doc


@dataclass(frozen=True)
class ZeroComponentPartition:
    """Zero-connected components at reduction level ``level``.

    Each component is a sorted tuple of vertex indices; its index is its
    first (smallest) entry.  Components are listed by index.
    """

    level: int
    components: tuple[tuple[int, ...], ...]

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.components)

    def component_of(self, vertex: int) -> tuple[int, ...]:
        for c in self.components:
            if vertex in c:
                return c
        raise KeyError(vertex)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_graph(text: str) -> EdgeLabeledGraph:
    """Parse and validate a graph JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from None
    return graph_from_dict(doc)


def graph_from_dict(doc) -> EdgeLabeledGraph:
    if not isinstance(doc, dict):
        raise MalformedDocument("top level must be an object")
    mode = doc.get("mode")
    if mode not in ("mod-m", "integers"):
        raise MalformedDocument(f"mode must be 'mod-m' or 'integers', got {mode!r}")
    modulus = None
    if mode == "mod-m":
        modulus = doc.get("modulus")
        if not _is_int(modulus):
            raise MalformedDocument("mode 'mod-m' requires an integer 'modulus'")
        if modulus < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {modulus}")
    elif "modulus" in doc:
        raise MalformedDocument("'modulus' is only allowed in mode 'mod-m'")

    names = doc.get("vertices")
    if not isinstance(names, list) or not names or not all(isinstance(x, str) for x in names):
        raise MalformedDocument("'vertices' must be a non-empty list of strings")
    if len(set(names)) != len(names):
        raise MalformedDocument("duplicate vertex names")
    position = {name: i for i, name in enumerate(names)}

    raw_edges = doc.get("edges")
    if not isinstance(raw_edges, list):
        raise MalformedDocument("'edges' must be a list")
    edges = []
    for k, e in enumerate(raw_edges):
        if not isinstance(e, dict) or not {"u", "v", "label"} <= e.keys():
            raise MalformedDocument(f"edge #{k} needs keys 'u', 'v', 'label'")
        for key in ("u", "v"):
            if e[key] not in position:
                raise UnknownVertex(f"edge #{k} references undeclared vertex {e[key]!r}")
        label = e["label"]
        if not _is_int(label):
            raise MalformedDocument(f"edge #{k} label must be an integer")
        if label < 0:
            raise NegativeLabel(f"edge #{k} has negative label {label}")
        if modulus is not None:
            label %= modulus
        edges.append(Edge(position[e["u"]], position[e["v"]], label))

    g = EdgeLabeledGraph(tuple(names), tuple(edges), modulus)
    validate_graph(g)
    return g


def validate_graph(g: EdgeLabeledGraph) -> None:
    if g.modulus is not None and g.modulus < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {g.modulus}")
    uf = UnionFind(g.n)
    for e in g.edges:
        if not (0 <= e.u < g.n and 0 <= e.v < g.n):
            raise UnknownVertex(f"edge {e} references a vertex outside 0..{g.n - 1}")
        if e.u == e.v:
            raise SelfLoop(f"self-loop at vertex {g.name(e.u)}")
        if e.label < 0:
            raise NegativeLabel(f"edge {e} has a negative label")
        if g.modulus is not None and e.label >= g.modulus:
            raise LabelOutOfRange(f"label {e.label} not reduced modulo {g.modulus}")
        uf.union(e.u, e.v)
    groups = uf.groups()
    if len(groups) > 1:
        raise Disconnected([[g.name(i) for i in grp] for grp in groups])


def reduce_labels(g: EdgeLabeledGraph, q: int) -> EdgeLabeledGraph:
    """The same graph with every label taken modulo ``q``."""
    if q < 2:
        raise InvalidModulus(f"reduction modulus must be >= 2, got {q}")
    if g.modulus is not None and g.modulus % q:
        raise NonDivisorReduction(f"{q} does not divide the modulus {g.modulus}")
    edges = tuple(Edge(e.u, e.v, e.label % q) for e in g.edges)
    return EdgeLabeledGraph(g.vertices, edges, q)


def zero_components(g: EdgeLabeledGraph) -> ZeroComponentPartition:
    if g.modulus is None:
        raise InvalidModulus("zero components need a modulus; reduce the labels first")
    uf = UnionFind(g.n)
    for e in g.edges:
        if e.label % g.modulus == 0:
            uf.union(e.u, e.v)
    return ZeroComponentPartition(g.modulus, tuple(uf.groups()))
