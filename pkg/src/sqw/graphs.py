"""Graphs, tessellations, polygon vectors, and the clique-expansion rewrite.

A tessellation partitions the vertex set of a simple undirected graph into
cliques (polygons).  Each polygon carries a unit vector supported exactly on
its vertices; those vectors later induce orthogonal reflections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    DegenerateAngle,
    EmptyPolygon,
    IsolatedVertex,
    NotAClique,
    NotNormalized,
    OddRingSize,
    OutOfRangeVertex,
    OverlappingPolygons,
    SelfLoop,
    UncoveredVertex,
    ZeroAmplitude,
)

NORM_TOL = 1e-12


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0 .. vertex_count-1.

    Edges are stored canonically as sorted (min, max) pairs with no
    duplicates and no self-loops.  Construct through :func:`build_graph`.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None
    _edge_set: frozenset[tuple[int, int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_edge_set", frozenset(self.edges))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_set

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def incident_edges(self, v: int) -> list[int]:
        """Indices (labels) of the edges touching v, in canonical edge order."""
        return [j for j, e in enumerate(self.edges) if v in e]


def build_graph(vertex_count: int, edges, labels=None) -> Graph:
    """Normalize an edge list into a :class:`Graph`.

    Endpoints must be in range and distinct; duplicate edges collapse to one.
    """
    if vertex_count < 0:
        raise ValueError(f"vertex_count must be non-negative, got {vertex_count}")
    canonical = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise SelfLoop(u)
        for w in (u, v):
            if not 0 <= w < vertex_count:
                raise OutOfRangeVertex(w, vertex_count)
        canonical.add((min(u, v), max(u, v)))
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != vertex_count:
            raise ValueError("labels must have one entry per vertex")
    return Graph(vertex_count, tuple(sorted(canonical)), labels)


@dataclass(frozen=True)
class Polygon:
    """One tessellation element: vertices plus the amplitudes of its unit vector.

    Stored sorted by vertex with amplitudes permuted to match.  Amplitudes
    must be nonzero on every vertex and square-sum to 1 within 1e-12; inputs
    outside tolerance are rejected, never renormalized.
    """

    vertices: tuple[int, ...]
    amplitudes: tuple[complex, ...]

    def __post_init__(self):
        if len(self.vertices) == 0:
            raise EmptyPolygon("polygon must contain at least one vertex")
        if len(self.amplitudes) != len(self.vertices):
            raise ValueError("one amplitude per vertex required")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"duplicate vertex in polygon {self.vertices}")
        order = sorted(range(len(self.vertices)), key=lambda i: self.vertices[i])
        object.__setattr__(self, "vertices", tuple(int(self.vertices[i]) for i in order))
        object.__setattr__(self, "amplitudes", tuple(complex(self.amplitudes[i]) for i in order))
        norm2 = 0.0
        for v, a in zip(self.vertices, self.amplitudes):
            if v < 0:
                raise OutOfRangeVertex(v, "any non-negative index")
            if a == 0:
                raise ZeroAmplitude(v)
            norm2 += abs(a) ** 2
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalized(f"polygon amplitudes square-sum to {norm2!r}, not 1")

    def __len__(self) -> int:
        return len(self.vertices)


def uniform_polygon(vertices) -> Polygon:
    """Polygon in the uniform superposition: each amplitude is 1/sqrt(size)."""
    vertices = tuple(vertices)
    if not vertices:
        raise EmptyPolygon("cannot build a uniform polygon on an empty vertex set")
    a = 1.0 / math.sqrt(len(vertices))
    return Polygon(vertices, (complex(a),) * len(vertices))


@dataclass(frozen=True)
class Tessellation:
    """A list of polygons partitioning the vertices of a parent graph."""

    polygons: tuple[Polygon, ...]
    parent: Graph

    def __post_init__(self):
        object.__setattr__(
            self,
            "polygons",
            tuple(sorted(self.polygons, key=lambda p: p.vertices)),
        )

    def __len__(self) -> int:
        return len(self.polygons)

    def covers(self, u: int, v: int) -> bool:
        """Whether some polygon contains both endpoints."""
        return any(u in p.vertices and v in p.vertices for p in self.polygons)


def validate_tessellation(g: Graph, t: Tessellation) -> None:
    """Check the partition-into-cliques conditions; raise on the first violation.

    Raises NotAClique, OverlappingPolygons, or UncoveredVertex.  The verdict
    does not depend on polygon order.
    """
    seen = {}
    for idx, poly in enumerate(t.polygons):
        verts = poly.vertices
        for v in verts:
            if v >= g.vertex_count:
                raise OutOfRangeVertex(v, g.vertex_count)
        for i, u in enumerate(verts):
            for v in verts[i + 1:]:
                if not g.has_edge(u, v):
                    raise NotAClique(idx, (u, v))
        for v in verts:
            if v in seen:
                raise OverlappingPolygons(v)
            seen[v] = idx
    for v in range(g.vertex_count):
        if v not in seen:
            raise UncoveredVertex(v)


def union_covers_edges(g: Graph, tessellations) -> set[tuple[int, int]]:
    """Edges of g lying inside no polygon of any tessellation.

    An empty result means the family is admissible (covers every edge).
    Each tessellation is validated first.
    """
    for t in tessellations:
        validate_tessellation(g, t)
    uncovered = set()
    for u, v in g.edges:
        if not any(t.covers(u, v) for t in tessellations):
            uncovered.add((u, v))
    return uncovered


def ring_graph(size: int) -> Graph:
    """Cycle of `size` vertices; the finite-ring stand-in for the line."""
    if size < 3:
        raise ValueError(f"ring needs at least 3 vertices, got {size}")
    return build_graph(size, [(i, (i + 1) % size) for i in range(size)])


def line_tessellations(ring_size: int, alpha: float, beta: float,
                       phi0: float = 0.0, phi1: float = 0.0) -> tuple[Tessellation, Tessellation]:
    """The two nearest-neighbour tessellations of an even ring.

    The first pairs {2x, 2x+1} with amplitudes (cos a/2, e^{i phi0} sin a/2);
    the second pairs {2x+1, 2x+2 mod N} with (cos b/2, e^{i phi1} sin b/2).
    Together they cover every ring edge.
    """
    if ring_size < 4 or ring_size % 2 != 0:
        raise OddRingSize(ring_size)
    for name, angle in (("alpha", alpha), ("beta", beta)):
        if not 0.0 < angle < math.pi:
            raise DegenerateAngle(name, angle)
    g = ring_graph(ring_size)
    a_even = complex(math.cos(alpha / 2))
    a_odd = complex(math.cos(phi0), math.sin(phi0)) * math.sin(alpha / 2)
    b_odd = complex(math.cos(beta / 2))
    b_even = complex(math.cos(phi1), math.sin(phi1)) * math.sin(beta / 2)
    first = []
    second = []
    for x in range(ring_size // 2):
        first.append(Polygon((2 * x, 2 * x + 1), (a_even, a_odd)))
        second.append(Polygon((2 * x + 1, (2 * x + 2) % ring_size), (b_odd, b_even)))
    return Tessellation(tuple(first), g), Tessellation(tuple(second), g)


@dataclass(frozen=True)
class ExpansionMap:
    """Bijection between arcs (vertex, incident edge) and expanded-graph vertices.

    `arcs[i]` is the (original vertex, edge label) pair sitting at expanded
    vertex i; arcs are ordered by vertex, then by edge label.
    """

    original: Graph
    expanded: Graph
    arcs: tuple[tuple[int, int], ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(self.arcs)})

    def arc_index(self, vertex: int, edge_label: int) -> int:
        return self._index[(vertex, edge_label)]

    @property
    def arc_count(self) -> int:
        return len(self.arcs)


def clique_expansion(g: Graph) -> ExpansionMap:
    """Replace every degree-d vertex by a d-clique.

    The expanded graph has one vertex per arc (2|E| in total).  Arcs of the
    same original vertex are pairwise adjacent; for each original edge the
    two opposite arcs are adjacent.  Vertices are labeled "v,j".
    """
    degrees = g.degrees()
    for v, d in enumerate(degrees):
        if d == 0:
            raise IsolatedVertex(v)
    arcs = []
    for v in range(g.vertex_count):
        for j in g.incident_edges(v):
            arcs.append((v, j))
    index = {a: i for i, a in enumerate(arcs)}
    new_edges = []
    pos = 0
    for v in range(g.vertex_count):
        d = degrees[v]
        for i in range(pos, pos + d):
            for k in range(i + 1, pos + d):
                new_edges.append((i, k))
        pos += d
    for j, (u, w) in enumerate(g.edges):
        new_edges.append((index[(u, j)], index[(w, j)]))
    labels = tuple(f"{v},{j}" for v, j in arcs)
    expanded = build_graph(len(arcs), new_edges, labels)
    return ExpansionMap(g, expanded, tuple(arcs))


# --- JSON document format -----------------------------------------------------


def to_document(g: Graph, tessellations=()) -> dict:
    """Serialize a graph plus tessellations to the JSON document schema."""
    doc = {
        "vertices": g.vertex_count,
        "edges": [[u, v] for u, v in g.edges],
    }
    if g.labels is not None:
        doc["labels"] = list(g.labels)
    if tessellations:
        doc["tessellations"] = [
            {
                "polygons": [
                    {
                        "vertices": list(p.vertices),
                        "amplitudes": [[a.real, a.imag] for a in p.amplitudes],
                    }
                    for p in t.polygons
                ]
            }
            for t in tessellations
        ]
    return doc


def from_document(doc: dict) -> tuple[Graph, list[Tessellation]]:
    """Parse the JSON document schema; absent amplitudes default to uniform."""
    g = build_graph(int(doc["vertices"]), doc.get("edges", []),
                    doc.get("labels"))
    tessellations = []
    for tdoc in doc.get("tessellations", []):
        polygons = []
        for pdoc in tdoc["polygons"]:
            verts = tuple(int(v) for v in pdoc["vertices"])
            if "amplitudes" in pdoc:
                amps = tuple(complex(re, im) for re, im in pdoc["amplitudes"])
                polygons.append(Polygon(verts, amps))
            else:
                polygons.append(uniform_polygon(verts))
        tessellations.append(Tessellation(tuple(polygons), g))
    return g, tessellations
