from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from apps.sl2z.words import GeneratorWord, Letter


class VertexKind(Enum):
    BLACK = "black"
    BOUNDARY = "boundary"
    DEG6 = "deg6"
    DEG12_NEGATIVE = "deg12_negative"
    DEG12_POSITIVE = "deg12_positive"

    @property
    def degree(self) -> int:
        return {
            VertexKind.BLACK: 1,
            VertexKind.BOUNDARY: 1,
            VertexKind.DEG6: 6,
            VertexKind.DEG12_NEGATIVE: 12,
            VertexKind.DEG12_POSITIVE: 12,
        }[self]

    @property
    def short_name(self) -> str:
        # the vertex part of the edge types (1,12), (6,∂), ...
        return {
            VertexKind.BLACK: "1",
            VertexKind.BOUNDARY: "∂",
            VertexKind.DEG6: "6",
            VertexKind.DEG12_NEGATIVE: "12",
            VertexKind.DEG12_POSITIVE: "12",
        }[self]


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: VertexKind


@dataclass(frozen=True)
class Edge:
    """An oriented edge from (source, source_slot) to (target, target_slot)."""

    id: str
    label: int
    source: str
    source_slot: int
    target: str
    target_slot: int


@dataclass(frozen=True)
class Hoop:
    """A closed edge without vertices, optionally nested inside another hoop."""

    id: str
    label: int
    parent: str | None = None


@dataclass(frozen=True)
class Incidence:
    slot: int
    edge: Edge
    inward: bool


@dataclass(frozen=True)
class Chart:
    """
    A labeled oriented graph in the disk D.

    The slots 0..deg-1 of a vertex list its edge ends counterclockwise.
    `boundary_order` lists the boundary vertices counterclockwise along the
    boundary circle starting from the base point y0, which is never a vertex.
    """

    vertices: tuple[Vertex, ...] = ()
    edges: tuple[Edge, ...] = ()
    boundary_order: tuple[str, ...] = ()
    hoops: tuple[Hoop, ...] = ()

    @cached_property
    def vertex_map(self) -> dict[str, Vertex]:
        return {vertex.id: vertex for vertex in self.vertices}

    def vertex(self, vertex_id: str) -> Vertex | None:
        return self.vertex_map.get(vertex_id)

    @cached_property
    def incidences(self) -> dict[str, list[Incidence]]:
        """The edge ends at each vertex, sorted by slot."""
        ends = {vertex.id: [] for vertex in self.vertices}
        for edge in self.edges:
            ends.setdefault(edge.source, []).append(Incidence(edge.source_slot, edge, False))
            ends.setdefault(edge.target, []).append(Incidence(edge.target_slot, edge, True))
        for incidences in ends.values():
            incidences.sort(key=lambda incidence: incidence.slot)
        return ends

    def degree(self, vertex_id: str) -> int:
        return len(self.incidences.get(vertex_id, ()))

    def count(self, kind: VertexKind) -> int:
        return sum(1 for vertex in self.vertices if vertex.kind is kind)

    @property
    def black_count(self) -> int:
        return self.count(VertexKind.BLACK)

    @property
    def p_signed(self) -> int:
        return self.count(VertexKind.DEG12_NEGATIVE) - self.count(VertexKind.DEG12_POSITIVE)

    def edge(self, edge_id: str) -> Edge | Hoop | None:
        for edge in self.edges:
            if edge.id == edge_id:
                return edge
        for hoop in self.hoops:
            if hoop.id == edge_id:
                return hoop
        return None


def boundary_incidence(chart: Chart, vertex_id: str) -> Incidence:
    return chart.incidences[vertex_id][0]


def boundary_word(chart: Chart) -> GeneratorWord:
    """
    One letter per boundary vertex in boundary order: s_label, inverted when
    the edge points away from the boundary.
    """
    letters = []
    for vertex_id in chart.boundary_order:
        incidence = boundary_incidence(chart, vertex_id)
        letters.append(Letter.of(incidence.edge.label, 1 if incidence.inward else -1))
    return GeneratorWord(tuple(letters))


def edge_type(chart: Chart, edge: Edge) -> str:
    source, target = chart.vertex(edge.source), chart.vertex(edge.target)
    return f"({source.kind.short_name},{target.kind.short_name})"


def edge_types(chart: Chart) -> Counter:
    return Counter(edge_type(chart, edge) for edge in chart.edges)
