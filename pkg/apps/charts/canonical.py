import logging
from collections import Counter
from dataclasses import dataclass

from apps.common.exceptions import InvalidParameter, InvariantViolation
from apps.factorization.factorizations import Factorization, canonical_form
from apps.sl2z.words import GeneratorWord, boundary_word as canonical_boundary_word

from .charts import Chart, Edge, Vertex, VertexKind, boundary_word, edge_types
from .validators import validate

logger = logging.getLogger(__name__)


def nucleon(index: int) -> tuple[list[Vertex], list[Edge]]:
    """One negative degree-12 vertex fed by twelve black vertices, labels alternating."""
    centre = f"n{index}.c"
    vertices = [Vertex(centre, VertexKind.DEG12_NEGATIVE)]
    edges = []
    for j in range(12):
        black = f"n{index}.b{j}"
        vertices.append(Vertex(black, VertexKind.BLACK))
        edges.append(Edge(f"n{index}.e{j}", 1 if j % 2 == 0 else 2, black, 0, centre, j))
    return vertices, edges


def unit(index: int, label: int) -> tuple[list[Vertex], list[Edge]]:
    black, boundary = f"u{index}.b", f"u{index}.d"
    return (
        [Vertex(black, VertexKind.BLACK), Vertex(boundary, VertexKind.BOUNDARY)],
        [Edge(f"u{index}.e", label, black, 0, boundary, 0)],
    )


def canonical_chart(p: int, q: int, k: int) -> Chart:
    """p disjoint nucleons and the units (U1 U2)^{3q} U1^k along the boundary."""
    if p < 0 or q not in (0, 1) or k < 0:
        raise InvalidParameter(f"need p >= 0, q in {{0,1}}, k >= 0; got ({p},{q},{k})")
    vertices, edges, boundary = [], [], []
    for index in range(p):
        more_vertices, more_edges = nucleon(index)
        vertices += more_vertices
        edges += more_edges
    labels = [1, 2] * (3 * q) + [1] * k
    for index, label in enumerate(labels):
        more_vertices, more_edges = unit(index, label)
        vertices += more_vertices
        edges += more_edges
        boundary.append(f"u{index}.d")
    return Chart(tuple(vertices), tuple(edges), tuple(boundary))


@dataclass(frozen=True)
class ChartCounts:
    c: int
    p_signed: int
    boundary_word: GeneratorWord
    inward_boundary: int
    outward_boundary: int
    edge_types: Counter

    def canonical_boundary(self) -> tuple[int, int] | None:
        """(q, k) when the boundary word is (s1 s2)^{3q} s1^k."""
        letters = self.boundary_word.letters
        for q in (0, 1):
            k = len(letters) - 6 * q
            if k >= 0 and canonical_boundary_word(q, k).letters == letters:
                return q, k
        return None


def chart_counts(chart: Chart) -> ChartCounts:
    """
    Black vertex count c, signed count of degree-12 vertices and the
    boundary word. Comparing sources and targets of edges gives
    c = 12 p_signed + (#edges into the boundary) - (#edges out of it),
    which is checked here, and c = 12p + 6q + k for the boundary word
    (s1 s2)^{3q} s1^k.
    """
    validate(chart).raise_for_violations()
    word = boundary_word(chart)
    inward = sum(1 for letter in word if letter.sign == 1)
    counts = ChartCounts(
        c=chart.black_count,
        p_signed=chart.p_signed,
        boundary_word=word,
        inward_boundary=inward,
        outward_boundary=len(word) - inward,
        edge_types=edge_types(chart),
    )
    if counts.c != 12 * counts.p_signed + counts.inward_boundary - counts.outward_boundary:
        raise InvariantViolation(
            f"black count {counts.c} breaks the source/target count "
            f"12*{counts.p_signed} + {counts.inward_boundary} - {counts.outward_boundary}"
        )
    boundary = counts.canonical_boundary()
    if boundary is not None and _only_admissible_edges(chart, counts.edge_types):
        q, k = boundary
        if counts.c != 12 * counts.p_signed + 6 * q + k:
            raise InvariantViolation(f"c = {counts.c} but 12p + 6q + k = {12 * counts.p_signed + 6 * q + k}")
    return counts


def _only_admissible_edges(chart: Chart, types: Counter) -> bool:
    if chart.count(VertexKind.DEG6):
        return False
    black_types = {edge_type for edge_type in types if edge_type.startswith("(1,")}
    return black_types <= {"(1,12)", "(1,∂)"}


def monodromy_of_canonical(p: int, q: int, k: int) -> Factorization:
    """The Hurwitz system read off canonical_chart(p, q, k)."""
    return canonical_form(p, q, k)
