import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum

import networkx as nx

from apps.common.exceptions import InvalidChart

from .charts import Chart, VertexKind

logger = logging.getLogger(__name__)

CLAUSES = ("structure", "1", "2", "3", "4", "5", "hoops", "planarity")

BASE_POINT = ("y0",)


@dataclass(frozen=True)
class Violation:
    clause: str
    subject: str
    message: str

    def __str__(self):
        clause = f"clause ({self.clause})" if self.clause.isdigit() else self.clause
        return f"{clause}: {self.subject}: {self.message}"


class ChartStatus(Enum):
    OK = "ok"
    VALID_WITH_HOOPS = "valid-with-hoops"
    INVALID = "invalid"


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple[Violation, ...]
    has_hoops: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def status(self) -> ChartStatus:
        if self.violations:
            return ChartStatus.INVALID
        return ChartStatus.VALID_WITH_HOOPS if self.has_hoops else ChartStatus.OK

    def raise_for_violations(self):
        if self.violations:
            raise InvalidChart(self.violations)


def _check_structure(chart: Chart):
    ids = Counter(vertex.id for vertex in chart.vertices)
    for vertex_id, count in ids.items():
        if count > 1:
            yield Violation("structure", vertex_id, f"vertex id used {count} times")
    names = Counter([edge.id for edge in chart.edges] + [hoop.id for hoop in chart.hoops])
    for edge_id, count in names.items():
        if count > 1:
            yield Violation("structure", edge_id, f"edge id used {count} times")
    for edge in chart.edges:
        if edge.label not in (1, 2):
            yield Violation("structure", edge.id, f"label {edge.label} is not 1 or 2")
        for end in (edge.source, edge.target):
            if end not in ids:
                yield Violation("structure", edge.id, f"unknown vertex {end}")
    for vertex_id, incidences in chart.incidences.items():
        if vertex_id not in ids:
            continue
        slots = [incidence.slot for incidence in incidences]
        if slots != list(range(len(slots))):
            yield Violation(
                "structure", vertex_id, f"slots {slots} are not 0..{len(slots) - 1} each once"
            )


def _alternates(labels) -> bool:
    return all(labels[i] != labels[(i + 1) % len(labels)] for i in range(len(labels)))


def _check_vertices(chart: Chart):
    for vertex in chart.vertices:
        incidences = chart.incidences.get(vertex.id, [])
        degree = len(incidences)
        if degree not in (1, 6, 12):
            yield Violation("1", vertex.id, f"degree {degree} is not 1, 6 or 12")
            continue
        if degree != vertex.kind.degree:
            yield Violation("1", vertex.id, f"{vertex.kind.value} vertex has degree {degree}")
            continue
        labels = [incidence.edge.label for incidence in incidences]
        inward = [incidence.inward for incidence in incidences]

        if vertex.kind is VertexKind.DEG6:
            if not _alternates(labels):
                yield Violation("2", vertex.id, f"labels {labels} do not alternate")
            # three consecutive inward ends means exactly two in/out switches
            switches = sum(inward[i] != inward[(i + 1) % 6] for i in range(6))
            if inward.count(True) != 3 or switches != 2:
                yield Violation(
                    "2", vertex.id, "orientations are not three consecutive inward, three outward"
                )
        elif vertex.kind in (VertexKind.DEG12_NEGATIVE, VertexKind.DEG12_POSITIVE):
            if not _alternates(labels):
                yield Violation("3", vertex.id, f"labels {labels} do not alternate")
            expected = vertex.kind is VertexKind.DEG12_NEGATIVE
            if any(end != expected for end in inward):
                direction = "inward" if expected else "outward"
                yield Violation("3", vertex.id, f"{vertex.kind.value} vertex needs every edge {direction}")
        elif vertex.kind is VertexKind.BLACK and inward[0]:
            yield Violation("5", vertex.id, f"edge {incidences[0].edge.id} is oriented inward")


def _check_boundary(chart: Chart):
    listed = Counter(chart.boundary_order)
    for vertex_id, count in listed.items():
        vertex = chart.vertex(vertex_id)
        if vertex is None:
            yield Violation("4", vertex_id, "boundary order names an unknown vertex")
        elif vertex.kind is not VertexKind.BOUNDARY:
            yield Violation("4", vertex_id, f"{vertex.kind.value} vertex listed on the boundary")
        if count > 1:
            yield Violation("4", vertex_id, f"listed {count} times in the boundary order")
    for vertex in chart.vertices:
        if vertex.kind is VertexKind.BOUNDARY and vertex.id not in listed:
            yield Violation("4", vertex.id, "boundary vertex missing from the boundary order")


def _check_hoops(chart: Chart):
    parents = {hoop.id: hoop.parent for hoop in chart.hoops}
    for hoop in chart.hoops:
        if hoop.label not in (1, 2):
            yield Violation("hoops", hoop.id, f"label {hoop.label} is not 1 or 2")
        if hoop.parent is not None and hoop.parent not in parents:
            yield Violation("hoops", hoop.id, f"unknown parent hoop {hoop.parent}")
            continue
        seen = {hoop.id}
        parent = hoop.parent
        while parent is not None and parent in parents:
            if parent in seen:
                yield Violation("hoops", hoop.id, "hoop nesting has a cycle")
                break
            seen.add(parent)
            parent = parents[parent]


def rotation_system(chart: Chart) -> dict:
    """
    Counterclockwise dart order at every vertex of the chart together with
    the boundary circle, which runs from the base point y0 through the
    boundary vertices and back. A dart is ((kind, id), end) with end "s" or
    "t" for the source or target end of the edge or arc.
    """
    rotation = {
        vertex_id: [(("edge", incidence.edge.id), "t" if incidence.inward else "s")
                    for incidence in incidences]
        for vertex_id, incidences in chart.incidences.items()
    }
    circle = [BASE_POINT, *chart.boundary_order]
    if len(circle) == 1:
        return rotation
    last = len(circle) - 1
    rotation[BASE_POINT] = [(("arc", 0), "s"), (("arc", last), "t")]
    for j, vertex_id in enumerate(circle[1:], start=1):
        # next along the circle, into the disk, previous along the circle
        rotation[vertex_id] = [(("arc", j), "s"), *rotation[vertex_id], (("arc", j - 1), "t")]
    return rotation


def trace_faces(rotation: dict) -> list[list]:
    position = {}
    for vertex, darts in rotation.items():
        for index, dart in enumerate(darts):
            position[dart] = (vertex, index)

    def phi(dart):
        key, end = dart
        vertex, index = position[(key, "t" if end == "s" else "s")]
        darts = rotation[vertex]
        return darts[(index + 1) % len(darts)]

    faces, seen = [], set()
    for start in position:
        if start in seen:
            continue
        face, dart = [], start
        while dart not in seen:
            seen.add(dart)
            face.append(dart)
            dart = phi(dart)
        faces.append(face)
    return faces


def _check_planarity(chart: Chart):
    rotation = rotation_system(chart)
    graph = nx.MultiGraph()
    graph.add_nodes_from(rotation)
    for edge in chart.edges:
        graph.add_edge(edge.source, edge.target)
    circle = [BASE_POINT, *chart.boundary_order]
    if len(circle) > 1:
        for j, vertex in enumerate(circle):
            graph.add_edge(vertex, circle[(j + 1) % len(circle)])

    vertex_of = {dart: vertex for vertex, darts in rotation.items() for dart in darts}
    faces = Counter(vertex_of[face[0]] for face in trace_faces(rotation))
    for component in nx.connected_components(graph):
        v = len(component)
        e = graph.subgraph(component).number_of_edges()
        f = sum(faces[vertex] for vertex in component)
        if v - e + f != 2:
            subject = min(str(vertex) for vertex in component if vertex != BASE_POINT)
            yield Violation(
                "planarity", subject,
                f"component has V - E + F = {v} - {e} + {f} = {v - e + f}, not 2",
            )


def validate(chart: Chart) -> ValidationResult:
    """
    Check the degree, label and orientation conditions at every vertex,
    the boundary order, hoop nesting and, when the rotation system is well
    formed, planarity of the chart inside the disk. Violations come back
    sorted, independent of vertex and edge order.
    """
    violations = [
        *_check_structure(chart),
        *_check_vertices(chart),
        *_check_boundary(chart),
        *_check_hoops(chart),
    ]
    if not any(violation.clause in ("structure", "1", "4") for violation in violations):
        violations.extend(_check_planarity(chart))
    violations.sort(key=lambda violation: (CLAUSES.index(violation.clause), violation.subject, violation.message))
    if violations:
        logger.debug("chart has %s violations", len(violations))
    return ValidationResult(tuple(violations), has_hoops=bool(chart.hoops))
