import yaml
from django.template.loader import render_to_string
from rest_framework import serializers

from apps.common.exceptions import ParseError
from apps.factorization.serializers import content_lines

from .charts import Chart, Edge, Hoop, Vertex, VertexKind
from .crossings import Crossing, CrossingSequence


class VertexSerializer(serializers.Serializer):
    id = serializers.CharField()
    kind = serializers.ChoiceField(choices=[kind.value for kind in VertexKind])

    def to_representation(self, instance):
        return {"id": instance.id, "kind": instance.kind.value}

    def create(self, validated_data):
        return Vertex(validated_data["id"], VertexKind(validated_data["kind"]))


class EdgeSerializer(serializers.Serializer):
    id = serializers.CharField()
    label = serializers.ChoiceField(choices=[1, 2])
    source = serializers.CharField()
    source_slot = serializers.IntegerField(min_value=0)
    target = serializers.CharField()
    target_slot = serializers.IntegerField(min_value=0)

    def create(self, validated_data):
        return Edge(**validated_data)


class HoopSerializer(serializers.Serializer):
    id = serializers.CharField()
    label = serializers.ChoiceField(choices=[1, 2])
    parent = serializers.CharField(allow_null=True, required=False, default=None)

    def create(self, validated_data):
        return Hoop(**validated_data)


class ChartSerializer(serializers.Serializer):
    vertices = VertexSerializer(many=True, required=False, default=list)
    edges = EdgeSerializer(many=True, required=False, default=list)
    boundary = serializers.ListField(
        child=serializers.CharField(), source="boundary_order", required=False, default=list
    )
    hoops = HoopSerializer(many=True, required=False, default=list)

    def create(self, validated_data):
        return Chart(
            vertices=tuple(VertexSerializer().create(data) for data in validated_data["vertices"]),
            edges=tuple(EdgeSerializer().create(data) for data in validated_data["edges"]),
            boundary_order=tuple(validated_data["boundary_order"]),
            hoops=tuple(HoopSerializer().create(data) for data in validated_data["hoops"]),
        )


def _first_error(errors, path=()):
    """The first (location, message) in a nested DRF error structure."""
    if isinstance(errors, dict):
        for key, value in errors.items():
            return _first_error(value, (*path, str(key)))
    if isinstance(errors, list):
        for index, value in enumerate(errors):
            if isinstance(value, (dict, list)):
                if value:
                    return _first_error(value, (*path, str(index)))
                continue
            return ".".join(path), str(value)
    return ".".join(path), str(errors)


def _plain(data):
    if isinstance(data, dict):
        return {key: _plain(value) for key, value in data.items()}
    if isinstance(data, list):
        return [_plain(value) for value in data]
    return data


def parse_chart(text: str) -> Chart:
    """
    A YAML mapping with `vertices` ({id, kind}), `edges` ({id, label,
    source, source_slot, target, target_slot}), `boundary` (vertex ids
    counterclockwise from y0) and `hoops` ({id, label, parent}).
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise ParseError(
            f"not valid YAML: {getattr(e, 'problem', None) or e}",
            line=mark.line + 1 if mark is not None else None,
        ) from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ParseError("a chart file must be a YAML mapping")
    serializer = ChartSerializer(data=data)
    if not serializer.is_valid():
        location, message = _first_error(serializer.errors)
        raise ParseError(f"{location}: {message}")
    return serializer.save()


def serialize_chart(chart: Chart) -> str:
    return yaml.safe_dump(_plain(ChartSerializer(chart).data), sort_keys=False)


def parse_crossings(text: str) -> CrossingSequence:
    """One `<edge-id> <+1|-1>` per line."""
    crossings = []
    for number, line in content_lines(text):
        parts = line.split()
        if len(parts) != 2 or parts[1] not in ("+1", "-1"):
            raise ParseError(f"expected '<edge-id> <+1|-1>', got {line!r}", line=number)
        crossings.append(Crossing(parts[0], int(parts[1])))
    return CrossingSequence(tuple(crossings))


SHAPES = {
    VertexKind.BLACK: 'shape=circle, style=filled, fillcolor=black, width=0.12, label=""',
    VertexKind.BOUNDARY: "shape=square",
    VertexKind.DEG6: "shape=hexagon",
    VertexKind.DEG12_NEGATIVE: "shape=doublecircle",
    VertexKind.DEG12_POSITIVE: "shape=doublecircle",
}


def _quote(identifier: str) -> str:
    return '"' + identifier.replace("\\", "\\\\").replace('"', '\\"') + '"'


def chart_to_dot(chart: Chart, name: str = "chart") -> str:
    context = {
        "name": _quote(name),
        "vertices": [
            {"id": _quote(vertex.id), "attributes": SHAPES[vertex.kind]}
            for vertex in chart.vertices
        ],
        "edges": [
            {"source": _quote(edge.source), "target": _quote(edge.target), "label": edge.label}
            for edge in chart.edges
        ],
        "hoops": [{"id": _quote(hoop.id), "label": hoop.label} for hoop in chart.hoops],
        "boundary": "; ".join(_quote(vertex_id) for vertex_id in chart.boundary_order),
    }
    return render_to_string("charts/chart.dot", context).strip() + "\n"
