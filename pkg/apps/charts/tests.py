import random
from dataclasses import replace
from itertools import product

from django.test import SimpleTestCase

from apps.charts.canonical import (
    canonical_chart,
    chart_counts,
    monodromy_of_canonical,
)
from apps.charts.charts import Chart, Edge, Hoop, Vertex, VertexKind, boundary_word
from apps.charts.crossings import CrossingSequence, intersection_word
from apps.charts.serializers import (
    chart_to_dot,
    parse_chart,
    parse_crossings,
    serialize_chart,
)
from apps.charts.validators import ChartStatus, validate
from apps.common.exceptions import (
    InvalidChart,
    InvalidParameter,
    ParseError,
    UnknownEdge,
)
from apps.common.utils import TestUtil
from apps.factorization.factorizations import Factorization, product as product_of
from apps.sl2z.matrices import IDENTITY, MINUS_IDENTITY, S1, S2, lower_unipotent
from apps.sl2z.words import GeneratorWord, boundary_word as canonical_word, eval_word


def clauses(result):
    return [violation.clause for violation in result.violations]


class TestValidate(SimpleTestCase):
    def test_nucleon(self):
        result = validate(canonical_chart(1, 0, 0))
        self.assertTrue(result.ok)
        self.assertEqual(result.status, ChartStatus.OK)

    def test_empty_chart(self):
        self.assertTrue(validate(Chart()).ok)

    def test_black_vertex_with_inward_edge(self):
        result = validate(TestUtil.inward_black_chart())
        self.assertEqual(clauses(result), ["5"])
        self.assertEqual(result.violations[0].subject, "b")
        self.assertEqual(result.status, ChartStatus.INVALID)

    def test_deg6_labels_not_alternating(self):
        result = validate(TestUtil.deg6_chart(labels=(1, 1, 2, 1, 2, 2)))
        self.assertEqual(clauses(result), ["2"])
        self.assertIn("do not alternate", str(result.violations[0]))

    def test_deg6_orientations(self):
        chart = TestUtil.deg6_chart()
        self.assertTrue(validate(chart).ok)
        # turn e1 around: v then has two inward ends
        edges = list(chart.edges)
        edges[1] = Edge("e1", 2, "v", 1, "k1", 0)
        result = validate(replace(chart, edges=tuple(edges)))
        self.assertIn("2", clauses(result))
        self.assertIn("5", clauses(result))

    def test_deg12_orientations(self):
        chart = canonical_chart(1, 0, 0)
        vertices = tuple(
            Vertex(vertex.id, VertexKind.DEG12_POSITIVE) if vertex.id == "n0.c" else vertex
            for vertex in chart.vertices
        )
        result = validate(replace(chart, vertices=vertices))
        self.assertEqual(clauses(result), ["3"])

    def test_degree(self):
        chart = canonical_chart(1, 0, 0)
        short = replace(chart, edges=chart.edges[:11], vertices=chart.vertices[:12])
        self.assertEqual(clauses(validate(short)), ["1"])

        wrong_kind = replace(
            chart, vertices=(Vertex("n0.c", VertexKind.DEG6),) + chart.vertices[1:]
        )
        self.assertEqual(clauses(validate(wrong_kind)), ["1"])

    def test_boundary_order(self):
        chart = canonical_chart(0, 0, 2)
        self.assertEqual(clauses(validate(replace(chart, boundary_order=("u0.d",)))), ["4"])
        self.assertEqual(
            clauses(validate(replace(chart, boundary_order=("u0.d", "u1.d", "u1.b")))),
            ["4"],
        )
        self.assertEqual(
            clauses(validate(replace(chart, boundary_order=("u0.d", "u1.d", "u0.d")))),
            ["4"],
        )

    def test_structure(self):
        chart = canonical_chart(0, 0, 1)
        dangling = replace(chart, edges=(Edge("u0.e", 1, "u0.b", 0, "nowhere", 0),))
        self.assertIn("structure", clauses(validate(dangling)))

        bad_slot = replace(chart, edges=(Edge("u0.e", 1, "u0.b", 1, "u0.d", 0),))
        self.assertIn("structure", clauses(validate(bad_slot)))

        bad_label = replace(chart, edges=(Edge("u0.e", 3, "u0.b", 0, "u0.d", 0),))
        self.assertIn("structure", clauses(validate(bad_label)))

    def test_planarity(self):
        self.assertTrue(validate(TestUtil.deg6_chart()).ok)
        # reversing the boundary order forces the edges out of v to cross
        reversed_order = TestUtil.deg6_chart(boundary_order=("d5", "d4", "d3"))
        self.assertEqual(clauses(validate(reversed_order)), ["planarity"])

        result = validate(TestUtil.interleaved_loops_chart())
        self.assertIn("planarity", clauses(result))

    def test_nested_loops_are_planar(self):
        chart = Chart(
            vertices=(Vertex("v", VertexKind.DEG6),),
            edges=(
                Edge("a", 1, "v", 0, "v", 1),
                Edge("b", 2, "v", 2, "v", 3),
                Edge("c", 1, "v", 4, "v", 5),
            ),
        )
        self.assertNotIn("planarity", clauses(validate(chart)))

    def test_hoops(self):
        chart = replace(canonical_chart(1, 0, 1), hoops=(Hoop("h0", 1), Hoop("h1", 2, parent="h0")))
        result = validate(chart)
        self.assertTrue(result.ok)
        self.assertEqual(result.status, ChartStatus.VALID_WITH_HOOPS)

        orphan = replace(chart, hoops=(Hoop("h0", 1, parent="h9"),))
        self.assertEqual(clauses(validate(orphan)), ["hoops"])

        cycle = replace(chart, hoops=(Hoop("h0", 1, parent="h1"), Hoop("h1", 2, parent="h0")))
        self.assertIn("hoops", clauses(validate(cycle)))

    def test_insertion_order_does_not_matter(self):
        rng = random.Random(0)
        for chart in (
            canonical_chart(2, 1, 3),
            TestUtil.deg6_chart(labels=(1, 1, 2, 1, 2, 2)),
            TestUtil.interleaved_loops_chart(),
        ):
            vertices, edges = list(chart.vertices), list(chart.edges)
            rng.shuffle(vertices)
            rng.shuffle(edges)
            shuffled = replace(chart, vertices=tuple(vertices), edges=tuple(edges))
            self.assertEqual(validate(shuffled), validate(chart))

    def test_raise_for_violations(self):
        with self.assertRaises(InvalidChart) as context:
            validate(TestUtil.inward_black_chart()).raise_for_violations()
        self.assertEqual(len(context.exception.violations), 1)


class TestCanonicalCharts(SimpleTestCase):
    def test_empty(self):
        self.assertEqual(canonical_chart(0, 0, 0), Chart())

    def test_figure_instance(self):
        chart = canonical_chart(2, 1, 4)
        self.assertEqual(chart.count(VertexKind.BLACK), 34)
        self.assertEqual(chart.count(VertexKind.DEG12_NEGATIVE), 2)
        self.assertEqual(chart.count(VertexKind.BOUNDARY), 10)
        counts = chart_counts(chart)
        self.assertEqual(counts.c, 34)
        self.assertEqual(counts.p_signed, 2)
        self.assertEqual(str(counts.boundary_word), "s1 s2 s1 s2 s1 s2 s1 s1 s1 s1")
        self.assertEqual(counts.canonical_boundary(), (1, 4))
        self.assertEqual(counts.edge_types, {"(1,12)": 24, "(1,∂)": 10})

    def test_nucleon(self):
        chart = canonical_chart(1, 0, 0)
        self.assertEqual(chart.count(VertexKind.BLACK), 12)
        self.assertEqual(chart.count(VertexKind.DEG12_NEGATIVE), 1)
        self.assertEqual(chart.count(VertexKind.BOUNDARY), 0)
        self.assertEqual([edge.label for edge in chart.edges], [1, 2] * 6)

    def test_units_only(self):
        counts = chart_counts(canonical_chart(0, 0, 7))
        self.assertEqual((counts.c, counts.p_signed), (7, 0))

    def test_empty_counts(self):
        counts = chart_counts(Chart())
        self.assertEqual((counts.c, counts.p_signed, len(counts.boundary_word)), (0, 0, 0))

    def test_counting_identity(self):
        for p, q, k in product(range(4), (0, 1), range(6)):
            chart = canonical_chart(p, q, k)
            self.assertTrue(validate(chart).ok)
            counts = chart_counts(chart)
            self.assertEqual(counts.c, 12 * p + 6 * q + k)
            self.assertEqual(counts.p_signed, p)
            self.assertEqual(counts.boundary_word, canonical_word(q, k))

    def test_general_counting_identity(self):
        counts = chart_counts(TestUtil.deg6_chart())
        self.assertEqual(str(counts.boundary_word), "s2 s1 s2")
        self.assertEqual(counts.c, 3)
        self.assertIsNone(counts.canonical_boundary())
        self.assertEqual(counts.edge_types["(6,∂)"], 3)

    def test_counts_need_a_valid_chart(self):
        with self.assertRaises(InvalidChart):
            chart_counts(TestUtil.inward_black_chart())

    def test_bad_parameters(self):
        with self.assertRaises(InvalidParameter):
            canonical_chart(-1, 0, 0)
        with self.assertRaises(InvalidParameter):
            canonical_chart(0, 2, 0)
        with self.assertRaises(InvalidParameter):
            monodromy_of_canonical(0, 0, -1)

    def test_monodromy_of_canonical(self):
        self.assertEqual(monodromy_of_canonical(0, 0, 0), Factorization())
        self.assertEqual(monodromy_of_canonical(1, 0, 0), Factorization.of(S1, S2) * 6)
        F = monodromy_of_canonical(0, 1, 4)
        self.assertEqual(F, Factorization.of(S1, S2) * 3 + Factorization.of(S1) * 4)
        self.assertEqual(product_of(F), MINUS_IDENTITY * lower_unipotent(4))

    def test_product_does_not_depend_on_p(self):
        for q, k in product((0, 1), range(4)):
            expected = eval_word(canonical_word(q, k))
            for p in range(3):
                self.assertEqual(product_of(monodromy_of_canonical(p, q, k)), expected)

    def test_boundary_word_matches_monodromy(self):
        chart = canonical_chart(1, 1, 2)
        self.assertEqual(eval_word(boundary_word(chart)), product_of(monodromy_of_canonical(1, 1, 2)))


class TestIntersectionWord(SimpleTestCase):
    def test_empty_path(self):
        word = intersection_word(canonical_chart(1, 0, 0), CrossingSequence())
        self.assertEqual(word, GeneratorWord())
        self.assertEqual(eval_word(word), IDENTITY)

    def test_unit(self):
        word = intersection_word(canonical_chart(0, 0, 1), CrossingSequence.of(("u0.e", 1)))
        self.assertEqual(str(word), "s1")

    def test_loop_around_nucleon(self):
        path = CrossingSequence.of(*[(f"n0.e{j}", 1) for j in range(12)])
        word = intersection_word(canonical_chart(1, 0, 0), path)
        self.assertEqual(word, canonical_word(0, 0) + GeneratorWord.parse("s1 s2") * 6)
        self.assertEqual(eval_word(word), IDENTITY)

        backwards = CrossingSequence.of(*[(f"n0.e{j}", -1) for j in reversed(range(12))])
        self.assertEqual(eval_word(intersection_word(canonical_chart(1, 0, 0), backwards)), IDENTITY)

    def test_hoop_crossing(self):
        chart = replace(Chart(), hoops=(Hoop("h", 2),))
        self.assertEqual(str(intersection_word(chart, CrossingSequence.of(("h", -1)))), "s2^-1")

    def test_unknown_edge(self):
        with self.assertRaises(UnknownEdge):
            intersection_word(canonical_chart(0, 0, 1), CrossingSequence.of(("x", 1)))

    def test_sign(self):
        with self.assertRaises(InvalidParameter):
            CrossingSequence.of(("u0.e", 2))


class TestChartFiles(SimpleTestCase):
    def test_round_trip(self):
        chart = replace(canonical_chart(1, 1, 2), hoops=(Hoop("h0", 1), Hoop("h1", 2, parent="h0")))
        self.assertEqual(parse_chart(serialize_chart(chart)), chart)

    def test_parse(self):
        text = (
            "vertices:\n"
            "  - {id: b, kind: black}\n"
            "  - {id: d, kind: boundary}\n"
            "edges:\n"
            "  - {id: e, label: 2, source: b, source_slot: 0, target: d, target_slot: 0}\n"
            "boundary: [d]\n"
        )
        chart = parse_chart(text)
        self.assertEqual(chart.edges, (Edge("e", 2, "b", 0, "d", 0),))
        self.assertEqual(chart.boundary_order, ("d",))
        self.assertEqual(chart.hoops, ())
        self.assertTrue(validate(chart).ok)

    def test_parse_empty(self):
        self.assertEqual(parse_chart(""), Chart())

    def test_parse_errors(self):
        with self.assertRaises(ParseError) as context:
            parse_chart("vertices:\n  - {id: a, kind: purple}\n")
        self.assertIn("vertices.0.kind", str(context.exception))

        with self.assertRaises(ParseError) as context:
            parse_chart("vertices: [\n  {id: a\n")
        self.assertIsNotNone(context.exception.line)

        with self.assertRaises(ParseError):
            parse_chart("- just a list\n")

    def test_crossings(self):
        path = parse_crossings("# around the unit\nu0.e +1\nu0.e -1\n")
        self.assertEqual(path, CrossingSequence.of(("u0.e", 1), ("u0.e", -1)))

        with self.assertRaises(ParseError) as context:
            parse_crossings("u0.e +1\nu0.e 2\n")
        self.assertEqual(context.exception.line, 2)

    def test_dot(self):
        dot = chart_to_dot(canonical_chart(1, 0, 2))
        self.assertTrue(dot.startswith('digraph "chart" {'))
        self.assertIn('"n0.c" [shape=doublecircle];', dot)
        self.assertIn('"n0.b1" -> "n0.c" [label="2"];', dot)
        self.assertIn('"u0.d" [shape=square];', dot)
        self.assertIn('{ rank=same; "u0.d"; "u1.d"; }', dot)
        self.assertTrue(dot.endswith("}\n"))
        self.assertIn("shape=hexagon", chart_to_dot(TestUtil.deg6_chart()))


# python manage.py test apps.charts.tests.TestValidate
