from apps.charts.canonical import canonical_chart, chart_counts
from apps.charts.crossings import intersection_word
from apps.charts.serializers import chart_to_dot, parse_chart, parse_crossings, serialize_chart
from apps.charts.validators import ChartStatus, validate
from apps.cli.reporting import EXIT_INVALID, ReportCommand, read_text, write_text
from apps.sl2z.words import eval_word


class Command(ReportCommand):
    help = "Validate chart files, build canonical charts and read intersection words."

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest="action", required=True)

        validate_parser = actions.add_parser("validate", help="check a chart file against the chart clauses")
        validate_parser.add_argument("file")

        canonical_parser = actions.add_parser("canonical", help="the canonical chart of (p, q, k)")
        canonical_parser.add_argument("-p", type=int, required=True)
        canonical_parser.add_argument("-q", type=int, required=True)
        canonical_parser.add_argument("-k", type=int, required=True)
        canonical_parser.add_argument("--dot", help="write a DOT rendering to this path")
        canonical_parser.add_argument("--output", help="write the chart as YAML to this path")

        word_parser = actions.add_parser("word", help="the word read along a crossing path")
        word_parser.add_argument("chart")
        word_parser.add_argument("path", help="crossing path file, one '<edge-id> <+1|-1>' per line")

    def report(self, report, action, **options):
        getattr(self, f"report_{action}")(report, **options)

    def report_validate(self, report, file, **options):
        chart = parse_chart(read_text(file))
        result = validate(chart)
        report.line(f"{file}: {result.status.value}")
        for violation in result.violations:
            report.line(f"  {violation}")
        report.result("status", result.status.value)
        report.result("violations", len(result.violations))
        if result.status is ChartStatus.INVALID:
            report.fail(EXIT_INVALID, f"{len(result.violations)} chart violations")
            return
        self.report_counts(report, chart)

    def report_canonical(self, report, p, q, k, dot, output, **options):
        chart = canonical_chart(p, q, k)
        report.line(
            f"canonical chart ({p},{q},{k}): {len(chart.vertices)} vertices, {len(chart.edges)} edges"
        )
        self.report_counts(report, chart)
        if dot:
            write_text(dot, chart_to_dot(chart, name=f"canonical_{p}{q}{k}"))
            report.line(f"wrote {dot}")
        if output:
            write_text(output, serialize_chart(chart))
            report.line(f"wrote {output}")

    def report_word(self, report, chart, path, **options):
        word = intersection_word(parse_chart(read_text(chart)), parse_crossings(read_text(path)))
        report.line(f"word: {word or '(empty)'}")
        report.line(f"monodromy: {eval_word(word)}")
        report.result("word", str(word))
        report.result("length", len(word))
        report.result("monodromy", eval_word(word))

    def report_counts(self, report, chart):
        counts = chart_counts(chart)
        report.line(f"c={counts.c} p_signed={counts.p_signed}")
        report.line(f"boundary word: {counts.boundary_word or '(empty)'}")
        for edge_type, count in sorted(counts.edge_types.items()):
            report.line(f"  {edge_type}: {count}")
        report.result("c", counts.c)
        report.result("p_signed", counts.p_signed)
        report.result("boundary_word", str(counts.boundary_word))
        report.result("inward_boundary", counts.inward_boundary)
        report.result("outward_boundary", counts.outward_boundary)
