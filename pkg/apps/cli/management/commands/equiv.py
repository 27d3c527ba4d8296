from apps.cli.reporting import EXIT_INVALID, ReportCommand, read_text
from apps.factorization.normal_forms import Verdict, equivalent
from apps.factorization.serializers import parse_factorization


class Command(ReportCommand):
    help = "Decide whether two factorization files are Hurwitz equivalent."

    def add_arguments(self, parser):
        parser.add_argument("first")
        parser.add_argument("second")

    def report(self, report, first, second, **options):
        F1 = parse_factorization(read_text(first))
        F2 = parse_factorization(read_text(second))
        verdict = equivalent(F1, F2)
        report.line(str(verdict))
        report.result("verdict", verdict.verdict.value)
        report.result("length_first", len(F1))
        report.result("length_second", len(F2))
        if verdict.verdict is Verdict.NOT_ADMISSIBLE:
            report.fail(EXIT_INVALID, verdict.reason)
