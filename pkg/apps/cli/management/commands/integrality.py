from apps.cli.reporting import EXIT_VIOLATION, ReportCommand
from apps.orbits.sweep import integrality_check


class Command(ReportCommand):
    help = "Check n = 6q + k (mod 12) and p >= 0 on seeded random admissible factorizations."

    def add_arguments(self, parser):
        parser.add_argument("--count", type=int, default=10_000)
        parser.add_argument("--seed", type=int, default=0)

    def report(self, report, count, seed, **options):
        summary = integrality_check(count, seed=seed)
        report.line(f"{summary.checked} factorizations, {len(summary.exceptions)} exceptions")
        for exception in summary.exceptions:
            report.line(f"  {exception}")
        report.result("checked", summary.checked)
        report.result("exceptions", len(summary.exceptions))
        if summary.exceptions:
            report.fail(EXIT_VIOLATION, "integrality exceptions found")
