from apps.cli.reporting import EXIT_VIOLATION, ReportCommand
from apps.orbits.sweep import verify_equivalence_agreement


class Command(ReportCommand):
    help = (
        "Compare the equivalence decision with brute-force orbit connectivity on all "
        "admissible factorizations up to a length and entry bound."
    )

    def add_arguments(self, parser):
        parser.add_argument("--max-length", type=int, default=4)
        parser.add_argument("--entry-bound", type=int, default=12)
        parser.add_argument("--budget", type=int, help="node budget of each orbit search")

    def report(self, report, max_length, entry_bound, budget, **options):
        summary = verify_equivalence_agreement(max_length, entry_bound, node_budget=budget)
        report.line(
            f"{summary.factorizations} factorizations in {summary.classes} orbits, "
            f"{summary.pairs_checked} pairs"
        )
        for disagreement in summary.disagreements:
            report.line(
                f"  {disagreement.first} / {disagreement.second}: {disagreement.verdict}, "
                f"connected={disagreement.connected}"
            )
        for F in summary.unreached:
            report.line(f"  canonical form not reached from {F}")
        report.line("passed" if summary.passed else "FAILED")

        report.result("factorizations", summary.factorizations)
        report.result("classes", summary.classes)
        report.result("pairs", summary.pairs_checked)
        report.result("disagreements", len(summary.disagreements))
        report.result("unreached", len(summary.unreached))
        report.result("passed", summary.passed)
        if not summary.passed:
            report.fail(EXIT_VIOLATION, "equivalence decision disagrees with orbit connectivity")
