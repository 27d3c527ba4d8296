from apps.cli.reporting import EXIT_BUDGET, EXIT_VIOLATION, ReportCommand
from apps.orbits.sweep import verify_theorem_sweep


class Command(ReportCommand):
    help = (
        "Scramble canonical_form(p, q, k) for p <= max-p, q in {0, 1}, k <= max-k and "
        "check that normalize and the orbit search recover it."
    )

    def add_arguments(self, parser):
        parser.add_argument("--max-p", type=int, required=True)
        parser.add_argument("--max-k", type=int, required=True)
        parser.add_argument("--seeds", type=int, default=5)
        parser.add_argument("--steps", type=int, help="random moves per scramble")
        parser.add_argument("--entry-bound", type=int)
        parser.add_argument("--budget", type=int, help="node budget of each orbit search")
        parser.add_argument(
            "--no-reachability", action="store_true", help="only check certificates, skip orbit searches"
        )

    def report(self, report, max_p, max_k, seeds, steps, entry_bound, budget, no_reachability, **options):
        summary = verify_theorem_sweep(
            max_p,
            max_k,
            entry_bound=entry_bound,
            node_budget=budget,
            seeds=seeds,
            steps=steps,
            check_reachability=not no_reachability,
        )
        report.line(f"{len(summary.cases)} scrambled factorizations")
        for case in summary.certificate_failures:
            report.line(f"  certificate not recovered: ({case.p},{case.q},{case.k}) seed {case.seed}")
        for case in summary.reachability_failures:
            report.line(f"  canonical form not reached: ({case.p},{case.q},{case.k}) seed {case.seed}")
        for case in summary.budget_exhausted:
            report.line(f"  budget exhausted: ({case.p},{case.q},{case.k}) seed {case.seed}")
        report.line("passed" if summary.passed else "FAILED")

        report.result("cases", len(summary.cases))
        report.result("certificate_failures", len(summary.certificate_failures))
        report.result("reachability_failures", len(summary.reachability_failures))
        report.result("budget_exhausted", len(summary.budget_exhausted))
        report.result("passed", summary.passed)
        if not summary.passed:
            report.fail(EXIT_VIOLATION, "sweep found failing cases")
        elif summary.budget_exhausted:
            report.fail(EXIT_BUDGET, "sweep inconclusive: node budget exhausted")
