from apps.cli.reporting import EXIT_BUDGET, ReportCommand, read_text
from apps.factorization.serializers import parse_factorization
from apps.orbits.search import enumerate_orbit


class Command(ReportCommand):
    help = "Breadth-first Hurwitz orbit search from a factorization file to its canonical form."

    def add_arguments(self, parser):
        parser.add_argument("file")
        parser.add_argument("--entry-bound", type=int, help="prune states with a larger matrix entry")
        parser.add_argument("--budget", type=int, help="maximal number of visited states")
        parser.add_argument("--jobs", type=int, help="worker processes for frontier expansion")
        parser.add_argument("--ceiling", type=int, help="largest entry bound reached by escalation")

    def report(self, report, file, entry_bound, budget, jobs, ceiling, **options):
        F = parse_factorization(read_text(file))
        result = enumerate_orbit(
            F, entry_bound=entry_bound, node_budget=budget, jobs=jobs, ceiling=ceiling
        )
        if result.canonical_reached:
            moves = " ".join(str(move) for move in result.witness_moves)
            report.line(
                f"canonical form reached after {result.states_visited} states "
                f"with {len(result.witness_moves)} moves"
            )
            if moves:
                report.line(moves)
        elif result.frontier_exhausted:
            report.line(
                f"frontier exhausted at entry bound {result.entry_bound} after "
                f"{result.states_visited} states without the canonical form"
            )
            report.fail(EXIT_BUDGET, "orbit search inconclusive at the entry bound ceiling")
        else:
            report.line(f"node budget ran out after {result.states_visited} states")
            report.fail(EXIT_BUDGET, "orbit search inconclusive: node budget exhausted")
        report.line(
            f"entry bound {result.entry_bound}, {result.escalations} escalations, "
            f"{result.pruned_by_bound} children pruned"
        )

        report.result("reached", result.canonical_reached)
        report.result("states", result.states_visited)
        report.result("frontier_exhausted", result.frontier_exhausted)
        report.result("entry_bound", result.entry_bound)
        report.result("escalations", result.escalations)
        report.result("pruned", result.pruned_by_bound)
        report.result(
            "moves",
            None if result.witness_moves is None else " ".join(str(m) for m in result.witness_moves),
        )
