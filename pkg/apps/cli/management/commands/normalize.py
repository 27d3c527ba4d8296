from django.conf import settings

from apps.cli.reporting import EXIT_BUDGET, ReportCommand, read_text
from apps.factorization.normal_forms import normalize
from apps.factorization.serializers import parse_factorization


class Command(ReportCommand):
    help = "Certificate (p, q, k) and canonical form (s1, s2)^{6p+3q} . (s1)^k of a factorization file."

    def add_arguments(self, parser):
        parser.add_argument("file", help="factorization file, one matrix per line")
        parser.add_argument(
            "--moves", action="store_true", help="also search for move records to the canonical form"
        )
        parser.add_argument("--budget", type=int, help="node budget of the move search")
        parser.add_argument("--entry-bound", type=int, help="entry bound of the move search")

    def report(self, report, file, moves, budget, entry_bound, **options):
        F = parse_factorization(read_text(file))
        search = moves or budget is not None
        if search and budget is None:
            budget = settings.MONODROMY["ORBIT_NODE_BUDGET"]
        normal_form = normalize(F, node_budget=budget if search else None, entry_bound=entry_bound)
        p, q, k = normal_form.certificate

        report.line(f"p={p} q={q} k={k}")
        report.line(f"length {len(F)}, canonical form (s1, s2)^{6 * p + 3 * q} . (s1)^{k}")
        report.result("p", p)
        report.result("q", q)
        report.result("k", k)
        report.result("length", len(F))
        if not search:
            return
        if normal_form.moves is None:
            report.line(f"no move sequence found within {budget} states")
            report.result("moves", None)
            report.fail(EXIT_BUDGET, "move search inconclusive")
            return
        report.line(f"{len(normal_form.moves)} moves: " + " ".join(str(move) for move in normal_form.moves))
        report.result("moves", " ".join(str(move) for move in normal_form.moves))
