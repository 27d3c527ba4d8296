from apps.cli.reporting import EXIT_VIOLATION, ReportCommand
from apps.sl2z.words import subword_identity_scan


class Command(ReportCommand):
    help = "Scan the boundary words (s1 s2)^{3q} s1^k, q in {0, 1}, k <= max-k, for identity subwords."

    def add_arguments(self, parser):
        parser.add_argument("--max-k", type=int, default=8)
        parser.add_argument("--limit", type=int, help="longest word scanned")

    def report(self, report, max_k, limit, **options):
        offending = 0
        for q in (0, 1):
            for k in range(max_k + 1):
                scan = subword_identity_scan(q, k, limit=limit)
                found = ", ".join(str(word) or "(empty)" for word in scan.identity_subwords)
                report.line(f"q={q} k={k}: {scan.subwords_checked} subwords, identity: {found}")
                if not scan.only_empty:
                    offending += 1
        report.result("words", 2 * (max_k + 1))
        report.result("only_empty", offending == 0)
        if offending:
            report.fail(EXIT_VIOLATION, f"{offending} boundary words have non-empty identity subwords")
