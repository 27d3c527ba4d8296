from pathlib import Path

from apps.cli.reporting import ReportCommand, read_text
from apps.sblf.classifier import classify
from apps.sblf.manifolds import manifold_invariants
from apps.sblf.serializers import parse_descriptor


class Command(ReportCommand):
    help = "Classify the total space of a genus-one SBLF descriptor file."

    def add_arguments(self, parser):
        parser.add_argument("descriptor", help="descriptor file; factorization paths are relative to it")

    def report(self, report, descriptor, **options):
        d = parse_descriptor(read_text(descriptor), base_dir=Path(descriptor).parent)
        result = classify(d)
        invariants = manifold_invariants(result.manifold)
        b = result.blowups_performed

        if b:
            report.line(f"case ({result.case}): X # {b}*CP2bar = {result.manifold}")
        else:
            report.line(f"case ({result.case}): X = {result.manifold}")
        if result.certificate is not None:
            p, q, k = result.certificate
            report.line(f"certificate (p,q,k) = ({p},{q},{k}), normalized length {result.normalized_length}")
        report.line(
            f"euler={invariants.euler} pi1={invariants.pi1} b1={invariants.b1} "
            f"b2={invariants.b2} signature={invariants.signature}"
        )
        if result.candidates:
            report.line("X is one of: " + ", ".join(str(candidate) for candidate in result.candidates))

        report.result("case", result.case)
        report.result("manifold", result.manifold)
        report.result("blowups", b)
        report.result(
            "certificate", None if result.certificate is None else ",".join(map(str, result.certificate))
        )
        report.result("euler", invariants.euler)
        report.result("pi1", invariants.pi1)
        report.result("b1", invariants.b1)
        report.result("b2", invariants.b2)
        report.result("signature", invariants.signature)
        report.result("candidates", "; ".join(str(candidate) for candidate in result.candidates) or None)
