from apps.cli.reporting import ReportCommand, read_text, write_text
from apps.factorization.factorizations import scramble
from apps.factorization.serializers import parse_factorization, serialize_factorization


class Command(ReportCommand):
    help = "Apply seeded random Hurwitz moves to a factorization file."

    def add_arguments(self, parser):
        parser.add_argument("file")
        parser.add_argument("--seed", type=int, required=True)
        parser.add_argument("--steps", type=int, required=True)
        parser.add_argument("--height-cap", type=int, help="largest entry the moves may create")
        parser.add_argument("--output", help="write the scrambled factorization here instead of the report")

    def report(self, report, file, seed, steps, height_cap, output, **options):
        F = parse_factorization(read_text(file))
        scrambled = scramble(F, seed=seed, steps=steps, height_cap=height_cap)
        text = serialize_factorization(scrambled, comment=f"scramble seed={seed} steps={steps}")
        if output:
            write_text(output, text)
            report.line(f"wrote {output}")
        else:
            report.lines.extend(text.splitlines())
        report.result("seed", seed)
        report.result("steps", steps)
        report.result("length", len(scrambled))
        report.result("height", scrambled.height)
