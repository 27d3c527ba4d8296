import tempfile
from pathlib import Path

from django.conf import settings
from django.test import SimpleTestCase

from apps.cli.dispatch import cli_dispatch
from apps.cli.reporting import Report, parse_machine_section
from apps.common.utils import TestUtil
from apps.factorization.factorizations import (
    Factorization,
    MoveDirection,
    canonical_form,
    hurwitz_move,
    scramble,
)
from apps.factorization.serializers import parse_factorization, serialize_factorization
from apps.sl2z.matrices import S1, S2

FACTORIZATIONS = settings.DATA_DIR / "factorizations"
DESCRIPTORS = settings.DATA_DIR / "descriptors"
CHARTS = settings.DATA_DIR / "charts"


def data(directory, name):
    return str(directory / name)


class CliTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.directory = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, content):
        return str(TestUtil.write_file(self.directory, name, content))

    def write_factorization(self, name, F):
        return self.write(name, serialize_factorization(F))


class TestDispatch(CliTestCase):
    def test_no_command(self):
        result = cli_dispatch([])
        self.assertEqual(result.exit_status, 1)
        self.assertIn("usage: mono <command>", result.errors)

    def test_help(self):
        result = cli_dispatch(["--help"])
        self.assertEqual(result.exit_status, 0)
        self.assertIn("classify", result.output)

    def test_unknown_command(self):
        result = cli_dispatch(["frobnicate"])
        self.assertEqual(result.exit_status, 1)
        self.assertIn("unknown command 'frobnicate'", result.errors)

    def test_bad_arguments(self):
        result = cli_dispatch(["normalize"])
        self.assertEqual(result.exit_status, 1)
        self.assertIn("usage:", result.errors)

        result = cli_dispatch(["normalize", data(FACTORIZATIONS, "canonical_110.txt"), "--bogus"])
        self.assertEqual(result.exit_status, 1)

        result = cli_dispatch(["chart", "canonical", "-p", "1"])
        self.assertEqual(result.exit_status, 1)

    def test_report_rendering(self):
        report = Report()
        report.line("two lines")
        report.line("of text")
        report.result("passed", True)
        report.result("moves", None)
        report.result("word", "s1 s2")
        text = report.render()
        self.assertEqual(text, "two lines\nof text\n\n[result]\npassed=yes\nmoves=-\nword=s1 s2\n")
        self.assertEqual(parse_machine_section(text), {"passed": "yes", "moves": "-", "word": "s1 s2"})


class TestNormalizeCommand(CliTestCase):
    def test_canonical_input(self):
        result = cli_dispatch(["normalize", data(FACTORIZATIONS, "canonical_110.txt")])
        self.assertEqual(result.exit_status, 0)
        self.assertIn("p=1 q=1 k=0", result.output)
        self.assertEqual(result.machine["length"], "18")

    def test_scrambled_input(self):
        path = self.write_factorization("f.txt", TestUtil.scrambled(0, 1, 3, seed=4, steps=50))
        result = cli_dispatch(["normalize", path])
        self.assertEqual(result.exit_status, 0)
        self.assertEqual((result.machine["p"], result.machine["q"], result.machine["k"]), ("0", "1", "3"))

    def test_moves(self):
        result = cli_dispatch(
            ["normalize", data(FACTORIZATIONS, "braid_relation.txt"), "--moves", "--budget", "50000"]
        )
        self.assertEqual(result.exit_status, 0)
        self.assertIn("p=0 q=1 k=0", result.output)
        self.assertNotEqual(result.machine["moves"], "-")

    def test_moves_budget_exhausted(self):
        F = hurwitz_move(
            hurwitz_move(canonical_form(1, 0, 0), 5, MoveDirection.RIGHT), 2, MoveDirection.LEFT
        )
        result = cli_dispatch(["normalize", self.write_factorization("f.txt", F), "--budget", "2"])
        self.assertEqual(result.exit_status, 4)
        self.assertEqual(result.machine["moves"], "-")
        self.assertIn("inconclusive", result.errors)

    def test_moves_above_default_bound(self):
        path = data(FACTORIZATIONS, "conjugated_010.txt")
        result = cli_dispatch(["normalize", path])
        self.assertEqual(result.exit_status, 0)
        self.assertIn("p=0 q=1 k=0", result.output)

        result = cli_dispatch(["normalize", path, "--moves", "--budget", "3"])
        self.assertEqual(result.exit_status, 4)
        self.assertEqual(
            result.machine, {"p": "0", "q": "1", "k": "0", "length": "6", "moves": "-"}
        )

    def test_errors(self):
        result = cli_dispatch(["normalize", str(self.directory / "missing.txt")])
        self.assertEqual(result.exit_status, 2)
        self.assertIn("cannot read", result.errors)

        result = cli_dispatch(["normalize", self.write("bad.txt", "[[1,0],[1,1]]\n[[1,0],[2,1]]\n")])
        self.assertEqual(result.exit_status, 2)
        self.assertIn("line 2", result.errors)

        result = cli_dispatch(["normalize", self.write_factorization("s2.txt", Factorization.of(S2))])
        self.assertEqual(result.exit_status, 2)
        self.assertEqual(result.output, "")


class TestEquivCommand(CliTestCase):
    def test_equivalent(self):
        result = cli_dispatch(
            ["equiv", data(FACTORIZATIONS, "scrambled_100_a.txt"), data(FACTORIZATIONS, "scrambled_100_b.txt")]
        )
        self.assertEqual(result.exit_status, 0)
        self.assertIn(
            "equivalent (certificate: same boundary type (0,0), same length 12)", result.output
        )
        self.assertEqual(result.machine["verdict"], "equivalent")

    def test_not_equivalent(self):
        result = cli_dispatch(
            ["equiv", data(FACTORIZATIONS, "canonical_100.txt"), self.write_factorization("f.txt", canonical_form(0, 1, 6))]
        )
        self.assertEqual(result.exit_status, 0)
        self.assertIn("not equivalent (boundary type (0,0) vs (1,6))", result.output)

    def test_not_admissible(self):
        result = cli_dispatch(
            ["equiv", self.write_factorization("f.txt", Factorization.of(S2)), data(FACTORIZATIONS, "canonical_100.txt")]
        )
        self.assertEqual(result.exit_status, 2)
        self.assertEqual(result.machine["verdict"], "not admissible")


class TestOrbitCommand(CliTestCase):
    def test_reached(self):
        result = cli_dispatch(
            ["orbit", data(FACTORIZATIONS, "braid_relation.txt"), "--entry-bound", "20", "--budget", "50000"]
        )
        self.assertEqual(result.exit_status, 0)
        self.assertEqual(result.machine["reached"], "yes")
        self.assertEqual(result.machine["entry_bound"], "20")

    def test_already_canonical(self):
        result = cli_dispatch(["orbit", data(FACTORIZATIONS, "canonical_100.txt"), "--budget", "10"])
        self.assertEqual(result.exit_status, 0)
        self.assertEqual(result.machine["states"], "1")
        self.assertEqual(result.machine["moves"], "")

    def test_budget_exhausted(self):
        F = hurwitz_move(
            hurwitz_move(canonical_form(1, 0, 0), 5, MoveDirection.RIGHT), 2, MoveDirection.LEFT
        )
        result = cli_dispatch(["orbit", self.write_factorization("f.txt", F), "--budget", "2"])
        self.assertEqual(result.exit_status, 4)
        self.assertEqual(result.machine["reached"], "no")
        self.assertEqual(result.machine["frontier_exhausted"], "no")

    def test_invalid_parameters(self):
        result = cli_dispatch(["orbit", data(FACTORIZATIONS, "canonical_100.txt"), "--budget", "0"])
        self.assertEqual(result.exit_status, 2)


class TestClassifyCommand(CliTestCase):
    def test_perutz(self):
        result = cli_dispatch(["classify", data(DESCRIPTORS, "perutz.sblf")])
        self.assertEqual(result.exit_status, 0)
        self.assertIn("blowups=4", result.output)
        self.assertIn("X # 4*CP2bar = CP2 # 5*CP2bar", result.output)
        self.assertEqual(result.machine["manifold"], "CP2 # 5*CP2bar")
        self.assertEqual(result.machine["candidates"], "CP2 # CP2bar; S2xS2")
        self.assertEqual(result.machine["euler"], "8")

    def test_descriptor_with_factorization_path(self):
        result = cli_dispatch(["classify", data(DESCRIPTORS, "elliptic_e1.sblf")])
        self.assertEqual(result.exit_status, 0)
        self.assertEqual(result.machine["manifold"], "E(1)")
        self.assertEqual((result.machine["case"], result.machine["blowups"]), ("b", "0"))

    def test_other_samples(self):
        result = cli_dispatch(["classify", data(DESCRIPTORS, "half_nucleon.sblf")])
        self.assertEqual(result.machine["manifold"], "CP2 # 5*CP2bar")
        self.assertEqual(result.machine["candidates"], "-")

        result = cli_dispatch(["classify", data(DESCRIPTORS, "torus_bundle.sblf")])
        self.assertEqual(result.machine["manifold"], "S1xL(3,1)")
        self.assertEqual(result.machine["pi1"], "Z x Z_3")
        self.assertEqual(result.machine["certificate"], "-")

    def test_errors(self):
        path = self.write("bad.sblf", "round=yes\nfactorization=[[1,-1],[0,1]]\nlower=pao n=0 parity=odd\n")
        result = cli_dispatch(["classify", path])
        self.assertEqual(result.exit_status, 2)

        result = cli_dispatch(["classify", self.write("bad.sblf", "round=sometimes\n")])
        self.assertEqual(result.exit_status, 2)
        self.assertIn("line 1", result.errors)


class TestChartCommand(CliTestCase):
    def test_canonical(self):
        dot = self.directory / "chart.dot"
        result = cli_dispatch(["chart", "canonical", "-p", "2", "-q", "1", "-k", "4", "--dot", str(dot)])
        self.assertEqual(result.exit_status, 0)
        self.assertEqual(result.machine["c"], "34")
        self.assertEqual(result.machine["p_signed"], "2")
        self.assertEqual(result.machine["boundary_word"], "s1 s2 s1 s2 s1 s2 s1 s1 s1 s1")
        self.assertTrue(dot.read_text().startswith('digraph "canonical_214" {'))

    def test_canonical_then_validate(self):
        output = self.directory / "chart.yaml"
        result = cli_dispatch(["chart", "canonical", "-p", "1", "-q", "0", "-k", "2", "--output", str(output)])
        self.assertEqual(result.exit_status, 0)

        result = cli_dispatch(["chart", "validate", str(output)])
        self.assertEqual(result.exit_status, 0)
        self.assertEqual(result.machine["status"], "ok")
        self.assertEqual(result.machine["c"], "14")

    def test_validate_invalid(self):
        result = cli_dispatch(["chart", "validate", data(CHARTS, "inward_black.yaml")])
        self.assertEqual(result.exit_status, 2)
        self.assertEqual(result.machine["status"], "invalid")
        self.assertIn("clause (5): b:", result.output)

    def test_validate_sample(self):
        result = cli_dispatch(["chart", "validate", data(CHARTS, "units_s1s2.yaml")])
        self.assertEqual(result.exit_status, 0)
        self.assertEqual(result.machine["boundary_word"], "s1 s2")

    def test_word(self):
        result = cli_dispatch(["chart", "word", data(CHARTS, "units_s1s2.yaml"), data(CHARTS, "units_s1s2.path")])
        self.assertEqual(result.exit_status, 0)
        self.assertEqual(result.machine["word"], "s1 s2")
        self.assertEqual(result.machine["monodromy"], "[[1,-1],[1,0]]")

    def test_word_unknown_edge(self):
        path = self.write("path.txt", "u9.e +1\n")
        result = cli_dispatch(["chart", "word", data(CHARTS, "units_s1s2.yaml"), path])
        self.assertEqual(result.exit_status, 2)


class TestScrambleCommand(CliTestCase):
    def test_deterministic(self):
        output = self.directory / "scrambled.txt"
        argv = ["scramble", data(FACTORIZATIONS, "canonical_100.txt"), "--seed", "3", "--steps", "10"]
        result = cli_dispatch(argv + ["--output", str(output)])
        self.assertEqual(result.exit_status, 0)
        expected = scramble(canonical_form(1, 0, 0), seed=3, steps=10)
        self.assertEqual(parse_factorization(output.read_text()), expected)

        first, second = cli_dispatch(argv), cli_dispatch(argv)
        self.assertEqual(first.output, second.output)
        self.assertEqual(first.machine, {"seed": "3", "steps": "10", "length": "12", "height": str(expected.height)})

    def test_long_scramble(self):
        argv = ["scramble", data(FACTORIZATIONS, "canonical_110.txt"), "--seed", "11", "--steps", "300"]
        result = cli_dispatch(argv + ["--height-cap", "20"])
        self.assertEqual(result.exit_status, 0)
        self.assertLessEqual(int(result.machine["height"]), 20)
        self.assertEqual(
            parse_factorization(result.output.partition("\n\n[result]")[0]),
            scramble(canonical_form(1, 1, 0), seed=11, steps=300, height_cap=20),
        )

    def test_printed(self):
        path = self.write_factorization("f.txt", Factorization.of(S1, S2))
        result = cli_dispatch(["scramble", path, "--seed", "0", "--steps", "0"])
        self.assertTrue(result.output.startswith("# scramble seed=0 steps=0\n[[1,0],[1,1]]\n[[1,-1],[0,1]]\n"))


class TestVerificationCommands(CliTestCase):
    def test_subwords(self):
        result = cli_dispatch(["subwords", "--max-k", "3"])
        self.assertEqual(result.exit_status, 0)
        self.assertEqual(result.machine, {"words": "8", "only_empty": "yes"})

    def test_subwords_limit(self):
        result = cli_dispatch(["subwords", "--max-k", "3", "--limit", "4"])
        self.assertEqual(result.exit_status, 4)

    def test_sweep(self):
        result = cli_dispatch(
            ["sweep", "--max-p", "0", "--max-k", "1", "--seeds", "2", "--steps", "1", "--budget", "5000"]
        )
        self.assertEqual(result.exit_status, 0)
        self.assertEqual(result.machine["cases"], "8")
        self.assertEqual(result.machine["passed"], "yes")

    def test_sweep_certificates_only(self):
        result = cli_dispatch(["sweep", "--max-p", "1", "--max-k", "2", "--seeds", "1", "--no-reachability"])
        self.assertEqual(result.exit_status, 0)
        self.assertEqual(result.machine["cases"], "12")

    def test_agree(self):
        result = cli_dispatch(["agree", "--max-length", "2", "--entry-bound", "4"])
        self.assertEqual(result.exit_status, 0)
        self.assertEqual(result.machine["passed"], "yes")
        self.assertEqual(result.machine["disagreements"], "0")

    def test_integrality(self):
        result = cli_dispatch(["integrality", "--count", "50", "--seed", "1"])
        self.assertEqual(result.exit_status, 0)
        self.assertEqual(result.machine, {"checked": "50", "exceptions": "0"})


# python manage.py test apps.cli.tests.TestClassifyCommand
