from django.test import SimpleTestCase, tag
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from apps.common.exceptions import (
    InvalidParameter,
    InvariantViolation,
    MoveOutOfRange,
    NotAdmissible,
    NotPositiveTwist,
    ParseError,
)
from apps.common.utils import TestUtil
from apps.factorization.factorizations import (
    Factorization,
    HurwitzMove,
    MoveDirection,
    apply_moves,
    canonical_form,
    hurwitz_move,
    product,
    random_moves,
    scramble,
)
from apps.factorization.normal_forms import (
    BoundaryType,
    Verdict,
    boundary_type,
    equivalent,
    normalize,
)
from apps.factorization.serializers import (
    parse_factorization,
    parse_inline_factorization,
    serialize_factorization,
)
from apps.sl2z.matrices import IDENTITY, MINUS_IDENTITY, S1, S2, Sl2zElement, inverse
from apps.sl2z.twists import is_positive_twist

RIGHT, LEFT = MoveDirection.RIGHT, MoveDirection.LEFT

certificates = st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 4))


class TestFactorization(SimpleTestCase):
    def test_entries_must_be_positive_twists(self):
        with self.assertRaises(NotPositiveTwist):
            Factorization.of(S1, S1 * S1)
        with self.assertRaises(NotPositiveTwist):
            Factorization.of(inverse(S2))

    def test_product(self):
        self.assertEqual(product(Factorization()), IDENTITY)
        self.assertEqual(product(Factorization.of(S1, S2) * 6), IDENTITY)
        self.assertEqual(product(Factorization.of(S1, S2) * 3), MINUS_IDENTITY)

    def test_concatenation(self):
        F = Factorization.of(S1) + Factorization.of(S2)
        self.assertEqual(F, Factorization.of(S1, S2))
        self.assertEqual(len(F * 3), 6)
        self.assertEqual(F * 0, Factorization())


class TestHurwitzMoves(SimpleTestCase):
    def test_right_move(self):
        F = Factorization.of(S1, S2)
        moved = hurwitz_move(F, 1, RIGHT)
        self.assertEqual(moved, Factorization.of(Sl2zElement(2, -1, 1, 0), S1))
        self.assertEqual(product(moved), product(F))

    def test_left_move(self):
        F = Factorization.of(S1, S2)
        moved = hurwitz_move(F, 1, LEFT)
        self.assertEqual(moved[0], S2)
        self.assertEqual(moved[1], inverse(S2) * S1 * S2)
        self.assertEqual(product(moved), product(F))

    def test_inverse_pair(self):
        F = canonical_form(0, 1, 2)
        for i in range(1, len(F)):
            for direction in (RIGHT, LEFT):
                moved = hurwitz_move(F, i, direction)
                self.assertEqual(hurwitz_move(moved, i, direction.opposite), F)

    def test_index_out_of_range(self):
        F = Factorization.of(S1, S2)
        with self.assertRaises(MoveOutOfRange):
            hurwitz_move(F, 0, RIGHT)
        with self.assertRaises(MoveOutOfRange):
            hurwitz_move(F, 2, LEFT)
        with self.assertRaises(MoveOutOfRange):
            hurwitz_move(Factorization.of(S1), 1, RIGHT)

    def test_move_record_text(self):
        move = HurwitzMove(3, LEFT)
        self.assertEqual(str(move), "left@3")
        self.assertEqual(HurwitzMove.parse("left@3"), move)
        self.assertEqual(move.inverse(), HurwitzMove(3, RIGHT))

    @given(certificates, st.integers(0, 2**32), st.integers(0, 60))
    @hypothesis_settings(max_examples=50, deadline=None)
    def test_move_invariance(self, certificate, seed, steps):
        F = canonical_form(*certificate)
        for move in random_moves(F, seed, steps):
            moved = hurwitz_move(F, move.index, move.direction)
            self.assertEqual(product(moved), product(F))
            self.assertEqual(len(moved), len(F))
            for entry in moved:
                self.assertIsNotNone(is_positive_twist(entry))
            F = moved

    @tag("slow")
    def test_hundred_thousand_moves(self):
        F = canonical_form(1, 1, 2)
        moves = random_moves(F, seed=2024, steps=100_000, height_cap=20)
        self.assertEqual(len(moves), 100_000)
        scrambled = apply_moves(F, moves)
        self.assertEqual(product(scrambled), product(F))
        self.assertEqual(len(scrambled), len(F))
        self.assertLessEqual(scrambled.height, 20)
        self.assertEqual(scrambled, scramble(F, seed=2024, steps=100_000, height_cap=20))
        self.assertEqual(apply_moves(scrambled, [m.inverse() for m in reversed(moves)]), F)


class TestScramble(SimpleTestCase):
    def test_no_steps(self):
        F = canonical_form(1, 0, 3)
        self.assertEqual(scramble(F, seed=1, steps=0), F)
        self.assertEqual(random_moves(F, seed=1, steps=0), [])
        self.assertEqual(scramble(Factorization.of(S1), seed=1, steps=10), Factorization.of(S1))

    def test_product_kept(self):
        scrambled = scramble(canonical_form(0, 1, 0), seed=7, steps=50)
        self.assertEqual(product(scrambled), MINUS_IDENTITY)
        for entry in scrambled:
            self.assertIsNotNone(is_positive_twist(entry))

    def test_deterministic(self):
        F = canonical_form(1, 1, 2)
        self.assertEqual(scramble(F, seed=11, steps=300), scramble(F, seed=11, steps=300))
        self.assertEqual(apply_moves(F, random_moves(F, seed=11, steps=300)), scramble(F, seed=11, steps=300))

    def test_height_cap(self):
        F = canonical_form(1, 1, 2)
        for steps in (50, 300, 1000):
            moves = random_moves(F, seed=11, steps=steps, height_cap=20)
            self.assertEqual(len(moves), steps)
            self.assertLessEqual(apply_moves(F, moves).height, 20)
        self.assertLessEqual(scramble(F, seed=3, steps=500, height_cap=3).height, 3)

    def test_cap_below_input_height(self):
        F = TestUtil.conjugated_factorization()
        self.assertLessEqual(scramble(F, seed=5, steps=200, height_cap=2).height, 25)

    def test_bad_parameters(self):
        with self.assertRaises(InvalidParameter):
            scramble(canonical_form(1, 0, 0), seed=0, steps=-1)
        with self.assertRaises(InvalidParameter):
            scramble(canonical_form(1, 0, 0), seed=0, steps=5, height_cap=0)


class TestNormalForms(SimpleTestCase):
    def test_canonical_form(self):
        self.assertEqual(canonical_form(0, 0, 0), Factorization())
        self.assertEqual(canonical_form(1, 0, 0), Factorization.of(S1, S2) * 6)
        self.assertEqual(
            canonical_form(0, 1, 4),
            Factorization.of(S1, S2, S1, S2, S1, S2, S1, S1, S1, S1),
        )
        with self.assertRaises(InvalidParameter):
            canonical_form(-1, 0, 0)
        with self.assertRaises(InvalidParameter):
            canonical_form(0, 2, 0)

    def test_boundary_type(self):
        self.assertEqual(boundary_type(Factorization()), BoundaryType(0, 0))
        self.assertEqual(boundary_type(Factorization.of(S1, S1, S1)), BoundaryType(0, 3))
        self.assertEqual(boundary_type(canonical_form(0, 1, 4)), BoundaryType(1, 4))
        # product [[-1,0],[4,-1]]
        self.assertIsNone(boundary_type(TestUtil.perutz_factorization()))
        self.assertIsNone(boundary_type(Factorization.of(S2)))

    def test_normalize_canonical_input(self):
        normal_form = normalize(Factorization.of(S1, S2) * 3)
        self.assertEqual(normal_form.certificate, (0, 1, 0))
        self.assertEqual(normal_form.canonical, Factorization.of(S1, S2) * 3)
        self.assertIsNone(normal_form.moves)

    def test_normalize_not_admissible(self):
        with self.assertRaises(NotAdmissible):
            normalize(Factorization.of(Sl2zElement(2, -1, 1, 0), S1))

    def test_normalize_invariant_violation(self):
        # an identity entry slipped past construction
        broken = TestUtil.unchecked_factorization([S1, S2] * 6 + [IDENTITY])
        with self.assertRaises(InvariantViolation):
            normalize(broken)

    def test_normalize_scramble(self):
        scrambled = scramble(canonical_form(1, 1, 2), seed=11, steps=1000)
        normal_form = normalize(scrambled)
        self.assertEqual(normal_form.certificate, (1, 1, 2))
        self.assertEqual(normal_form.length, len(scrambled))

    def test_normalize_search_above_default_bound(self):
        F = TestUtil.conjugated_factorization()
        self.assertGreater(F.height, 20)
        normal_form = normalize(F, node_budget=3)
        self.assertEqual(normal_form.certificate, (0, 1, 0))
        self.assertEqual(normal_form.canonical, canonical_form(0, 1, 0))
        self.assertIsNone(normal_form.moves)

    def test_normalize_with_moves(self):
        F = Factorization.of(S2, S1, S2, S1, S2, S1)
        normal_form = normalize(F, node_budget=50_000, entry_bound=20)
        self.assertEqual(normal_form.certificate, (0, 1, 0))
        self.assertIsNotNone(normal_form.moves)
        self.assertEqual(apply_moves(F, normal_form.moves), normal_form.canonical)

    @given(certificates)
    def test_normalize_idempotent(self, certificate):
        F = canonical_form(*certificate)
        normal_form = normalize(F)
        self.assertEqual(normal_form.certificate, certificate)
        self.assertEqual(normal_form.canonical, F)

    @given(certificates, st.integers(0, 2**16))
    @hypothesis_settings(max_examples=40, deadline=None)
    def test_abelianization_congruence(self, certificate, seed):
        F = scramble(canonical_form(*certificate), seed, 40)
        boundary = boundary_type(F)
        self.assertEqual(len(F) % 12, (6 * boundary.q + boundary.k) % 12)


class TestEquivalence(SimpleTestCase):
    def test_equivalent(self):
        self.assertTrue(equivalent(Factorization.of(S1), Factorization.of(S1)).equivalent)

        base = canonical_form(1, 0, 0)
        verdict = equivalent(base, scramble(base, seed=3, steps=500))
        self.assertEqual(verdict.verdict, Verdict.EQUIVALENT)
        self.assertEqual(
            str(verdict), "equivalent (certificate: same boundary type (0,0), same length 12)"
        )

    def test_not_equivalent(self):
        verdict = equivalent(canonical_form(1, 0, 0), canonical_form(2, 0, 0))
        self.assertEqual(verdict.verdict, Verdict.NOT_EQUIVALENT)
        self.assertIn("length 12 vs 24", verdict.reason)

        verdict = equivalent(canonical_form(0, 0, 6), canonical_form(0, 1, 0))
        self.assertEqual(verdict.verdict, Verdict.NOT_EQUIVALENT)
        self.assertIn("boundary type", verdict.reason)

    def test_not_admissible(self):
        verdict = equivalent(Factorization.of(S2), Factorization.of(S1))
        self.assertEqual(verdict.verdict, Verdict.NOT_ADMISSIBLE)


class TestFactorizationFiles(SimpleTestCase):
    def test_parse(self):
        self.assertEqual(parse_factorization("[[1,0],[1,1]]"), Factorization.of(S1))
        self.assertEqual(
            parse_factorization("# two twists\n[[1,0],[1,1]]\r\n\n[[1,-1],[0,1]]\n"),
            Factorization.of(S1, S2),
        )
        self.assertEqual(parse_factorization(""), Factorization())

    def test_parse_errors(self):
        with self.assertRaises(ParseError) as context:
            parse_factorization("[[1,0],[1,1]]\n[[1,0],[2,1]]\n")
        self.assertEqual(context.exception.line, 2)
        self.assertIn("not conjugate to s1", str(context.exception))

        with self.assertRaises(ParseError) as context:
            parse_factorization("# header\n[[1,0],[1,1]\n")
        self.assertEqual(context.exception.line, 2)

        with self.assertRaises(ParseError):
            parse_factorization("[[2,0],[0,2]]")

    def test_round_trip(self):
        F = scramble(canonical_form(0, 1, 3), seed=5, steps=30)
        text = serialize_factorization(F, comment="scrambled")
        self.assertTrue(text.startswith("# scrambled\n"))
        self.assertEqual(parse_factorization(text), F)
        self.assertEqual(serialize_factorization(parse_factorization(text), comment="scrambled"), text)

    def test_inline(self):
        self.assertEqual(
            parse_inline_factorization("[[1,0],[1,1]];[[1,-1],[0,1]]"),
            Factorization.of(S1, S2),
        )


@tag("slow")
class TestIntegrality(SimpleTestCase):
    def test_ten_thousand_factorizations(self):
        from apps.orbits.sweep import integrality_check

        summary = integrality_check(count=10_000, seed=2024)
        self.assertEqual(summary.checked, 10_000)
        self.assertEqual(summary.exceptions, ())


# python manage.py test apps.factorization.tests.TestHurwitzMoves
