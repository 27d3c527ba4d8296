import sys
from math import gcd
from unittest import skipUnless

from django.test import SimpleTestCase
from hypothesis import assume, given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from apps.common.exceptions import BudgetExceeded, InvalidParameter, InvariantViolation, ParseError
from apps.sl2z.matrices import (
    IDENTITY,
    MINUS_IDENTITY,
    S1,
    S2,
    Sl2zElement,
    inverse,
    mul,
    parse_matrix,
    power,
    sl2z_box,
)
from apps.sl2z.twists import (
    TwistWitness,
    conjugate_oracle,
    conjugates_within_bound,
    is_positive_twist,
)
from apps.sl2z.words import GeneratorWord, Letter, eval_word, subword_identity_scan

INT_STR_LIMIT = getattr(sys, "get_int_max_str_digits", lambda: 0)()

letters = st.sampled_from(list(Letter))
words = st.lists(letters, max_size=24).map(lambda letters: GeneratorWord(tuple(letters)))


class TestArithmetic(SimpleTestCase):
    def test_mul(self):
        self.assertEqual(mul(S1, S2), Sl2zElement(1, -1, 1, 0))
        self.assertEqual(mul(S1, IDENTITY), S1)
        self.assertEqual(power(mul(S1, S2), 3), MINUS_IDENTITY)

    def test_inverse(self):
        self.assertEqual(inverse(IDENTITY), IDENTITY)
        self.assertEqual(inverse(S1), Sl2zElement(1, 0, -1, 1))
        self.assertEqual(inverse(S1 * S2), Sl2zElement(0, 1, -1, 1))
        self.assertEqual(S1 * inverse(S1), IDENTITY)

    def test_determinant_is_enforced(self):
        with self.assertRaises(InvariantViolation):
            Sl2zElement(1, 0, 1, 2)

    def test_no_overflow(self):
        # trace 3: powers grow without bound
        big = power(S1 * inverse(S2), 200)
        self.assertEqual(big.determinant, 1)
        self.assertGreater(big.height, 2**64)

    @skipUnless(INT_STR_LIMIT, "no int to str conversion limit")
    def test_too_large_to_print(self):
        big = power(S1 * inverse(S2), 3 * INT_STR_LIMIT)
        with self.assertRaises(InvalidParameter):
            str(big)
        with self.assertRaises(ParseError):
            parse_matrix(f"[[1{'0' * INT_STR_LIMIT},0],[0,1]]")

    def test_parse_matrix(self):
        self.assertEqual(parse_matrix("[[1,0],[1,1]]"), S1)
        self.assertEqual(parse_matrix(" [[ 1, -1 ], [0, 1]] "), S2)
        self.assertEqual(parse_matrix(str(Sl2zElement(3, -1, 4, -1))), Sl2zElement(3, -1, 4, -1))

        with self.assertRaises(ParseError):
            parse_matrix("[[1,0],[2,2]]")
        with self.assertRaises(ParseError):
            parse_matrix("s1")

    @given(words, words)
    def test_closure(self, first, second):
        product = mul(eval_word(first), eval_word(second))
        self.assertEqual(product.determinant, 1)
        self.assertEqual(product, eval_word(first + second))


class TestWords(SimpleTestCase):
    def test_eval_word(self):
        self.assertEqual(eval_word(GeneratorWord()), IDENTITY)

        # braid relator s1 s2 s1 (s2 s1 s2)^-1
        relator = GeneratorWord.parse("s1 s2 s1 s2^-1 s1^-1 s2^-1")
        self.assertEqual(eval_word(relator), IDENTITY)
        self.assertEqual(eval_word(GeneratorWord.parse("s1 s2") * 6), IDENTITY)
        self.assertEqual(eval_word(GeneratorWord.parse("s1 s2") * 3), MINUS_IDENTITY)

    def test_parse_word(self):
        word = GeneratorWord.parse("s1 s2^-1  s1^-1")
        self.assertEqual(word.letters, (Letter.S1, Letter.S2_INV, Letter.S1_INV))
        self.assertEqual(str(word), "s1 s2^-1 s1^-1")

        with self.assertRaises(ParseError):
            GeneratorWord.parse("s1 s3")

    def test_subword_scan(self):
        report = subword_identity_scan(0, 0)
        self.assertEqual(report.identity_subwords, (GeneratorWord(),))

        report = subword_identity_scan(1, 0)
        self.assertEqual(report.subwords_checked, 2**6)
        self.assertTrue(report.only_empty)

        report = subword_identity_scan(1, 4)
        self.assertEqual(report.subwords_checked, 2**10)
        self.assertTrue(report.only_empty)

    def test_subword_scan_all_small_cases(self):
        for q in (0, 1):
            for k in range(9):
                self.assertTrue(subword_identity_scan(q, k).only_empty, (q, k))

    def test_subword_scan_limit(self):
        with self.assertRaises(BudgetExceeded):
            subword_identity_scan(1, 10, limit=12)


class TestPositiveTwist(SimpleTestCase):
    def test_generators(self):
        self.assertEqual(is_positive_twist(S1), TwistWitness(0, 1))
        self.assertEqual(is_positive_twist(S2), TwistWitness(1, 0))
        self.assertIsNone(is_positive_twist(power(S1, 2)))
        self.assertIsNone(is_positive_twist(inverse(S1)))
        self.assertIsNone(is_positive_twist(IDENTITY))
        self.assertEqual(is_positive_twist(Sl2zElement(2, -1, 1, 0)), TwistWitness(1, 1))

    def test_s1_s2_s1_inverse(self):
        element = S1 * S2 * inverse(S1)
        self.assertEqual(element, Sl2zElement(2, -1, 1, 0))
        self.assertIsNotNone(is_positive_twist(element))

    def test_oracle_elements_are_twists(self):
        for element in conjugate_oracle(8):
            witness = is_positive_twist(element)
            self.assertIsNotNone(witness, str(element))
            self.assertEqual(witness.element(), element)

    def test_predicate_agrees_with_oracle_in_box(self):
        oracle = conjugate_oracle(8)
        for element in sl2z_box(20):
            self.assertEqual(
                is_positive_twist(element) is not None,
                element in oracle,
                str(element),
            )

    def test_conjugates_within_bound(self):
        bounded = conjugates_within_bound(12)
        self.assertEqual(len(bounded), 16)
        self.assertEqual(set(bounded[:2]), {S1, S2})
        self.assertEqual(set(bounded), {e for e in conjugate_oracle(8) if e.height <= 12})

    @given(st.integers(-50, 50), st.integers(0, 50))
    @hypothesis_settings(max_examples=300)
    def test_witness_is_canonical_and_valid(self, q, s):
        assume(gcd(q, s) == 1 and not (s == 0 and q < 0))
        witness = is_positive_twist(TwistWitness(q, s).element())
        self.assertEqual(witness, TwistWitness(q, s))
        self.assertEqual(witness.element(), TwistWitness(-q, -s).element())

    @given(words)
    def test_conjugates_of_s1(self, word):
        by = eval_word(word)
        element = by * S1 * inverse(by)
        witness = is_positive_twist(element)
        self.assertIsNotNone(witness)
        self.assertEqual(witness.element(), element)


# python manage.py test apps.sl2z.tests.TestPositiveTwist
