import tempfile
from dataclasses import replace
from itertools import product
from pathlib import Path

from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import strategies as st

from apps.common.exceptions import (
    InvalidMonodromyShape,
    InvalidParameter,
    InvariantViolation,
    NotAFibrationOverSphere,
    NotCanonical,
    ParseError,
)
from apps.common.utils import TestUtil
from apps.factorization.factorizations import Factorization, canonical_form, scramble
from apps.factorization.normal_forms import boundary_type
from apps.factorization.serializers import serialize_factorization
from apps.sblf.classifier import blowup_normalize, classify
from apps.sblf.descriptors import (
    InvalidShape,
    PaoGluing,
    Parity,
    SblfDescriptor,
    TorusGluing,
    Twisted,
    Untwisted,
    monodromy_shape,
)
from apps.sblf.manifolds import (
    CP2,
    CP2BAR,
    S1XS3,
    S2XS2,
    S4,
    E,
    L,
    L_prime,
    ManifoldId,
    blow_up,
    canonicalize_manifold,
    manifold_invariants,
    parse_manifold,
    stripped_candidates,
)
from apps.sblf.serializers import parse_descriptor, serialize_descriptor
from apps.sl2z.matrices import IDENTITY, S1, S2, Sl2zElement

EVEN, ODD = Parity.EVEN, Parity.ODD

LOWER_GLUINGS = [
    PaoGluing(0, EVEN),
    PaoGluing(0, ODD),
    PaoGluing(1, ODD),
    PaoGluing(3, EVEN),
    PaoGluing(3, ODD),
]


def round_matrix():
    # round descriptors whose higher side needs no blow-up
    for (p, q, k), lower in product(product(range(2), range(2), range(3)), LOWER_GLUINGS):
        yield SblfDescriptor(True, canonical_form(p, q, k), lower_gluing=lower)


def untwisted_minus_two():
    # (s1 s2 s1)^3 . s1 s2 s1^-1 multiplies out to s1^-2
    return Factorization.of(S1, S2, S1) * 3 + Factorization.of(Sl2zElement(2, -1, 1, 0))


class TestMonodromyShape(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(monodromy_shape(Factorization.of(S1, S1)), Untwisted(2))
        self.assertEqual(monodromy_shape(Factorization.of(S1, S2) * 3), Twisted(0))
        self.assertEqual(monodromy_shape(Factorization.of(S2)), InvalidShape())
        self.assertEqual(monodromy_shape(Factorization()), Untwisted(0))

    def test_perutz(self):
        self.assertEqual(monodromy_shape(TestUtil.perutz_factorization()), Twisted(4))
        self.assertEqual(monodromy_shape(untwisted_minus_two()), Untwisted(-2))


class TestBlowupNormalize(SimpleTestCase):
    def test_admissible_unchanged(self):
        d = SblfDescriptor(True, Factorization.of(S1) * 3)
        self.assertEqual(blowup_normalize(d), (d, 0))

    def test_untwisted_negative(self):
        normalized, b = blowup_normalize(SblfDescriptor(True, untwisted_minus_two()))
        self.assertEqual(b, 2)
        self.assertEqual(len(normalized.higher_factorization), 12)
        self.assertEqual(normalized.higher_factorization[-2:], (S1, S1))
        self.assertEqual(monodromy_shape(normalized.higher_factorization), Untwisted(0))

    def test_twisted_positive(self):
        normalized, b = blowup_normalize(SblfDescriptor(True, TestUtil.perutz_factorization()))
        self.assertEqual(b, 4)
        self.assertEqual(len(normalized.higher_factorization), 6)
        self.assertEqual(monodromy_shape(normalized.higher_factorization), Twisted(0))
        self.assertIsNotNone(boundary_type(normalized.higher_factorization))

    def test_errors(self):
        with self.assertRaises(InvalidMonodromyShape):
            blowup_normalize(SblfDescriptor(True, Factorization.of(S2)))
        with self.assertRaises(NotAFibrationOverSphere):
            blowup_normalize(SblfDescriptor(False, Factorization.of(S1)))


class TestClassify(SimpleTestCase):
    def test_elliptic_surface(self):
        result = classify(SblfDescriptor(False, Factorization.of(S1, S2) * 6))
        self.assertEqual(result.manifold, ManifoldId.of(E(1)))
        self.assertEqual(result.blowups_performed, 0)
        self.assertEqual((result.case, result.certificate), ("b", (1, 0, 0)))

    def test_round_half_nucleon(self):
        result = classify(SblfDescriptor(True, Factorization.of(S1, S2) * 3, lower_gluing=PaoGluing(2, ODD)))
        self.assertEqual(str(result.manifold), "CP2 # 5*CP2bar")
        self.assertEqual(result.blowups_performed, 0)
        self.assertEqual((result.case, result.certificate), ("d", (0, 1, 0)))
        self.assertEqual(result.candidates, ())

    def test_perutz(self):
        result = classify(
            SblfDescriptor(True, TestUtil.perutz_factorization(), lower_gluing=PaoGluing(0, EVEN))
        )
        self.assertEqual(str(result.manifold), "CP2 # 5*CP2bar")
        self.assertEqual(result.blowups_performed, 4)
        self.assertEqual(result.certificate, (0, 1, 0))
        self.assertEqual([str(c) for c in result.candidates], ["CP2 # CP2bar", "S2xS2"])
        for candidate in result.candidates:
            self.assertEqual(blow_up(candidate, 4), result.manifold)

    def test_untwisted_negative(self):
        result = classify(SblfDescriptor(True, untwisted_minus_two()))
        self.assertEqual(result.blowups_performed, 2)
        self.assertEqual(result.certificate, (1, 0, 0))
        self.assertEqual(str(result.manifold), "2*CP2 # 10*CP2bar")

    def test_torus_bundles(self):
        cases = {0: "T2xS2", 1: "S1xS3", 3: "S1xL(3,1)"}
        for r, expected in cases.items():
            result = classify(SblfDescriptor(False, lower_gluing=TorusGluing(r)))
            self.assertEqual((str(result.manifold), result.case), (expected, "a"))
            self.assertEqual(manifold_invariants(result.manifold).euler, 0)

    def test_pao_table(self):
        cases = [
            (PaoGluing(0, EVEN), 0, "S2xS2 # S1xS3"),
            (PaoGluing(0, EVEN), 1, "CP2 # 2*CP2bar # S1xS3"),
            (PaoGluing(0, ODD), 0, "CP2 # CP2bar # S1xS3"),
            (PaoGluing(1, EVEN), 0, "S4"),
            (PaoGluing(1, ODD), 2, "2*CP2bar"),
            (PaoGluing(3, EVEN), 0, "L_3"),
            (PaoGluing(3, ODD), 0, "L'_3"),
            (PaoGluing(3, ODD), 2, "L_3 # 2*CP2bar"),
        ]
        for lower, k, expected in cases:
            with self.subTest(lower=str(lower), k=k):
                result = classify(SblfDescriptor(True, Factorization.of(S1) * k, lower_gluing=lower))
                self.assertEqual(result.case, "c")
                self.assertEqual(str(result.manifold), expected)
                self.assertEqual(manifold_invariants(result.manifold).euler, k + 2)

    def test_nucleon_family_euler(self):
        for p, q, k in product(range(3), range(2), range(4)):
            if 2 * p + q == 0:
                continue
            with self.subTest(p=p, q=q, k=k):
                result = classify(
                    SblfDescriptor(True, canonical_form(p, q, k), lower_gluing=PaoGluing(2, EVEN))
                )
                a = 2 * p + q
                self.assertEqual(result.manifold, ManifoldId.of((CP2, a), (CP2BAR, 5 * a + k)))
                self.assertEqual(manifold_invariants(result.manifold).euler, 12 * p + 6 * q + k + 2)

    def test_euler_cross_check(self):
        descriptors = list(round_matrix()) + [
            SblfDescriptor(False, Factorization.of(S1, S2) * 12),
            SblfDescriptor(True, TestUtil.perutz_factorization(), lower_gluing=PaoGluing(0, ODD)),
        ]
        for d in descriptors:
            result = classify(d)
            self.assertEqual(manifold_invariants(result.manifold).euler, result.expected_euler)

    def test_errors(self):
        with self.assertRaises(NotAFibrationOverSphere):
            classify(SblfDescriptor(False, Factorization.of(S1)))
        with self.assertRaises(InvariantViolation):
            classify(SblfDescriptor(False, TestUtil.unchecked_factorization([S1, S2] * 6 + [IDENTITY])))
        with self.assertRaises(InvalidMonodromyShape):
            classify(SblfDescriptor(True, Factorization.of(S2), lower_gluing=PaoGluing(0, EVEN)))
        with self.assertRaises(InvalidParameter):
            classify(SblfDescriptor(True, Factorization.of(S1)))
        with self.assertRaises(InvalidParameter):
            classify(SblfDescriptor(False))


class TestClassifyInvariance(SimpleTestCase):
    def test_gluing_and_framing(self):
        for d in round_matrix():
            expected = classify(d)
            for twist, m in product((False, True), (-3, 0, 7)):
                self.assertEqual(
                    classify(replace(d, higher_gluing_twist=twist, section_framing=m)), expected
                )

    def test_scramble(self):
        for index, d in enumerate(round_matrix()):
            scrambled = scramble(d.higher_factorization, seed=index, steps=60)
            self.assertEqual(classify(replace(d, higher_factorization=scrambled)), classify(d))

    @given(st.integers(0, 10_000))
    def test_scramble_perutz(self, seed):
        d = SblfDescriptor(True, TestUtil.perutz_factorization(), lower_gluing=PaoGluing(0, EVEN))
        scrambled = replace(d, higher_factorization=scramble(d.higher_factorization, seed, 5))
        self.assertEqual(classify(scrambled), classify(d))

    def test_blowup_coherence(self):
        for d in round_matrix():
            result = classify(d)
            blown = classify(replace(d, higher_factorization=d.higher_factorization + Factorization.of(S1)))
            self.assertEqual(blown.manifold, blow_up(result.manifold))
            self.assertEqual(blown.blowups_performed, result.blowups_performed)


class TestManifolds(SimpleTestCase):
    def test_invariants(self):
        elliptic = manifold_invariants(ManifoldId.of(E(2)))
        self.assertEqual((elliptic.euler, elliptic.pi1, elliptic.b1), (24, "1", 0))
        self.assertEqual((elliptic.b2, elliptic.signature), (22, -16))

        sphere = manifold_invariants(ManifoldId.of(S4))
        self.assertEqual((sphere.euler, sphere.pi1, sphere.b2), (2, "1", 0))

        pao = manifold_invariants(ManifoldId.of(L(3), (CP2BAR, 2)))
        self.assertEqual((pao.euler, pao.pi1, pao.b1, pao.signature), (4, "Z_3", 0, -2))

        blown = manifold_invariants(ManifoldId.of(CP2BAR, S1XS3))
        self.assertEqual((blown.euler, blown.pi1, blown.b1, blown.b2), (1, "Z", 1, 1))

    def test_invariants_need_canonical(self):
        with self.assertRaises(NotCanonical):
            manifold_invariants(ManifoldId.of(S2XS2, CP2BAR))
        with self.assertRaises(NotCanonical):
            manifold_invariants(ManifoldId.of(S4, CP2))

    def test_canonicalize(self):
        self.assertEqual(
            str(canonicalize_manifold(ManifoldId.of(S2XS2, S1XS3, CP2BAR))), "CP2 # 2*CP2bar # S1xS3"
        )
        self.assertEqual(str(canonicalize_manifold(ManifoldId.of(L_prime(2), CP2BAR))), "L_2 # CP2bar")
        self.assertEqual(canonicalize_manifold(ManifoldId.of(S4)), ManifoldId.of(S4))
        self.assertEqual(canonicalize_manifold(ManifoldId.of()), ManifoldId.of(S4))
        self.assertEqual(canonicalize_manifold(ManifoldId.of(S4, CP2)), ManifoldId.of(CP2))
        self.assertEqual(canonicalize_manifold(ManifoldId.of(S2XS2, L_prime(2))), ManifoldId.of(S2XS2, L_prime(2)))

    def test_canonicalize_idempotent(self):
        M = canonicalize_manifold(ManifoldId.of((S2XS2, 2), L_prime(5), (CP2BAR, 3), S4))
        self.assertEqual(str(M), "L_5 # 2*CP2 # 5*CP2bar")
        self.assertEqual(canonicalize_manifold(M), M)

    def test_parse(self):
        self.assertEqual(parse_manifold("CP2 # 5*CP2bar"), ManifoldId.of(CP2, (CP2BAR, 5)))
        for text in ("E(2)", "S1xL(3,1)", "L'_4 # S1xS3", "2*CP2 # 11*CP2bar", "S4"):
            self.assertEqual(str(parse_manifold(text)), text)

    def test_parse_errors(self):
        for text in ("K3", "L_1", "3*", "CP2 # # CP2bar"):
            with self.subTest(text=text), self.assertRaises(ParseError):
                parse_manifold(text)

    def test_stripped_candidates(self):
        M = ManifoldId.of(L(3), (CP2BAR, 2))
        self.assertEqual(stripped_candidates(M, 0), (M,))
        self.assertEqual([str(c) for c in stripped_candidates(M, 1)], ["L_3 # CP2bar"])
        self.assertEqual([str(c) for c in stripped_candidates(M, 2)], ["L'_3", "L_3"])
        self.assertEqual(stripped_candidates(M, 3), ())


class TestDescriptorFiles(SimpleTestCase):
    PERUTZ = (
        "# round fibration with a twisted higher side\n"
        "round=yes\n"
        "factorization=[[1,-1],[0,1]];[[3,-1],[4,-1]]\n"
        "lower=pao n=0 parity=even\n"
    )

    def test_parse_inline(self):
        d = parse_descriptor(self.PERUTZ)
        self.assertEqual(
            d,
            SblfDescriptor(True, TestUtil.perutz_factorization(), lower_gluing=PaoGluing(0, EVEN)),
        )

    def test_parse_torus(self):
        d = parse_descriptor("round=no\nlower=torus  r=2\n")
        self.assertEqual(d, SblfDescriptor(False, lower_gluing=TorusGluing(2)))

    def test_parse_path(self):
        with tempfile.TemporaryDirectory() as directory:
            TestUtil.write_file(
                Path(directory), "e1.txt", serialize_factorization(Factorization.of(S1, S2) * 6)
            )
            d = parse_descriptor("round=no\nfactorization=e1.txt\ntwist=twisted\nm=-1\n", base_dir=directory)
        self.assertEqual(d.higher_factorization, Factorization.of(S1, S2) * 6)
        self.assertTrue(d.higher_gluing_twist)
        self.assertEqual(d.section_framing, -1)
        self.assertEqual(classify(d).manifold, ManifoldId.of(E(1)))

    def test_round_trip(self):
        d = parse_descriptor(self.PERUTZ)
        self.assertEqual(parse_descriptor(serialize_descriptor(d)), d)
        torus = SblfDescriptor(False, lower_gluing=TorusGluing(5))
        self.assertEqual(parse_descriptor(serialize_descriptor(torus)), torus)

    def test_errors(self):
        cases = [
            ("round=yes\ncolour=blue\n", 2),
            ("round=yes\nm=1\nm=2\n", 3),
            ("round=maybe\n", 1),
            ("round\n", 1),
            ("round=yes\nlower=torus r=1\n", 2),
            ("round=yes\nlower=pao n=1\n", 2),
            ("round=no\n", None),
            ("m=3\n", None),
            ("round=no\nfactorization=[[1,0],[2,1]]\n", 2),
            ("round=yes\nfactorization=missing.txt\n", 2),
        ]
        for text, line in cases:
            with self.subTest(text=text):
                with tempfile.TemporaryDirectory() as directory:
                    with self.assertRaises(ParseError) as context:
                        parse_descriptor(text, base_dir=directory)
                self.assertEqual(context.exception.line, line)

    def test_error_messages(self):
        with self.assertRaises(ParseError) as context:
            parse_descriptor("round=no\nfactorization=[[1,0],[2,1]]\n")
        self.assertIn("not conjugate to s1", str(context.exception))


# python manage.py test apps.sblf.tests.TestClassify
