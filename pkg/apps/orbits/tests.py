from unittest import mock

from django.test import SimpleTestCase, override_settings, tag
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from apps.common.exceptions import InvalidParameter, NotAdmissible
from apps.common.utils import TestUtil
from apps.factorization.factorizations import (
    Factorization,
    MoveDirection,
    apply_moves,
    canonical_form,
    hurwitz_move,
    product,
)
from apps.orbits.search import (
    as_factorization,
    as_state,
    bounded_orbit,
    enumerate_orbit,
    neighbors,
)
from apps.orbits.sweep import (
    admissible_universe,
    integrality_check,
    verify_equivalence_agreement,
    verify_theorem_sweep,
)
from apps.sl2z.matrices import S1, S2, Sl2zElement

RIGHT, LEFT = MoveDirection.RIGHT, MoveDirection.LEFT


class TestEnumerateOrbit(SimpleTestCase):
    def test_start_is_canonical(self):
        report = enumerate_orbit(canonical_form(0, 1, 0), entry_bound=20, node_budget=10)
        self.assertTrue(report.canonical_reached)
        self.assertEqual(report.witness_moves, ())
        self.assertEqual(report.states_visited, 1)

    def test_braid_relation_input(self):
        F = TestUtil.braid_relation_factorization()
        report = enumerate_orbit(F, entry_bound=20, node_budget=100_000)
        self.assertTrue(report.canonical_reached)
        self.assertLessEqual(len(report.witness_moves), 4)
        self.assertEqual(apply_moves(F, report.witness_moves), canonical_form(0, 1, 0))

    def test_not_admissible(self):
        F = Factorization.of(Sl2zElement(2, -1, 1, 0), S1, S1)
        with self.assertRaises(NotAdmissible):
            enumerate_orbit(F, entry_bound=20, node_budget=100)

    def test_preconditions(self):
        F = Factorization.of(S1, Sl2zElement(-5, -9, 4, 7))
        with self.assertRaises(InvalidParameter):
            enumerate_orbit(F, entry_bound=5, node_budget=100)
        with self.assertRaises(InvalidParameter):
            enumerate_orbit(canonical_form(0, 0, 1), entry_bound=5, node_budget=0)

    def test_budget_exhausted(self):
        F = hurwitz_move(hurwitz_move(canonical_form(1, 0, 0), 5, RIGHT), 2, LEFT)
        report = enumerate_orbit(F, entry_bound=20, node_budget=2)
        self.assertFalse(report.canonical_reached)
        self.assertFalse(report.frontier_exhausted)
        self.assertIsNone(report.witness_moves)
        self.assertLessEqual(report.states_visited, 2)

    def test_escalation(self):
        F = canonical_form(0, 1, 0)
        start = as_state(F)
        with mock.patch(
            "apps.orbits.search.bounded_search",
            side_effect=[({start: None}, False, True, 3), ({start: None}, True, True, 0)],
        ):
            report = enumerate_orbit(F, entry_bound=5, node_budget=10, ceiling=40)
        self.assertTrue(report.canonical_reached)
        self.assertEqual(report.entry_bound, 10)
        self.assertEqual(report.escalations, 1)

        # stops at the ceiling
        with mock.patch(
            "apps.orbits.search.bounded_search",
            return_value=({start: None}, False, True, 4),
        ) as search:
            report = enumerate_orbit(F, entry_bound=5, node_budget=10, ceiling=20)
        self.assertFalse(report.canonical_reached)
        self.assertTrue(report.frontier_exhausted)
        self.assertEqual(report.entry_bound, 20)
        self.assertEqual(report.escalations, 2)
        self.assertEqual(search.call_count, 3)

    def test_no_escalation_without_pruning(self):
        F = canonical_form(0, 1, 0)
        start = as_state(F)
        with mock.patch(
            "apps.orbits.search.bounded_search",
            return_value=({start: None}, False, True, 0),
        ) as search:
            report = enumerate_orbit(F, entry_bound=5, node_budget=10, ceiling=40)
        self.assertFalse(report.canonical_reached)
        self.assertTrue(report.frontier_exhausted)
        self.assertEqual(report.entry_bound, 5)
        self.assertEqual(report.escalations, 0)
        self.assertEqual(search.call_count, 1)

    def test_single_entry_orbit(self):
        report = enumerate_orbit(Factorization.of(S1), entry_bound=1, node_budget=5)
        self.assertTrue(report.canonical_reached)
        self.assertTrue(report.frontier_exhausted)

    @override_settings(MONODROMY={
        "ORBIT_ENTRY_BOUND": 20,
        "ORBIT_NODE_BUDGET": 50_000,
        "ORBIT_ENTRY_BOUND_CEILING": 40,
        "ORBIT_JOBS": 1,
    })
    def test_defaults_come_from_settings(self):
        report = enumerate_orbit(TestUtil.braid_relation_factorization())
        self.assertEqual(report.entry_bound, 20)
        self.assertTrue(report.canonical_reached)

    def test_parallel_matches_single_worker(self):
        F = TestUtil.braid_relation_factorization()
        single = enumerate_orbit(F, entry_bound=20, node_budget=100_000, jobs=1)
        parallel = enumerate_orbit(F, entry_bound=20, node_budget=100_000, jobs=2)
        self.assertEqual(single, parallel)


class TestOrbitProperties(SimpleTestCase):
    def test_neighbor_order(self):
        state = as_state(Factorization.of(S1, S2, S1))
        children, pruned = neighbors(state, 20)
        self.assertEqual(pruned, 0)
        self.assertEqual(
            [(index, direction.value) for index, direction, _ in children],
            [(1, "right"), (1, "left"), (2, "right"), (2, "left")],
        )

    def test_pruning(self):
        state = as_state(Factorization.of(S1, S2))
        children, pruned = neighbors(state, 1)
        # both moves create an entry 2
        self.assertEqual(children, [])
        self.assertEqual(pruned, 2)

    def test_visited_states_keep_product_and_length(self):
        F = Factorization.of(S1, S2, S1)
        for state in bounded_orbit(F, entry_bound=4, node_budget=100_000):
            G = as_factorization(state)
            self.assertEqual(len(G), len(F))
            self.assertEqual(product(G), product(F))

    def test_orbit_closed_under_inverse_moves(self):
        F = Factorization.of(S1, S2, S1)
        orbit = bounded_orbit(F, entry_bound=5, node_budget=100_000)
        for state in orbit:
            for _, _, child in neighbors(state, 5)[0]:
                self.assertIn(child, orbit)
                self.assertIn(state, [back for _, _, back in neighbors(child, 5)[0]])

    @given(st.integers(0, 1), st.integers(0, 2), st.integers(0, 2**16))
    @hypothesis_settings(max_examples=10, deadline=None)
    def test_witness_replays(self, q, k, seed):
        F = TestUtil.scrambled(0, q, k, seed=seed, steps=1)
        report = enumerate_orbit(F, entry_bound=20, node_budget=100_000)
        self.assertTrue(report.canonical_reached)
        self.assertEqual(apply_moves(F, report.witness_moves), canonical_form(0, q, k))


class TestSweeps(SimpleTestCase):
    def test_vacuous_sweep(self):
        summary = verify_theorem_sweep(0, 0, entry_bound=20, node_budget=1000, seeds=1, steps=0)
        self.assertTrue(summary.passed)
        self.assertEqual(summary.lengths_seen, {0, 6})

    def test_small_sweep(self):
        summary = verify_theorem_sweep(0, 1, entry_bound=20, node_budget=50_000, seeds=3, steps=1)
        self.assertEqual(len(summary.cases), 12)
        self.assertEqual(summary.certificate_failures, ())
        self.assertEqual(summary.budget_exhausted, ())
        self.assertTrue(summary.passed)

    def test_lengths_seen(self):
        summary = verify_theorem_sweep(1, 2, seeds=1, steps=20, check_reachability=False)
        self.assertEqual(len(summary.lengths_seen), 12)
        self.assertEqual(summary.certificate_failures, ())

    def test_admissible_universe(self):
        universe = admissible_universe(4, 12)
        self.assertEqual(universe, [Factorization.of(*[S1] * n) for n in range(5)])

    def test_integrality(self):
        summary = integrality_check(count=200, seed=7)
        self.assertEqual(summary.checked, 200)
        self.assertEqual(summary.exceptions, ())


@tag("slow")
class TestAcceptance(SimpleTestCase):
    def test_theorem_sweep_certificates(self):
        summary = verify_theorem_sweep(1, 4, entry_bound=20, seeds=5, steps=200, check_reachability=False)
        self.assertEqual(len(summary.cases), 100)
        self.assertEqual(summary.certificate_failures, ())
        self.assertTrue(summary.passed)

    def test_theorem_sweep_reachability(self):
        # three moves out: at most 1 + m + m^2 + m^3 states with m <= 42 moves per state
        summary = verify_theorem_sweep(1, 4, entry_bound=20, node_budget=200_000, seeds=5, steps=3)
        self.assertEqual(len(summary.cases), 100)
        self.assertEqual(summary.certificate_failures, ())
        self.assertEqual(summary.reachability_failures, ())
        self.assertEqual(summary.budget_exhausted, ())
        self.assertTrue(all(case.reached for case in summary.cases))
        self.assertTrue(summary.passed)

    def test_equivalence_agreement(self):
        summary = verify_equivalence_agreement(max_length=4, entry_bound=12, node_budget=10_000)
        self.assertEqual(summary.factorizations, 5)
        self.assertEqual(summary.classes, 5)
        self.assertEqual(summary.pairs_checked, 10)
        self.assertTrue(summary.passed)


# python manage.py test apps.orbits.tests --exclude-tag slow
