import logging
import random
from dataclasses import dataclass
from itertools import combinations, product

from django.conf import settings

from apps.common.exceptions import InvalidParameter, MonodromyError
from apps.factorization.factorizations import Factorization, canonical_form, scramble
from apps.factorization.normal_forms import boundary_type, equivalent, normalize
from apps.sl2z.twists import conjugates_within_bound

from .search import as_state, bounded_orbit, enumerate_orbit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepCase:
    p: int
    q: int
    k: int
    seed: int
    length: int
    recovered: bool
    reached: bool | None = None
    budget_exhausted: bool = False


@dataclass(frozen=True)
class SweepSummary:
    cases: tuple[SweepCase, ...]

    @property
    def certificate_failures(self):
        return tuple(case for case in self.cases if not case.recovered)

    @property
    def budget_exhausted(self):
        return tuple(case for case in self.cases if case.budget_exhausted)

    @property
    def reachability_failures(self):
        # frontier exhausted at the ceiling without the canonical form
        return tuple(
            case for case in self.cases
            if case.reached is False and not case.budget_exhausted
        )

    @property
    def lengths_seen(self):
        return frozenset(case.length for case in self.cases)

    @property
    def passed(self) -> bool:
        return not self.certificate_failures and not self.reachability_failures


def verify_theorem_sweep(
    max_p: int,
    max_k: int,
    entry_bound: int | None = None,
    node_budget: int | None = None,
    seeds: int = 5,
    steps: int | None = None,
    check_reachability: bool = True,
) -> SweepSummary:
    """
    Scramble canonical_form(p, q, k) for every p <= max_p, q in {0, 1},
    k <= max_k and every seed, then check that normalize recovers (p, q, k)
    and that the orbit search finds its way back. Scrambles never leave the
    entry bound, so reachability can only fail by running out of budget.
    """
    options = settings.MONODROMY
    entry_bound = options["ORBIT_ENTRY_BOUND"] if entry_bound is None else entry_bound
    node_budget = options["ORBIT_NODE_BUDGET"] if node_budget is None else node_budget
    steps = options["SCRAMBLE_STEPS"] if steps is None else steps
    if max_p < 0 or max_k < 0 or seeds < 1 or entry_bound < 1 or node_budget < 1 or steps < 0:
        raise InvalidParameter("sweep bounds must be positive")

    cases = []
    for p, q, k in product(range(max_p + 1), (0, 1), range(max_k + 1)):
        for seed in range(seeds):
            F = scramble(
                canonical_form(p, q, k), seed=f"{p}-{q}-{k}-{seed}", steps=steps, height_cap=entry_bound
            )
            recovered = normalize(F).certificate == (p, q, k)
            reached, exhausted_budget = None, False
            if check_reachability:
                report = enumerate_orbit(F, entry_bound=entry_bound, node_budget=node_budget, jobs=1)
                reached = report.canonical_reached
                exhausted_budget = not reached and not report.frontier_exhausted
            case = SweepCase(p, q, k, seed, len(F), recovered, reached, exhausted_budget)
            if not recovered or (reached is False and not exhausted_budget):
                logger.warning("sweep case failed: %s", case)
            cases.append(case)
    return SweepSummary(tuple(cases))


def admissible_universe(max_length: int, entry_bound: int) -> list[Factorization]:
    """
    Every factorization of length <= max_length over the conjugates of s1
    with entries bounded by `entry_bound` whose product has a boundary type.
    """
    conjugates = conjugates_within_bound(entry_bound)
    universe = []
    for length in range(max_length + 1):
        for entries in product(conjugates, repeat=length):
            F = Factorization(entries)
            if boundary_type(F) is not None:
                universe.append(F)
    logger.info(
        "admissible universe: %s factorizations of length <= %s over %s conjugates",
        len(universe), max_length, len(conjugates),
    )
    return universe


@dataclass(frozen=True)
class Disagreement:
    first: Factorization
    second: Factorization
    verdict: str
    connected: bool


@dataclass(frozen=True)
class AgreementSummary:
    factorizations: int
    classes: int
    pairs_checked: int
    disagreements: tuple[Disagreement, ...]
    # universe members whose orbit search missed the canonical form
    unreached: tuple[Factorization, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.disagreements and not self.unreached


def verify_equivalence_agreement(
    max_length: int = 4, entry_bound: int = 12, node_budget: int | None = None
) -> AgreementSummary:
    """
    Compare `equivalent` with connectivity in the bounded Hurwitz orbits on
    every pair from the admissible universe, and check that the orbit
    search reaches the canonical form from every member.
    """
    universe = admissible_universe(max_length, entry_bound)
    component = {}
    classes = 0
    for F in universe:
        state = as_state(F)
        if state in component:
            continue
        for member in bounded_orbit(F, entry_bound, node_budget):
            component[member] = classes
        classes += 1

    disagreements = []
    pairs = 0
    for first, second in combinations(universe, 2):
        pairs += 1
        verdict = equivalent(first, second)
        connected = component[as_state(first)] == component[as_state(second)]
        if verdict.equivalent != connected:
            logger.warning("decision %s but connected=%s for %s, %s", verdict, connected, first, second)
            disagreements.append(Disagreement(first, second, str(verdict), connected))

    unreached = []
    for F in universe:
        report = enumerate_orbit(F, entry_bound=entry_bound, node_budget=node_budget, jobs=1)
        if not report.canonical_reached:
            unreached.append(F)

    return AgreementSummary(len(universe), classes, pairs, tuple(disagreements), tuple(unreached))


@dataclass(frozen=True)
class IntegralitySummary:
    checked: int
    exceptions: tuple[str, ...]


def random_admissible(rng: random.Random, max_blocks: int = 2, steps: int = 12):
    """
    A scrambled concatenation of scrambled canonical blocks, and the
    certificate it must have: (s1 s2)^{3q} s1^k blocks commute up to the
    central element (s1 s2)^6 = id.
    """
    F = Factorization()
    total_p = total_q = total_k = 0
    for _ in range(rng.randint(1, max_blocks)):
        p, q, k = rng.randint(0, 1), rng.randint(0, 1), rng.randint(0, 3)
        F = F + scramble(canonical_form(p, q, k), seed=rng.random(), steps=steps)
        total_p, total_q, total_k = total_p + p, total_q + q, total_k + k
    F = scramble(F, seed=rng.random(), steps=steps)
    return F, (total_p + total_q // 2, total_q % 2, total_k)


def integrality_check(count: int, seed: int = 0) -> IntegralitySummary:
    """n = 6q + k (mod 12) and p >= 0 on `count` seeded random admissible factorizations."""
    if count < 0:
        raise InvalidParameter(f"count must be non-negative, got {count}")
    rng = random.Random(seed)
    exceptions = []
    for index in range(count):
        F, expected = random_admissible(rng)
        try:
            boundary = boundary_type(F)
            normal_form = normalize(F)
        except MonodromyError as e:
            exceptions.append(f"#{index}: {e}")
            continue
        if (len(F) - 6 * boundary.q - boundary.k) % 12 or normal_form.p < 0:
            exceptions.append(f"#{index}: length {len(F)} with boundary type {boundary}")
        elif normal_form.certificate != expected:
            exceptions.append(f"#{index}: certificate {normal_form.certificate}, expected {expected}")
    if exceptions:
        logger.warning("integrality check: %s exceptions in %s factorizations", len(exceptions), count)
    return IntegralitySummary(count, tuple(exceptions))
