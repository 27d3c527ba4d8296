import logging
from dataclasses import dataclass
from enum import Enum

from django.conf import settings

from apps.common.exceptions import InvariantViolation, NotAdmissible

from .factorizations import Factorization, HurwitzMove, canonical_form, product

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class BoundaryType:
    """The global monodromy (s1 s2)^{3q} s1^k, q in {0, 1}, k >= 0."""

    q: int
    k: int

    def __str__(self):
        return f"({self.q},{self.k})"


@dataclass(frozen=True)
class NormalForm:
    p: int
    q: int
    k: int
    canonical: Factorization
    # move records taking the input to `canonical`; None when no search ran
    # or the search budget ran out
    moves: tuple[HurwitzMove, ...] | None = None

    @property
    def certificate(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.k)

    @property
    def length(self) -> int:
        return 12 * self.p + 6 * self.q + self.k


def boundary_type(F: Factorization) -> BoundaryType | None:
    mu = product(F)
    if mu.a == 1 and mu.b == 0 and mu.d == 1 and mu.c >= 0:
        return BoundaryType(0, mu.c)
    # (s1 s2)^3 s1^k == [[-1, 0], [-k, -1]]
    if mu.a == -1 and mu.b == 0 and mu.d == -1 and mu.c <= 0:
        return BoundaryType(1, -mu.c)
    return None


def certificate(F: Factorization) -> tuple[int, int, int]:
    """(p, q, k) from the invariants alone."""
    boundary = boundary_type(F)
    if boundary is None:
        raise NotAdmissible(
            f"global monodromy {product(F)} is neither s1^k nor (s1 s2)^3 s1^k with k >= 0"
        )
    excess = len(F) - 6 * boundary.q - boundary.k
    if excess < 0 or excess % 12:
        raise InvariantViolation(
            f"length {len(F)} with boundary type {boundary} leaves {excess}, "
            "not a non-negative multiple of 12"
        )
    return excess // 12, boundary.q, boundary.k


def normalize(F: Factorization, node_budget: int | None = None, entry_bound: int | None = None) -> NormalForm:
    """
    Certificate (p, q, k) and canonical factorization (s1, s2)^{6p+3q} . (s1)^k
    of F. With a node budget, an orbit search also looks for explicit moves;
    its entry bound is raised to the largest entry of F when that is larger.
    """
    p, q, k = certificate(F)
    canonical = canonical_form(p, q, k)
    moves = None
    if node_budget is not None:
        from apps.orbits.search import enumerate_orbit

        if entry_bound is None:
            entry_bound = settings.MONODROMY["ORBIT_ENTRY_BOUND"]
        report = enumerate_orbit(F, entry_bound=max(entry_bound, F.height), node_budget=node_budget)
        if report.canonical_reached:
            moves = report.witness_moves
        else:
            logger.info("no move sequence found within %s states", report.states_visited)
    return NormalForm(p, q, k, canonical, moves)


class Verdict(Enum):
    EQUIVALENT = "equivalent"
    NOT_EQUIVALENT = "not equivalent"
    NOT_ADMISSIBLE = "not admissible"


@dataclass(frozen=True)
class EquivalenceVerdict:
    verdict: Verdict
    reason: str

    @property
    def equivalent(self) -> bool:
        return self.verdict is Verdict.EQUIVALENT

    def __str__(self):
        return f"{self.verdict.value} ({self.reason})"


def equivalent(F1: Factorization, F2: Factorization) -> EquivalenceVerdict:
    """
    Hurwitz equivalence of two factorizations with admissible global
    monodromy: equal boundary types and equal lengths.
    """
    first, second = boundary_type(F1), boundary_type(F2)
    if first is None or second is None:
        which = "first" if first is None else "second"
        return EquivalenceVerdict(
            Verdict.NOT_ADMISSIBLE,
            f"{which} global monodromy is not (s1 s2)^(3q) s1^k with k >= 0",
        )
    if first != second:
        return EquivalenceVerdict(
            Verdict.NOT_EQUIVALENT, f"boundary type {first} vs {second}"
        )
    if len(F1) != len(F2):
        return EquivalenceVerdict(
            Verdict.NOT_EQUIVALENT, f"length {len(F1)} vs {len(F2)}"
        )
    return EquivalenceVerdict(
        Verdict.EQUIVALENT,
        f"certificate: same boundary type {first}, same length {len(F1)}",
    )
