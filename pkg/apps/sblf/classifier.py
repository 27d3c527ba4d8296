import logging
from dataclasses import dataclass, replace

from apps.common.exceptions import (
    InvalidMonodromyShape,
    InvalidParameter,
    InvariantViolation,
    NotAFibrationOverSphere,
)
from apps.factorization.factorizations import Factorization
from apps.factorization.normal_forms import certificate
from apps.sl2z.matrices import IDENTITY, S1

from .descriptors import (
    InvalidShape,
    PaoGluing,
    Parity,
    SblfDescriptor,
    TorusGluing,
    Twisted,
    Untwisted,
    monodromy_shape,
)
from .manifolds import (
    CP2,
    CP2BAR,
    S1XS3,
    S2XS2,
    S4,
    T2XS2,
    E,
    L,
    L_prime,
    ManifoldId,
    S1xL,
    canonicalize_manifold,
    stripped_candidates,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Classification:
    """X # blowups_performed*CP2bar is diffeomorphic to `manifold`."""

    manifold: ManifoldId
    blowups_performed: int
    case: str
    certificate: tuple[int, int, int] | None
    normalized_length: int
    has_round: bool
    # canonical X with X # b*CP2bar = manifold, when b > 0
    candidates: tuple[ManifoldId, ...] = ()

    @property
    def expected_euler(self) -> int:
        return self.normalized_length + 2 * self.has_round


def blowup_normalize(d: SblfDescriptor) -> tuple[SblfDescriptor, int]:
    """
    Append right-handed twists s1 until the higher-side monodromy is
    s1^k or (s1 s2)^3 s1^k with k >= 0. Each appended twist is one blow-up.
    """
    F = d.higher_factorization
    if not d.has_round:
        if F.product() != IDENTITY:
            raise NotAFibrationOverSphere(
                f"without a round circle the monodromy must be the identity, got {F.product()}"
            )
        return d, 0
    shape = monodromy_shape(F)
    if isinstance(shape, InvalidShape):
        raise InvalidMonodromyShape(
            f"monodromy {F.product()} does not preserve the curve a up to sign"
        )
    b = 0
    if isinstance(shape, Untwisted) and shape.m < 0:
        b = -shape.m
    elif isinstance(shape, Twisted) and shape.n > 0:
        b = shape.n
    if b:
        logger.debug("%s: appending %s twists", shape, b)
        d = replace(d, higher_factorization=F + Factorization.of(S1) * b)
    return d, b


def torus_bundle(gluing: TorusGluing) -> ManifoldId:
    if gluing.r == 0:
        return ManifoldId.of(T2XS2)
    if gluing.r == 1:
        return ManifoldId.of(S1XS3)
    return ManifoldId.of(S1xL(gluing.r))


def pao_base(gluing: PaoGluing) -> ManifoldId:
    even = gluing.parity is Parity.EVEN
    if gluing.n == 0:
        return ManifoldId.of(S2XS2, S1XS3) if even else ManifoldId.of(CP2, CP2BAR, S1XS3)
    if gluing.n == 1:
        return ManifoldId.of(S4)
    return ManifoldId.of(L(gluing.n) if even else L_prime(gluing.n))


def round_manifold(p: int, q: int, k: int, gluing: PaoGluing | None) -> tuple[str, ManifoldId]:
    if p == 0 and q == 0:
        if not isinstance(gluing, PaoGluing):
            raise InvalidParameter("a round fibration with monodromy s1^k needs a pao lower gluing")
        return "c", canonicalize_manifold(pao_base(gluing) + ManifoldId.of((CP2BAR, k)))
    a = 2 * p + q
    return "d", ManifoldId.of((CP2, a), (CP2BAR, 5 * a + k))


def classify(d: SblfDescriptor) -> Classification:
    """
    The total space of a genus-one simplified broken Lefschetz fibration,
    up to the blow-ups needed to make the higher-side monodromy admissible.
    The gluing twist and the section framing never enter.
    """
    F = d.higher_factorization
    if not d.has_round and len(F) == 0:
        if not isinstance(d.lower_gluing, TorusGluing):
            raise InvalidParameter("a torus bundle needs a torus lower gluing")
        manifold = torus_bundle(d.lower_gluing)
        logger.debug("case (a): %s", manifold)
        return Classification(manifold, 0, "a", None, 0, False)

    if not d.has_round:
        if F.product() != IDENTITY:
            raise NotAFibrationOverSphere(
                f"without a round circle the monodromy must be the identity, got {F.product()}"
            )
        if len(F) % 12:
            raise InvariantViolation(f"length {len(F)} of an identity factorization is not a multiple of 12")
        n = len(F) // 12
        logger.debug("case (b): E(%s)", n)
        return Classification(ManifoldId.of(E(n)), 0, "b", (n, 0, 0), len(F), False)

    normalized, b = blowup_normalize(d)
    p, q, k = certificate(normalized.higher_factorization)
    case, manifold = round_manifold(p, q, k, d.lower_gluing)
    logger.debug("case (%s): certificate (%s,%s,%s), %s blow-ups, %s", case, p, q, k, b, manifold)
    return Classification(
        manifold=manifold,
        blowups_performed=b,
        case=case,
        certificate=(p, q, k),
        normalized_length=len(normalized.higher_factorization),
        has_round=True,
        candidates=stripped_candidates(manifold, b) if b else (),
    )
