from dataclasses import dataclass
from math import gcd, isqrt

from apps.common.exceptions import InvariantViolation

from .matrices import IDENTITY, S1, S2, Sl2zElement, conjugate, inverse, mul


@dataclass(frozen=True, slots=True)
class TwistWitness:
    """
    (q, s) with gcd(q, s) = 1 witnessing the conjugate of s1

        [[1 + qs, -q^2], [s^2, 1 - qs]].

    (q, s) and (-q, -s) give the same element; the canonical witness has
    s > 0, or s == 0 and q > 0.
    """

    q: int
    s: int

    def __post_init__(self):
        if gcd(self.q, self.s) != 1:
            raise InvariantViolation(f"witness ({self.q},{self.s}) is not coprime")

    def element(self) -> Sl2zElement:
        q, s = self.q, self.s
        return Sl2zElement(1 + q * s, -q * q, s * s, 1 - q * s)

    def __str__(self):
        return f"({self.q},{self.s})"


def is_positive_twist(A: Sl2zElement) -> TwistWitness | None:
    """
    Return the canonical witness if A is conjugate to s1, else None.

    Conjugating s1 by P = [[x, y], [z, w]] gives I + (y, w)^T (w, -y), so the
    conjugates of s1 are exactly the matrices above with (q, s) = +-(y, w)
    primitive.
    """
    if A.trace != 2 or A == IDENTITY:
        return None
    if A.c < 0 or A.b > 0:
        return None
    s = isqrt(A.c)
    q_abs = isqrt(-A.b)
    if s * s != A.c or q_abs * q_abs != -A.b:
        return None
    if s == 0:
        # A - I = [[0, -q^2], [0, 0]] forces qs == 0
        if A.a != 1:
            return None
        q = q_abs
    else:
        if (A.a - 1) % s:
            return None
        q = (A.a - 1) // s
        if abs(q) != q_abs:
            return None
    if gcd(q, s) != 1:
        return None
    return TwistWitness(q, s)


def conjugates_within_bound(bound: int) -> list[Sl2zElement]:
    """
    Every conjugate of s1 whose entries have absolute value at most bound,
    built from the closed form and sorted by (height, entries).
    """
    found = []
    radius = isqrt(bound)
    for s in range(0, radius + 1):
        for q in range(-radius, radius + 1):
            if s == 0 and q <= 0:
                continue
            if gcd(q, s) != 1:
                continue
            element = TwistWitness(q, s).element()
            if element.height <= bound:
                found.append(element)
    return sorted(found, key=lambda element: (element.height, element.entries))


def conjugate_oracle(word_length: int) -> set[Sl2zElement]:
    """
    Brute force: P s1 P^-1 for every P given by a generator word of length
    at most word_length.
    """
    generators = (S1, inverse(S1), S2, inverse(S2))
    reached = {IDENTITY}
    layer = [IDENTITY]
    for _ in range(word_length):
        next_layer = []
        for element in layer:
            for generator in generators:
                product = mul(element, generator)
                if product not in reached:
                    reached.add(product)
                    next_layer.append(product)
        layer = next_layer
    return {conjugate(S1, by=element) for element in reached}
