from dataclasses import dataclass, field
from enum import Enum

from apps.common.exceptions import InvalidParameter
from apps.factorization.factorizations import Factorization, product


@dataclass(frozen=True)
class TorusGluing:
    """Lower side of a fibration without round singularities or Lefschetz points."""

    r: int

    def __post_init__(self):
        if self.r < 0:
            raise InvalidParameter(f"torus gluing needs r >= 0, got {self.r}")

    def __str__(self):
        return f"torus r={self.r}"


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class PaoGluing:
    """Lower side of a round fibration: the framing data (n, parity)."""

    n: int
    parity: Parity

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParameter(f"pao gluing needs n >= 0, got {self.n}")

    def __str__(self):
        return f"pao n={self.n} parity={self.parity.value}"


@dataclass(frozen=True)
class SblfDescriptor:
    has_round: bool
    higher_factorization: Factorization = field(default_factory=Factorization)
    higher_gluing_twist: bool = False
    section_framing: int = 0
    lower_gluing: TorusGluing | PaoGluing | None = None


@dataclass(frozen=True)
class Untwisted:
    """Higher-side monodromy [[1,0],[m,1]]: the curve a is preserved."""

    m: int

    def __str__(self):
        return f"untwisted({self.m})"


@dataclass(frozen=True)
class Twisted:
    """Higher-side monodromy [[-1,0],[n,-1]]: the curve a is reversed."""

    n: int

    def __str__(self):
        return f"twisted({self.n})"


@dataclass(frozen=True)
class InvalidShape:
    def __str__(self):
        return "invalid"


def monodromy_shape(F: Factorization) -> Untwisted | Twisted | InvalidShape:
    mu = product(F)
    if mu.a == 1 and mu.b == 0 and mu.d == 1:
        return Untwisted(mu.c)
    if mu.a == -1 and mu.b == 0 and mu.d == -1:
        return Twisted(mu.c)
    return InvalidShape()
