import re
from dataclasses import dataclass

from apps.common.exceptions import InvalidParameter, InvariantViolation, ParseError

MATRIX_PATTERN = re.compile(
    r"^\s*\[\s*\[\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\]\s*,"
    r"\s*\[\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\]\s*\]\s*$"
)


@dataclass(frozen=True, slots=True)
class Sl2zElement:
    """
    An exact 2x2 integer matrix [[a, b], [c, d]] of determinant one.

    Entries are Python ints, so products never overflow.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise InvariantViolation(f"{self} has determinant {self.determinant}, not 1")

    @property
    def determinant(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def height(self) -> int:
        """Largest absolute value of an entry."""
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def __mul__(self, other: "Sl2zElement") -> "Sl2zElement":
        if not isinstance(other, Sl2zElement):
            return NotImplemented
        return mul(self, other)

    def __pow__(self, exponent: int) -> "Sl2zElement":
        return power(self, exponent)

    def inverse(self) -> "Sl2zElement":
        return inverse(self)

    def __str__(self):
        try:
            return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"
        except ValueError:
            # int to str conversion limit
            raise InvalidParameter(
                f"matrix with an entry of about {self.height.bit_length()} bits is too large to print"
            ) from None

    @classmethod
    def from_entries(cls, entries) -> "Sl2zElement":
        a, b, c, d = entries
        return cls(a, b, c, d)


IDENTITY = Sl2zElement(1, 0, 0, 1)
MINUS_IDENTITY = Sl2zElement(-1, 0, 0, -1)
S1 = Sl2zElement(1, 0, 1, 1)
S2 = Sl2zElement(1, -1, 0, 1)


def mul(A: Sl2zElement, B: Sl2zElement) -> Sl2zElement:
    return Sl2zElement(
        A.a * B.a + A.b * B.c,
        A.a * B.b + A.b * B.d,
        A.c * B.a + A.d * B.c,
        A.c * B.b + A.d * B.d,
    )


def inverse(A: Sl2zElement) -> Sl2zElement:
    return Sl2zElement(A.d, -A.b, -A.c, A.a)


def power(A: Sl2zElement, exponent: int) -> Sl2zElement:
    """A**exponent by repeated squaring; negative exponents invert first."""
    if exponent < 0:
        A, exponent = inverse(A), -exponent
    result = IDENTITY
    base = A
    while exponent:
        if exponent & 1:
            result = mul(result, base)
        base = mul(base, base)
        exponent >>= 1
    return result


def conjugate(A: Sl2zElement, by: Sl2zElement) -> Sl2zElement:
    """by * A * by^-1"""
    return mul(mul(by, A), inverse(by))


def lower_unipotent(k: int) -> Sl2zElement:
    """s1**k == [[1, 0], [k, 1]]"""
    return Sl2zElement(1, 0, k, 1)


def parse_matrix(text: str) -> Sl2zElement:
    match = MATRIX_PATTERN.match(text)
    if not match:
        raise ParseError(f"expected a matrix [[a,b],[c,d]], got {text.strip()!r}")
    try:
        a, b, c, d = (int(group) for group in match.groups())
    except ValueError:
        raise ParseError("matrix entry has too many digits") from None
    if a * d - b * c != 1:
        raise ParseError(f"{text.strip()} has determinant {a * d - b * c}, not 1")
    return Sl2zElement(a, b, c, d)


def sl2z_box(bound: int):
    """
    Yield every determinant-one matrix with all entries in [-bound, bound],
    in lexicographic order of (a, b, c, d).
    """
    span = range(-bound, bound + 1)
    for a in span:
        for b in span:
            for c in span:
                if a == 0:
                    if b * c != -1:
                        continue
                    for d in span:
                        yield Sl2zElement(a, b, c, d)
                    continue
                numerator = 1 + b * c
                if numerator % a == 0 and abs(numerator // a) <= bound:
                    yield Sl2zElement(a, b, c, numerator // a)
