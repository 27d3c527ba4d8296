import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering

from apps.common.exceptions import InvalidParameter, NotCanonical, ParseError


class Kind(Enum):
    # declaration order is the summand order of canonical expressions
    E = "E"
    L = "L"
    L_PRIME = "L'"
    S1XL = "S1xL"
    T2XS2 = "T2xS2"
    S2XS2 = "S2xS2"
    CP2 = "CP2"
    CP2BAR = "CP2bar"
    S1XS3 = "S1xS3"
    S4 = "S4"


ORDER = {kind: index for index, kind in enumerate(Kind)}
PARAMETERIZED = {Kind.E: 1, Kind.L: 2, Kind.L_PRIME: 2, Kind.S1XL: 2}

EULER = {
    Kind.S4: 2, Kind.CP2: 3, Kind.CP2BAR: 3, Kind.S2XS2: 4, Kind.S1XS3: 0,
    Kind.T2XS2: 0, Kind.S1XL: 0, Kind.L: 2, Kind.L_PRIME: 2,
}
FIRST_BETTI = {Kind.S1XS3: 1, Kind.T2XS2: 2, Kind.S1XL: 1}
SIGNATURE = {Kind.CP2: 1, Kind.CP2BAR: -1}


@total_ordering
@dataclass(frozen=True)
class Primitive:
    """A prime summand; `n` parameterizes E(n), L_n, L'_n and S1xL(n,1)."""

    kind: Kind
    n: int | None = None

    def __post_init__(self):
        minimum = PARAMETERIZED.get(self.kind)
        if minimum is None:
            if self.n is not None:
                raise InvalidParameter(f"{self.kind.value} takes no parameter")
        elif self.n is None or self.n < minimum:
            raise InvalidParameter(f"{self.kind.value} needs n >= {minimum}, got {self.n}")

    def __lt__(self, other):
        return (ORDER[self.kind], self.n or 0) < (ORDER[other.kind], other.n or 0)

    def __str__(self):
        if self.kind is Kind.E:
            return f"E({self.n})"
        if self.kind is Kind.S1XL:
            return f"S1xL({self.n},1)"
        if self.kind in (Kind.L, Kind.L_PRIME):
            return f"{self.kind.value}_{self.n}"
        return self.kind.value

    @property
    def euler(self) -> int:
        return 12 * self.n if self.kind is Kind.E else EULER[self.kind]

    @property
    def pi1(self) -> str | None:
        """The fundamental group, None when trivial."""
        if self.kind is Kind.S1XS3:
            return "Z"
        if self.kind is Kind.T2XS2:
            return "Z x Z"
        if self.kind is Kind.S1XL:
            return f"Z x Z_{self.n}"
        if self.kind in (Kind.L, Kind.L_PRIME):
            return f"Z_{self.n}"
        return None

    @property
    def b1(self) -> int:
        return FIRST_BETTI.get(self.kind, 0)

    @property
    def signature(self) -> int:
        return -8 * self.n if self.kind is Kind.E else SIGNATURE.get(self.kind, 0)


S4 = Primitive(Kind.S4)
CP2 = Primitive(Kind.CP2)
CP2BAR = Primitive(Kind.CP2BAR)
S2XS2 = Primitive(Kind.S2XS2)
S1XS3 = Primitive(Kind.S1XS3)
T2XS2 = Primitive(Kind.T2XS2)


def E(n):
    return Primitive(Kind.E, n)


def L(n):
    return Primitive(Kind.L, n)


def L_prime(n):
    return Primitive(Kind.L_PRIME, n)


def S1xL(n):
    return Primitive(Kind.S1XL, n)


@dataclass(frozen=True)
class ManifoldId:
    """A connected sum of primitives with multiplicities; the empty sum is S4."""

    summands: tuple[tuple[Primitive, int], ...]

    @classmethod
    def of(cls, *terms) -> "ManifoldId":
        """ManifoldId.of(CP2, (CP2BAR, 5)) is CP2 # 5*CP2bar."""
        counts = Counter()
        for term in terms:
            primitive, times = term if isinstance(term, tuple) else (term, 1)
            if times < 0:
                raise InvalidParameter(f"negative multiplicity {times} of {primitive}")
            counts[primitive] += times
        return cls.from_counts(counts)

    @classmethod
    def from_counts(cls, counts) -> "ManifoldId":
        return cls(tuple(sorted((p, n) for p, n in counts.items() if n > 0)))

    @property
    def counts(self) -> Counter:
        return Counter(dict(self.summands))

    def count(self, primitive: Primitive) -> int:
        return self.counts[primitive]

    @property
    def size(self) -> int:
        return sum(times for _, times in self.summands)

    def __str__(self):
        if not self.summands:
            return "S4"
        return " # ".join(
            str(primitive) if times == 1 else f"{times}*{primitive}"
            for primitive, times in self.summands
        )

    def __add__(self, other: "ManifoldId") -> "ManifoldId":
        return connect(self, other)


def connect(first: ManifoldId, second: ManifoldId) -> ManifoldId:
    return ManifoldId.from_counts(first.counts + second.counts)


def canonicalize_manifold(M: ManifoldId) -> ManifoldId:
    """
    Rewrite to the fixed point of
      S2xS2 # CP2bar -> CP2 # 2*CP2bar,
      L'_n # CP2bar -> L_n # CP2bar,
      X # S4 -> X.
    The sole-summand S4 survives as S4 itself.
    """
    counts = M.counts
    if counts[CP2BAR]:
        counts[CP2] += counts[S2XS2]
        counts[CP2BAR] += counts.pop(S2XS2, 0)
        for primitive in [p for p in counts if p.kind is Kind.L_PRIME]:
            counts[L(primitive.n)] += counts.pop(primitive)
    counts.pop(S4, None)
    if not +counts:
        return ManifoldId.of(S4)
    return ManifoldId.from_counts(counts)


def blow_up(M: ManifoldId, times: int = 1) -> ManifoldId:
    return canonicalize_manifold(connect(M, ManifoldId.of((CP2BAR, times))))


@dataclass(frozen=True)
class ManifoldInvariants:
    euler: int
    pi1: str
    b1: int
    b2: int
    signature: int


def manifold_invariants(M: ManifoldId) -> ManifoldInvariants:
    if canonicalize_manifold(M) != M:
        raise NotCanonical(f"{M} is not canonical, expected {canonicalize_manifold(M)}")
    primitives = [primitive for primitive, times in M.summands for _ in range(times)]
    euler = sum(primitive.euler for primitive in primitives) - 2 * (len(primitives) - 1)
    groups = [primitive.pi1 for primitive in primitives if primitive.pi1]
    b1 = sum(primitive.b1 for primitive in primitives)
    return ManifoldInvariants(
        euler=euler,
        pi1=" * ".join(groups) if groups else "1",
        b1=b1,
        # closed orientable: euler = 2 - 2 b1 + b2
        b2=euler - 2 + 2 * b1,
        signature=sum(primitive.signature for primitive in primitives),
    )


PRIMITIVE_PATTERNS = [
    (re.compile(r"E\((\d+)\)"), Kind.E),
    (re.compile(r"S1xL\((\d+),1\)"), Kind.S1XL),
    (re.compile(r"L'_(\d+)"), Kind.L_PRIME),
    (re.compile(r"L_(\d+)"), Kind.L),
]
TERM_PATTERN = re.compile(r"(?:(\d+)\*)?(\S+)")


def parse_primitive(text: str) -> Primitive:
    for pattern, kind in PRIMITIVE_PATTERNS:
        match = pattern.fullmatch(text)
        if match:
            return Primitive(kind, int(match.group(1)))
    try:
        return Primitive(Kind(text))
    except ValueError:
        raise ParseError(f"unknown manifold {text!r}") from None


def parse_manifold(text: str) -> ManifoldId:
    """The inverse of str(ManifoldId): terms like `5*CP2bar` joined by ` # `."""
    terms = []
    for part in text.split("#"):
        match = TERM_PATTERN.fullmatch(part.strip())
        if match is None:
            raise ParseError(f"bad connected-sum term {part.strip()!r}")
        times, name = match.groups()
        try:
            terms.append((parse_primitive(name), int(times) if times else 1))
        except InvalidParameter as e:
            raise ParseError(str(e)) from None
    return ManifoldId.of(*terms)


def stripped_candidates(M: ManifoldId, b: int) -> tuple[ManifoldId, ...]:
    """
    Canonical X with canonicalize(X # b*CP2bar) = M: remove b copies of CP2bar,
    then undo the rewrites that one CP2bar makes possible.
    """
    counts = M.counts
    if b == 0:
        return (M,)
    if counts[CP2BAR] < b:
        return ()
    counts[CP2BAR] -= b
    primes = [p for p in counts if p.kind is Kind.L and counts[p]]
    found = set()
    for pairs in range(min(counts[CP2], counts[CP2BAR]) + 1):
        variant = Counter(counts)
        variant[CP2] -= pairs
        variant[CP2BAR] -= pairs
        variant[S2XS2] += pairs
        _add_prime_variants(variant, primes, found)
    return tuple(sorted(found, key=str))


def _add_prime_variants(counts, primes, found):
    if not primes:
        found.add(canonicalize_manifold(ManifoldId.from_counts(counts)))
        return
    first, rest = primes[0], primes[1:]
    for swapped in range(counts[first] + 1):
        variant = Counter(counts)
        variant[first] -= swapped
        variant[L_prime(first.n)] += swapped
        _add_prime_variants(variant, rest, found)
