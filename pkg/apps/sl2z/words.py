import logging
from dataclasses import dataclass
from enum import Enum

from django.conf import settings

from apps.common.exceptions import BudgetExceeded, InvalidParameter, ParseError

from .matrices import IDENTITY, S1, S2, Sl2zElement, inverse, mul

logger = logging.getLogger(__name__)


class Letter(Enum):
    S1 = "s1"
    S1_INV = "s1^-1"
    S2 = "s2"
    S2_INV = "s2^-1"

    @property
    def generator(self) -> int:
        return 1 if self in (Letter.S1, Letter.S1_INV) else 2

    @property
    def sign(self) -> int:
        return 1 if self in (Letter.S1, Letter.S2) else -1

    @property
    def matrix(self) -> Sl2zElement:
        return _LETTER_MATRICES[self]

    @classmethod
    def of(cls, generator: int, sign: int) -> "Letter":
        if generator not in (1, 2) or sign not in (1, -1):
            raise InvalidParameter(f"no letter s{generator}^{sign}")
        return {
            (1, 1): cls.S1,
            (1, -1): cls.S1_INV,
            (2, 1): cls.S2,
            (2, -1): cls.S2_INV,
        }[(generator, sign)]

    def __str__(self):
        return self.value


_LETTER_MATRICES = {
    Letter.S1: S1,
    Letter.S1_INV: inverse(S1),
    Letter.S2: S2,
    Letter.S2_INV: inverse(S2),
}


@dataclass(frozen=True, slots=True)
class GeneratorWord:
    letters: tuple[Letter, ...] = ()

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        return GeneratorWord(self.letters + other.letters)

    def __mul__(self, times: int) -> "GeneratorWord":
        return GeneratorWord(self.letters * times)

    def __str__(self):
        return " ".join(str(letter) for letter in self.letters)

    @classmethod
    def parse(cls, text: str) -> "GeneratorWord":
        letters = []
        for token in text.split():
            try:
                letters.append(Letter(token))
            except ValueError:
                raise ParseError(f"unknown letter {token!r}") from None
        return cls(tuple(letters))


def eval_word(word: GeneratorWord) -> Sl2zElement:
    result = IDENTITY
    for letter in word:
        result = mul(result, letter.matrix)
    return result


@dataclass(frozen=True)
class SubwordScanReport:
    word: GeneratorWord
    subwords_checked: int
    # distinct letter sequences whose product is the identity
    identity_subwords: tuple[GeneratorWord, ...]

    @property
    def only_empty(self) -> bool:
        return self.identity_subwords == (GeneratorWord(),)


def boundary_word(q: int, k: int) -> GeneratorWord:
    """The word (s1 s2)^{3q} s1^k."""
    return GeneratorWord((Letter.S1, Letter.S2)) * (3 * q) + GeneratorWord((Letter.S1,)) * k


def subword_identity_scan(q: int, k: int, limit: int | None = None) -> SubwordScanReport:
    """
    Delete letters of (s1 s2)^{3q} s1^k at arbitrary positions in every possible
    way and collect the resulting subwords that evaluate to the identity.
    """
    if q not in (0, 1) or k < 0:
        raise InvalidParameter(f"need q in {{0,1}} and k >= 0, got q={q}, k={k}")
    if limit is None:
        limit = settings.MONODROMY["SUBWORD_SCAN_LIMIT"]
    word = boundary_word(q, k)
    if len(word) > limit:
        raise BudgetExceeded(
            f"word of length {len(word)} exceeds the subword scan limit {limit}"
        )

    letters = word.letters
    found = set()
    checked = 0
    # depth-first over keep/drop choices, carrying the running product
    stack = [(0, IDENTITY, ())]
    while stack:
        position, product, kept = stack.pop()
        if position == len(letters):
            checked += 1
            if product == IDENTITY:
                found.add(kept)
            continue
        letter = letters[position]
        stack.append((position + 1, product, kept))
        stack.append((position + 1, mul(product, letter.matrix), kept + (letter,)))

    identity_subwords = tuple(
        GeneratorWord(kept)
        for kept in sorted(found, key=lambda kept: (len(kept), [letter.value for letter in kept]))
    )
    logger.debug(
        "subword scan q=%s k=%s: %s subwords, %s evaluate to the identity",
        q, k, checked, len(identity_subwords),
    )
    return SubwordScanReport(word, checked, identity_subwords)
