import logging
import random
from dataclasses import dataclass
from enum import Enum

from django.conf import settings

from apps.common.exceptions import InvalidParameter, MoveOutOfRange, NotPositiveTwist
from apps.sl2z.matrices import IDENTITY, S1, S2, Sl2zElement, inverse, mul
from apps.sl2z.twists import is_positive_twist

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Factorization:
    """
    An ordered tuple (g_1, ..., g_n) of conjugates of s1: a Hurwitz system,
    or monodromy factorization. `+` concatenates and `* m` repeats, so
    Factorization.of(S1, S2) * 6 is (s1, s2)^6.
    """

    entries: tuple[Sl2zElement, ...] = ()

    def __post_init__(self):
        for index, entry in enumerate(self.entries, start=1):
            if is_positive_twist(entry) is None:
                raise NotPositiveTwist(index, entry)

    @classmethod
    def of(cls, *entries: Sl2zElement) -> "Factorization":
        return cls(tuple(entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def __add__(self, other: "Factorization") -> "Factorization":
        return Factorization(self.entries + other.entries)

    def __mul__(self, times: int) -> "Factorization":
        if times < 0:
            raise InvalidParameter(f"cannot repeat a factorization {times} times")
        return Factorization(self.entries * times)

    def __str__(self):
        return "(" + ", ".join(str(entry) for entry in self.entries) + ")"

    @property
    def height(self) -> int:
        return max((entry.height for entry in self.entries), default=0)

    def product(self) -> Sl2zElement:
        return product(self)


class MoveDirection(Enum):
    RIGHT = "right"
    LEFT = "left"

    @property
    def opposite(self) -> "MoveDirection":
        return MoveDirection.LEFT if self is MoveDirection.RIGHT else MoveDirection.RIGHT


@dataclass(frozen=True, slots=True)
class HurwitzMove:
    """An elementary transformation at positions (index, index + 1), 1-based."""

    index: int
    direction: MoveDirection

    def inverse(self) -> "HurwitzMove":
        return HurwitzMove(self.index, self.direction.opposite)

    def __str__(self):
        return f"{self.direction.value}@{self.index}"

    @classmethod
    def parse(cls, text: str) -> "HurwitzMove":
        direction, _, index = text.partition("@")
        return cls(int(index), MoveDirection(direction))


def product(F: Factorization) -> Sl2zElement:
    result = IDENTITY
    for entry in F:
        result = mul(result, entry)
    return result


def move_pair(first: Sl2zElement, second: Sl2zElement, direction: MoveDirection):
    """The image of one adjacent pair under a right or left move."""
    if direction is MoveDirection.RIGHT:
        return mul(mul(first, second), inverse(first)), first
    return second, mul(mul(inverse(second), first), second)


def hurwitz_move(F: Factorization, i: int, direction: MoveDirection) -> Factorization:
    """
    right: (g_i, g_i+1) -> (g_i g_i+1 g_i^-1, g_i)
    left:  (g_i, g_i+1) -> (g_i+1, g_i+1^-1 g_i g_i+1)
    """
    if not 1 <= i <= len(F) - 1:
        raise MoveOutOfRange(f"move index {i} outside 1..{len(F) - 1}")
    entries = list(F.entries)
    entries[i - 1], entries[i] = move_pair(entries[i - 1], entries[i], direction)
    return Factorization(tuple(entries))


def apply_moves(F: Factorization, moves) -> Factorization:
    for move in moves:
        F = hurwitz_move(F, move.index, move.direction)
    return F


def canonical_form(p: int, q: int, k: int) -> Factorization:
    """(s1, s2)^{6p+3q} . (s1)^k"""
    if p < 0 or q not in (0, 1) or k < 0:
        raise InvalidParameter(f"need p >= 0, q in {{0,1}}, k >= 0; got ({p},{q},{k})")
    return Factorization.of(S1, S2) * (6 * p + 3 * q) + Factorization.of(S1) * k


def _candidates(rng, slots):
    # one uniform draw, then every slot in a seeded order
    yield rng.choice(slots)
    yield from rng.sample(slots, len(slots))


def _fitting_move(rng, slots, entries, cap):
    for move in _candidates(rng, slots):
        pair = move_pair(entries[move.index - 1], entries[move.index], move.direction)
        if pair[0].height <= cap and pair[1].height <= cap:
            return move, pair
    return None, None


def _walk(F: Factorization, seed, steps: int, height_cap: int | None):
    if steps < 0:
        raise InvalidParameter(f"steps must be non-negative, got {steps}")
    if height_cap is None:
        height_cap = settings.MONODROMY["SCRAMBLE_HEIGHT_CAP"]
    if height_cap < 1:
        raise InvalidParameter(f"height cap must be at least 1, got {height_cap}")
    entries = list(F.entries)
    moves = []
    if len(F) < 2:
        return moves, entries

    cap = max(height_cap, F.height)
    rng = random.Random(seed)
    slots = [HurwitzMove(i, d) for i in range(1, len(F)) for d in (MoveDirection.RIGHT, MoveDirection.LEFT)]
    for _ in range(steps):
        move, pair = _fitting_move(rng, slots, entries, cap)
        if move is None:
            if not moves:
                logger.warning("no move keeps a factorization of length %s within height %s", len(F), cap)
                break
            # the state before the previous move was within the cap
            move = moves[-1].inverse()
            pair = move_pair(entries[move.index - 1], entries[move.index], move.direction)
        entries[move.index - 1], entries[move.index] = pair
        moves.append(move)
    return moves, entries


def random_moves(F: Factorization, seed, steps: int, height_cap: int | None = None) -> list[HurwitzMove]:
    """
    A seeded walk of `steps` valid moves on F that never creates an entry
    above `height_cap` (or above the largest entry of F, if that is larger).
    A drawn move that would is redrawn; when no move fits, the previous
    move is undone.
    """
    moves, _ = _walk(F, seed, steps, height_cap)
    return moves


def scramble(F: Factorization, seed, steps: int, height_cap: int | None = None) -> Factorization:
    _, entries = _walk(F, seed, steps, height_cap)
    return Factorization(tuple(entries))
