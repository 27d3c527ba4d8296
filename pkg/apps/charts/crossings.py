from dataclasses import dataclass

from apps.common.exceptions import InvalidParameter, UnknownEdge
from apps.sl2z.words import GeneratorWord, Letter

from .charts import Chart


@dataclass(frozen=True)
class Crossing:
    edge_id: str
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidParameter(f"crossing sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True)
class CrossingSequence:
    """The edges a transverse loop crosses, in order, with the crossing signs."""

    crossings: tuple[Crossing, ...] = ()

    @classmethod
    def of(cls, *pairs) -> "CrossingSequence":
        return cls(tuple(Crossing(edge_id, sign) for edge_id, sign in pairs))

    def __len__(self):
        return len(self.crossings)

    def __iter__(self):
        return iter(self.crossings)


def intersection_word(chart: Chart, path: CrossingSequence) -> GeneratorWord:
    """The letter s_label^sign for every crossing along the path."""
    letters = []
    for crossing in path:
        edge = chart.edge(crossing.edge_id)
        if edge is None:
            raise UnknownEdge(f"the path crosses unknown edge {crossing.edge_id}")
        letters.append(Letter.of(edge.label, crossing.sign))
    return GeneratorWord(tuple(letters))
