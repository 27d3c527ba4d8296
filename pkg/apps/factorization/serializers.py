from rest_framework import serializers

from apps.common.exceptions import ParseError
from apps.sl2z.matrices import parse_matrix
from apps.sl2z.twists import is_positive_twist

from .factorizations import Factorization, HurwitzMove


class MatrixField(serializers.Field):
    """A matrix in the text form [[a,b],[c,d]]."""

    default_error_messages = {
        "invalid": "{message}",
    }

    def to_internal_value(self, data):
        try:
            return parse_matrix(str(data))
        except ParseError as e:
            self.fail("invalid", message=str(e))

    def to_representation(self, value):
        return str(value)


class FactorizationSerializer(serializers.Serializer):
    entries = serializers.ListField(child=MatrixField(), allow_empty=True)

    def validate_entries(self, value):
        errors = {}
        for index, entry in enumerate(value):
            if is_positive_twist(entry) is None:
                errors[index] = [f"{entry} is not conjugate to s1"]
        if errors:
            raise serializers.ValidationError(errors)
        return value

    def create(self, validated_data):
        return Factorization(tuple(validated_data["entries"]))


def content_lines(text: str):
    """(line number, stripped line) for lines that are neither blank nor comments."""
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    for number, line in enumerate(text.split("\n"), start=1):
        line = line.strip()
        if line and not line.startswith("#"):
            yield number, line


def parse_factorization(text: str) -> Factorization:
    """
    One matrix [[a,b],[c,d]] per line in factorization order; `#` starts a
    comment line.
    """
    numbered = list(content_lines(text))
    serializer = FactorizationSerializer(data={"entries": [line for _, line in numbered]})
    if not serializer.is_valid():
        index, messages = next(iter(serializer.errors["entries"].items()))
        line_number, line = numbered[index]
        message = messages[0]
        if "not conjugate to s1" in message:
            raise ParseError(
                f"entry {index + 1} {line} is not conjugate to s1", line=line_number
            )
        raise ParseError(message, line=line_number)
    return serializer.save()


def serialize_factorization(F: Factorization, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.extend(FactorizationSerializer(F).data["entries"])
    return "\n".join(lines) + "\n"


def parse_inline_factorization(text: str) -> Factorization:
    """Matrices separated by `;` on one line, as used in descriptor files."""
    return parse_factorization("\n".join(part for part in text.split(";")))


def parse_moves(text: str) -> tuple[HurwitzMove, ...]:
    moves = []
    for number, line in content_lines(text):
        for token in line.split():
            try:
                moves.append(HurwitzMove.parse(token))
            except ValueError:
                raise ParseError(f"bad move record {token!r}", line=number) from None
    return tuple(moves)
