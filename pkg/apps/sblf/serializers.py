import re
from pathlib import Path

from rest_framework import serializers

from apps.common.exceptions import ParseError
from apps.factorization.factorizations import Factorization
from apps.factorization.serializers import (
    content_lines,
    parse_factorization,
    parse_inline_factorization,
)

from .descriptors import PaoGluing, Parity, SblfDescriptor, TorusGluing

TORUS_PATTERN = re.compile(r"torus\s+r=(\d+)")
PAO_PATTERN = re.compile(r"pao\s+n=(\d+)\s+parity=(even|odd)")


class DescriptorSerializer(serializers.Serializer):
    round = serializers.ChoiceField(choices=["yes", "no"])
    factorization = serializers.CharField(allow_blank=True, required=False, default="")
    twist = serializers.ChoiceField(choices=["id", "twisted"], required=False, default="id")
    m = serializers.IntegerField(required=False, default=0)
    lower = serializers.CharField(required=False, allow_blank=True, default="")

    def validate_factorization(self, value):
        value = value.strip()
        try:
            if not value:
                return Factorization()
            if value.startswith("[["):
                return parse_inline_factorization(value)
            path = Path(self.context.get("base_dir") or ".") / value
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as e:
                raise serializers.ValidationError(f"cannot read {value}: {e.strerror}")
            return parse_factorization(text)
        except ParseError as e:
            raise serializers.ValidationError(f"factorization {value}: {e}")

    def validate_lower(self, value):
        value = " ".join(value.split())
        if not value:
            return None
        match = TORUS_PATTERN.fullmatch(value)
        if match:
            return TorusGluing(int(match.group(1)))
        match = PAO_PATTERN.fullmatch(value)
        if match:
            return PaoGluing(int(match.group(1)), Parity(match.group(2)))
        raise serializers.ValidationError(
            "expected 'torus r=<int>' or 'pao n=<int> parity=even|odd'"
        )

    def validate(self, attrs):
        has_round = attrs["round"] == "yes"
        lower = attrs["lower"]
        if has_round and lower is not None and not isinstance(lower, PaoGluing):
            raise serializers.ValidationError({"lower": "a round fibration takes a pao lower gluing"})
        if not has_round and len(attrs["factorization"]) == 0 and not isinstance(lower, TorusGluing):
            raise serializers.ValidationError({"lower": "a torus bundle needs 'lower=torus r=<int>'"})
        return attrs

    def create(self, validated_data):
        return SblfDescriptor(
            has_round=validated_data["round"] == "yes",
            higher_factorization=validated_data["factorization"],
            higher_gluing_twist=validated_data["twist"] == "twisted",
            section_framing=validated_data["m"],
            lower_gluing=validated_data["lower"],
        )


def parse_descriptor(text: str, base_dir=None) -> SblfDescriptor:
    """
    key=value lines: round=yes|no, factorization=<path or inline matrices
    separated by ';'>, twist=id|twisted, m=<int>, and lower=torus r=<int> or
    lower=pao n=<int> parity=even|odd. Paths are relative to `base_dir`.
    """
    fields, lines = {}, {}
    for number, line in content_lines(text):
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ParseError(f"expected key=value, got {line!r}", line=number)
        if key not in DescriptorSerializer().fields:
            raise ParseError(f"unknown key {key!r}", line=number)
        if key in fields:
            raise ParseError(f"duplicate key {key!r}", line=number)
        fields[key], lines[key] = value.strip(), number

    serializer = DescriptorSerializer(data=fields, context={"base_dir": base_dir})
    if not serializer.is_valid():
        key, messages = next(iter(serializer.errors.items()))
        raise ParseError(f"{key}: {messages[0]}", line=lines.get(key))
    return serializer.save()


def serialize_descriptor(d: SblfDescriptor) -> str:
    lines = [
        f"round={'yes' if d.has_round else 'no'}",
        "factorization=" + ";".join(str(entry) for entry in d.higher_factorization),
        f"twist={'twisted' if d.higher_gluing_twist else 'id'}",
        f"m={d.section_framing}",
    ]
    if d.lower_gluing is not None:
        lines.append(f"lower={d.lower_gluing}")
    return "\n".join(lines) + "\n"
