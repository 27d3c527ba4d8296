import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from django.template.loader import render_to_string

from apps.common.exceptions import (
    BudgetExceeded,
    InvalidChart,
    InvalidMonodromyShape,
    InvalidParameter,
    MonodromyError,
    MoveOutOfRange,
    NotAdmissible,
    NotAFibrationOverSphere,
    NotCanonical,
    NotPositiveTwist,
    ParseError,
    UnknownEdge,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_VIOLATION = 3
EXIT_BUDGET = 4

INVALID_INPUT = (
    ParseError,
    NotPositiveTwist,
    InvalidParameter,
    MoveOutOfRange,
    InvalidChart,
    UnknownEdge,
    NotAdmissible,
    InvalidMonodromyShape,
    NotAFibrationOverSphere,
    NotCanonical,
)


def exit_status_for(error: MonodromyError) -> int:
    if isinstance(error, INVALID_INPUT):
        return EXIT_INVALID
    if isinstance(error, BudgetExceeded):
        return EXIT_BUDGET
    # InvariantViolation and anything else the domain raises
    return EXIT_VIOLATION


def format_value(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    return str(value)


class Report:
    """Human-readable lines followed by a `[result]` section of key=value lines."""

    def __init__(self):
        self.lines = []
        self.machine = []
        self.status = EXIT_OK
        self.failure = None

    def line(self, text: str = ""):
        self.lines.append(text)

    def result(self, key: str, value):
        self.machine.append((key, format_value(value)))

    def fail(self, status: int, message: str):
        # the first failure decides the exit status
        if self.status == EXIT_OK:
            self.status, self.failure = status, message

    def render(self) -> str:
        context = {"lines": self.lines, "machine": self.machine}
        return render_to_string("cli/report.txt", context).strip("\n") + "\n"


def parse_machine_section(output: str) -> dict[str, str]:
    machine = {}
    _, found, section = output.partition("[result]\n")
    if not found:
        return machine
    for line in section.splitlines():
        key, sep, value = line.partition("=")
        if sep:
            machine[key] = value
    return machine


def read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def write_text(path, text: str):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise InvalidParameter(f"cannot write {path}: {e.strerror}") from None


class ReportCommand(BaseCommand):
    """
    Base class of the monodromy commands. Subclasses fill a Report in
    `report()`; domain errors become CommandError with the matching exit
    status, and a report that recorded a failure is printed before the
    CommandError is raised.
    """

    requires_system_checks = []

    def report(self, report: Report, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        report = Report()
        try:
            self.report(report, **options)
        except MonodromyError as e:
            logger.debug("%s failed: %s", self.__module__.rsplit(".", 1)[-1], e)
            raise CommandError(str(e), returncode=exit_status_for(e)) from e
        self.stdout.write(report.render(), ending="")
        if report.status != EXIT_OK:
            raise CommandError(report.failure, returncode=report.status)
