import logging
from dataclasses import dataclass
from io import StringIO

from django.core.management import call_command, get_commands, load_command_class
from django.core.management.base import CommandError

from .reporting import EXIT_OK, EXIT_USAGE, parse_machine_section

logger = logging.getLogger(__name__)

COMMANDS = {
    "normalize": "certificate (p, q, k) and canonical form of a factorization",
    "equiv": "decide Hurwitz equivalence of two factorizations",
    "orbit": "bounded orbit search for explicit moves to the canonical form",
    "classify": "total space of a genus-one SBLF descriptor",
    "chart": "validate, build and read charts (validate | canonical | word)",
    "sweep": "scramble canonical forms and recover their certificates",
    "scramble": "apply seeded random Hurwitz moves to a factorization",
    "subwords": "subwords of the boundary words that evaluate to the identity",
    "agree": "compare the equivalence decision with orbit connectivity",
    "integrality": "integrality of the certificate on random factorizations",
}


@dataclass(frozen=True)
class CommandResult:
    exit_status: int
    output: str
    errors: str = ""

    @property
    def machine(self) -> dict[str, str]:
        """The key=value lines of the `[result]` section."""
        return parse_machine_section(self.output)


def usage() -> str:
    width = max(len(name) for name in COMMANDS)
    lines = ["usage: mono <command> [options]", "", "commands:"]
    lines += [f"  {name.ljust(width)}  {summary}" for name, summary in COMMANDS.items()]
    return "\n".join(lines) + "\n"


def command_usage(name: str) -> str:
    command = load_command_class(get_commands()[name], name)
    return command.create_parser("mono", name).format_usage()


def cli_dispatch(argv) -> CommandResult:
    argv = list(argv)
    if not argv:
        return CommandResult(EXIT_USAGE, "", usage())
    if argv[0] in ("-h", "--help", "help"):
        return CommandResult(EXIT_OK, usage())

    name, args = argv[0], argv[1:]
    if name not in COMMANDS:
        return CommandResult(EXIT_USAGE, "", f"unknown command {name!r}\n\n{usage()}")

    stdout, stderr = StringIO(), StringIO()
    try:
        call_command(name, *args, stdout=stdout, stderr=stderr)
        status = EXIT_OK
    except CommandError as e:
        status = e.returncode
        stderr.write(f"{e}\n")
        if status == EXIT_USAGE:
            stderr.write(command_usage(name))
    except SystemExit as e:
        # --help prints the command's help and exits 0; argparse errors exit 2
        status = EXIT_USAGE if e.code else EXIT_OK
    logger.debug("%s exited with %s", " ".join(argv), status)
    return CommandResult(status, stdout.getvalue(), stderr.getvalue())
