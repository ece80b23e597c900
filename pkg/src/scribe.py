"""
Harmonia Scribe
A utility class for rich console output of the CLI results.

Results go to stdout and are deterministic; the status spinner goes to stderr.
Exact values are printed unstyled on their own line so they can be parsed back.
"""
from typing import Iterable, Optional, Tuple

from pydantic import BaseModel
from rich.console import Console
from rich.status import Status
from rich.text import Text

from src.models.reports import FiberReport, FiberStatus, GroebnerReport, LieCheckReport

# Initialize rich consoles
console = Console(soft_wrap=True, highlight=False, emoji=False)
status_console = Console(stderr=True, highlight=False)


class Colors:
    """Color scheme for rich text output"""
    LABEL = "bright_magenta"  # names of quartics and derivations
    VALUE = "bright_green"  # exact values
    FORM = "bright_blue"  # forms and polynomials
    FAILURE = "bright_red"
    NOTE = "dim white"
    HIGHLIGHT = "bright_white"
    STATUS = "cyan1"


_STATUS_STYLES = {
    FiberStatus.COMPLETE: "bold bright_green",
    FiberStatus.PARTIAL: "bold gold3",
    FiberStatus.FAILED: "bold bright_red",
}


class Scribe:
    """
    The Scribe is responsible for all console output of the CLI.
    """

    _status = None

    @classmethod
    def status(cls, message: str, spinner: str = "dots") -> Status:
        """
        Create and display a status indicator with spinner on stderr.

        Returns:
            Status: A Rich Status object that can be used as a context manager
        """
        if cls._status is not None:
            cls._status.stop()
        status_text = Text()
        status_text.append("⚡ ", style="bright_yellow")
        status_text.append(message, style=Colors.STATUS)
        cls._status = Status(status_text, console=status_console, spinner=spinner, spinner_style="bright_cyan")
        return cls._status

    @staticmethod
    def value(text: str) -> None:
        """Print one exact result, unstyled."""
        console.print(text, markup=False)

    @staticmethod
    def json(report: BaseModel, indent: int) -> None:
        console.print(report.model_dump_json(indent=indent), markup=False)

    @staticmethod
    def failure(message: str) -> None:
        text = Text()
        text.append("✗ ", style=Colors.FAILURE)
        text.append(message, style=Colors.FAILURE)
        console.print(text)

    @staticmethod
    def labelled(rows: Iterable[Tuple[str, str]]) -> None:
        """Print "label: value" lines, labels padded to a common width."""
        rows = list(rows)
        width = max((len(label) for label, _ in rows), default=0)
        for label, value in rows:
            text = Text()
            text.append(label.ljust(width), style=Colors.LABEL)
            text.append(": ", style=Colors.NOTE)
            text.append(value, style=Colors.VALUE)
            console.print(text)

    @staticmethod
    def lie_check(report: LieCheckReport) -> None:
        Scribe.labelled(report.values.items())

    @staticmethod
    def groebner(report: GroebnerReport, generators: int) -> None:
        """Print the outcome of the Buchberger criterion."""
        text = Text()
        text.append(f"{generators} generators, {report.pairs} S-pairs: ", style=Colors.HIGHLIGHT)
        if report.passed:
            text.append("all reduce to 0", style=Colors.VALUE)
        else:
            text.append(f"{len(report.failures)} do not reduce to 0", style=Colors.FAILURE)
        console.print(text)
        for i, j in report.failures:
            Scribe.failure(f"S({i}, {j}) has a nonzero normal form")
        text = Text()
        text.append("initial ideal: ", style=Colors.NOTE)
        text.append(", ".join(report.initial_ideal), style=Colors.FORM)
        console.print(text)

    @staticmethod
    def fiber(report: FiberReport) -> None:
        """Print a fiber report: header, one line per point, then failures and notes."""
        header = Text()
        header.append("fiber over ", style=Colors.HIGHLIGHT)
        header.append(report.target, style=Colors.FORM)
        header.append(": degree ", style=Colors.HIGHLIGHT)
        header.append(_optional(report.degree), style=Colors.VALUE)
        header.append(", distinct points ", style=Colors.HIGHLIGHT)
        header.append(_optional(report.distinct_points), style=Colors.VALUE)
        header.append(", status ", style=Colors.HIGHLIGHT)
        header.append(report.status.value, style=_STATUS_STYLES[report.status])
        console.print(header)
        for point in report.points:
            line = Text()
            line.append(f"  [{', '.join(point.coords)}]", style=Colors.VALUE)
            line.append(f"  multiplicity {_optional(point.multiplicity)}", style=Colors.HIGHLIGHT)
            line.append("  reduced" if point.reduced else "  non-reduced", style=Colors.NOTE)
            line.append(f"  jacobian rank {_optional(point.jacobian_rank)}", style=Colors.NOTE)
            if point.name:
                line.append(f"  {point.name}", style=Colors.LABEL)
            line.append(f"  {point.quartic}", style=Colors.FORM)
            console.print(line)
        for failure in report.failures:
            Scribe.failure(failure)
        for note in report.notes:
            console.print(Text(f"  note: {note}", style=Colors.NOTE))


def _optional(value: Optional[int]) -> str:
    return "?" if value is None else str(value)
