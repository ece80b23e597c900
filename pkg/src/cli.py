"""
Harmonia CLI
Batch command-line front end: h_n, the invariants, the Gröbner replay and the
fiber verifications.

Exit codes: 0 on success, 1 when a verification fails, 2 on a usage error,
3 on an unexpected internal error.
"""
import functools
import logging
import sys
from typing import List, Optional, Sequence

import click

from src.engine.apolarity import harmonic, invariant_a, trilinear
from src.engine.fiber import d_fiber_check, fermat_basis, fermat_fiber
from src.engine.groebner import parse_poly, verify_groebner
from src.engine.jacobian import factorize, format_factorization, kappa, rho_report
from src.engine.lie_action import lie_values
from src.engine.parser import parse_form
from src.engine.quartics import QUARTIC_NAMES, named_quartic
from src.errors import FormError, HarmoniaError, UnknownQuartic
from src.models.forms import TernaryForm, VariableFamily
from src.models.reports import FiberStatus, LieCheckReport, ValueReport, exact
from src.scribe import Scribe
from src.settings import settings

# Initialize logger
logger = logging.getLogger(__name__)

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

EXIT_VERIFICATION_FAILED = 1
EXIT_INTERNAL_ERROR = 3

form_option = click.option("--form", "form_text", default=None, help="Form text, e.g. \"x^4+y^4+z^4\"")
named_option = click.option("--named", default=None, help=f"Named quartic: {', '.join(QUARTIC_NAMES)}")
degree_option = click.option("--n", "degree", default=None, type=click.IntRange(min=0),
                             help="Degree of the form (default: inferred from the form)")
json_option = click.option("--json", "as_json", is_flag=True, help="Print the report as JSON")
threads_option = click.option("--threads", default=settings.threads, type=click.IntRange(min=1),
                              show_default=True, help="Worker threads for S-pair reduction")


def handle_errors(command):
    """Map library errors onto the exit-code contract."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except UnknownQuartic as e:
            raise click.UsageError(e.args[0])
        except FormError as e:
            raise click.UsageError(str(e))
        except HarmoniaError as e:
            logger.error(f"{command.__name__}: {e}")
            Scribe.failure(str(e))
            click.get_current_context().exit(EXIT_VERIFICATION_FAILED)
        except (click.ClickException, click.exceptions.Exit):
            raise
        except Exception as e:
            logger.error(f"Unexpected error in {command.__name__}: {e}", exc_info=True)
            Scribe.failure(f"internal error: {e}")
            click.get_current_context().exit(EXIT_INTERNAL_ERROR)
    return wrapper


def load_form(form_text: Optional[str], named: Optional[str], degree: Optional[int] = None) -> TernaryForm:
    """The primal form given by --form or --named."""
    if (form_text is None) == (named is None):
        raise click.UsageError("Give exactly one of --form and --named")
    if named is not None:
        q = named_quartic(named).form
        if q.family is not VariableFamily.PRIMAL:
            raise click.UsageError(f"{named} is a dual quartic; this command takes a primal form")
        if degree is not None and degree != q.degree:
            raise click.UsageError(f"{named} has degree {q.degree}, not {degree}")
        return q
    return parse_form(form_text, VariableFamily.PRIMAL, degree)


def emit(report, as_json: bool, text_lines: Sequence[str]) -> None:
    if as_json:
        Scribe.json(report, settings.json_indent)
    else:
        for line in text_lines:
            Scribe.value(line)


@click.group(context_settings=dict(help_option_names=["-h", "--help"]))
@click.option("-l", "--log-level", default=settings.log_level, show_default=True,
              type=click.Choice(LOG_LEVELS, case_sensitive=False), help="Logging level (logs go to stderr)")
def cli(log_level):
    """Harmonia: the harmonic contravariant of ternary forms and its fibers."""
    level = getattr(logging, log_level.upper())
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    logging.getLogger().setLevel(level)


@cli.command("harmonic")
@form_option
@named_option
@degree_option
@json_option
@handle_errors
def harmonic_command(form_text, named, degree, as_json):
    """Print h_n(q) as a form in u, v, w."""
    q = load_form(form_text, named, degree)
    h = harmonic(q)
    report = ValueReport(command="harmonic", inputs=[str(q)], n=q.degree, value=str(h))
    emit(report, as_json, [report.value])


@cli.command("trilinear")
@click.option("--form", "form_texts", multiple=True, help="Give exactly three times")
@json_option
@handle_errors
def trilinear_command(form_texts, as_json):
    """Print t_n(q1, q2, q3)."""
    if len(form_texts) != 3:
        raise click.UsageError(f"trilinear takes --form exactly three times, got {len(form_texts)}")
    forms = [parse_form(text) for text in form_texts]
    value = trilinear(*forms)
    report = ValueReport(command="trilinear", inputs=[str(q) for q in forms], n=forms[0].degree, value=exact(value))
    emit(report, as_json, [report.value])


@cli.command("invariant-a")
@form_option
@named_option
@degree_option
@json_option
@handle_errors
def invariant_a_command(form_text, named, degree, as_json):
    """Print the cubic invariant A_n(q) = t_n(q, q, q)."""
    q = load_form(form_text, named, degree)
    report = ValueReport(command="invariant-a", inputs=[str(q)], n=q.degree, value=exact(invariant_a(q)))
    emit(report, as_json, [report.value])


@cli.command("rho")
@form_option
@named_option
@degree_option
@json_option
@handle_errors
def rho_command(form_text, named, degree, as_json):
    """Print ρ_n(q) factored, then as an exact rational."""
    q = load_form(form_text, named, degree)
    report = rho_report(q)
    factored = format_factorization({int(p): e for p, e in report.factorization.items()}) \
        if report.factorization is not None else "0"
    emit(report, as_json, [factored, report.rho])


@cli.command("kappa")
@click.option("--n", "degree", required=True, type=click.IntRange(min=0), help="The degree n")
@json_option
@handle_errors
def kappa_command(degree, as_json):
    """Print κ_n factored, then as an integer."""
    value = kappa(degree)
    factors = factorize(value)
    report = ValueReport(command="kappa", n=degree, value=str(value),
                         factorization={str(p): e for p, e in factors.items()})
    emit(report, as_json, [format_factorization(factors), report.value])


@cli.command("lie-check")
@form_option
@named_option
@degree_option
@json_option
@click.pass_context
@handle_errors
def lie_check_command(ctx, form_text, named, degree, as_json):
    """Evaluate ⟨h_n(q), g·q⟩ over the sl_3 basis; every value must be 0."""
    q = load_form(form_text, named, degree)
    report = LieCheckReport(form=str(q), values={label: exact(v) for label, v in lie_values(q)})
    if as_json:
        Scribe.json(report, settings.json_indent)
    else:
        Scribe.lie_check(report)
    if not report.passed:
        ctx.exit(EXIT_VERIFICATION_FAILED)


@cli.command("gb-verify")
@click.option("--form", "poly_texts", multiple=True,
              help="Polynomial in r, s1, s2, s3, t1, t2, t3 (repeatable; default: the Fermat fiber basis)")
@threads_option
@json_option
@click.pass_context
@handle_errors
def gb_verify_command(ctx, poly_texts, threads, as_json):
    """Check Buchberger's criterion on a generator list."""
    generators = [parse_poly(text) for text in poly_texts] if poly_texts else fermat_basis()
    report = verify_groebner(generators, threads=threads)
    if as_json:
        Scribe.json(report, settings.json_indent)
    else:
        Scribe.groebner(report, len(generators))
    if not report.passed:
        ctx.exit(EXIT_VERIFICATION_FAILED)


@cli.command("fiber-fermat")
@threads_option
@json_option
@click.pass_context
@handle_errors
def fiber_fermat_command(ctx, threads, as_json):
    """Verify the fiber of h_4 over the dual Fermat quartic."""
    with Scribe.status("Verifying the Fermat fiber"):
        report = fermat_fiber(threads=threads)
    if as_json:
        Scribe.json(report, settings.json_indent)
    else:
        Scribe.fiber(report)
    if report.status is FiberStatus.FAILED:
        ctx.exit(EXIT_VERIFICATION_FAILED)


@cli.command("fiber-d")
@click.option("--deadline", default=settings.deadline, type=click.IntRange(min=0), show_default=True,
              help="Seconds allowed for the full solve; 0 only checks Q")
@json_option
@click.pass_context
@handle_errors
def fiber_d_command(ctx, deadline, as_json):
    """Check the fiber of h_4 over D; the full solve runs only with a deadline."""
    with Scribe.status("Checking the fiber over D"):
        report = d_fiber_check(deadline=deadline)
    if as_json:
        Scribe.json(report, settings.json_indent)
    else:
        Scribe.fiber(report)
    if report.status is FiberStatus.FAILED:
        ctx.exit(EXIT_VERIFICATION_FAILED)


@cli.command("named")
@named_option
@handle_errors
def named_command(named):
    """List the named quartics, or print one of them."""
    if named is not None:
        Scribe.value(str(named_quartic(named).form))
        return
    Scribe.labelled((name, str(named_quartic(name).form)) for name in QUARTIC_NAMES)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI and return its exit code instead of raising SystemExit.
    """
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = cli.main(args=args, prog_name="harmonia", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        return 1
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    return result if isinstance(result, int) else 0
