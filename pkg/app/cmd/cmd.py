# =============================================================================
# app/cmd/cmd.py
# =============================================================================
# Purpose:
# Command-line interface for formwidth.
#
# Every subcommand turns its options into plain arguments and hands them to
# app.dispatch, so the CLI and the JSON-RPC server run the same code path.
#
# - stdout carries results only (text, or one JSON object with --json)
# - logs go to stderr (WARNING by default, INFO with --verbose)
# - exit codes: 0 success, 1 computational failure or guard, 2 usage error
#   (bad options, unparsable literals, invalid patterns or parameters)
# =============================================================================

import json
import logging
import re
import sys
from typing import Any

import click

from app.dispatch import dispatch
from engines.verify import CHECKS, VerifyParams
from models.report import CommandResult, ErrorReport
from utilities.config import EnumerationOrder, load_settings
from utilities.errors import FormwidthError, InvalidPatternError, PatternParseError
from utilities.parsing import parse_assignments

logger = logging.getLogger(__name__)

MODES = ["unordered", "ordered", "matrix"]


# -----------------------------------------------------------------------------
# 🖨️ Output
# -----------------------------------------------------------------------------

def _text(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "\n".join(_text(v) for v in value)
    if isinstance(value, dict):
        return "\n".join(f"{k}: {_text(v)}" for k, v in value.items())
    return "-" if value is None else str(value)


def _emit(ctx: click.Context, result: CommandResult) -> None:
    if ctx.obj["json"]:
        click.echo(result.to_json())
        return
    click.echo(_text(result.value))
    if result.certificates is not None:
        click.echo(json.dumps(result.certificates, indent=2))


def _run(ctx: click.Context, command: str, arguments: dict[str, Any]) -> CommandResult:
    """Dispatch, print and map errors to exit codes."""
    try:
        result = dispatch(command, arguments, ctx.obj["settings"])
    except (PatternParseError, InvalidPatternError) as e:
        parse_error = isinstance(e, PatternParseError)
        if ctx.obj["json"]:
            click.echo(ErrorReport(command=command, error=type(e).__name__, message=str(e),
                                   position=e.position if parse_error else None)
                       .model_dump_json(exclude_none=True))
        raise click.UsageError(e.annotated() if parse_error else str(e), ctx) from None
    except FormwidthError as e:
        logger.debug("command failed", exc_info=True)
        if ctx.obj["json"]:
            click.echo(ErrorReport(command=command, error=type(e).__name__,
                                   message=str(e)).model_dump_json())
        click.echo(f"error: {e}", err=True)
        ctx.exit(1)
    _emit(ctx, result)
    return result


def _pair(values: tuple[str, str] | None) -> dict[str, int] | None:
    if not values:
        return None
    try:
        pair = parse_assignments(values)
    except PatternParseError as e:
        raise click.BadParameter(e.annotated(), param_hint="--pair-identity") from None
    if set(pair) != {"k", "t"}:
        raise click.BadParameter("expected k=<int> t=<int>", param_hint="--pair-identity")
    return pair


def _read_matrices(files: tuple) -> list[str]:
    """Matrices in a file are separated by blank lines."""
    matrices = []
    for handle in files:
        matrices.extend(chunk for chunk in re.split(r"\n\s*\n", handle.read()) if chunk.strip())
    return matrices


# -----------------------------------------------------------------------------
# 🧭 @click.group(): global options shared by every subcommand
# -----------------------------------------------------------------------------

@click.group()
@click.option("--json", "as_json", is_flag=True, help="Print one JSON object per command on stdout")
# ^ One {command, inputs, value, certificates?, elapsed_ms} object; errors become an ErrorReport
@click.option("--parallel", type=click.IntRange(min=1), default=None, help="Worker processes for the engines")
# ^ Results never depend on it; FORMWIDTH_PARALLEL when omitted
@click.option("--guard", type=click.IntRange(min=1), default=None, help="Enumeration cap (default 10^7)")
# ^ Exhaustive enumerations larger than this are refused before they start
@click.option("--seed-order", type=click.Choice([o.value for o in EnumerationOrder]), default=None,
              help="Enumeration order used by exhaustive checks")
# ^ lex or revlex; changes which counterexample is reported first, never a verdict
@click.option("--verbose", "-v", is_flag=True, help="Log search progress to stderr")
# ^ INFO instead of WARNING; stdout stays reserved for results
@click.pass_context
def cli(ctx: click.Context, as_json: bool, parallel: int | None, guard: int | None,
        seed_order: str | None, verbose: bool):
    """Formation widths, containment and exact extremal functions."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json
    ctx.obj["settings"] = load_settings(
        parallel=parallel,
        enumeration_cap=guard,
        seed_order=EnumerationOrder(seed_order) if seed_order else None,
    )


# -----------------------------------------------------------------------------
# 📏 Widths: fw, dfw, mfw, dmfw
# -----------------------------------------------------------------------------

def _sequence_width_command(name: str, help_text: str):
    @cli.command(name=name, help=help_text)
    @click.argument("patterns", nargs=-1)
    @click.option("--ordered", is_flag=True, help="Ordered containment (letter order matters)")
    @click.option("--certificate", is_flag=True, help="Include the avoider and every embedding")
    @click.option("--pair-identity", nargs=2, default=None, metavar="k=K t=T",
                  help="Use the pair {(1..k)^t, (k..1)^t} (ordered)")
    @click.option("--fat", type=click.IntRange(min=1), default=None, help="Repeat every letter of the pair J times")
    @click.pass_context
    def command(ctx, patterns, ordered, certificate, pair_identity, fat):
        _run(ctx, name, {
            "patterns": list(patterns),
            "ordered": ordered,
            "certificate": certificate,
            "pair": _pair(pair_identity),
            "fat": fat,
        })
    return command


def _matrix_width_command(name: str, help_text: str):
    @cli.command(name=name, help=help_text)
    @click.argument("matrices", nargs=-1)
    @click.option("--file", "files", type=click.File("r"), multiple=True,
                  help="Read matrices from a file (blank line between matrices)")
    @click.option("--sequence", "sequences", multiple=True, help="Add chi of a sequence as a member")
    @click.option("--certificate", is_flag=True, help="Include the avoider and every embedding")
    @click.option("--pair-identity", nargs=2, default=None, metavar="k=K t=T",
                  help="Use the pair {A_{k,t}, B_{k,t}}")
    @click.option("--fat", type=click.IntRange(min=1), default=None, help="Repeat every column of the pair J times")
    @click.pass_context
    def command(ctx, matrices, files, sequences, certificate, pair_identity, fat):
        _run(ctx, name, {
            "matrices": list(matrices) + _read_matrices(files),
            "patterns": list(sequences),
            "certificate": certificate,
            "pair": _pair(pair_identity),
            "fat": fat,
        })
    return command


fw_command = _sequence_width_command("fw", "Formation width of a family of sequences.")
dfw_command = _sequence_width_command("dfw", "Doubled formation width, computed as fw of red().")
mfw_command = _matrix_width_command("mfw", "Matrix formation width (rows ';'-separated, e.g. 10;01).")
dmfw_command = _matrix_width_command("dmfw", "Doubled matrix formation width, computed as mfw of red().")


# -----------------------------------------------------------------------------
# 🧱 Primitives: contains, red, chi, chi-inv, formation, extremal
# -----------------------------------------------------------------------------

@cli.command()
@click.argument("host")
@click.argument("pattern")
@click.option("--mode", type=click.Choice(MODES), default="unordered", show_default=True)
@click.option("--certificate", is_flag=True, help="Include the embedding")
@click.pass_context
def contains(ctx, host, pattern, mode, certificate):
    """Does HOST contain PATTERN?"""
    _run(ctx, "contains", {"host": host, "pattern": pattern, "mode": mode, "certificate": certificate})


@cli.command()
@click.argument("pattern")
@click.option("--matrix", is_flag=True, help="PATTERN is a matrix literal")
@click.pass_context
def red(ctx, pattern, matrix):
    """Collapse adjacent repeated letters (or same-row columns)."""
    _run(ctx, "red", {"pattern": pattern, "matrix": matrix})


@cli.command()
@click.argument("pattern")
@click.pass_context
def chi(ctx, pattern):
    """Matrix of a sequence over 1..m: column c has its one in row s[c]."""
    _run(ctx, "chi", {"pattern": pattern})


@cli.command(name="chi-inv")
@click.argument("matrix")
@click.pass_context
def chi_inv(ctx, matrix):
    """Sequence of a matrix with one 1 per column."""
    _run(ctx, "chi-inv", {"pattern": matrix})


@cli.command()
@click.argument("r", type=click.IntRange(min=1))
@click.argument("s", type=click.IntRange(min=0))
@click.option("--binary", default=None, help="Build the binary formation of an A/D word")
@click.option("--fat", type=click.IntRange(min=1), default=None, help="j-tuple (or B-fat) blocks")
@click.option("--enumerate", "enumerate_", is_flag=True, help="List every formation")
@click.option("--matrix", is_flag=True, help="Build the permutation matrix formation")
# ^ With --fat the matrix repeats every column, so counts and listings follow the plain formations
@click.pass_context
def formation(ctx, r, s, binary, fat, enumerate_, matrix):
    """Build, count or enumerate (r,s)-formations."""
    _run(ctx, "formation", {"r": r, "s": s, "binary": binary, "fat": fat,
                            "enumerate": enumerate_, "matrix": matrix})


@cli.command()
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--mode", type=click.Choice(MODES), default="unordered", show_default=True)
@click.option("--family", multiple=True, help="A forbidden sequence or matrix (repeatable)")
@click.option("--pair-identity", nargs=2, default=None, metavar="k=K t=T", help="Forbid the pair")
@click.option("--formation", "formation_rs", nargs=2, type=int, default=None, metavar="R S",
              help="Forbid every (r,s)-formation (zeta / lambda)")
# ^ zeta for sequences, lambda with --mode matrix
@click.option("--fat", is_flag=True, help="With --formation: r-tuple / r-fat formations (Phi / Gamma)")
@click.pass_context
def extremal(ctx, n, mode, family, pair_identity, formation_rs, fat):
    """Exact extremal function at a single n, with a witness."""
    _run(ctx, "extremal", {
        "n": n,
        "mode": mode,
        "family": list(family),
        "pair": _pair(pair_identity),
        "formation": {"r": formation_rs[0], "s": formation_rs[1]} if formation_rs else None,
        "fat": fat,
    })


# -----------------------------------------------------------------------------
# ✅ Verification
# -----------------------------------------------------------------------------

@cli.command()
@click.option("--check", "checks", type=click.Choice(list(CHECKS)), multiple=True, help="Run one check (repeatable)")
@click.option("--all", "run_all", is_flag=True, help="Run every check")
# ^ Exit code 1 when any row fails; every row is still printed
@click.option("--k", "ks", type=click.IntRange(min=1), multiple=True, help="k values for the pair checks")
@click.option("--t", "ts", type=click.IntRange(min=1), multiple=True, help="t values for the pair checks")
@click.option("--r", type=click.IntRange(min=1), default=None)
# ^ With --s: a single (r,s) for es-lemma; above r* it re-runs the binary-soundness failures
@click.option("--s", type=click.IntRange(min=1), default=None)
@click.option("--n", "n", type=click.IntRange(min=1), default=None, help="Largest n for extremal checks")
@click.option("--max-length", type=click.IntRange(min=1), default=None,
              help="Longest sequence in the ordered width sweep")
@click.pass_context
def verify(ctx, checks, run_all, ks, ts, r, s, n, max_length):
    """Replay the known widths and bounds at small parameters."""
    if not checks and not run_all:
        raise click.UsageError("give --check ID or --all", ctx)
    params = VerifyParams(**{
        key: value for key, value in {
            "ks": list(ks), "ts": list(ts), "r": r, "s": s, "n": n, "max_length": max_length,
        }.items() if value
    })
    arguments = {"checks": [] if run_all else list(checks), "params": params.model_dump()}

    if ctx.obj["json"]:
        result = _run(ctx, "verify", arguments)
    else:
        try:
            result = dispatch("verify", arguments, ctx.obj["settings"])
        except InvalidPatternError as e:
            raise click.UsageError(str(e), ctx) from None
        except FormwidthError as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(1)
        for outcome in result.certificates:
            status = "PASS" if outcome["passed"] else "FAIL"
            click.echo(f"{status} {outcome['check_id']}  [{outcome['locus']}]")
            click.echo(f"     {outcome['parameters']}  expected={outcome['expected']}  "
                       f"computed={outcome['computed']}  ({outcome['elapsed_ms']:.1f} ms)")
            if outcome.get("note"):
                click.echo(f"     note: {outcome['note']}")
        click.echo(f"{result.value['passed']} passed, {result.value['failed']} failed")

    if not result.value["overall"]:
        ctx.exit(1)


# -----------------------------------------------------------------------------
# 🚀 Server
# -----------------------------------------------------------------------------

@cli.command()
@click.option("--host", default="localhost", help="Host to bind the server to")
@click.option("--port", default=10020, help="Port number for the server")
@click.pass_context
def serve(ctx, host, port):
    """Run the JSON-RPC server."""
    from server.job_manager import InMemoryJobManager
    from server.server import FormwidthServer, service_card

    server = FormwidthServer(
        host=host,
        port=port,
        service_card=service_card(f"http://{host}:{port}/"),
        job_manager=InMemoryJobManager(ctx.obj["settings"]),
    )
    server.start()


if __name__ == "__main__":
    cli()
