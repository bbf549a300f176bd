# =============================================================================
# app/dispatch.py
# =============================================================================
# Purpose:
# One entry point for every command: a command name plus plain JSON-style
# arguments in, a timed CommandResult out. The CLI builds the arguments from
# its options; the JSON-RPC server takes them straight from the request.
#
# Literals (sequences, matrices, binary patterns) arrive as strings and are
# parsed here, so both surfaces report the same parse errors.
# =============================================================================

import logging
import time
from typing import Any, Callable

from pydantic import BaseModel, Field, ValidationError

from engines.formations import (
    binary_formation,
    count_fat_formations,
    count_formations,
    enumerate_fat_formations,
    enumerate_formations,
    inflate,
)
from engines.fwengine import dfw, fw, pair_family
from engines.matcore import (
    binary_matrix_formation,
    chi,
    chi_inv,
    find_matrix_embedding,
    matrix_formation,
    red_matrix,
)
from engines.mfwengine import dmfw, family_from_sequences, mfw, pair_matrix_family
from engines.oracle import ex
from engines.seqcore import find_embedding, red
from engines.verify import CHECKS, VerifyParams, verify_all
from models.answer import FwAnswer
from models.extremal import ExtremalMode, ExtremalQuery, FormationFamily
from models.matrix import Matrix01, MatrixFamily, MatrixPatterns
from models.report import CommandResult
from models.sequence import PatternFamily
from utilities.config import Settings
from utilities.errors import InvalidPatternError
from utilities.parsing import parse_binary_pattern, parse_matrix, parse_sequence

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# Argument models
# -----------------------------------------------------------------------------

class PairArgs(BaseModel):
    """The pair {(1..k)^t, (k..1)^t} or {A_{k,t}, B_{k,t}}."""
    k: int = Field(ge=1)
    t: int = Field(ge=1)


class WidthArgs(BaseModel):
    # Sequence literals (for mfw/dmfw they are turned into matrices through chi)
    patterns: list[str] = Field(default_factory=list)

    # Matrix literals, rows separated by newlines or ';'
    matrices: list[str] = Field(default_factory=list)

    ordered: bool = False
    certificate: bool = False
    pair: PairArgs | None = None

    # Letter / column multiplicity of the pair members
    fat: int | None = Field(default=None, ge=1)


class ContainsArgs(BaseModel):
    host: str
    pattern: str
    mode: ExtremalMode = ExtremalMode.UNORDERED
    certificate: bool = False


class LiteralArgs(BaseModel):
    pattern: str
    matrix: bool = False


class FormationArgs(BaseModel):
    r: int = Field(ge=1)
    s: int = Field(ge=0)
    binary: str | None = None
    fat: int | None = Field(default=None, ge=1)
    enumerate: bool = False
    matrix: bool = False


class ExtremalArgs(BaseModel):
    n: int = Field(ge=0)
    mode: ExtremalMode = ExtremalMode.UNORDERED
    family: list[str] = Field(default_factory=list)
    pair: PairArgs | None = None

    # "all (r,s)-formations" as the target; fat makes it r-tuple / r-fat
    formation: dict[str, int] | None = None
    fat: bool = False


class VerifyArgs(BaseModel):
    checks: list[str] = Field(default_factory=list)
    params: VerifyParams = Field(default_factory=VerifyParams)


# -----------------------------------------------------------------------------
# Helpers
# -----------------------------------------------------------------------------

def _validated(model: type[BaseModel], arguments: dict[str, Any]) -> Any:
    try:
        return model.model_validate(arguments)
    except ValidationError as e:
        raise InvalidPatternError(_first_error(e)) from None


def _first_error(e: ValidationError) -> str:
    error = e.errors()[0]
    where = ".".join(str(part) for part in error.get("loc", ()))
    return f"{where}: {error['msg']}" if where else error["msg"]


def _matrix_family(members: list[Matrix01] | tuple[Matrix01, ...]) -> MatrixFamily:
    try:
        return MatrixFamily(members=tuple(members))
    except ValidationError as e:
        raise InvalidPatternError(_first_error(e)) from None


def _sequence_family(args: WidthArgs) -> PatternFamily:
    if args.pair is not None:
        return pair_family(args.pair.k, args.pair.t, ordered=True, j=args.fat or 1)
    if not args.patterns:
        raise InvalidPatternError("give at least one pattern or a pair")
    return PatternFamily.of(*(parse_sequence(p) for p in args.patterns), ordered=args.ordered)


def _matrix_width_family(args: WidthArgs) -> MatrixFamily:
    if args.pair is not None:
        return pair_matrix_family(args.pair.k, args.pair.t, fat_j=args.fat)
    members = [parse_matrix(m) for m in args.matrices]
    if args.patterns:
        members.extend(family_from_sequences([parse_sequence(p) for p in args.patterns]).members)
    if not members:
        raise InvalidPatternError("give at least one matrix, pattern or a pair")
    return _matrix_family(members)


def _answer_certificates(answer: FwAnswer) -> dict[str, Any]:
    return {
        "host_size": answer.host_size,
        "avoider": str(answer.avoider) if answer.avoider is not None else None,
        "embeddings": {word: c.model_dump(mode="json") for word, c in answer.embeddings.items()},
        "symmetric": answer.symmetric,
        "patterns_tested": answer.patterns_tested,
        "cross_checked": answer.cross_checked,
    }


def _width_result(command: str, family: PatternFamily | MatrixFamily, answer: FwAnswer,
                  certificate: bool) -> CommandResult:
    if isinstance(family, PatternFamily):
        inputs = {"family": [str(m) for m in family.members], "semantics": family.semantics.value}
    else:
        inputs = {"family": [m.to_lines() for m in family.members]}
    return CommandResult(
        command=command,
        inputs=inputs,
        value=answer.width,
        certificates=_answer_certificates(answer) if certificate else None,
    )


# -----------------------------------------------------------------------------
# Commands
# -----------------------------------------------------------------------------

def _fw(arguments: dict, settings: Settings) -> CommandResult:
    """Formation width of a sequence family."""
    args = _validated(WidthArgs, arguments)
    family = _sequence_family(args)
    return _width_result("fw", family, fw(family, settings), args.certificate)


def _dfw(arguments: dict, settings: Settings) -> CommandResult:
    """Doubled formation width (fw of the reduced family)."""
    args = _validated(WidthArgs, arguments)
    family = _sequence_family(args)
    return _width_result("dfw", family, dfw(family, settings), args.certificate)


def _mfw(arguments: dict, settings: Settings) -> CommandResult:
    """Matrix formation width, cross-checked through chi."""
    args = _validated(WidthArgs, arguments)
    family = _matrix_width_family(args)
    return _width_result("mfw", family, mfw(family, settings), args.certificate)


def _dmfw(arguments: dict, settings: Settings) -> CommandResult:
    """Doubled matrix formation width (mfw of the reduced family)."""
    args = _validated(WidthArgs, arguments)
    family = _matrix_width_family(args)
    return _width_result("dmfw", family, dmfw(family, settings), args.certificate)


def _contains(arguments: dict, settings: Settings) -> CommandResult:
    """Unordered, ordered or matrix containment with an optional embedding."""
    args = _validated(ContainsArgs, arguments)
    if args.mode is ExtremalMode.MATRIX:
        host, pattern = parse_matrix(args.host), parse_matrix(args.pattern)
        embedding = find_matrix_embedding(host, pattern)
        inputs = {"host": host.to_lines(), "pattern": pattern.to_lines(), "mode": args.mode.value}
    else:
        host, pattern = parse_sequence(args.host, allow_empty=True), parse_sequence(args.pattern, allow_empty=True)
        embedding = find_embedding(host, pattern, ordered=args.mode is ExtremalMode.ORDERED)
        inputs = {"host": str(host), "pattern": str(pattern), "mode": args.mode.value}
    certificates = None
    if args.certificate and embedding is not None:
        certificates = embedding.model_dump(mode="json")
    return CommandResult(command="contains", inputs=inputs, value=embedding is not None,
                         certificates=certificates)


def _red(arguments: dict, settings: Settings) -> CommandResult:
    """Collapse adjacent repeats of a sequence or same-row columns of a matrix."""
    args = _validated(LiteralArgs, arguments)
    if args.matrix:
        m = parse_matrix(args.pattern)
        return CommandResult(command="red", inputs={"matrix": m.to_lines()}, value=red_matrix(m).to_lines())
    s = parse_sequence(args.pattern)
    return CommandResult(command="red", inputs={"sequence": str(s)}, value=str(red(s)))


def _chi(arguments: dict, settings: Settings) -> CommandResult:
    """0-1 matrix of a sequence over 1..m."""
    args = _validated(LiteralArgs, arguments)
    s = parse_sequence(args.pattern)
    return CommandResult(command="chi", inputs={"sequence": str(s)}, value=chi(s).to_lines())


def _chi_inv(arguments: dict, settings: Settings) -> CommandResult:
    """Sequence of a matrix with one 1 per column."""
    args = _validated(LiteralArgs, arguments)
    m = parse_matrix(args.pattern)
    return CommandResult(command="chi-inv", inputs={"matrix": m.to_lines()}, value=str(chi_inv(m)))


def _formation(arguments: dict, settings: Settings) -> CommandResult:
    """Count, build or enumerate (r,s)-formations."""
    args = _validated(FormationArgs, arguments)
    j = args.fat or 1
    inputs: dict[str, Any] = {"r": args.r, "s": args.s, "fat": j}

    if args.binary is not None:
        pattern = parse_binary_pattern(args.binary)
        inputs["binary"] = str(pattern)
        if args.matrix:
            value: Any = binary_matrix_formation(args.r, pattern, fat_B=j).to_lines()
        elif j > 1:
            value = str(inflate(pattern, args.r, j))
        else:
            value = str(binary_formation(args.r, pattern))
        return CommandResult(command="formation", inputs=inputs, value=value)

    if args.matrix:
        # B-fat matrices repeat whole columns, so there is one per plain formation
        inputs["matrix"] = True
        if args.enumerate:
            formations = enumerate_formations(args.r, args.s, settings.enumeration_cap, settings.seed_order)
            inputs["order"] = settings.seed_order.value
            return CommandResult(command="formation", inputs=inputs, value=[
                ";".join(matrix_formation(args.r, f.blocks, fat_B=j).to_lines()) for f in formations
            ])
        return CommandResult(command="formation", inputs=inputs, value=count_formations(args.r, args.s))

    if args.enumerate:
        formations = enumerate_fat_formations(args.r, args.s, j, settings.enumeration_cap, settings.seed_order)
        inputs["order"] = settings.seed_order.value
        return CommandResult(command="formation", inputs=inputs, value=[str(f) for f in formations])

    return CommandResult(command="formation", inputs=inputs, value=count_fat_formations(args.r, args.s, j))


def _extremal_target(args: ExtremalArgs) -> PatternFamily | MatrixPatterns | FormationFamily:
    if args.formation is not None:
        try:
            return FormationFamily(r=args.formation.get("r", 0), s=args.formation.get("s", 0), fat=args.fat)
        except ValidationError as e:
            raise InvalidPatternError(_first_error(e)) from None
    if args.mode is ExtremalMode.MATRIX:
        if args.pair is not None:
            return pair_matrix_family(args.pair.k, args.pair.t)
        if not args.family:
            raise InvalidPatternError("give at least one matrix, a pair or a formation family")
        return MatrixPatterns(members=tuple(parse_matrix(m) for m in args.family))
    if args.pair is not None:
        return pair_family(args.pair.k, args.pair.t, ordered=args.mode is ExtremalMode.ORDERED)
    if not args.family:
        raise InvalidPatternError("give at least one pattern, a pair or a formation family")
    return PatternFamily.of(*(parse_sequence(p) for p in args.family), ordered=args.mode is ExtremalMode.ORDERED)


def _extremal(arguments: dict, settings: Settings) -> CommandResult:
    """Exact extremal function at one n, with a witness."""
    args = _validated(ExtremalArgs, arguments)
    target = _extremal_target(args)
    result = ex(ExtremalQuery(target=target, n=args.n, mode=args.mode), settings)

    if isinstance(target, FormationFamily):
        described: Any = target.symbol(args.mode is ExtremalMode.MATRIX)
    elif isinstance(target, PatternFamily):
        described = [str(m) for m in target.members]
    else:
        described = [m.to_lines() for m in target.members]

    witness = result.witness
    if isinstance(witness, Matrix01):
        witness_out: Any = witness.to_lines()
    else:
        witness_out = str(witness) if witness is not None else None
    return CommandResult(
        command="extremal",
        inputs={"target": described, "n": args.n, "mode": args.mode.value},
        value=result.value,
        certificates={"witness": witness_out, "nodes_explored": result.nodes_explored},
    )


def _verify(arguments: dict, settings: Settings) -> CommandResult:
    """Run checks from the verification suite."""
    args = _validated(VerifyArgs, arguments)
    unknown = [c for c in args.checks if c not in CHECKS]
    if unknown:
        raise InvalidPatternError(f"unknown check(s) {', '.join(unknown)}; known checks: {', '.join(CHECKS)}")
    report = verify_all(args.params, settings, args.checks or None)
    return CommandResult(
        command="verify",
        inputs={"checks": args.checks or list(CHECKS), **args.params.model_dump(exclude_none=True)},
        value={"overall": report.overall, **report.summary()},
        certificates=[c.model_dump(mode="json") for c in report.checks],
    )


COMMANDS: dict[str, Callable[[dict, Settings], CommandResult]] = {
    "fw": _fw,
    "dfw": _dfw,
    "mfw": _mfw,
    "dmfw": _dmfw,
    "contains": _contains,
    "red": _red,
    "chi": _chi,
    "chi-inv": _chi_inv,
    "formation": _formation,
    "extremal": _extremal,
    "verify": _verify,
}


def dispatch(command: str, arguments: dict[str, Any] | None = None,
             settings: Settings | None = None) -> CommandResult:
    """
    Run one command and time it.

    Args:
        command: one of COMMANDS
        arguments: the command's arguments as plain JSON values
        settings: guards and worker count (defaults when None)

    Returns:
        CommandResult: inputs, value, optional certificates and elapsed_ms

    Raises:
        InvalidPatternError: unknown command or invalid arguments
        PatternParseError: a literal could not be parsed
        FormwidthError: anything the engines raise
    """
    handler = COMMANDS.get(command)
    if handler is None:
        raise InvalidPatternError(f"unknown command {command!r}; known commands: {', '.join(COMMANDS)}")
    settings = settings or Settings()
    logger.info(f"dispatch {command} {arguments or {}}")
    started = time.perf_counter()
    result = handler(arguments or {}, settings)
    result.elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
    return result
