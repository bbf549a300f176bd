# =============================================================================
# models/extremal.py
# =============================================================================
# Purpose:
# Query and result models for the exact extremal-function oracles.
#
# - FormationFamily: "all (r,s)-formations" as a single avoidance target,
#   optionally fat (r-tuple formations / r-fat matrix formations)
# - ExtremalMode: which extremal function is meant (ex_u, ex_o, ex)
# - ExtremalQuery / ExtremalResult: one oracle call and its certified answer
# - LinearityProbe / GeneralBoundResult: small reports built on top of it
# =============================================================================

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.matrix import Matrix01, MatrixPatterns
from models.sequence import PatternFamily, Sequence


class FormationFamily(BaseModel):
    """
    The family of all (r,s)-formations (or fat ones) used as a forbidden target.

    With `fat` set, sequence targets are the r-tuple (r,s)-formations and matrix
    targets are the r-fat permutation matrix formations.
    """
    model_config = ConfigDict(frozen=True)

    r: int = Field(ge=1)
    s: int = Field(ge=1)
    fat: bool = False

    @property
    def j(self) -> int:
        return self.r if self.fat else 1

    def symbol(self, matrix: bool) -> str:
        if matrix:
            return ("Gamma" if self.fat else "lambda") + f"_{{{self.r},{self.s}}}"
        return ("Phi" if self.fat else "zeta") + f"_{{{self.r},{self.s}}}"

    def __str__(self) -> str:
        kind = f"{self.r}-tuple " if self.fat else ""
        return f"all {kind}({self.r},{self.s})-formations"


class ExtremalMode(str, Enum):
    UNORDERED = "unordered"
    ORDERED = "ordered"
    MATRIX = "matrix"


class ExtremalQuery(BaseModel):
    model_config = ConfigDict(frozen=True)

    target: PatternFamily | MatrixPatterns | FormationFamily
    n: int = Field(ge=0)
    mode: ExtremalMode = ExtremalMode.UNORDERED

    @model_validator(mode="after")
    def _target_fits_mode(self) -> "ExtremalQuery":
        if self.mode is ExtremalMode.MATRIX and isinstance(self.target, PatternFamily):
            raise ValueError("matrix mode needs a matrix family or a formation family")
        if self.mode is not ExtremalMode.MATRIX and isinstance(self.target, MatrixPatterns):
            raise ValueError(f"{self.mode.value} mode needs a sequence family or a formation family")
        return self

    @property
    def is_matrix(self) -> bool:
        return self.mode is ExtremalMode.MATRIX

    @property
    def ordered(self) -> bool:
        return self.mode is ExtremalMode.ORDERED


class ExtremalResult(BaseModel):
    n: int

    # Maximum length (sequences) or maximum number of ones (matrices)
    value: int

    # An extremal object achieving `value`; None only when nothing of size >= 1 exists
    witness: Sequence | Matrix01 | None = None

    # Search nodes visited, summed over all subtrees
    nodes_explored: int = 0


class LinearityProbe(BaseModel):
    values: list[ExtremalResult]

    # value(n+1) - value(n) for consecutive probed n
    differences: list[int]

    # value(n+1) >= value(n) over the whole range
    monotone: bool

    # Largest first difference seen (a constant bound over the probed range)
    max_difference: int


class GeneralBoundResult(BaseModel):
    """ex_u(u, n) against zeta_{||u||, |u|-||u||+1}(n)."""
    holds: bool
    n: int
    r: int
    s: int
    lhs: ExtremalResult
    rhs: ExtremalResult
