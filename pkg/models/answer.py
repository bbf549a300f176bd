# =============================================================================
# models/answer.py
# =============================================================================
# Purpose:
# Result models of the width engines, with machine-checkable certificates.
#
# - SequenceEmbedding / MatrixEmbedding: explicit containment witnesses
# - Certificate: which family member embeds, and how
# - FwAnswer: width plus avoider at s-1 and one certificate per pattern at s
# - DirectCheckResult / EsLemmaResult: exhaustive-enumeration verdicts
# =============================================================================

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from models.formation import BinaryPattern, FatFormation, Formation


class SequenceEmbedding(BaseModel):
    model_config = ConfigDict(frozen=True)

    # 1-indexed host positions, strictly increasing, one per pattern entry
    positions: tuple[int, ...]

    # pattern letter → host letter (injective; strictly increasing when ordered)
    letter_map: dict[int, int]


class MatrixEmbedding(BaseModel):
    model_config = ConfigDict(frozen=True)

    # host row chosen for pattern row i (index i-1), strictly increasing
    rows: tuple[int, ...]

    # host column chosen for pattern column j (index j-1), strictly increasing
    cols: tuple[int, ...]


class Certificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    member: int                                   # 0-based index into the family
    embedding: SequenceEmbedding | MatrixEmbedding


class WidthKind(str, Enum):
    FW = "fw"
    DFW = "dfw"
    MFW = "mfw"
    DMFW = "dmfw"


class FwAnswer(BaseModel):
    kind: WidthKind = WidthKind.FW

    # s*, the formation width
    width: int = Field(ge=0)

    # r*, the number of letters (rows) of the binary formations that were probed
    host_size: int = Field(ge=0)

    # Binary pattern of length s*-1 whose formation avoids every member (None when s* = 0)
    avoider: BinaryPattern | None = None

    # For every binary pattern of length s* (keyed by its A/D word), a containment certificate
    embeddings: dict[str, Certificate] = Field(default_factory=dict)

    # Whether Asc/Desc symmetry pruning was used
    symmetric: bool = False

    # Number of binary patterns whose formation was actually tested
    patterns_tested: int = 0

    # True when the matrix answer was recomputed through the chi correspondence and agreed
    cross_checked: bool = False


class DirectCheckResult(BaseModel):
    """Verdict of the literal definition at a fixed r, s, j."""
    holds: bool
    r: int
    s: int
    j: int
    formations_checked: int
    counterexample: FatFormation | None = None


class EsLemmaResult(BaseModel):
    """Exhaustive check that every (gamma, s)-formation contains a binary (r, s)-formation."""
    holds: bool
    r: int
    s: int
    gamma: int
    formations_checked: int
    ordered: bool = False
    counterexample: Formation | None = None
