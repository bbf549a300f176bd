# =============================================================================
# models/sequence.py
# =============================================================================
# Purpose:
# Sequence and pattern-family models.
#
# A Sequence is a finite word over positive-integer letters. The same value
# is read with unordered semantics (any injective relabeling) or ordered
# semantics (order-preserving relabeling) depending on the family it sits in.
# Engines work on the raw `letters` tuple; the model is the validated
# boundary between parsing/JSON and the algorithms.
# =============================================================================

from enum import Enum
from typing import Callable

from pydantic import BaseModel, ConfigDict, Field, field_validator

from utilities.errors import InvalidPatternError


class Sequence(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    letters: tuple[int, ...] = ()

    @field_validator("letters")
    @classmethod
    def _letters_positive(cls, letters: tuple[int, ...]) -> tuple[int, ...]:
        for index, letter in enumerate(letters):
            if letter < 1:
                raise ValueError(f"letter at position {index + 1} is {letter}; letters must be >= 1")
        return letters

    @classmethod
    def of(cls, *letters: int) -> "Sequence":
        return cls(letters=tuple(letters))

    @property
    def length(self) -> int:
        """|S|"""
        return len(self.letters)

    @property
    def distinct(self) -> int:
        """||S||"""
        return len(set(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(str(letter) for letter in self.letters)


class Semantics(str, Enum):
    UNORDERED = "unordered"
    ORDERED = "ordered"


class PatternFamily(BaseModel):
    """
    A non-empty family of forbidden sequences.

    A host contains the family iff it contains at least one member.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    members: tuple[Sequence, ...] = Field(min_length=1)
    semantics: Semantics = Semantics.UNORDERED

    @classmethod
    def of(cls, *members: Sequence | tuple[int, ...], ordered: bool = False) -> "PatternFamily":
        seqs = tuple(m if isinstance(m, Sequence) else Sequence(letters=tuple(m)) for m in members)
        return cls(members=seqs, semantics=Semantics.ORDERED if ordered else Semantics.UNORDERED)

    @property
    def ordered(self) -> bool:
        return self.semantics is Semantics.ORDERED

    def tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(m.letters for m in self.members)

    @property
    def max_distinct(self) -> int:
        """r*, the largest distinct-letter count among the members."""
        return max(m.distinct for m in self.members)

    def shared_distinct(self) -> int:
        """
        Return the common ||v|| of the members.

        Raises:
            InvalidPatternError: if members disagree (extremal queries need a single sparsity).
        """
        counts = sorted({m.distinct for m in self.members})
        if len(counts) != 1:
            raise InvalidPatternError(
                f"family members have different distinct-letter counts {counts}; "
                "extremal functions are defined only for families sharing ||v||"
            )
        return counts[0]

    def map(self, fn: Callable[[Sequence], Sequence]) -> "PatternFamily":
        return PatternFamily(members=tuple(fn(m) for m in self.members), semantics=self.semantics)

    def __str__(self) -> str:
        return "{" + ", ".join(str(m) for m in self.members) + "}"
