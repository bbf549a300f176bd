# =============================================================================
# models/formation.py
# =============================================================================
# Purpose:
# Models for binary patterns, (r,s)-formations and j-tuple (fat) formations.
#
# - BinaryPattern: word over {A, D}; A = ascending block 1..r, D = r..1
# - Formation: s permutations of {1..r}
# - FatFormation: s j-fat permutations (any arrangement with j copies of each letter)
# =============================================================================

from collections import Counter
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from utilities.errors import PatternParseError


class Block(str, Enum):
    ASC = "A"
    DESC = "D"

    def swapped(self) -> "Block":
        return Block.DESC if self is Block.ASC else Block.ASC


class BinaryPattern(BaseModel):
    model_config = ConfigDict(frozen=True)

    blocks: tuple[Block, ...] = ()

    @classmethod
    def from_text(cls, text: str) -> "BinaryPattern":
        """Parse a word over {A, D} (case-insensitive); '' or '-' is the empty pattern."""
        word = text.strip()
        if word == "-":
            word = ""
        blocks = []
        for position, char in enumerate(word):
            upper = char.upper()
            if upper not in ("A", "D"):
                raise PatternParseError(f"binary pattern may only contain A or D, got {char!r}", text, position)
            blocks.append(Block(upper))
        return cls(blocks=tuple(blocks))

    @property
    def length(self) -> int:
        return len(self.blocks)

    @property
    def ascents(self) -> int:
        return sum(1 for b in self.blocks if b is Block.ASC)

    @property
    def descents(self) -> int:
        return self.length - self.ascents

    def swapped(self) -> "BinaryPattern":
        return BinaryPattern(blocks=tuple(b.swapped() for b in self.blocks))

    def __str__(self) -> str:
        return "".join(b.value for b in self.blocks)


class Formation(BaseModel):
    model_config = ConfigDict(frozen=True)

    r: int = Field(ge=1)
    s: int = Field(ge=0)
    blocks: tuple[tuple[int, ...], ...]

    @model_validator(mode="after")
    def _check_blocks(self) -> "Formation":
        if len(self.blocks) != self.s:
            raise ValueError(f"expected {self.s} blocks, got {len(self.blocks)}")
        symbols = tuple(range(1, self.r + 1))
        for index, block in enumerate(self.blocks):
            if tuple(sorted(block)) != symbols:
                raise ValueError(f"block {index + 1} is not a permutation of 1..{self.r}")
        return self

    def letters(self) -> tuple[int, ...]:
        return tuple(x for block in self.blocks for x in block)

    def __str__(self) -> str:
        return " | ".join(" ".join(map(str, b)) for b in self.blocks)


class FatFormation(BaseModel):
    model_config = ConfigDict(frozen=True)

    r: int = Field(ge=1)
    s: int = Field(ge=0)
    j: int = Field(ge=1)
    blocks: tuple[tuple[int, ...], ...]

    @model_validator(mode="after")
    def _check_blocks(self) -> "FatFormation":
        if len(self.blocks) != self.s:
            raise ValueError(f"expected {self.s} blocks, got {len(self.blocks)}")
        expected = {letter: self.j for letter in range(1, self.r + 1)}
        for index, block in enumerate(self.blocks):
            if dict(Counter(block)) != expected:
                raise ValueError(f"block {index + 1} is not a {self.j}-fat permutation of 1..{self.r}")
        return self

    def letters(self) -> tuple[int, ...]:
        return tuple(x for block in self.blocks for x in block)

    def __str__(self) -> str:
        return " | ".join(" ".join(map(str, b)) for b in self.blocks)
