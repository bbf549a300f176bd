# =============================================================================
# models/matrix.py
# =============================================================================
# Purpose:
# 0-1 matrix and matrix-family models.
#
# Matrix01 stores dimensions plus the set of one-cells (1-indexed, kept as a
# sorted tuple so JSON output is stable). MatrixFamily additionally enforces
# "no columns with multiple ones", which mfw/dmfw require.
# =============================================================================

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator


class Matrix01(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    rows: int = Field(ge=0)
    cols: int = Field(ge=0)
    ones: tuple[tuple[int, int], ...] = ()

    @field_validator("ones")
    @classmethod
    def _sorted_unique(cls, ones: tuple[tuple[int, int], ...]) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(set(ones)))

    @model_validator(mode="after")
    def _within_bounds(self) -> "Matrix01":
        for row, col in self.ones:
            if not (1 <= row <= self.rows and 1 <= col <= self.cols):
                raise ValueError(f"cell ({row}, {col}) outside a {self.rows}x{self.cols} matrix")
        return self

    # Derived indexes, filled once after validation
    _cell_set: frozenset = PrivateAttr(default=frozenset())
    _column_rows: tuple = PrivateAttr(default=())
    _row_counts: tuple = PrivateAttr(default=())

    def model_post_init(self, __context) -> None:
        per_col: list[list[int]] = [[] for _ in range(self.cols)]
        counts = [0] * self.rows
        for row, col in self.ones:
            if 1 <= row <= self.rows and 1 <= col <= self.cols:
                per_col[col - 1].append(row)
                counts[row - 1] += 1
        self._cell_set = frozenset(self.ones)
        self._column_rows = tuple(tuple(sorted(rows)) for rows in per_col)
        self._row_counts = tuple(counts)

    @classmethod
    def from_cells(cls, rows: int, cols: int, cells) -> "Matrix01":
        return cls(rows=rows, cols=cols, ones=tuple(cells))

    @property
    def cell_set(self) -> frozenset[tuple[int, int]]:
        return self._cell_set

    @property
    def column_rows(self) -> tuple[tuple[int, ...], ...]:
        """Rows holding a one, per column (index 0 is column 1)."""
        return self._column_rows

    @property
    def row_counts(self) -> tuple[int, ...]:
        """Number of ones per row (index 0 is row 1)."""
        return self._row_counts

    @property
    def weight(self) -> int:
        return len(self.ones)

    def one_per_column(self) -> bool:
        return all(len(rows) == 1 for rows in self.column_rows)

    def to_lines(self) -> list[str]:
        cells = self.cell_set
        return [
            "".join("1" if (row, col) in cells else "0" for col in range(1, self.cols + 1))
            for row in range(1, self.rows + 1)
        ]

    def __str__(self) -> str:
        return "\n".join(self.to_lines())


class MatrixPatterns(BaseModel):
    """Non-empty family of arbitrary 0-1 matrix patterns (extremal queries accept these)."""
    model_config = ConfigDict(frozen=True)

    members: tuple[Matrix01, ...] = Field(min_length=1)

    @classmethod
    def of(cls, *members: Matrix01):
        return cls(members=tuple(members))

    @property
    def max_rows(self) -> int:
        return max(m.rows for m in self.members)


class MatrixFamily(MatrixPatterns):
    """Non-empty family of 0-1 matrices, each with exactly one 1 per column."""

    @field_validator("members")
    @classmethod
    def _one_per_column(cls, members: tuple[Matrix01, ...]) -> tuple[Matrix01, ...]:
        for index, member in enumerate(members):
            if not member.one_per_column():
                raise ValueError(
                    f"member {index + 1} has a column without exactly one 1; "
                    "mfw is defined only for matrices with one 1 per column"
                )
        return members
