# =============================================================================
# engines/matcore.py
# =============================================================================
# Purpose:
# 0-1 matrix primitives: containment with row/column certificates, the chi
# correspondence between sequences and one-per-column matrices, matrix red(),
# reflections, and builders for identity concatenations and permutation
# matrix formations.
#
# B-fat permutation matrices have a fixed shape: r rows, B*r columns, one 1
# per column, obtained by repeating every column of an r x r permutation
# matrix B times side by side.
# =============================================================================

import logging
from bisect import bisect_right
from itertools import combinations
from typing import Iterable

from models.answer import MatrixEmbedding
from models.formation import BinaryPattern, Block
from models.matrix import Matrix01
from models.sequence import Sequence
from utilities.errors import InvalidPatternError

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# Containment
# -----------------------------------------------------------------------------

def find_matrix_embedding(host: Matrix01, pattern: Matrix01) -> MatrixEmbedding | None:
    """
    Strictly increasing row and column selections under which the host has a
    one wherever the pattern does, or None.

    Pattern columns are matched left to right. A pattern row gets its host row
    the first time one of its ones is placed; rows that stay empty are filled
    in at the end, which the row-gap constraints always leave room for.
    """
    pr, pc, hr, hc = pattern.rows, pattern.cols, host.rows, host.cols
    if pr > hr or pc > hc:
        return None

    cells = host.cell_set
    host_cols = host.column_rows
    host_row_counts = host.row_counts
    pat_cols = pattern.column_rows
    pat_row_counts = pattern.row_counts
    assigned = [0] * (pr + 1)            # pattern row -> host row, 0 = unassigned
    chosen_cols: list[int] = []

    def fits(i: int, h: int) -> bool:
        if h < i or hr - h < pr - i:
            return False
        if host_row_counts[h - 1] < pat_row_counts[i - 1]:
            return False
        for q in range(1, pr + 1):
            rq = assigned[q]
            if not rq:
                continue
            if q < i and h - rq < i - q:
                return False
            if q > i and rq - h < q - i:
                return False
        return True

    def assign(new_rows: list[int], k: int, col: int, c: int) -> bool:
        if k == len(new_rows):
            chosen_cols.append(col)
            if place(c + 1, col + 1):
                return True
            chosen_cols.pop()
            return False
        i = new_rows[k]
        for h in host_cols[col - 1]:
            if fits(i, h):
                assigned[i] = h
                if assign(new_rows, k + 1, col, c):
                    return True
                assigned[i] = 0
        return False

    def place(c: int, start: int) -> bool:
        if c > pc:
            return True
        if pc - c > hc - start:
            return False
        rows = pat_cols[c - 1]
        if not rows:
            chosen_cols.append(start)
            if place(c + 1, start + 1):
                return True
            chosen_cols.pop()
            return False

        new_rows = [i for i in rows if not assigned[i]]
        for col in range(start, hc - (pc - c) + 1):
            if any((assigned[i], col) not in cells for i in rows if assigned[i]):
                continue
            if not new_rows:
                # rows fixed: the leftmost matching column dominates the others
                chosen_cols.append(col)
                if place(c + 1, col + 1):
                    return True
                chosen_cols.pop()
                return False
            if assign(new_rows, 0, col, c):
                return True
        return False

    if not place(1, 1):
        return None

    previous = 0
    rows_out = []
    for i in range(1, pr + 1):
        previous = assigned[i] or previous + 1
        rows_out.append(previous)
    return MatrixEmbedding(rows=tuple(rows_out), cols=tuple(chosen_cols))


def contains_matrix(host: Matrix01, pattern: Matrix01) -> bool:
    return find_matrix_embedding(host, pattern) is not None


def replay_matrix_embedding(host: Matrix01, pattern: Matrix01, embedding: MatrixEmbedding) -> bool:
    """Check a row/column certificate independently of the search."""
    rows, cols = embedding.rows, embedding.cols
    if len(rows) != pattern.rows or len(cols) != pattern.cols:
        return False
    if any(not 1 <= r <= host.rows for r in rows) or any(not 1 <= c <= host.cols for c in cols):
        return False
    if any(a >= b for a, b in zip(rows, rows[1:])) or any(a >= b for a, b in zip(cols, cols[1:])):
        return False
    cells = host.cell_set
    return all((rows[i - 1], cols[j - 1]) in cells for i, j in pattern.ones)


# -----------------------------------------------------------------------------
# chi correspondence
# -----------------------------------------------------------------------------

def chi_letters(letters: tuple[int, ...], rows: int | None = None) -> Matrix01:
    rows = max(letters, default=0) if rows is None else rows
    return Matrix01(rows=rows, cols=len(letters),
                    ones=tuple((x, c) for c, x in enumerate(letters, start=1)))


def chi(s: Sequence) -> Matrix01:
    """Column c has its single one in row s[c]; letters must be exactly 1..||s||."""
    present = sorted(set(s.letters))
    if present != list(range(1, len(present) + 1)):
        raise InvalidPatternError(
            f"chi needs letters 1..{len(present)}, got {present} (normalize the sequence first)"
        )
    return chi_letters(s.letters)


def chi_inv(m: Matrix01) -> Sequence:
    """Row of the single one of each column, left to right."""
    letters = []
    for c, rows in enumerate(m.column_rows, start=1):
        if len(rows) != 1:
            raise InvalidPatternError(f"column {c} has {len(rows)} ones; chi_inv needs exactly one")
        letters.append(rows[0])
    return Sequence(letters=tuple(letters))


def red_matrix(m: Matrix01) -> Matrix01:
    """Collapse every run of adjacent columns with their one in the same row."""
    letters = chi_inv(m).letters
    reduced = tuple(x for i, x in enumerate(letters) if i == 0 or letters[i - 1] != x)
    return chi_letters(reduced, rows=m.rows)


# -----------------------------------------------------------------------------
# Reflections
# -----------------------------------------------------------------------------

def reflect(m: Matrix01) -> Matrix01:
    """Reverse the column order."""
    return Matrix01(rows=m.rows, cols=m.cols, ones=tuple((r, m.cols + 1 - c) for r, c in m.ones))


def flip_rows(m: Matrix01) -> Matrix01:
    """Reverse the row order."""
    return Matrix01(rows=m.rows, cols=m.cols, ones=tuple((m.rows + 1 - r, c) for r, c in m.ones))


# -----------------------------------------------------------------------------
# Builders
# -----------------------------------------------------------------------------

def _fatten(letters: Iterable[int], j: int) -> tuple[int, ...]:
    if j < 1:
        raise InvalidPatternError(f"fat multiplicity must be >= 1, got {j}")
    return tuple(x for x in letters for _ in range(j))


def build_identity_concat(k: int, t: int, reflected: bool = False, fat_j: int | None = None) -> Matrix01:
    """
    A_{k,t}: t k x k identity matrices side by side; B_{k,t} is its
    horizontal reflection. With fat_j every column is repeated fat_j times.
    """
    if k < 1 or t < 1:
        raise InvalidPatternError(f"need k >= 1 and t >= 1, got k={k}, t={t}")
    letters = _fatten(tuple(range(1, k + 1)) * t, fat_j or 1)
    if reflected:
        letters = letters[::-1]
    return chi_letters(letters, rows=k)


def matrix_formation(r: int, blocks: list[tuple[int, ...]] | tuple[tuple[int, ...], ...],
                     fat_B: int | None = None) -> Matrix01:
    """
    Horizontal concatenation of r x r permutation matrices; block p puts the
    one of its c-th column in row p[c]. With fat_B each column is repeated.
    """
    if r < 1:
        raise InvalidPatternError(f"r must be >= 1, got {r}")
    symbols = list(range(1, r + 1))
    for index, block in enumerate(blocks, start=1):
        if sorted(block) != symbols:
            raise InvalidPatternError(f"block {index} is not a permutation of 1..{r}")
    letters = _fatten((x for block in blocks for x in block), fat_B or 1)
    return chi_letters(letters, rows=r)


def binary_matrix_formation(r: int, pattern: BinaryPattern, fat_B: int | None = None) -> Matrix01:
    """A blocks are the r x r identity, D blocks its reflection."""
    ascending = tuple(range(1, r + 1))
    blocks = [ascending if b is Block.ASC else ascending[::-1] for b in pattern.blocks]
    return matrix_formation(r, blocks, fat_B)


# -----------------------------------------------------------------------------
# Containment of whole matrix formation families
# -----------------------------------------------------------------------------

def find_matrix_formation(host: Matrix01, r: int, s: int, fat_B: int = 1) -> tuple[int, ...] | None:
    """
    Host rows carrying some permutation matrix (r,s)-formation (B-fat in the
    fixed shape when fat_B > 1), or None.

    For a row subset, blocks are cut greedily at the earliest column where
    some order of the rows has completed fat_B ones per row, one row after the
    other; that order is found by a shortest-finish pass over row subsets.
    """
    if r < 1 or s < 0:
        raise InvalidPatternError(f"need r >= 1 and s >= 0, got r={r}, s={s}")
    if s == 0:
        return ()
    counts = host.row_counts
    candidates = [row for row in range(1, host.rows + 1) if counts[row - 1] >= fat_B * s]
    row_cols: dict[int, list[int]] = {row: [] for row in candidates}
    for row, col in host.ones:
        if row in row_cols:
            row_cols[row].append(col)

    for rows in combinations(candidates, r):
        position = 0
        for _ in range(s):
            position = _earliest_block_end(rows, row_cols, position, fat_B)
            if position is None:
                break
        else:
            return rows
    return None


def _earliest_block_end(rows: tuple[int, ...], row_cols: dict[int, list[int]],
                        after: int, fat_B: int) -> int | None:
    full = (1 << len(rows)) - 1
    finish: list[int | None] = [None] * (full + 1)
    finish[0] = after
    for mask in range(full + 1):
        start = finish[mask]
        if start is None:
            continue
        for bit, row in enumerate(rows):
            if mask & (1 << bit):
                continue
            cols = row_cols[row]
            k = bisect_right(cols, start) + fat_B - 1
            if k >= len(cols):
                continue
            nxt = mask | (1 << bit)
            if finish[nxt] is None or cols[k] < finish[nxt]:
                finish[nxt] = cols[k]
    return finish[full]


def contains_matrix_formation(host: Matrix01, r: int, s: int, fat_B: int | None = None) -> bool:
    return find_matrix_formation(host, r, s, fat_B or 1) is not None
