# =============================================================================
# utilities/parsing.py
# =============================================================================
# Purpose:
# Text literals → models.
#
# Sequence grammar:
#   sequence := term*
#   term     := "(" sequence ")" "^" INT  |  atom
#   atom     := INT  |  a..z
# Separators are whitespace and commas. Lowercase letters map a=1 … z=26.
# Digit runs are whole integers when the literal contains a separator
# ("10 2 10"), otherwise every digit is its own letter ("12323").
# Exponents are always whole integers.
#
# Matrix grammar: rows of '0'/'1' characters separated by newlines or ';',
# all rows the same length.
# =============================================================================

import logging

from models.formation import BinaryPattern
from models.matrix import Matrix01
from models.sequence import Sequence
from utilities.errors import PatternParseError

logger = logging.getLogger(__name__)

_SEPARATORS = " \t\r\n,"


class _SequenceParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.split_digits = not any(ch in _SEPARATORS for ch in text)

    def fail(self, message: str, position: int | None = None):
        raise PatternParseError(message, self.text, self.pos if position is None else position)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in _SEPARATORS:
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self, what: str) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail(f"expected {what}")
        return int(self.text[start:self.pos])

    def sequence(self, closing: str = "", opened: int = 0) -> list[int]:
        letters: list[int] = []
        while True:
            ch = self.peek()
            if ch == closing:
                return letters
            if ch == "":
                self.fail("unclosed '('", opened)
            if ch == ")":
                self.fail("unbalanced ')'")
            letters.extend(self.term())

    def term(self) -> list[int]:
        ch = self.text[self.pos]
        if ch == "(":
            opened = self.pos
            self.pos += 1
            inner = self.sequence(closing=")", opened=opened)
            self.pos += 1
            if self.peek() != "^":
                self.fail("expected '^' after a parenthesized group")
            self.pos += 1
            self.skip()
            power = self.integer("an exponent")
            if power < 1:
                self.fail("exponent must be at least 1", self.pos - 1)
            return inner * power
        if "a" <= ch <= "z":
            self.pos += 1
            return [ord(ch) - ord("a") + 1]
        if ch.isdigit():
            start = self.pos
            if self.split_digits:
                self.pos += 1
                value = int(ch)
            else:
                value = self.integer("a letter")
            if value < 1:
                self.fail("letters must be positive integers", start)
            return [value]
        self.fail(f"unexpected character {ch!r}")


def parse_sequence(text: str, allow_empty: bool = False) -> Sequence:
    """
    Parse a sequence literal such as "1 2 3 2 1", "abcba", "12323" or "(1 2)^2".

    Args:
        text: the literal
        allow_empty: accept a literal with no letters (otherwise an error)

    Returns:
        Sequence: the parsed sequence in integer form

    Raises:
        PatternParseError: with the 0-based position of the offending character
    """
    parser = _SequenceParser(text)
    letters = parser.sequence()
    if not letters and not allow_empty:
        raise PatternParseError("empty sequence literal", text, 0)
    return Sequence(letters=tuple(letters))


def parse_matrix(text: str) -> Matrix01:
    """
    Parse a 0-1 matrix given as rows of '0'/'1' characters.

    Rows are separated by newlines or ';'. Blank rows are ignored.
    """
    rows: list[tuple[int, str]] = []
    offset = 0
    for raw in text.replace(";", "\n").split("\n"):
        stripped = raw.strip()
        if stripped:
            rows.append((offset + raw.index(stripped[0]), stripped))
        offset += len(raw) + 1

    if not rows:
        raise PatternParseError("empty matrix literal", text, 0)

    width = len(rows[0][1])
    ones = []
    for row_index, (start, line) in enumerate(rows, start=1):
        if len(line) != width:
            raise PatternParseError(
                f"row {row_index} has {len(line)} columns, expected {width}", text, start
            )
        for col_index, ch in enumerate(line, start=1):
            if ch == "1":
                ones.append((row_index, col_index))
            elif ch != "0":
                raise PatternParseError(
                    f"matrix cells must be 0 or 1, got {ch!r}", text, start + col_index - 1
                )
    return Matrix01(rows=len(rows), cols=width, ones=tuple(ones))


def parse_binary_pattern(text: str) -> BinaryPattern:
    return BinaryPattern.from_text(text)


def parse_assignments(items: tuple[str, ...] | list[str]) -> dict[str, int]:
    """
    Parse "key=value" items with integer values, e.g. ("k=2", "t=3").

    Raises:
        PatternParseError: when an item has no '=' or a non-integer value
    """
    values: dict[str, int] = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep or not key.strip():
            raise PatternParseError("expected key=value", item, 0)
        try:
            values[key.strip()] = int(raw)
        except ValueError:
            raise PatternParseError(f"{key.strip()} must be an integer", item, len(key) + 1) from None
    return values
