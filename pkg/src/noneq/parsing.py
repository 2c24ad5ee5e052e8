"""Tokenizer for the word grammar shared by every textual interface.

Grammar::

    word  := "1" | token ((whitespace | "*") token)*
    token := name ("^" signed-integer)?

Names start with a letter or underscore and may contain letters, digits,
underscores and dots (``e3``, ``Z3.1``).  The bare word ``1`` denotes the
identity and cannot be mixed with other tokens.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = ["ParseError", "Token", "tokenize"]


class ParseError(ValueError):
    """Malformed word text; carries the offending line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    name: str
    exp: int
    line: int
    col: int


_SKIP = re.compile(r"[\s*]+")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*")
_EXP = re.compile(r"\^(-?\d+)")


def _position(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    start = text.rfind("\n", 0, pos) + 1
    return line, pos - start + 1


def tokenize(text: str) -> list[Token]:
    """Split word text into tokens, raising :class:`ParseError` on bad input."""
    tokens: list[Token] = []
    one_at: tuple[int, int] | None = None
    pos = 0
    n = len(text)
    while pos < n:
        m = _SKIP.match(text, pos)
        if m:
            pos = m.end()
            continue
        line, col = _position(text, pos)
        if text[pos] == "1":
            one_at = (line, col)
            pos += 1
            continue
        m = _NAME.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        name = m.group()
        pos = m.end()
        exp = 1
        em = _EXP.match(text, pos)
        if em:
            exp = int(em.group(1))
            pos = em.end()
        elif pos < n and text[pos] == "^":
            raise ParseError("malformed exponent after '^'", *_position(text, pos))
        tokens.append(Token(name, exp, line, col))
    if one_at is not None and tokens:
        raise ParseError("'1' denotes the identity and cannot be mixed with tokens", *one_at)
    return tokens
