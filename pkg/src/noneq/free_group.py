"""Reduced words over a countable free basis.

A word is run-length encoded as a tuple of ``(generator, exponent)`` runs
with nonzero exponents and distinct adjacent generators; the empty tuple is
the identity.  Generators are positive integers (printed ``e1, e2, ...``),
so a word like ``e7^5 e3`` costs two runs no matter how large the exponents
get.  All operations are pure; words are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .parsing import ParseError, tokenize

__all__ = [
    "FreeWord",
    "IDENTITY",
    "multiply",
    "invert",
    "power",
    "commutes",
    "cyclic_split",
    "qth_root",
    "relabel",
    "parse_word",
    "format_word",
]

Runs = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class FreeWord:
    """A fully reduced word; construct via :meth:`generator`, parsing, or ops."""

    runs: Runs = ()

    def __post_init__(self):
        prev = None
        for gen, exp in self.runs:
            if not (isinstance(gen, int) and gen >= 1):
                raise ValueError(f"generator index must be a positive integer, got {gen!r}")
            if not (isinstance(exp, int) and exp != 0):
                raise ValueError(f"exponent must be a nonzero integer, got {exp!r}")
            if gen == prev:
                raise ValueError("adjacent runs must use distinct generators")
            prev = gen

    @staticmethod
    def generator(index: int, exp: int = 1) -> "FreeWord":
        if exp == 0:
            return IDENTITY
        return FreeWord(((index, exp),))

    @staticmethod
    def from_letters(letters: Iterable[int]) -> "FreeWord":
        """Build from signed letters (``-i`` is the inverse of ``e_i``), reducing."""
        stack: list[int] = []
        for x in letters:
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
        runs: list[tuple[int, int]] = []
        for x in stack:
            g, s = abs(x), (1 if x > 0 else -1)
            if runs and runs[-1][0] == g:
                runs[-1] = (g, runs[-1][1] + s)
            else:
                runs.append((g, s))
        return FreeWord(tuple(runs))

    def letters(self) -> tuple[int, ...]:
        out: list[int] = []
        for g, e in self.runs:
            out.extend([g if e > 0 else -g] * abs(e))
        return tuple(out)

    @property
    def length(self) -> int:
        """Letter length (sum of absolute exponents)."""
        return sum(abs(e) for _, e in self.runs)

    def gens(self) -> tuple[int, ...]:
        """Sorted distinct generator indices occurring in the word."""
        return tuple(sorted({g for g, _ in self.runs}))

    def is_identity(self) -> bool:
        return not self.runs

    def __bool__(self) -> bool:
        return bool(self.runs)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return multiply(self, other)

    def __invert__(self) -> "FreeWord":
        return invert(self)

    def __pow__(self, n: int) -> "FreeWord":
        return power(self, n)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"FreeWord({format_word(self)!r})"


IDENTITY = FreeWord()


def _merge(runs_a: Runs, runs_b: Runs) -> Runs:
    out = list(runs_a)
    for g, e in runs_b:
        if out and out[-1][0] == g:
            s = out[-1][1] + e
            if s:
                out[-1] = (g, s)
            else:
                out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def multiply(a: FreeWord, b: FreeWord) -> FreeWord:
    """Reduced product ``a * b``."""
    if not a.runs:
        return b
    if not b.runs:
        return a
    return FreeWord(_merge(a.runs, b.runs))


def invert(a: FreeWord) -> FreeWord:
    return FreeWord(tuple((g, -e) for g, e in reversed(a.runs)))


def cyclic_split(a: FreeWord) -> tuple[FreeWord, FreeWord]:
    """Write ``a = c * core * c^-1`` with ``core`` cyclically reduced.

    The conjugator ``c`` has minimal letter length; the identity splits as
    ``(identity, identity)``.
    """
    runs = list(a.runs)
    conj: list[tuple[int, int]] = []
    while len(runs) >= 2:
        g1, e1 = runs[0]
        g2, e2 = runs[-1]
        if g1 != g2 or (e1 > 0) == (e2 > 0):
            break
        t = min(abs(e1), abs(e2))
        s = 1 if e1 > 0 else -1
        conj.append((g1, s * t))
        if abs(e2) == t:
            runs.pop()
        else:
            runs[-1] = (g2, e2 + s * t)
        if abs(e1) == t:
            runs.pop(0)
        else:
            runs[0] = (g1, e1 - s * t)
    return FreeWord(tuple(conj)), FreeWord(tuple(runs))


def power(a: FreeWord, n: int) -> FreeWord:
    """``a`` raised to ``n``; the conjugator of ``a`` is written only once."""
    if n == 0 or not a.runs:
        return IDENTITY
    if n < 0:
        return power(invert(a), -n)
    conj, core = cyclic_split(a)
    acc: Runs = ()
    for _ in range(n):
        acc = _merge(acc, core.runs)
    word = _merge(_merge(conj.runs, acc), invert(conj).runs)
    return FreeWord(word)


def commutes(a: FreeWord, b: FreeWord) -> bool:
    return multiply(a, b) == multiply(b, a)


def qth_root(z: FreeWord, q: int) -> Optional[FreeWord]:
    """The unique ``v`` with ``v^q == z``, or ``None`` if no root exists."""
    if q < 1:
        raise ValueError("root degree must be >= 1")
    if q == 1:
        return z
    conj, core = cyclic_split(z)
    if not core.runs:
        return IDENTITY
    if len(core.runs) == 1:
        g, e = core.runs[0]
        if e % q:
            return None
        root_core = FreeWord(((g, e // q),))
    else:
        total = core.length
        if total % q:
            return None
        prefix = core.letters()[: total // q]
        root_core = FreeWord.from_letters(prefix)
        if power(root_core, q) != core:
            return None
    return multiply(multiply(conj, root_core), invert(conj))


def relabel(a: FreeWord, mapping: dict[int, int]) -> FreeWord:
    """Rename generators through an injective index map."""
    return FreeWord(tuple((mapping[g], e) for g, e in a.runs))


def parse_word(text: str, prefix: str = "e") -> FreeWord:
    """Parse the word grammar with generator names ``<prefix><positive int>``."""
    word = IDENTITY
    for tok in tokenize(text):
        if not tok.name.startswith(prefix) or not tok.name[len(prefix):].isdigit():
            raise ParseError(f"unknown generator {tok.name!r}", tok.line, tok.col)
        index = int(tok.name[len(prefix):])
        if index < 1:
            raise ParseError("generator indices start at 1", tok.line, tok.col)
        word = multiply(word, FreeWord.generator(index, tok.exp))
    return word


def format_word(a: FreeWord, prefix: str = "e") -> str:
    if not a.runs:
        return "1"
    return " ".join(
        f"{prefix}{g}" if e == 1 else f"{prefix}{g}^{e}" for g, e in a.runs
    )
