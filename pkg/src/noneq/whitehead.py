"""Primitivity testing in finite-rank free groups via Whitehead moves.

A word is primitive when it belongs to some basis.  The test drives the
letter length down with Whitehead automorphisms: multiplier moves can
shorten a word, permutation/inversion moves never change length.  When no
move shortens the current word, a breadth-first walk over its equal-length
images (peak reduction makes this walk complete) looks for a shorter exit;
if the walk exhausts at length > 1 the word is not primitive.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .free_group import FreeWord, relabel

__all__ = [
    "WhiteheadMove",
    "PrimitivityVerdict",
    "enumerate_moves",
    "apply_move",
    "inverse_move",
    "replay",
    "is_primitive",
    "primitivity_in_ambient",
]


@dataclass(frozen=True)
class WhiteheadMove:
    """One automorphism of ``F_rank``.

    ``kind`` is ``"inversion"`` or ``"transposition"`` (the permutation /
    inversion family) or ``"multiplier"``.  For multiplier moves
    ``multiplier`` is a signed letter ``a`` and ``affected`` a set of signed
    letters containing ``a`` but not ``-a``; a generator ``x`` maps to
    ``x*a``, ``a^-1*x`` or ``a^-1*x*a`` depending on which of ``x``, ``x^-1``
    lie in the set.
    """

    kind: str
    multiplier: int
    affected: frozenset[int]
    rank: int


@dataclass(frozen=True)
class PrimitivityVerdict:
    primitive: bool
    trace: tuple[WhiteheadMove, ...] = ()


def _letter_order(rank: int) -> list[int]:
    out = []
    for g in range(1, rank + 1):
        out.extend((g, -g))
    return out


@lru_cache(maxsize=None)
def _letter_table(move: WhiteheadMove) -> dict[int, tuple[int, ...]]:
    imgs: dict[int, tuple[int, ...]] = {}
    if move.kind == "inversion":
        (g,) = move.affected
        imgs[g] = (-g,)
    elif move.kind == "transposition":
        i, j = sorted(move.affected)
        imgs[i] = (j,)
        imgs[j] = (i,)
    elif move.kind == "multiplier":
        m = move.multiplier
        for g in range(1, move.rank + 1):
            if g == abs(m):
                continue
            plus = g in move.affected
            minus = -g in move.affected
            if plus and minus:
                imgs[g] = (-m, g, m)
            elif plus:
                imgs[g] = (g, m)
            elif minus:
                imgs[g] = (-m, g)
    else:
        raise ValueError(f"unknown move kind {move.kind!r}")
    table: dict[int, tuple[int, ...]] = {}
    for g in range(1, move.rank + 1):
        img = imgs.get(g, (g,))
        table[g] = img
        table[-g] = tuple(-x for x in reversed(img))
    return table


def _apply_table(table: dict[int, tuple[int, ...]], letters: tuple[int, ...]) -> tuple[int, ...]:
    stack: list[int] = []
    for letter in letters:
        for x in table[letter]:
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
    return tuple(stack)


@lru_cache(maxsize=None)
def enumerate_moves(rank: int) -> tuple[WhiteheadMove, ...]:
    """All nontrivial multiplier moves plus generating inversions/swaps.

    Deterministic order: multiplier moves sorted by multiplier then by
    affected-set bitmask, then inversions, then transpositions.
    """
    if rank < 1:
        raise ValueError("rank must be >= 1")
    letters = _letter_order(rank)
    moves: list[WhiteheadMove] = []
    for a in letters:
        others = [x for x in letters if abs(x) != abs(a)]
        for mask in range(1, 1 << len(others)):
            chosen = {others[i] for i in range(len(others)) if mask >> i & 1}
            chosen.add(a)
            moves.append(WhiteheadMove("multiplier", a, frozenset(chosen), rank))
    for g in range(1, rank + 1):
        moves.append(WhiteheadMove("inversion", 0, frozenset((g,)), rank))
    for i in range(1, rank + 1):
        for j in range(i + 1, rank + 1):
            moves.append(WhiteheadMove("transposition", 0, frozenset((i, j)), rank))
    return tuple(moves)


def apply_move(move: WhiteheadMove, word: FreeWord) -> FreeWord:
    return FreeWord.from_letters(_apply_table(_letter_table(move), word.letters()))


def inverse_move(move: WhiteheadMove) -> WhiteheadMove:
    if move.kind in ("inversion", "transposition"):
        return move
    a = move.multiplier
    affected = frozenset((move.affected - {a}) | {-a})
    return WhiteheadMove("multiplier", -a, affected, move.rank)


def replay(word: FreeWord, trace: tuple[WhiteheadMove, ...]) -> FreeWord:
    for move in trace:
        word = apply_move(move, word)
    return word


def is_primitive(w: FreeWord, rank: int) -> PrimitivityVerdict:
    """Decide whether ``w`` is part of some basis of ``F_rank``.

    A primitive verdict carries a move trace whose replay takes ``w`` to a
    single letter.
    """
    if rank < 1:
        raise ValueError("rank must be >= 1")
    for g in w.gens():
        if g > rank:
            raise ValueError(f"generator e{g} exceeds rank {rank}")
    if w.is_identity():
        return PrimitivityVerdict(False)
    pairs = [(m, _letter_table(m)) for m in enumerate_moves(rank)]
    cur = w.letters()
    trace: list[WhiteheadMove] = []
    while True:
        target = len(cur)
        if target == 1:
            return PrimitivityVerdict(True, tuple(trace))
        # Walk the equal-length component until some image gets shorter.
        visited = {cur}
        parent: dict[tuple[int, ...], tuple[tuple[int, ...], WhiteheadMove]] = {}
        queue = deque((cur,))
        found = None
        while queue and found is None:
            node = queue.popleft()
            for move, table in pairs:
                img = _apply_table(table, node)
                n = len(img)
                if n < target:
                    found = (node, move, img)
                    break
                if n == target and img not in visited:
                    visited.add(img)
                    parent[img] = (node, move)
                    queue.append(img)
        if found is None:
            return PrimitivityVerdict(False)
        node, move, img = found
        path: list[WhiteheadMove] = []
        while node != cur:
            node, step = parent[node]
            path.append(step)
        trace.extend(reversed(path))
        trace.append(move)
        cur = img


def primitivity_in_ambient(w: FreeWord) -> PrimitivityVerdict:
    """Primitivity in the free group on the generators occurring in ``w``.

    That subgroup is a free factor of the ambient group, so the answer
    agrees with primitivity in the whole countable-rank group.  The trace is
    expressed over the compacted alphabet: occurring indices renamed, in
    order, to ``1..k``.
    """
    occ = w.gens()
    if not occ:
        return PrimitivityVerdict(False)
    mapping = {g: i + 1 for i, g in enumerate(occ)}
    return is_primitive(relabel(w, mapping), len(occ))
