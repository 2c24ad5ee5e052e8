"""Witness matrices and per-pair certification of the power-avoidance sentence.

The sentence decided here, for a pair ``(x, y)`` of free-group elements, is
"``x*y`` is not ``u^5 * v^4`` for any non-commuting ``u, v``".  The harness
builds the two witness matrices ``A[i][j] = e_{i+j}^5 e_i`` and
``B[k][l] = e_k^-1 e_{k+l}^-4``, decides the sentence on every entry pair
with machine-checkable certificates, and assembles the resulting boolean
satisfaction matrix:

* Satisfied: the product word is primitive, so it cannot be a product of
  proper powers of a noncommuting pair; the certificate is the primitivity
  move trace.
* Falsified: an explicit ``(u, v)`` with ``u^5 v^4`` equal to the product
  and ``[u, v] != 1``, found by bounded search with exhaustive root
  extraction.
* Undecided: neither certificate appeared within the search bound.  On the
  witness matrices this never happens; seeing it indicates a bug.

A desk-scale analogue of the search runs in free products too
(:func:`search_power_decomposition`).
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from .criterion import SatMatrix, matches_pattern
from .free_group import FreeWord, commutes, multiply, power, qth_root, relabel
from .free_product import FPElement, fp_commutes, fp_cyclic_split, fp_qth_root
from .stallings import verify_basis_pair
from .whitehead import PrimitivityVerdict, WhiteheadMove, primitivity_in_ambient, replay

__all__ = [
    "LEFT_EXPONENT",
    "RIGHT_EXPONENT",
    "WitnessMatrices",
    "Satisfied",
    "Falsified",
    "Undecided",
    "Certificate",
    "UndecidedCellError",
    "CellResult",
    "EvaluationReport",
    "build_matrices",
    "decide_pair",
    "verify_certificate",
    "evaluate_matrix",
    "strip_common_conjugator",
    "search_power_decomposition",
]

LEFT_EXPONENT = 5
RIGHT_EXPONENT = 4


@dataclass(frozen=True)
class WitnessMatrices:
    n: int
    a: tuple[tuple[FreeWord, ...], ...]
    b: tuple[tuple[FreeWord, ...], ...]


def build_matrices(n: int) -> WitnessMatrices:
    """Entries ``A[i][j] = e_{i+j}^5 e_i`` and ``B[k][l] = e_k^-1 e_{k+l}^-4``
    (1-based), drawing on generators ``e_1 .. e_{2n}``."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    g = FreeWord.generator
    a = tuple(
        tuple(multiply(g(i + j, LEFT_EXPONENT), g(i)) for j in range(1, n + 1))
        for i in range(1, n + 1)
    )
    b = tuple(
        tuple(multiply(g(k, -1), g(k + l, -RIGHT_EXPONENT)) for l in range(1, n + 1))
        for k in range(1, n + 1)
    )
    return WitnessMatrices(n, a, b)


@dataclass(frozen=True)
class Satisfied:
    """The product word is primitive; the trace replays it to one letter
    after renaming its occurring generators to ``1..k`` in order."""

    trace: tuple[WhiteheadMove, ...]
    occurring: tuple[int, ...]


@dataclass(frozen=True)
class Falsified:
    u: FreeWord
    v: FreeWord


@dataclass(frozen=True)
class Undecided:
    bound: int


Certificate = Union[Satisfied, Falsified, Undecided]


def _reduced_words(letters: Sequence[int], max_len: int) -> Iterator[tuple[int, ...]]:
    """Reduced letter tuples, length ascending then lexicographic in the
    given letter order."""
    level: list[tuple[int, ...]] = [()]
    for _ in range(max_len):
        nxt: list[tuple[int, ...]] = []
        for prefix in level:
            for x in letters:
                if prefix and prefix[-1] == -x:
                    continue
                nxt.append(prefix + (x,))
        level = nxt
        yield from level


def decide_pair(a: FreeWord, b: FreeWord, search_bound: Optional[int] = None) -> Certificate:
    """Certify or refute the power-avoidance sentence on ``(a, b)``.

    Positive route: primitivity of ``a*b``.  Negative route: enumerate
    candidate ``u`` up to ``search_bound`` letters (default: the length of
    ``a*b``) over the product's generators, extract the unique fourth root
    of ``u^-5 * (a*b)`` and keep the first noncommuting pair.
    """
    w = multiply(a, b)
    verdict = primitivity_in_ambient(w)
    if verdict.primitive:
        return Satisfied(verdict.trace, w.gens())
    bound = w.length if search_bound is None else search_bound
    letters: list[int] = []
    for g in w.gens():
        letters.extend((g, -g))
    for u_letters in _reduced_words(letters, bound):
        u = FreeWord.from_letters(u_letters)
        z = multiply(power(u, -LEFT_EXPONENT), w)
        v = qth_root(z, RIGHT_EXPONENT)
        if v is not None and not commutes(u, v):
            return Falsified(u, v)
    return Undecided(bound)


def verify_certificate(cert: Certificate, a: FreeWord, b: FreeWord) -> bool:
    """Recheck a certificate from scratch."""
    w = multiply(a, b)
    if isinstance(cert, Falsified):
        recomposed = multiply(power(cert.u, LEFT_EXPONENT), power(cert.v, RIGHT_EXPONENT))
        return recomposed == w and not commutes(cert.u, cert.v)
    if isinstance(cert, Satisfied):
        if cert.occurring != w.gens():
            return False
        mapping = {g: i + 1 for i, g in enumerate(cert.occurring)}
        return replay(relabel(w, mapping), cert.trace).length == 1
    return False


class UndecidedCellError(RuntimeError):
    """Raised when any cell evaluation ends Undecided."""

    def __init__(self, cells: list[tuple[tuple[int, int], tuple[int, int]]]):
        self.cells = cells
        listed = ", ".join(f"A{c[0]} x B{c[1]}" for c in cells)
        super().__init__(f"undecided cells: {listed}")


@dataclass(frozen=True)
class CellResult:
    a_pos: tuple[int, int]
    b_pos: tuple[int, int]
    satisfied: bool
    certificate: Certificate
    basis_ok: Optional[bool]
    micros: int


@dataclass(frozen=True)
class EvaluationReport:
    n: int
    sat: SatMatrix
    cells: tuple[CellResult, ...]

    @property
    def pattern_ok(self) -> bool:
        return matches_pattern(self.sat)

    @property
    def basis_all_ok(self) -> bool:
        return all(c.basis_ok for c in self.cells if c.basis_ok is not None)

    def to_json(self) -> dict:
        out = []
        for c in self.cells:
            cert: dict = {}
            if isinstance(c.certificate, Satisfied):
                cert = {"type": "satisfied", "trace_len": len(c.certificate.trace)}
            elif isinstance(c.certificate, Falsified):
                cert = {"type": "falsified", "u": str(c.certificate.u), "v": str(c.certificate.v)}
            else:
                cert = {"type": "undecided"}
            row = {
                "a": list(c.a_pos),
                "b": list(c.b_pos),
                "sat": c.satisfied,
                "certificate": cert,
                "micros": c.micros,
            }
            if c.basis_ok is not None:
                row["basis_ok"] = c.basis_ok
            out.append(row)
        return {"n": self.n, "pattern_ok": self.pattern_ok, "cells": out}

    def render_table(self) -> str:
        """Rows are A entries (row-major), columns B entries, "1"/"0" cells."""
        n = self.n
        pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
        header = "A\\B   " + " ".join(f"{k},{l}" for k, l in pairs)
        lines = [header]
        for i, j in pairs:
            bits = " ".join(
                "  1" if self.sat.get(i, j, k, l) else "  0" for k, l in pairs
            )
            lines.append(f"{i},{j} | {bits}")
        lines.append(f"pattern_ok: {self.pattern_ok}")
        return "\n".join(lines)


def _evaluate_cell(args: tuple[int, int, int, int, int, Optional[int]]) -> CellResult:
    n, i, j, k, l, bound = args
    mats = build_matrices(n)
    a = mats.a[i - 1][j - 1]
    b = mats.b[k - 1][l - 1]
    start = time.perf_counter()
    cert = decide_pair(a, b, bound)
    basis = None
    if i != k or (i, j) == (k, l):
        basis = verify_basis_pair(a, b, i, j, k, l)
    micros = int((time.perf_counter() - start) * 1_000_000)
    return CellResult((i, j), (k, l), isinstance(cert, Satisfied), cert, basis, micros)


def evaluate_matrix(n: int, search_bound: Optional[int] = None, jobs: int = 1) -> EvaluationReport:
    """Decide every entry pair of the size-``n`` witness matrices.

    Certificates are replay-verified on every run; any Undecided cell raises
    :class:`UndecidedCellError`.  ``jobs > 1`` fans cells out to a process
    pool; results are deterministic and identical to sequential evaluation.
    """
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    tasks = [
        (n, i, j, k, l, search_bound)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        for k in range(1, n + 1)
        for l in range(1, n + 1)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate_cell, tasks, chunksize=8))
    else:
        results = [_evaluate_cell(t) for t in tasks]

    mats = build_matrices(n)
    undecided = []
    for cell in results:
        (i, j), (k, l) = cell.a_pos, cell.b_pos
        if isinstance(cell.certificate, Undecided):
            undecided.append((cell.a_pos, cell.b_pos))
            continue
        if not verify_certificate(cell.certificate, mats.a[i - 1][j - 1], mats.b[k - 1][l - 1]):
            raise RuntimeError(f"certificate replay failed on A{(i, j)} x B{(k, l)}")
    if undecided:
        raise UndecidedCellError(undecided)

    by_pos = {(c.a_pos, c.b_pos): c.satisfied for c in results}
    sat = SatMatrix.from_cells(n, lambda i, j, k, l: by_pos[((i, j), (k, l))])
    return EvaluationReport(n, sat, tuple(results))


def strip_common_conjugator(u: FPElement, v: FPElement) -> tuple[FPElement, FPElement, FPElement]:
    """Remove the longest shared outer conjugator of ``u`` and ``v``.

    Returns ``(u', v', c)`` with ``u = c u' c^-1`` and ``v = c v' c^-1``;
    afterwards no single syllable conjugation shortens both.  Commutation
    status is preserved.
    """
    group = u.group
    if v.group is not group:
        raise ValueError("elements belong to different ambient products")
    cu, _ = fp_cyclic_split(u)
    cv, _ = fp_cyclic_split(v)
    shared: list = []
    for su, sv in zip(cu.syls, cv.syls):
        if su != sv:
            break
        shared.append(su)
    gamma = FPElement(group, tuple(shared))
    ginv = group.invert(gamma)
    return (
        group.multiply(group.multiply(ginv, u), gamma),
        group.multiply(group.multiply(ginv, v), gamma),
        gamma,
    )


def search_power_decomposition(
    target: FPElement,
    p: int,
    q: int,
    syl_bound: int,
    alphabet: Sequence[FPElement],
) -> Optional[tuple[FPElement, FPElement]]:
    """Bounded search for noncommuting ``(u, v)`` with ``u^p v^q == target``.

    ``u`` ranges over normal forms of syllable length up to ``syl_bound``
    whose syllables come from ``alphabet`` (single nontrivial factor
    syllables), in syllable-count-ascending then alphabet-lexicographic
    order.  For each ``u`` the root extraction is exhaustive, so ``None``
    certifies absence for every ``u`` within the bound.
    """
    if p < 1 or q < 1:
        raise ValueError("exponents must be >= 1")
    if syl_bound < 1:
        raise ValueError("syllable bound must be >= 1")
    if not alphabet:
        raise ValueError("alphabet must be nonempty")
    group = target.group
    syllables: list[tuple[int, object]] = []
    for letter in alphabet:
        if letter.group is not group:
            raise ValueError("alphabet letter from a different ambient product")
        if letter.syl_length != 1:
            raise ValueError("alphabet letters must be single nontrivial syllables")
        syllables.append(letter.syls[0])

    level: list[tuple[tuple[int, object], ...]] = [()]
    for _ in range(syl_bound):
        nxt = []
        for prefix in level:
            for syl in syllables:
                if prefix and prefix[-1][0] == syl[0]:
                    continue
                nxt.append(prefix + (syl,))
        level = nxt
        for syls in level:
            u = FPElement(group, syls)
            z = group.multiply(group.power(u, -p), target)
            roots = fp_qth_root(z, q)
            for v in sorted(roots, key=lambda r: (r.syl_length, str(r))):
                if not fp_commutes(u, v):
                    return u, v
    return None
