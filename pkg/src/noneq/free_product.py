"""Normal forms and arithmetic in free products of arbitrary factor groups.

An element is an alternating sequence of nontrivial syllables, each tagged
with the index of the factor it lives in.  Factors implement a small group
interface; realizations cover finite groups given by Cayley tables, free
groups of finite or countable rank, and whole free products used as a
single composite factor (so ``G1*G2*F`` can be analyzed through the
two-factor splitting ``(G1*G2)*F``).
"""

from __future__ import annotations

import json
import threading
from abc import ABC, abstractmethod
from typing import Any, Optional, Sequence

from . import free_group
from .free_group import FreeWord, qth_root
from .parsing import ParseError, tokenize

__all__ = [
    "FactorGroup",
    "TableGroup",
    "FreeFactor",
    "FreeProductGroup",
    "FPElement",
    "cyclic_group",
    "fp_multiply",
    "fp_invert",
    "fp_power",
    "fp_commutes",
    "fp_cyclic_split",
    "fp_qth_root",
    "load_factor_spec",
    "load_factor_file",
]


class FactorGroup(ABC):
    """Group interface required of a free-product factor."""

    name: str

    @abstractmethod
    def identity(self) -> Any: ...

    @abstractmethod
    def multiply(self, x: Any, y: Any) -> Any: ...

    @abstractmethod
    def invert(self, x: Any) -> Any: ...

    def is_identity(self, x: Any) -> bool:
        return x == self.identity()

    def power(self, x: Any, n: int) -> Any:
        if n < 0:
            return self.power(self.invert(x), -n)
        acc = self.identity()
        while n:
            if n & 1:
                acc = self.multiply(acc, x)
            x = self.multiply(x, x)
            n >>= 1
        return acc

    def elements(self) -> Optional[list]:
        """Finite enumeration, or None when the factor is infinite."""
        return None

    @abstractmethod
    def parse_token(self, name: str) -> Any | None:
        """Claim a token name, returning the element or None if not ours."""

    @abstractmethod
    def format_element(self, x: Any) -> str: ...

    @abstractmethod
    def roots(self, x: Any, q: int) -> set:
        """All in-factor solutions of ``y^q == x``."""


class TableGroup(FactorGroup):
    """Finite group given by a Cayley table; elements are row indices."""

    def __init__(self, name: str, element_names: Sequence[str],
                 mul: Sequence[Sequence[int]], inv: Sequence[int], identity: int):
        m = len(element_names)
        if len(set(element_names)) != m or m == 0:
            raise ValueError("element names must be nonempty and distinct")
        if not (0 <= identity < m) or len(inv) != m or len(mul) != m:
            raise ValueError("table dimensions inconsistent")
        for row in mul:
            if len(row) != m or sorted(row) != list(range(m)):
                raise ValueError("multiplication table is not a Latin square")
        for col in zip(*mul):
            if sorted(col) != list(range(m)):
                raise ValueError("multiplication table is not a Latin square")
        for x in range(m):
            if mul[identity][x] != x or mul[x][identity] != x:
                raise ValueError("identity row/column inconsistent")
            if mul[x][inv[x]] != identity or mul[inv[x]][x] != identity:
                raise ValueError("inverse table inconsistent with identity")
        self.name = name
        self.element_names = tuple(element_names)
        self.mul = tuple(tuple(row) for row in mul)
        self.inv = tuple(inv)
        self.id_idx = identity

    @staticmethod
    def cyclic(n: int, name: str | None = None) -> "TableGroup":
        """Additive cyclic group Z_n with elements named 0..n-1."""
        names = [str(i) for i in range(n)]
        mul = [[(i + j) % n for j in range(n)] for i in range(n)]
        inv = [(-i) % n for i in range(n)]
        return TableGroup(name or f"Z{n}", names, mul, inv, 0)

    def identity(self) -> int:
        return self.id_idx

    def multiply(self, x: int, y: int) -> int:
        return self.mul[x][y]

    def invert(self, x: int) -> int:
        return self.inv[x]

    def elements(self) -> list[int]:
        return list(range(len(self.element_names)))

    def parse_token(self, name: str) -> int | None:
        if not name.startswith(self.name + "."):
            return None
        elname = name[len(self.name) + 1:]
        try:
            return self.element_names.index(elname)
        except ValueError:
            raise ParseError(f"unknown element {elname!r} of factor {self.name}", 0, 0) from None

    def format_element(self, x: int) -> str:
        return f"{self.name}.{self.element_names[x]}"

    def roots(self, x: int, q: int) -> set[int]:
        return {y for y in self.elements() if self.power(y, q) == x}


class FreeFactor(FactorGroup):
    """Free group factor of finite rank or countable rank (``rank=None``).

    The countable case is lazy: generators exist as soon as they are named,
    and a monotone counter remembers the largest index seen.
    """

    def __init__(self, rank: int | None = None, prefix: str = "e", name: str | None = None):
        if rank is not None and rank < 1:
            raise ValueError("free factor rank must be >= 1 (or None for countable)")
        self.rank = rank
        self.prefix = prefix
        self.name = name or (f"F{rank}" if rank is not None else "Fw")
        self._seen = 0
        self._lock = threading.Lock()

    def _note(self, w: FreeWord) -> FreeWord:
        top = max((g for g, _ in w.runs), default=0)
        if self.rank is not None and top > self.rank:
            raise ValueError(f"generator index {top} exceeds rank {self.rank}")
        with self._lock:
            if top > self._seen:
                self._seen = top
        return w

    def seen_rank(self) -> int:
        return self._seen

    def identity(self) -> FreeWord:
        return free_group.IDENTITY

    def multiply(self, x: FreeWord, y: FreeWord) -> FreeWord:
        return self._note(free_group.multiply(x, y))

    def invert(self, x: FreeWord) -> FreeWord:
        return free_group.invert(x)

    def is_identity(self, x: FreeWord) -> bool:
        return x.is_identity()

    def parse_token(self, name: str) -> FreeWord | None:
        if not name.startswith(self.prefix) or not name[len(self.prefix):].isdigit():
            return None
        index = int(name[len(self.prefix):])
        if index < 1:
            raise ParseError("generator indices start at 1", 0, 0)
        return self._note(FreeWord.generator(index))

    def format_element(self, x: FreeWord) -> str:
        return free_group.format_word(x, self.prefix)

    def roots(self, x: FreeWord, q: int) -> set[FreeWord]:
        root = qth_root(x, q)
        return set() if root is None else {root}


class FPElement:
    """Normal form in a free product: tuple of (factor index, value) syllables."""

    __slots__ = ("group", "syls")

    def __init__(self, group: "FreeProductGroup", syls: tuple[tuple[int, Any], ...]):
        prev = None
        for f, x in syls:
            if f == prev:
                raise ValueError("consecutive syllables share a factor")
            if group.factors[f].is_identity(x):
                raise ValueError("syllables must be nontrivial factor elements")
            prev = f
        self.group = group
        self.syls = syls

    @property
    def syl_length(self) -> int:
        return len(self.syls)

    def is_identity(self) -> bool:
        return not self.syls

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FPElement)
            and self.group is other.group
            and self.syls == other.syls
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.syls))

    def __mul__(self, other: "FPElement") -> "FPElement":
        return self.group.multiply(self, other)

    def __invert__(self) -> "FPElement":
        return self.group.invert(self)

    def __pow__(self, n: int) -> "FPElement":
        return self.group.power(self, n)

    def __str__(self) -> str:
        return self.group.format_element(self)

    def __repr__(self) -> str:
        return f"<{self.group.name}: {self}>"


class FreeProductGroup(FactorGroup):
    """Free product of two or more factors; itself usable as a factor."""

    def __init__(self, factors: Sequence[FactorGroup], name: str | None = None):
        if len(factors) < 2:
            raise ValueError("a free product needs at least two factors")
        self.factors = tuple(factors)
        self.name = name or "*".join(f.name for f in factors)

    # -- group interface ------------------------------------------------

    def identity(self) -> FPElement:
        return FPElement(self, ())

    def syllable(self, factor_index: int, value: Any) -> FPElement:
        if self.factors[factor_index].is_identity(value):
            return self.identity()
        return FPElement(self, ((factor_index, value),))

    def from_syllables(self, syls: Sequence[tuple[int, Any]]) -> FPElement:
        acc = self.identity()
        for f, x in syls:
            acc = self.multiply(acc, self.syllable(f, x))
        return acc

    def _check(self, a: FPElement):
        if not isinstance(a, FPElement) or a.group is not self:
            raise ValueError("element belongs to a different ambient product")

    def multiply(self, a: FPElement, b: FPElement) -> FPElement:
        self._check(a)
        self._check(b)
        out = list(a.syls)
        for f, x in b.syls:
            if out and out[-1][0] == f:
                merged = self.factors[f].multiply(out[-1][1], x)
                out.pop()
                if not self.factors[f].is_identity(merged):
                    out.append((f, merged))
            else:
                out.append((f, x))
        return FPElement(self, tuple(out))

    def invert(self, a: FPElement) -> FPElement:
        self._check(a)
        return FPElement(
            self,
            tuple((f, self.factors[f].invert(x)) for f, x in reversed(a.syls)),
        )

    def is_identity(self, a: FPElement) -> bool:
        return not a.syls

    def power(self, a: FPElement, n: int) -> FPElement:
        if n == 0:
            return self.identity()
        if n < 0:
            return self.power(self.invert(a), -n)
        conj, core = fp_cyclic_split(a)
        if core.syl_length <= 1:
            if core.is_identity():
                return self.identity()
            f, x = core.syls[0]
            mid = self.syllable(f, self.factors[f].power(x, n))
        else:
            mid = FPElement(self, core.syls * n)
        return self.multiply(self.multiply(conj, mid), self.invert(conj))

    def commutes(self, a: FPElement, b: FPElement) -> bool:
        return self.multiply(a, b) == self.multiply(b, a)

    # -- factor interface (composite factors) ---------------------------

    def parse_token(self, name: str) -> FPElement | None:
        for idx, factor in enumerate(self.factors):
            value = factor.parse_token(name)
            if value is not None:
                return self.syllable(idx, value)
        return None

    def format_element(self, a: FPElement) -> str:
        if not a.syls:
            return "1"
        return " ".join(self.factors[f].format_element(x) for f, x in a.syls)

    def roots(self, x: FPElement, q: int) -> set[FPElement]:
        return fp_qth_root(x, q)

    def elements(self) -> None:
        return None

    # -- text -----------------------------------------------------------

    def parse(self, text: str) -> FPElement:
        acc = self.identity()
        for tok in tokenize(text):
            value = self.parse_token(tok.name)
            if value is None:
                raise ParseError(f"unknown token {tok.name!r}", tok.line, tok.col)
            acc = self.multiply(acc, self.power(value, tok.exp))
        return acc

    def __repr__(self) -> str:
        return f"FreeProductGroup({self.name})"


def cyclic_group(n: int, name: str | None = None) -> TableGroup:
    return TableGroup.cyclic(n, name)


# -- module-level operation names ---------------------------------------


def fp_multiply(a: FPElement, b: FPElement) -> FPElement:
    return a.group.multiply(a, b)


def fp_invert(a: FPElement) -> FPElement:
    return a.group.invert(a)


def fp_power(a: FPElement, n: int) -> FPElement:
    return a.group.power(a, n)


def fp_commutes(a: FPElement, b: FPElement) -> bool:
    return a.group.commutes(a, b)


def fp_cyclic_split(a: FPElement) -> tuple[FPElement, FPElement]:
    """Write ``a = c * core * c^-1`` with a cyclically reduced core.

    The core either has at most one syllable or starts and ends in different
    factors.  Same-factor boundary syllables that do not cancel are merged
    into the core's last position while the conjugator absorbs the first
    syllable, so the output is canonical.
    """
    group = a.group
    syls = list(a.syls)
    conj: list[tuple[int, Any]] = []
    while len(syls) >= 2 and syls[0][0] == syls[-1][0]:
        f, first = syls[0]
        _, last = syls[-1]
        conj.append((f, first))
        merged = group.factors[f].multiply(last, first)
        syls = syls[1:-1]
        if not group.factors[f].is_identity(merged):
            syls.append((f, merged))
    return FPElement(group, tuple(conj)), FPElement(group, tuple(syls))


def fp_qth_root(z: FPElement, q: int) -> set[FPElement]:
    """All ``v`` with ``v^q == z``.

    Elliptic targets reduce to root extraction inside one factor (finite
    factors enumerate, free factors have unique roots, composite factors
    recurse); hyperbolic targets have at most one root, found by syllable
    divisibility plus prefix periodicity.  Roots of the identity are
    reported one per in-factor torsion solution; their conjugates (an
    infinite family when present) are not enumerated.
    """
    if q < 1:
        raise ValueError("root degree must be >= 1")
    group = z.group
    if q == 1:
        return {z}
    conj, core = fp_cyclic_split(z)
    inv_conj = group.invert(conj)

    def back(v: FPElement) -> FPElement:
        return group.multiply(group.multiply(conj, v), inv_conj)

    if core.is_identity():
        roots = {group.identity()}
        for idx, factor in enumerate(group.factors):
            for y in factor.roots(factor.identity(), q):
                if not factor.is_identity(y):
                    roots.add(group.syllable(idx, y))
        return roots
    if core.syl_length == 1:
        f, x = core.syls[0]
        return {back(group.syllable(f, y)) for y in group.factors[f].roots(x, q)}
    if core.syl_length % q:
        return set()
    candidate = FPElement(group, core.syls[: core.syl_length // q])
    if group.power(candidate, q) == core:
        return {back(candidate)}
    return set()


# -- factor spec files ---------------------------------------------------


def load_factor_spec(spec: dict) -> FactorGroup:
    """Build a factor from its JSON description.

    Shapes: ``{"type": "table", "name", "elements", "mul", "inv",
    "identity"}``, ``{"type": "free", "rank": int | "omega", "prefix"}`` or
    ``{"type": "product", "factors": [specs]}``.
    """
    kind = spec.get("type")
    if kind == "table":
        return TableGroup(
            spec["name"], spec["elements"], spec["mul"], spec["inv"], spec["identity"]
        )
    if kind == "free":
        rank = spec.get("rank", "omega")
        return FreeFactor(
            None if rank == "omega" else int(rank),
            spec.get("prefix", "e"),
            spec.get("name"),
        )
    if kind == "product":
        return FreeProductGroup(
            [load_factor_spec(sub) for sub in spec["factors"]], spec.get("name")
        )
    raise ValueError(f"unknown factor spec type {kind!r}")


def load_factor_file(path: str) -> FactorGroup:
    with open(path, encoding="utf-8") as handle:
        return load_factor_spec(json.load(handle))
