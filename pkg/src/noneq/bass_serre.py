"""Geometry of the Bass-Serre tree of a two-factor free product.

Vertices are the cosets ``g*G_0`` and ``g*G_1``; every group element spans
one edge between its two cosets, and the group acts by left multiplication.
Vertices carry a canonical label (the coset representative never ends in a
syllable of its own side), distances come from a closed form over normal
forms, and elements classify as elliptic (fixing a vertex) or hyperbolic
(translating along an axis by their cyclically reduced syllable length).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import pairwise
from typing import Union

from .free_product import FPElement, FreeProductGroup, fp_cyclic_split

__all__ = [
    "TreeVertex",
    "Elliptic",
    "Hyperbolic",
    "ActionClass",
    "canonicalize",
    "act",
    "distance",
    "geodesic",
    "classify",
    "axis_segment",
    "axis_overlap_edges",
]


@dataclass(frozen=True)
class TreeVertex:
    """Coset ``rep * G_side`` in canonical form."""

    rep: FPElement
    side: int

    def __post_init__(self):
        if self.side not in (0, 1):
            raise ValueError("side must be 0 or 1")
        if self.rep.syls and self.rep.syls[-1][0] == self.side:
            raise ValueError("representative ends in its own side; use canonicalize")

    def __str__(self) -> str:
        return f"{self.rep} . {self.rep.group.factors[self.side].name}"


@dataclass(frozen=True)
class Elliptic:
    """Fixes ``fixed``; ``None`` means the identity, which fixes everything."""

    fixed: TreeVertex | None


@dataclass(frozen=True)
class Hyperbolic:
    translation: int


ActionClass = Union[Elliptic, Hyperbolic]


def _group_of(v: TreeVertex) -> FreeProductGroup:
    return v.rep.group


def _require_two_factor(group: FreeProductGroup):
    if len(group.factors) != 2:
        raise ValueError("the tree is defined for two-factor splittings")


def canonicalize(g: FPElement, side: int) -> TreeVertex:
    """Vertex ``g*G_side``; trailing side syllables are absorbed into the coset."""
    _require_two_factor(g.group)
    if g.syls and g.syls[-1][0] == side:
        g = FPElement(g.group, g.syls[:-1])
    return TreeVertex(g, side)


def act(h: FPElement, v: TreeVertex) -> TreeVertex:
    return canonicalize(h.group.multiply(h, v.rep), v.side)


def _stripped_difference(u: TreeVertex, v: TreeVertex) -> FPElement:
    group = _group_of(u)
    if group is not _group_of(v):
        raise ValueError("vertices live in different ambient products")
    w = group.multiply(group.invert(u.rep), v.rep)
    if w.syls and w.syls[-1][0] == v.side:
        w = FPElement(group, w.syls[:-1])
    return w


def distance(u: TreeVertex, v: TreeVertex) -> int:
    """Tree distance, computed from the normal form of ``rep(u)^-1 rep(v)``."""
    w = _stripped_difference(u, v)
    if not w.syls:
        return 0 if u.side == v.side else 1
    return len(w.syls) + (0 if w.syls[0][0] == u.side else 1)


def geodesic(u: TreeVertex, v: TreeVertex) -> list[TreeVertex]:
    """The unique vertex path from ``u`` to ``v`` (endpoints included)."""
    group = _group_of(u)
    w = _stripped_difference(u, v)
    if not w.syls:
        return [u] if u.side == v.side else [u, v]
    steps: list[tuple[FPElement, int]] = [(group.identity(), u.side)]
    if w.syls[0][0] != u.side:
        steps.append((group.identity(), 1 - u.side))
    prefix = group.identity()
    for f, x in w.syls:
        prefix = group.multiply(prefix, group.syllable(f, x))
        steps.append((prefix, 1 - f))
    return [canonicalize(group.multiply(u.rep, rep), side) for rep, side in steps]


def classify(h: FPElement) -> ActionClass:
    _require_two_factor(h.group)
    conj, core = fp_cyclic_split(h)
    if core.is_identity():
        return Elliptic(None)
    if core.syl_length == 1:
        return Elliptic(canonicalize(conj, core.syls[0][0]))
    return Hyperbolic(core.syl_length)


def axis_segment(h: FPElement, copies: int) -> list[TreeVertex]:
    """A window of the axis of a hyperbolic ``h``.

    Concatenates the geodesics between the core's powers applied to the
    ``G_0`` base vertex for exponents ``-copies .. copies``, then translates
    by the conjugator; ``2 * copies * tr(h) + 1`` vertices in axis order.
    """
    if copies < 1:
        raise ValueError("copies must be >= 1")
    group = h.group
    conj, core = fp_cyclic_split(h)
    if core.syl_length < 2:
        raise ValueError("axis is defined only for hyperbolic elements")
    anchors = [
        canonicalize(group.power(core, t), 0) for t in range(-copies, copies + 1)
    ]
    path: list[TreeVertex] = []
    for s, t in pairwise(anchors):
        leg = geodesic(s, t)
        path.extend(leg if not path else leg[1:])
    return [act(conj, x) for x in path]


def axis_overlap_edges(u: FPElement, v: FPElement, radius: int) -> int:
    """Number of tree edges shared by the two axis windows of the given radius."""
    seg_u = axis_segment(u, radius)
    seg_v = axis_segment(v, radius)
    edges_u = {frozenset(p) for p in pairwise(seg_u)}
    edges_v = {frozenset(p) for p in pairwise(seg_v)}
    return len(edges_u & edges_v)
