"""Combinatorial satisfaction-pattern checks over pair-indexed matrices.

The engine is predicate-agnostic: it consumes boolean matrices indexed by
pairs ``((i,j),(k,l))`` over ``[1..n]^2`` and checks them against the block
pattern "true iff the rows differ or the positions coincide".  A formula
realizing that pattern on suitable witnesses cannot be the conjunction of an
equation and a co-equation; what the software verifies is the finite-n
instance of the pattern, nothing more.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "SatMatrix",
    "expected_pattern",
    "matches_pattern",
    "check_order_witness",
    "extract_noneq_row",
    "to_json",
    "from_json",
]


class SatMatrix:
    """Fully populated boolean cells over ``([1..n]^2)^2``."""

    __slots__ = ("n", "cells")

    def __init__(self, n: int, cells: np.ndarray):
        if n < 1:
            raise ValueError("matrix size must be >= 1")
        cells = np.asarray(cells, dtype=bool)
        if cells.shape != (n, n, n, n):
            raise ValueError(f"cells must have shape {(n, n, n, n)}")
        self.n = n
        self.cells = cells
        self.cells.setflags(write=False)

    @staticmethod
    def from_cells(n: int, fill) -> "SatMatrix":
        """Populate from ``fill(i, j, k, l)`` over 1-based indices."""
        arr = np.empty((n, n, n, n), dtype=bool)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        arr[i, j, k, l] = fill(i + 1, j + 1, k + 1, l + 1)
        return SatMatrix(n, arr)

    def get(self, i: int, j: int, k: int, l: int) -> bool:
        return bool(self.cells[i - 1, j - 1, k - 1, l - 1])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SatMatrix)
            and self.n == other.n
            and bool(np.array_equal(self.cells, other.cells))
        )

    def __repr__(self) -> str:
        return f"SatMatrix(n={self.n})"


def expected_pattern(n: int) -> SatMatrix:
    """Cell ``((i,j),(k,l))`` true iff ``i != k`` or ``(i,j) == (k,l)``."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    i, j, k, l = np.ogrid[1:n + 1, 1:n + 1, 1:n + 1, 1:n + 1]
    return SatMatrix(n, (i != k) | ((i == k) & (j == l)))


def matches_pattern(m: SatMatrix) -> bool:
    return m == expected_pattern(m.n)


def check_order_witness(rows) -> bool:
    """True iff the square matrix is true strictly above the diagonal and
    false on it (entries below the diagonal are unconstrained)."""
    arr = np.asarray(rows, dtype=bool)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("order-witness input must be a square boolean matrix")
    n = arr.shape[0]
    upper = np.triu_indices(n, k=1)
    return bool(arr[upper].all()) and not arr.diagonal().any()


def extract_noneq_row(m: SatMatrix, i0: int):
    """Negated slice of row block ``i0``: entry ``(j, l)`` is ``not cell((i0,j),(i0,l))``.

    When ``m`` matches the pattern the slice is an order witness (true off
    the diagonal, false on it).
    """
    if not matches_pattern(m):
        raise ValueError("matrix does not match the satisfaction pattern")
    if not 1 <= i0 <= m.n:
        raise ValueError(f"row index {i0} out of range 1..{m.n}")
    block = ~m.cells[i0 - 1, :, i0 - 1, :]
    return [[bool(x) for x in row] for row in block]


def _pair_index(n: int, i: int, j: int) -> int:
    return (i - 1) * n + (j - 1)


def to_json(m: SatMatrix) -> dict:
    """Dense row-major form: rows/columns indexed by ``(i-1)*n + (j-1)``."""
    n = m.n
    dense = [
        [bool(m.cells[r // n, r % n, c // n, c % n]) for c in range(n * n)]
        for r in range(n * n)
    ]
    return {"n": n, "matrix": dense}


def from_json(obj: dict) -> SatMatrix:
    """Accept the dense form or the sparse ``cells`` list; both must be full."""
    n = int(obj["n"])
    if "matrix" in obj:
        dense = obj["matrix"]
        if len(dense) != n * n or any(len(row) != n * n for row in dense):
            raise ValueError("dense matrix has wrong dimensions")
        arr = np.array(dense, dtype=bool).reshape(n, n, n, n)
        return SatMatrix(n, arr)
    if "cells" in obj:
        arr = np.empty((n, n, n, n), dtype=bool)
        seen = np.zeros((n, n, n, n), dtype=bool)
        for (i, j), (k, l), value in obj["cells"]:
            if not all(1 <= x <= n for x in (i, j, k, l)):
                raise ValueError(f"cell position (({i},{j}),({k},{l})) out of range")
            if seen[i - 1, j - 1, k - 1, l - 1]:
                raise ValueError(f"duplicate cell (({i},{j}),({k},{l}))")
            seen[i - 1, j - 1, k - 1, l - 1] = True
            arr[i - 1, j - 1, k - 1, l - 1] = bool(value)
        if not seen.all():
            raise ValueError("sparse cell list does not populate every cell")
        return SatMatrix(n, arr)
    raise ValueError("expected 'matrix' or 'cells' in SatMatrix JSON")
