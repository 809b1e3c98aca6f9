"""Partially filled Cayley tables."""
from __future__ import annotations

import numpy as np

from .loopcore import CayleyTable

UNDEF = -1


class PartialCayleyTable:
    """An ``n x n`` table whose undefined cells hold ``UNDEF``.

    Mutable while a construction is in progress; ``freeze`` converts a fully
    defined table into a :class:`CayleyTable`.
    """

    def __init__(self, n: int, cells=None):
        self.n = n
        if cells is None:
            self.cells = np.full((n, n), UNDEF, dtype=np.int64)
        else:
            self.cells = np.array(cells, dtype=np.int64)
            if self.cells.shape != (n, n):
                raise ValueError(f"expected shape {(n, n)}, got {self.cells.shape}")

    def copy(self) -> "PartialCayleyTable":
        return PartialCayleyTable(self.n, self.cells.copy())

    def __getitem__(self, idx) -> int | None:
        v = int(self.cells[idx])
        return None if v == UNDEF else v

    def __setitem__(self, idx, value) -> None:
        self.cells[idx] = UNDEF if value is None else value

    def set_sym(self, i: int, j: int, value: int) -> None:
        self.cells[i, j] = value
        self.cells[j, i] = value

    def is_defined(self, i: int, j: int) -> bool:
        return self.cells[i, j] != UNDEF

    def undefined(self) -> list[tuple[int, int]]:
        return [tuple(map(int, x)) for x in np.argwhere(self.cells == UNDEF)]

    @property
    def zone(self) -> list[tuple[int, int]]:
        return self.undefined()

    def is_complete(self) -> bool:
        return not (self.cells == UNDEF).any()

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.cells, self.cells.T))

    def conflicts(self) -> list[tuple[str, int, int]]:
        """Latin violations among defined cells as ``(line kind, index, value)``."""
        out = []
        for kind, arr in (("row", self.cells), ("column", self.cells.T)):
            for i, line in enumerate(arr):
                vals = line[line != UNDEF]
                uniq, counts = np.unique(vals, return_counts=True)
                out += [(kind, i, int(v)) for v in uniq[counts > 1]]
        return out

    def freeze(self) -> CayleyTable:
        if not self.is_complete():
            raise ValueError(f"{len(self.undefined())} cells still undefined")
        return CayleyTable(self.cells)

    def __str__(self):
        w = len(str(self.n - 1))
        return "\n".join(" ".join("?".rjust(w) if x == UNDEF else str(x).rjust(w) for x in row)
                         for row in self.cells)
