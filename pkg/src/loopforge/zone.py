"""Depth-first completion of symmetric partial latin squares.

The table is treated as a set of *lines*: line ``k`` is row ``k``, which in a
symmetric table is also column ``k``.  An undefined cell ``(i, j)`` with
``i <= j`` is one variable belonging to lines ``i`` and ``j``.  Variables are
visited in row-major order and values are tried in ascending order, so the
first solution is deterministic.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .loopcore import CayleyTable
from .partial import UNDEF, PartialCayleyTable
from .permgroup import Parity, _cycle_parity


@dataclass
class ZoneConstraints:
    """Side conditions on a completion.

    ``alphabet``: values allowed in undefined cells (``None``: anything the
    latin property permits).  ``forbid_zero_on_antidiagonal``: every cell
    ``[i, n-i]`` must be nonzero.  ``row_parity_targets``: required parity of
    the left action ``L_i`` for the listed rows.  ``require_odd_row``: at least
    one row must be an odd permutation.  ``forbidden``: per-cell excluded
    values.
    """

    alphabet: frozenset[int] | None = frozenset(range(6))
    forbid_zero_on_antidiagonal: bool = True
    row_parity_targets: dict[int, Parity] = field(default_factory=dict)
    require_odd_row: bool = False
    forbidden: dict[tuple[int, int], set[int]] = field(default_factory=dict)

    @classmethod
    def all_even(cls, n: int, **kw) -> "ZoneConstraints":
        return cls(row_parity_targets={i: Parity.EVEN for i in range(n)}, **kw)


class ZoneSearchError(RuntimeError):
    pass


def _line_parity(grid: np.ndarray, k: int) -> int:
    return _cycle_parity(grid[k].tolist())


def iter_completions(pt: PartialCayleyTable, c: ZoneConstraints | None = None,
                     node_limit: int | None = None,
                     rng: random.Random | None = None) -> Iterator[CayleyTable]:
    """Yield completions satisfying ``c`` in deterministic order.

    Values are tried in ascending order, or in an order drawn from ``rng``
    (still reproducible for a seeded generator).  Raises
    :class:`ZoneSearchError` if ``node_limit`` search nodes are exhausted
    before the search space is.
    """
    c = c or ZoneConstraints()
    n = pt.n
    grid = pt.cells.copy()
    if not np.array_equal(grid, grid.T):
        raise ValueError("partial table must be symmetric")
    if pt.conflicts():
        return
    full = (1 << n) - 1
    alpha = full if c.alphabet is None else sum(1 << v for v in c.alphabet if v < n)

    used = [0] * n
    for k in range(n):
        for v in grid[k]:
            if v != UNDEF:
                used[k] |= 1 << int(v)

    variables = [(int(i), int(j)) for i, j in np.argwhere(grid == UNDEF) if i <= j]
    nv = len(variables)
    line_vars: list[list[int]] = [[] for _ in range(n)]
    for idx, (i, j) in enumerate(variables):
        line_vars[i].append(idx)
        if i != j:
            line_vars[j].append(idx)
    remaining = [len(v) for v in line_vars]

    static_mask = []
    for (i, j) in variables:
        m = alpha
        if c.forbid_zero_on_antidiagonal and i + j == n:
            m &= ~1
        for v in set(c.forbidden.get((i, j), ())) | set(c.forbidden.get((j, i), ())):
            m &= ~(1 << v)
        static_mask.append(m)

    targets = {k: int(v) for k, v in c.row_parity_targets.items() if 0 <= k < n}

    # conditions already decided by the defined cells
    if c.forbid_zero_on_antidiagonal:
        for i in range(1, n):
            if grid[i, n - i] == 0:
                return
    for k, want in targets.items():
        if remaining[k] == 0 and _line_parity(grid, k) != want:
            return

    assigned = [-1] * nv
    nodes = 0

    def avail(idx):
        i, j = variables[idx]
        return static_mask[idx] & ~(used[i] | used[j])

    def line_ok(k):
        """Every value missing from line k still has a free cell to go to."""
        if remaining[k] == 0:
            return True
        missing = full & ~used[k]
        reach = 0
        for idx in line_vars[k]:
            if assigned[idx] < 0:
                a = avail(idx)
                if not a:
                    return False
                reach |= a
        return missing & ~reach == 0

    def finished_ok():
        if c.require_odd_row:
            return any(_line_parity(grid, k) for k in range(n))
        return True

    def dfs(pos):
        nonlocal nodes
        if pos == nv:
            if finished_ok():
                yield CayleyTable(grid)
            return
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise ZoneSearchError(f"node limit {node_limit} reached")
        i, j = variables[pos]
        a = avail(pos)
        if rng is None:
            values = []
            while a:
                low = a & -a
                values.append(low.bit_length() - 1)
                a ^= low
        else:
            values = [v for v in range(n) if a >> v & 1]
            rng.shuffle(values)
        for v in values:
            low = 1 << v
            grid[i, j] = v
            grid[j, i] = v
            used[i] |= low
            used[j] |= low
            assigned[pos] = v
            remaining[i] -= 1
            if i != j:
                remaining[j] -= 1
            ok = line_ok(i) and (i == j or line_ok(j))
            if ok:
                for k in ((i,) if i == j else (i, j)):
                    if remaining[k] == 0 and k in targets and _line_parity(grid, k) != targets[k]:
                        ok = False
                        break
            if ok:
                yield from dfs(pos + 1)
            remaining[i] += 1
            if i != j:
                remaining[j] += 1
            assigned[pos] = -1
            used[i] &= ~low
            used[j] &= ~low
            grid[i, j] = UNDEF
            grid[j, i] = UNDEF

    yield from dfs(0)


def complete_zone(pt: PartialCayleyTable, c: ZoneConstraints | None = None,
                  node_limit: int | None = None) -> CayleyTable | None:
    """First completion of ``pt`` satisfying ``c``; ``None`` if there is none."""
    return next(iter_completions(pt, c, node_limit), None)
