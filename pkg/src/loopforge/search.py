"""Exhaustive isomorph-free enumeration of small loops and the unbreakable census."""
from __future__ import annotations

import itertools
import random
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .loopcore import CayleyTable, analyze, canonical_form

log = logging.getLogger(__name__)

MAX_DESK_ORDER = 7


class SearchTooLarge(ValueError):
    pass


def iter_reduced_tables(n: int, commutative: bool = False,
                        row1: tuple[int, ...] | None = None,
                        no_square_roots_of_identity: bool = False) -> Iterator[list[list[int]]]:
    """Yield every reduced latin square of order ``n`` (row 0 and column 0 in
    natural order) as a list of rows, in lexicographic order.

    ``row1`` pins the second row.  ``no_square_roots_of_identity`` prunes
    tables with ``a*a == 0`` for some ``a != 0`` (those have a 2-element
    subloop).  The yielded list is reused between iterations; copy it.
    """
    if n < 1:
        raise ValueError("order must be positive")
    grid = [[-1] * n for _ in range(n)]
    full = (1 << n) - 1
    rowmask = [0] * n
    colmask = [0] * n
    for j in range(n):
        grid[0][j] = j
        grid[j][0] = j
        colmask[j] |= 1 << j
        rowmask[j] |= 1 << j
    rowmask[0] = full
    colmask[0] = full
    if n == 1:
        yield grid
        return

    if commutative:
        cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    else:
        cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    ncells = len(cells)

    def place(i, j, v):
        grid[i][j] = v
        rowmask[i] |= 1 << v
        colmask[j] |= 1 << v
        if commutative and i != j:
            grid[j][i] = v
            rowmask[j] |= 1 << v
            colmask[i] |= 1 << v

    def unplace(i, j, v):
        grid[i][j] = -1
        rowmask[i] &= ~(1 << v)
        colmask[j] &= ~(1 << v)
        if commutative and i != j:
            grid[j][i] = -1
            rowmask[j] &= ~(1 << v)
            colmask[i] &= ~(1 << v)

    start = 0
    if row1 is not None:
        if len(row1) != n or row1[0] != 1:
            raise ValueError(f"row1 must have length {n} and start with 1")
        for j in range(1, n):
            v = row1[j]
            if (rowmask[1] | colmask[j]) >> v & 1:
                return
            if commutative and j > 1 and (rowmask[j] | colmask[1]) >> v & 1:
                return
            place(1, j, v)
        start = sum(1 for c in cells if c[0] == 1)

    # iterative DFS over cells
    k = start
    avail_stack: list[int] = [0] * ncells

    def available(idx):
        i, j = cells[idx]
        used = rowmask[i] | colmask[j]
        if commutative and i != j:
            used |= rowmask[j] | colmask[i]
        avail = full & ~used
        if no_square_roots_of_identity and i == j:
            avail &= ~1
        return avail

    if k == ncells:
        yield grid
        return
    avail_stack[k] = available(k)
    while k >= start:
        avail = avail_stack[k]
        i, j = cells[k]
        if grid[i][j] != -1:
            unplace(i, j, grid[i][j])
        if not avail:
            k -= 1
            continue
        v = (avail & -avail).bit_length() - 1
        avail_stack[k] = avail & ~(1 << v)
        place(i, j, v)
        if k + 1 == ncells:
            yield grid
            continue
        k += 1
        avail_stack[k] = available(k)
    # leave grid clean for the caller's sake
    for idx in range(start, ncells):
        i, j = cells[idx]
        if grid[i][j] != -1:
            unplace(i, j, grid[i][j])


def _check_order(n: int, allow_long: bool) -> None:
    if n >= MAX_DESK_ORDER and not allow_long:
        raise SearchTooLarge(
            f"enumerating all loops of order {n} is long-running; "
            "pass allow_long=True (--allow-long on the command line)")


def enumerate_loops(n: int, commutative: bool = False,
                    allow_long: bool = False) -> Iterator[CayleyTable]:
    """One canonical representative per isomorphism class of loops of order n."""
    if not commutative:
        _check_order(n, allow_long)
    seen = set()
    for grid in iter_reduced_tables(n, commutative=commutative):
        c = canonical_form(CayleyTable(grid))
        if c not in seen:
            seen.add(c)
            yield c


@dataclass
class Census:
    order: int
    classes: int = 0
    unbreakable: int = 0              # nonassociative unbreakable loops
    unbreakable_groups: int = 0       # associative ones (Z_p)
    by_group: Counter = field(default_factory=Counter)
    commutative_unbreakable: int = 0
    commutative_only: bool = False

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "order": self.order,
            "commutative_only": self.commutative_only,
            "classes": self.classes,
            "unbreakable": self.unbreakable,
            "unbreakable_groups": self.unbreakable_groups,
            "by_group": dict(sorted(self.by_group.items())),
            "commutative_unbreakable": self.commutative_unbreakable,
        }

    def merge(self, other: "Census") -> "Census":
        return Census(self.order, self.classes + other.classes,
                      self.unbreakable + other.unbreakable,
                      self.unbreakable_groups + other.unbreakable_groups,
                      self.by_group + other.by_group,
                      self.commutative_unbreakable + other.commutative_unbreakable,
                      self.commutative_only)


def _summarize(t: CayleyTable) -> tuple[bool, bool, str | None, bool]:
    rep = analyze(t)
    return rep.unbreakable, rep.associative, str(rep.group_class) if rep.unbreakable else None, rep.commutative


def _tally(census: Census, summary) -> None:
    unbreakable, associative, gclass, commutative = summary
    census.classes += 1
    if not unbreakable:
        return
    if associative:
        census.unbreakable_groups += 1
        return
    census.unbreakable += 1
    census.by_group[gclass] += 1
    if commutative:
        census.commutative_unbreakable += 1


def _branch_classes(args) -> dict:
    n, commutative, row1 = args
    out = {}
    for grid in iter_reduced_tables(n, commutative=commutative, row1=row1):
        c = canonical_form(CayleyTable(grid))
        if c.rows not in out:
            out[c.rows] = None
    return out


def _row1_choices(n: int) -> list[tuple[int, ...]]:
    """Candidate second rows: start with 1 and clash with no column of row 0."""
    return [(1,) + rest for rest in itertools.permutations([0] + list(range(2, n)))
            if all(rest[j - 1] != j for j in range(1, n))]


def census(n: int, commutative: bool = False, allow_long: bool = False,
           jobs: int = 1, checkpoint: str | Path | None = None,
           emit_dir: str | Path | None = None) -> Census:
    """Count loops of order ``n`` up to isomorphism and classify the
    unbreakable ones by multiplication group.

    ``commutative=True`` restricts to commutative loops (much cheaper).
    With ``checkpoint``, progress is recorded per second-row branch in a plain
    text file and a rerun resumes from it.
    """
    if not commutative:
        _check_order(n, allow_long)
    result = Census(order=n, commutative_only=commutative)
    if n == 1:
        _tally(result, _summarize(CayleyTable([[0]])))
        return result

    branches = _row1_choices(n)
    done: set[tuple] = set()
    classes: dict[tuple, None] = {}
    ckpt = Path(checkpoint) if checkpoint else None
    if ckpt and ckpt.exists():
        done, classes = _read_checkpoint(ckpt)
        log.info("resuming census from %s: %d branches done", ckpt, len(done))
    todo = [b for b in branches if b not in done]
    work = [(n, commutative, b) for b in todo]

    def absorb(branch, found):
        for rows in found:
            classes.setdefault(rows, None)
        done.add(branch)
        if ckpt:
            _write_checkpoint(ckpt, n, done, classes)

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for branch, found in zip(todo, pool.map(_branch_classes, work)):
                absorb(branch, found)
    else:
        for branch, args in zip(todo, work):
            absorb(branch, _branch_classes(args))

    emit = Path(emit_dir) if emit_dir else None
    if emit:
        emit.mkdir(parents=True, exist_ok=True)
    from .formats import write_table
    for idx, rows in enumerate(sorted(classes)):
        t = CayleyTable(rows)
        _tally(result, _summarize(t))
        if emit:
            write_table(t, emit / f"loop{n}_{idx:05d}.txt")
    return result


def _write_checkpoint(path: Path, n: int, done, classes) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w") as fh:
        fh.write(f"census-checkpoint n={n}\n")
        for b in sorted(done):
            fh.write("done " + " ".join(map(str, b)) + "\n")
        for rows in classes:
            fh.write("class " + " ".join(str(x) for row in rows for x in row) + "\n")
    tmp.replace(path)


def _read_checkpoint(path: Path):
    done, classes = set(), {}
    lines = path.read_text().splitlines()
    n = int(lines[0].split("n=")[1])
    for line in lines[1:]:
        kind, _, rest = line.partition(" ")
        vals = tuple(int(x) for x in rest.split())
        if kind == "done":
            done.add(vals)
        elif kind == "class":
            classes[tuple(vals[i * n:(i + 1) * n] for i in range(n))] = None
    return done, classes


def first_unbreakable(n: int, group_kind: str = "Symmetric", commutative: bool = False,
                      limit: int | None = None) -> CayleyTable | None:
    """First table (lexicographic DFS over reduced tables) that is a
    nonassociative unbreakable loop whose multiplication group has the given
    kind.  Returns its canonical form when ``n <= 8``."""
    from .loopcore import is_unbreakable, is_associative, multiplication_group
    from .permgroup import classify_group
    for count, grid in enumerate(iter_reduced_tables(
            n, commutative=commutative, no_square_roots_of_identity=True)):
        if limit is not None and count >= limit:
            return None
        t = CayleyTable(grid)
        if not is_unbreakable(t) or is_associative(t):
            continue
        if classify_group(multiplication_group(t)).kind == group_kind:
            return t
    return None


def smallest_unbreakable(n: int, group_kind: str = "Symmetric") -> CayleyTable:
    """Canonically least nonassociative unbreakable loop of order ``n <= 6``
    with the given multiplication group kind."""
    _check_order(n, False)
    best = None
    for t in enumerate_loops(n):
        rep = analyze(t)
        if rep.unbreakable and not rep.associative and rep.group_class.kind == group_kind:
            if best is None or t.rows < best.rows:
                best = t
    if best is None:
        raise LookupError(f"no unbreakable loop of order {n} with group {group_kind}")
    return best


def random_reduced_table(n: int, rng: random.Random, node_limit: int = 20000,
                         no_square_roots_of_identity: bool = True) -> CayleyTable | None:
    """One reduced latin square found by depth-first search with values
    tried in an order drawn from ``rng``; ``None`` if ``node_limit`` nodes
    pass without a completion."""
    full = (1 << n) - 1
    grid = [[-1] * n for _ in range(n)]
    rowmask = [0] * n
    colmask = [0] * n
    for j in range(n):
        grid[0][j] = grid[j][0] = j
        rowmask[j] |= 1 << j
        colmask[j] |= 1 << j
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    nodes = 0

    def dfs(k):
        nonlocal nodes
        if k == len(cells):
            return True
        nodes += 1
        if nodes > node_limit:
            return False
        i, j = cells[k]
        avail = full & ~(rowmask[i] | colmask[j])
        if no_square_roots_of_identity and i == j:
            avail &= ~1
        values = [v for v in range(n) if avail >> v & 1]
        rng.shuffle(values)
        for v in values:
            grid[i][j] = v
            rowmask[i] |= 1 << v
            colmask[j] |= 1 << v
            if dfs(k + 1):
                return True
            rowmask[i] &= ~(1 << v)
            colmask[j] &= ~(1 << v)
        grid[i][j] = -1
        return False

    return CayleyTable(grid) if dfs(0) else None


def random_unbreakable(n: int, group_kind: str = "Symmetric", seed: int = 0,
                       restarts: int = 1000) -> CayleyTable | None:
    """Nonassociative unbreakable loop of order ``n`` with the given group
    kind, from seeded random restarts; ``None`` if none turns up."""
    from .loopcore import is_associative, is_unbreakable, multiplication_group
    from .permgroup import classify_group
    for k in range(restarts):
        t = random_reduced_table(n, random.Random(seed + k))
        if t is None or not is_unbreakable(t) or is_associative(t):
            continue
        if classify_group(multiplication_group(t)).kind == group_kind:
            return t
    return None
