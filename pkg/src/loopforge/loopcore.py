"""Cayley tables, loop validation and the structural tests built on them."""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .permgroup import (GroupClass, GroupDescriptor, Parity, Permutation,
                        classify_group, sgs_from_generators)


class TableError(ValueError):
    """A table has cells outside ``{0..n-1}`` or the wrong shape."""


class CayleyTable:
    """An ``n x n`` operation table over ``{0..n-1}``; ``t[a, b] == a*b``."""

    __slots__ = ("_cells", "_rows")

    def __init__(self, cells):
        try:
            arr = np.array(cells, dtype=np.int64)
        except (ValueError, TypeError) as exc:
            raise TableError(f"not a square integer table: {exc}") from None
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise TableError(f"table must be square and nonempty, got shape {arr.shape}")
        n = arr.shape[0]
        bad = np.argwhere((arr < 0) | (arr >= n))
        if len(bad):
            i, j = bad[0]
            raise TableError(f"cell [{i},{j}] = {arr[i, j]} is outside 0..{n - 1}")
        arr.setflags(write=False)
        self._cells = arr
        self._rows = tuple(tuple(int(x) for x in row) for row in arr)

    @property
    def order(self) -> int:
        return self._cells.shape[0]

    n = order

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def __eq__(self, other):
        return isinstance(other, CayleyTable) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"CayleyTable(order={self.order})"

    def __str__(self):
        w = len(str(self.order - 1))
        return "\n".join(" ".join(str(x).rjust(w) for x in row) for row in self._rows)

    def relabel(self, sigma) -> "CayleyTable":
        """Isomorphic copy under the relabeling ``x -> sigma[x]``."""
        sigma = np.asarray(sigma)
        n = self.order
        out = np.empty((n, n), dtype=np.int64)
        out[np.ix_(sigma, sigma)] = sigma[self._cells]
        return CayleyTable(out)

    def transpose(self) -> "CayleyTable":
        return CayleyTable(self._cells.T)


def cyclic_group(n: int) -> CayleyTable:
    """Addition table of ``Z_n``."""
    idx = np.arange(n)
    return CayleyTable((idx[:, None] + idx[None, :]) % n)


@dataclass(frozen=True)
class Validation:
    status: str                       # 'NotLatin' | 'LatinNotLoop' | 'Loop'
    identity: int | None = None
    witness: tuple | None = None      # ('row'|'column', index, repeated value)

    @property
    def is_latin(self) -> bool:
        return self.status != "NotLatin"

    @property
    def is_loop(self) -> bool:
        return self.status == "Loop"


def validate(t: CayleyTable) -> Validation:
    rows = t.rows
    n = t.order
    for i, row in enumerate(rows):
        seen = set()
        for x in row:
            if x in seen:
                return Validation("NotLatin", witness=("row", i, x))
            seen.add(x)
    for j in range(n):
        seen = set()
        for i in range(n):
            x = rows[i][j]
            if x in seen:
                return Validation("NotLatin", witness=("column", j, x))
            seen.add(x)
    ident = tuple(range(n))
    for e in range(n):
        if rows[e] == ident and all(rows[i][e] == i for i in range(n)):
            return Validation("Loop", identity=e)
    return Validation("LatinNotLoop")


def _require_loop(t: CayleyTable) -> int:
    v = validate(t)
    if not v.is_loop:
        raise TableError(f"table is not a loop ({v.status}, witness={v.witness})")
    return v.identity


def left_action(t: CayleyTable, a: int) -> Permutation:
    """``L_a : b -> a*b``."""
    return Permutation(t.rows[a])


def right_action(t: CayleyTable, a: int) -> Permutation:
    """``R_a : b -> b*a``."""
    return Permutation(row[a] for row in t.rows)


def is_commutative(t: CayleyTable) -> bool:
    return bool(np.array_equal(t.cells, t.cells.T))


def is_associative(t: CayleyTable) -> bool:
    c = t.cells
    # c[c][a, b, k] = (a*b)*k ; c[:, c][a, b, k] = a*(b*k)
    return bool(np.array_equal(c[c], c[:, c]))


def multiplication_group(t: CayleyTable, seed: int = 0) -> GroupDescriptor:
    """Group generated by all left and right actions."""
    _require_loop(t)
    n = t.order
    gens = [left_action(t, a) for a in range(n)]
    if not is_commutative(t):
        gens += [right_action(t, a) for a in range(n)]
    return sgs_from_generators(gens, degree=n, seed=seed)


def subloop_closure(t: CayleyTable, seed) -> frozenset[int]:
    """Smallest subset containing ``seed`` and closed under the operation.

    In a finite loop this is already the generated subloop: translations
    restricted to a finite closed set are injective, hence onto, so both
    divisions stay inside and the identity is reached.
    """
    rows = t.rows
    members = set(seed)
    if not members:
        raise ValueError("seed must be nonempty")
    order = list(members)
    k = 0
    while k < len(order):
        a = order[k]
        ra = rows[a]
        for b in order[: k + 1]:
            for x in (ra[b], rows[b][a]):
                if x not in members:
                    members.add(x)
                    order.append(x)
        k += 1
    return frozenset(members)


def is_unbreakable(t: CayleyTable) -> bool:
    """True iff every non-identity element generates the whole loop."""
    e = _require_loop(t)
    n = t.order
    return all(len(subloop_closure(t, {k})) == n for k in range(n) if k != e)


@functools.lru_cache(maxsize=None)
def _relabelings(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All ``tau`` (new label -> old) fixing 0, and their inverses."""
    tau = np.array([(0,) + r for r in itertools.permutations(range(1, n))], dtype=np.int64)
    sigma = np.empty_like(tau)
    np.put_along_axis(sigma, tau, np.arange(n)[None, :].repeat(len(tau), 0), axis=1)
    return tau, sigma


def canonical_form(t: CayleyTable) -> CayleyTable:
    """Lexicographically least relabeling with the identity kept at 0.

    Exhaustive over the ``(n-1)!`` relabelings, so only sensible for small
    orders (the tables of all relabelings are built at once).
    """
    e = _require_loop(t)
    if e != 0:
        raise TableError("canonical_form expects the identity at 0")
    n = t.order
    if n <= 2:
        return t
    tau, sigma = _relabelings(n)
    c = t.cells
    # relabeled[k, r, s] = sigma_k[c[tau_k[r], tau_k[s]]]
    inner = c[tau[:, :, None], tau[:, None, :]]
    relabeled = np.take_along_axis(sigma, inner.reshape(len(tau), -1), axis=1)
    keys = relabeled[:, n:]          # row 0 is always 0..n-1
    best = np.lexsort(keys.T[::-1])[0]
    return CayleyTable(relabeled[best].reshape(n, n))


@dataclass
class LoopReport:
    order: int
    is_latin: bool
    is_loop: bool
    identity: int | None = None
    commutative: bool | None = None
    associative: bool | None = None
    unbreakable: bool | None = None
    group_class: GroupClass | None = None
    group_order: int | None = None
    generator_parities: dict = field(default_factory=dict)
    witness: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "order": self.order,
            "is_latin": self.is_latin,
            "is_loop": self.is_loop,
            "identity": self.identity,
            "commutative": self.commutative,
            "associative": self.associative,
            "unbreakable": self.unbreakable,
            "group_class": None if self.group_class is None else str(self.group_class),
            "group_order": None if self.group_order is None else str(self.group_order),
            "generator_parities": self.generator_parities,
            "witness": None if self.witness is None else list(self.witness),
        }


def analyze(t: CayleyTable, seed: int = 0) -> LoopReport:
    v = validate(t)
    rep = LoopReport(order=t.order, is_latin=v.is_latin, is_loop=v.is_loop,
                     identity=v.identity, witness=v.witness)
    if not v.is_loop:
        return rep
    n = t.order
    rep.commutative = is_commutative(t)
    rep.associative = is_associative(t)
    rep.unbreakable = is_unbreakable(t)
    gd = multiplication_group(t, seed=seed)
    rep.group_class = classify_group(gd)
    rep.group_order = gd.order
    rep.generator_parities = {
        "left": [str(left_action(t, a).parity()) for a in range(n)],
    }
    if not rep.commutative:
        rep.generator_parities["right"] = [str(right_action(t, a).parity()) for a in range(n)]
    if rep.associative and rep.unbreakable and n > 1:
        # only the cyclic groups of prime order qualify
        assert n == 2 or all(n % d for d in range(2, isqrt(n) + 1)), "associative unbreakable loop of composite order"
    return rep


def all_left_even(t: CayleyTable) -> bool:
    return all(left_action(t, a).parity() is Parity.EVEN for a in range(t.order))
