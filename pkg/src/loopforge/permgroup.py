"""Permutations and permutation groups.

Permutations act on ``{0, ..., n-1}`` and compose right-to-left:
``compose(f, g)(x) == f(g(x))``.  Groups are represented by a base and
strong generating set built with a Schreier-Sims procedure; the order is an
exact Python integer so that ``61!`` and friends are handled without fuss.
"""
from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass, field
from math import factorial, gcd
from typing import Iterable, Sequence


class Parity(enum.IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)

    def __str__(self):
        return self.name.lower()


class Permutation:
    """An immutable bijection of ``{0, ..., n-1}`` stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {list(images)}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._trusted(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        """Build from disjoint cycles, e.g. ``from_cycles(5, (0, 1, 2))``."""
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if x in seen or not 0 <= x < n:
                    raise ValueError(f"bad cycle {cyc} for degree {n}")
                seen.add(x)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                images[a] = b
        return cls._trusted(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def inverse(self) -> "Permutation":
        return Permutation._trusted(_inv(self.images))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        return cycle_decomposition(self)

    def parity(self) -> Parity:
        return parity(self)

    def is_even(self) -> bool:
        return parity(self) is Parity.EVEN

    def order(self) -> int:
        result = 1
        for c in cycle_decomposition(self):
            result = result * len(c) // gcd(result, len(c))
        return result

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({format_cycles(self)}, degree={self.degree})"

    def __str__(self):
        return format_images(self)


def _compose(f: tuple, g: tuple) -> tuple:
    return tuple(map(f.__getitem__, g))


def _inv(f: tuple) -> tuple:
    out = [0] * len(f)
    for i, x in enumerate(f):
        out[x] = i
    return tuple(out)


def compose(f: Permutation, g: Permutation) -> Permutation:
    """Return ``f o g``, i.e. the map ``x -> f(g(x))``."""
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} != {g.degree}")
    return Permutation._trusted(_compose(f.images, g.images))


def cycle_decomposition(f: Permutation) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each starting at its minimum, sorted by first point."""
    images = f.images
    seen = [False] * len(images)
    out = []
    for start in range(len(images)):
        if seen[start] or images[start] == start:
            continue
        cyc = [start]
        seen[start] = True
        x = images[start]
        while x != start:
            seen[x] = True
            cyc.append(x)
            x = images[x]
        out.append(tuple(cyc))
    return out


def _inversion_parity(images: Sequence[int]) -> int:
    inv = 0
    n = len(images)
    for i in range(n):
        a = images[i]
        for j in range(i + 1, n):
            if a > images[j]:
                inv += 1
    return inv & 1


def _cycle_parity(images: Sequence[int]) -> int:
    seen = bytearray(len(images))
    even_cycles = 0
    for start in range(len(images)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = 1
            x = images[x]
            length += 1
        if length % 2 == 0:
            even_cycles += 1
    return even_cycles & 1


def parity(f: Permutation, check: bool = False) -> Parity:
    """Parity by cycle type; ``check=True`` cross-checks against inversions."""
    p = _cycle_parity(f.images)
    if check:
        q = _inversion_parity(f.images)
        assert p == q, f"parity rules disagree on {f!r}"
    return Parity(p)


def sequence_parity(values: Sequence[int]) -> Parity:
    """Parity of a sequence of distinct integers read as a permutation of its
    sorted values (inversion count)."""
    return Parity(_inversion_parity(values))


def format_images(f: Permutation) -> str:
    return "[" + " ".join(map(str, f.images)) + "]"


def format_cycles(f: Permutation) -> str:
    cycles = cycle_decomposition(f)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse either ``[i0 i1 ...]`` image notation or ``(a b)(c d e)`` cycles.

    Cycle notation needs ``degree``.
    """
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ValueError(f"unterminated image list: {text!r}")
        body = text[1:-1].replace(",", " ").split()
        return Permutation(int(x) for x in body)
    if degree is None:
        raise ValueError("cycle notation requires a degree")
    if _CYCLE_RE.sub("", text).strip():
        raise ValueError(f"could not parse permutation {text!r}")
    cycles = []
    for m in _CYCLE_RE.finditer(text):
        pts = [int(x) for x in m.group(1).replace(",", " ").split()]
        if len(pts) > 1:
            cycles.append(pts)
    return Permutation.from_cycles(degree, *cycles)


# ---------------------------------------------------------------------------
# Schreier-Sims


class _Level:
    __slots__ = ("point", "gens", "trans", "itrans")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[tuple] = []
        # trans[x] maps point -> x; itrans[x] is its inverse
        self.trans: dict[int, tuple] = {}
        self.itrans: dict[int, tuple] = {}


class _Chain:
    def __init__(self, n: int):
        self.n = n
        self.ident = tuple(range(n))
        self.levels: list[_Level] = []

    def order(self) -> int:
        result = 1
        for lev in self.levels:
            result *= len(lev.trans)
        return result

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        """Return (residue, level reached)."""
        for i in range(start, len(self.levels)):
            lev = self.levels[i]
            x = g[lev.point]
            u_inv = lev.itrans.get(x)
            if u_inv is None:
                return g, i
            g = _compose(u_inv, g)
        return g, len(self.levels)

    def _extend_orbit(self, lev: _Level, new_gens: list[tuple]) -> None:
        if not lev.trans:
            lev.trans[lev.point] = self.ident
            lev.itrans[lev.point] = self.ident
            frontier = [lev.point]
            gens = lev.gens
        else:
            # apply only the new generators to the existing orbit, then close
            frontier = []
            for s in new_gens:
                for x in list(lev.trans):
                    y = s[x]
                    if y not in lev.trans:
                        u = _compose(s, lev.trans[x])
                        lev.trans[y] = u
                        lev.itrans[y] = _inv(u)
                        frontier.append(y)
            gens = lev.gens
        while frontier:
            nxt = []
            for x in frontier:
                ux = lev.trans[x]
                for s in gens:
                    y = s[x]
                    if y not in lev.trans:
                        u = _compose(s, ux)
                        lev.trans[y] = u
                        lev.itrans[y] = _inv(u)
                        nxt.append(y)
            frontier = nxt

    def add_residue(self, h: tuple, depth: int) -> None:
        """Insert a nontrivial residue that fixes the first ``depth`` base points."""
        if depth == len(self.levels):
            moved = next(i for i, x in enumerate(h) if i != x)
            self.levels.append(_Level(moved))
        for i in range(depth + 1):
            lev = self.levels[i]
            lev.gens.append(h)
            self._extend_orbit(lev, [h])


def _product_replacement(gens: list[tuple], n: int, rng: random.Random):
    slots = list(gens)
    while len(slots) < 10:
        slots.append(slots[len(slots) % len(gens)])
    acc = tuple(range(n))
    k = len(slots)

    def step():
        nonlocal acc
        i = rng.randrange(k)
        j = rng.randrange(k - 1)
        if j >= i:
            j += 1
        if rng.random() < 0.5:
            slots[i] = _compose(slots[i], slots[j])
        else:
            slots[i] = _compose(slots[j], slots[i])
        acc = _compose(acc, slots[i])
        return acc

    for _ in range(50):
        step()
    return step


@dataclass(frozen=True)
class GroupClass:
    """Classification verdict: ``Symmetric``, ``Alternating`` or ``Other``."""

    kind: str
    order: int

    def __str__(self):
        if self.kind == "Other":
            return f"Other({self.order})"
        return self.kind


@dataclass(frozen=True, eq=False)
class GroupDescriptor:
    degree: int
    base: tuple[int, ...]
    strong_generators: tuple[Permutation, ...]
    order: int
    generators: tuple[Permutation, ...] = ()
    _chain: _Chain = field(default=None, repr=False)

    def sift(self, g: Permutation) -> Permutation:
        residue, _ = self._chain.sift(g.images)
        return Permutation._trusted(residue)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        residue, _ = self._chain.sift(g.images)
        return residue == self._chain.ident

    __contains__ = contains

    def orbit_sizes(self) -> list[int]:
        return [len(lev.trans) for lev in self._chain.levels]


def sgs_from_generators(gens: Iterable[Permutation], degree: int | None = None,
                        seed: int = 0, stop_after: int = 40) -> GroupDescriptor:
    """Base and strong generating set for the group generated by ``gens``.

    Random Schreier-Sims with a fixed seed builds the chain; the result is
    then certified, either because the order has reached the largest value
    possible (``n!``, or ``n!/2`` when every generator is even) or by the
    deterministic Schreier generator test, which completes the chain if the
    random phase missed anything.
    """
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("empty generator set requires an explicit degree")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"degree mismatch: {g.degree} != {degree}")
    n = degree
    chain = _Chain(n)
    raw = [g.images for g in gens if not g.is_identity()]
    # dedupe, keep order
    raw = list(dict.fromkeys(raw))

    for g in raw:
        h, depth = chain.sift(g)
        if h != chain.ident:
            chain.add_residue(h, depth)

    if raw:
        all_even = all(_cycle_parity(g) == 0 for g in raw)
        ceiling = factorial(n) // (2 if all_even and n > 1 else 1)
        rng = random.Random(seed)
        step = _product_replacement(raw, n, rng)
        streak = 0
        while streak < stop_after and chain.order() < ceiling:
            h, depth = chain.sift(step())
            if h == chain.ident:
                streak += 1
            else:
                chain.add_residue(h, depth)
                streak = 0
        if chain.order() < ceiling:
            _deterministic_completion(chain)

    strong = []
    seen = set()
    for lev in chain.levels:
        for s in lev.gens:
            if s not in seen:
                seen.add(s)
                strong.append(Permutation._trusted(s))
    return GroupDescriptor(
        degree=n,
        base=tuple(lev.point for lev in chain.levels),
        strong_generators=tuple(strong),
        order=chain.order(),
        generators=tuple(gens),
        _chain=chain,
    )


def _deterministic_completion(chain: _Chain) -> None:
    """Schreier-Sims proper: every Schreier generator must sift to identity."""
    i = len(chain.levels) - 1
    while i >= 0:
        lev = chain.levels[i]
        restart = None
        for x, ux in list(lev.trans.items()):
            for s in list(lev.gens):
                y = s[x]
                sg = _compose(lev.itrans[y], _compose(s, ux))
                h, depth = chain.sift(sg, i + 1)
                if h != chain.ident:
                    chain.add_residue(h, depth)
                    restart = depth
                    break
            if restart is not None:
                break
        if restart is not None:
            i = min(restart, len(chain.levels) - 1)
        else:
            i -= 1


def classify_group(gd: GroupDescriptor) -> GroupClass:
    n = gd.degree
    full = factorial(n)
    if gd.order == full:
        return GroupClass("Symmetric", gd.order)
    if n > 1 and gd.order == full // 2 and all(s.is_even() for s in gd.strong_generators):
        return GroupClass("Alternating", gd.order)
    return GroupClass("Other", gd.order)


def distance(a: int, b: int, n: int) -> int:
    """The d in {0..n-1} with a + d = b (mod n)."""
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"points {a}, {b} out of range for modulus {n}")
    return (b - a) % n


def n_cycle(n: int) -> Permutation:
    return Permutation._trusted(tuple((i + 1) % n for i in range(n)))


def piccard_alternating(n: int, a: int, b: int, c: int) -> bool:
    """Whether ``(0 1 ... n-1)`` and ``(a b c)`` generate ``A_n`` (odd n >= 5).

    The criterion is on the distances from ``a``: the two permutations fail to
    generate exactly when ``a, b, c`` share a residue class modulo a proper
    divisor of ``n``.
    """
    if n < 5 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 5, got {n}")
    pts = (a, b, c)
    if len(set(pts)) != 3 or not all(0 <= x < n for x in pts):
        raise ValueError(f"need three distinct points below {n}, got {pts}")
    return gcd(gcd(distance(a, b, n), distance(a, c, n)), n) == 1


def piccard_symmetric(n: int, cycle5: Sequence[int]) -> bool:
    """Whether ``(0 1 ... n-1)`` and the 5-cycle generate ``S_n`` (even n >= 10)."""
    if n < 10 or n % 2:
        raise ValueError(f"n must be even and >= 10, got {n}")
    pts = tuple(cycle5)
    if len(pts) != 5 or len(set(pts)) != 5 or not all(0 <= x < n for x in pts):
        raise ValueError(f"need five distinct points below {n}, got {pts}")
    a = pts[0]
    g = n
    for x in pts[1:]:
        g = gcd(g, distance(a, x, n))
    return g == 1
