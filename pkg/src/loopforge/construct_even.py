"""Unbreakable loops of even order ``n = 2p`` with multiplication group ``S_n``.

The first ``p + 1`` rows are fixed by closed formulas; any completion of that
latin rectangle is an unbreakable loop, and its rows ``1`` and ``p`` already
generate ``S_n``.
"""
from __future__ import annotations

from math import factorial

import numpy as np

from .loopcore import CayleyTable, left_action, validate
from .partial import UNDEF, PartialCayleyTable
from .permgroup import (Permutation, compose, cycle_decomposition, n_cycle,
                        piccard_symmetric, sgs_from_generators)


class CertificateError(AssertionError):
    pass


def build_rectangle(n: int) -> PartialCayleyTable:
    if n % 2 or n < 10:
        raise ValueError(f"order must be even and at least 10, got {n}")
    p = n // 2
    pt = PartialCayleyTable(n)
    c = pt.cells
    c[0, :] = np.arange(n)

    c[1, 0] = 1
    for j in range(1, p):
        c[1, j] = p + j - 1
    c[1, p] = 0
    c[1, p + 1] = 2 * p - 1
    for k in range(2, p):
        c[1, p + k] = p + 1 - k

    for i in range(2, p):
        c[i, 0] = i
        for j in range(1, i):
            c[i, j] = 2 * p - (i - j)
        for j in range(i, p + 1):
            c[i, j] = p + (j - i)
        for k in range(1, i + 1):
            c[i, p + k] = i - k
        for k in range(i + 1, p):
            c[i, p + k] = i + (p - k)

    c[p, 0] = p
    for j in range(1, p):
        c[p, j] = p + j
    c[p, p] = p - 1
    c[p, p + 1] = 0
    for k in range(2, p):
        c[p, p + k] = p - k
    return pt


def _defined_rows(pt: PartialCayleyTable) -> int:
    full = [(row != UNDEF).all() for row in pt.cells]
    empty = [(row == UNDEF).all() for row in pt.cells]
    r = 0
    while r < pt.n and full[r]:
        r += 1
    if not all(empty[r:]):
        raise ValueError("input is not a latin rectangle: rows must be complete then empty")
    return r


def _has_perfect_matching(cols: list[int], allowed: list[int]) -> bool:
    """Kuhn's augmenting paths; ``allowed[c]`` is a bitmask of symbols."""
    match_sym: dict[int, int] = {}

    def augment(c, seen):
        mask = allowed[c]
        while mask:
            low = mask & -mask
            s = low.bit_length() - 1
            mask ^= low
            if s in seen:
                continue
            seen.add(s)
            if s not in match_sym or augment(match_sym[s], seen):
                match_sym[s] = c
                return True
        return False

    return all(augment(c, set()) for c in cols)


def complete_rectangle(pt: PartialCayleyTable, symbol_order=None) -> CayleyTable:
    """Extend a latin rectangle to a latin square, one row at a time.

    Each new row is the lexicographically least (under ``symbol_order``,
    default ascending) choice of symbols such that the remaining columns can
    still be matched; Hall's theorem guarantees every row exists.
    """
    n = pt.n
    r0 = _defined_rows(pt)
    cells = pt.cells.copy()
    if r0 == 0:
        raise ValueError("need at least one defined row")
    for kind, idx, v in pt.conflicts():
        raise ValueError(f"input is not latin: {kind} {idx} repeats {v}")
    order = list(range(n)) if symbol_order is None else list(symbol_order)
    full = (1 << n) - 1
    colused = [0] * n
    for j in range(n):
        for i in range(r0):
            colused[j] |= 1 << int(cells[i, j])
    for r in range(r0, n):
        allowed = [full & ~colused[j] for j in range(n)]
        for j in range(n):
            for s in order:
                if not allowed[j] >> s & 1:
                    continue
                rest = list(range(j + 1, n))
                trial = [allowed[c] & ~(1 << s) for c in range(n)]
                if _has_perfect_matching(rest, trial):
                    cells[r, j] = s
                    allowed = trial
                    allowed[j] = 1 << s
                    break
            else:
                raise AssertionError(f"no matching for row {r}; rectangle theory violated")
        for j in range(n):
            colused[j] |= 1 << int(cells[r, j])
    return CayleyTable(cells)


def normalize_first_column(t: CayleyTable) -> CayleyTable:
    """Reorder rows so that ``[j, 0] == j`` for every ``j``."""
    col = t.cells[:, 0]
    if sorted(col.tolist()) != list(range(t.order)):
        raise ValueError("first column is not a permutation; table is not latin")
    order = np.argsort(col)
    return CayleyTable(t.cells[order])


def construct_even_loop(n: int, symbol_order=None) -> CayleyTable:
    if n % 2 or n < 6:
        raise ValueError(f"even order at least 6 required, got {n}")
    if n == 6:
        from .search import smallest_unbreakable
        return smallest_unbreakable(6, "Symmetric")
    if n == 8:
        from .loopcore import canonical_form
        from .search import random_unbreakable
        return canonical_form(random_unbreakable(8, "Symmetric", seed=0))
    t = normalize_first_column(complete_rectangle(build_rectangle(n), symbol_order))
    if not validate(t).is_loop:
        raise AssertionError("normalized completion is not a loop")
    return t


def relabeling_automorphism(p: int) -> Permutation:
    """Relabeling that conjugates ``R = L_1^3 o L_p`` onto ``(0 1 ... n-1)``."""
    n = 2 * p
    f = [None] * n
    f[0] = 0
    f[1] = 2 * p - 2
    f[p - 1] = 2 * p - 4
    f[p] = 1
    f[p + 1] = 2 * p - 1
    for k in range(2, p - 1):
        f[k] = p + k - 3
        f[p + k] = k
    # the one point left unlisted takes the one image left unused
    missing = [x for x in range(n) if f[x] is None]
    unused = sorted(set(range(n)) - {x for x in f if x is not None})
    assert len(missing) == len(unused) == 1, (missing, unused)
    f[missing[0]] = unused[0]
    return Permutation(f)


def conjugate(f: Permutation, g: Permutation) -> Permutation:
    """``f g f^-1``: relabels the cycles of ``g`` through ``f``."""
    return compose(compose(f, g), f.inverse())


def _canon_cycle(c) -> tuple:
    k = c.index(min(c))
    return tuple(c[k:]) + tuple(c[:k])


def certify_even_generators(t: CayleyTable, strict: bool = True) -> dict:
    """Check every structural claim about ``L_1`` and ``L_p`` that yields
    ``<L_1, L_p> = S_n``.  Returns ``{claim: bool}``; with ``strict`` a failed
    claim raises :class:`CertificateError` naming it."""
    n = t.order
    p = n // 2
    q = p // 2
    L1 = left_action(t, 1)
    Lp = left_action(t, p)
    c1 = {_canon_cycle(c) for c in cycle_decomposition(L1)}
    cp = {_canon_cycle(c) for c in cycle_decomposition(Lp)}

    claims = {}
    claims["L1 has 3-cycle (0 1 p)"] = _canon_cycle((0, 1, p)) in c1
    claims["L1 has 3-cycle (2 p+1 2p-1)"] = _canon_cycle((2, p + 1, 2 * p - 1)) in c1
    claims["Lp has 6-cycle (0 p p-1 2p-1 1 p+1)"] = _canon_cycle((0, p, p - 1, 2 * p - 1, 1, p + 1)) in cp

    four1 = {_canon_cycle((k, p + k - 1, p - k + 2, 2 * p - k + 1)) for k in range(3, p + 1)}
    fourp = {_canon_cycle((k, p + k, p - k, 2 * p - k)) for k in range(2, p - 1)}
    rest1 = c1 - {_canon_cycle((0, 1, p)), _canon_cycle((2, p + 1, 2 * p - 1))}
    restp = cp - {_canon_cycle((0, p, p - 1, 2 * p - 1, 1, p + 1))}
    if p % 2 == 0:
        claims["L1 has 2-cycle (q+1 3q)"] = (q + 1, 3 * q) in c1
        claims["Lp has 2-cycle (q 3q)"] = (q, 3 * q) in cp
        rest1 = rest1 - {(q + 1, 3 * q)}
        restp = restp - {(q, 3 * q)}
    claims["other L1 cycles are 4-cycles (k p+k-1 p-k+2 2p-k+1)"] = rest1 <= four1
    claims["other Lp cycles are 4-cycles (k p+k p-k 2p-k)"] = restp <= fourp
    claims["L1 and Lp have opposite parity"] = L1.parity() != Lp.parity()

    R = compose(L1 ** 3, Lp)
    claims["R = L1^3 o Lp is an n-cycle"] = [len(c) for c in R.cycles()] == [n]
    expect_R = {0: p, 1: p + 1, p - 1: 2 * p - 1, p: p + 2, p + 1: 0, 2 * p - 2: 2, 2 * p - 1: 1}
    expect_R.update({k: k + 1 for k in range(2, p - 1)})
    expect_R.update({p + k: p + k + 1 for k in range(2, p - 2)})
    claims["R images as listed"] = all(R(x) == y for x, y in expect_R.items())

    P = L1 ** 4
    Q = Lp ** 4
    S = compose(P, Q ** 2)
    claims["P = L1^4 = (0 1 p)(2 p+1 2p-1)"] = P == Permutation.from_cycles(n, (0, 1, p), (2, p + 1, 2 * p - 1))
    claims["Q = Lp^4 = (0 1 p-1)(p p+1 2p-1)"] = Q == Permutation.from_cycles(n, (0, 1, p - 1), (p, p + 1, 2 * p - 1))
    claims["S = P o Q^2 = (0 p-1 p 2 p+1)"] = S == Permutation.from_cycles(n, (0, p - 1, p, 2, p + 1))

    f = relabeling_automorphism(p)
    claims["relabeling maps R to (0 1 ... n-1)"] = conjugate(f, R) == n_cycle(n)
    fS = conjugate(f, S)
    target = Permutation.from_cycles(n, (0, 2 * p - 4, 1, p - 1, 2 * p - 1))
    claims["relabeling maps S to (0 2p-4 1 p-1 2p-1)"] = fS == target
    five = next(iter(fS.cycles()), ())
    claims["relabeled S satisfies the 5-cycle generation criterion"] = (
        len(fS.cycles()) == 1 and len(five) == 5 and piccard_symmetric(n, five))
    gd = sgs_from_generators([L1, Lp])
    claims["<L1, Lp> has order n!"] = gd.order == factorial(n)

    if strict:
        failed = [k for k, ok in claims.items() if not ok]
        if failed:
            raise CertificateError(f"order {n}: failed claims: {failed}")
    return claims
