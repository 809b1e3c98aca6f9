import random
from math import factorial

import pytest

from loopforge.construct_even import (CertificateError, _has_perfect_matching, build_rectangle,
                                      certify_even_generators, complete_rectangle,
                                      construct_even_loop, normalize_first_column,
                                      relabeling_automorphism)
from loopforge.loopcore import CayleyTable, analyze, validate
from loopforge.partial import UNDEF, PartialCayleyTable


def test_rectangle_row_2_at_order_10():
    pt = build_rectangle(10)
    assert tuple(pt.cells[2]) == (2, 9, 5, 6, 7, 8, 1, 0, 4, 3)


@pytest.mark.parametrize("n", range(10, 42, 2))
def test_rectangle_is_latin(n):
    pt = build_rectangle(n)
    p = n // 2
    assert not pt.conflicts()
    assert (pt.cells[: p + 1] != UNDEF).all() and (pt.cells[p + 1:] == UNDEF).all()
    assert all(pt[i, 0] == i for i in range(p + 1))


def test_rectangle_rejects_small_or_odd():
    for n in (8, 11):
        with pytest.raises(ValueError):
            build_rectangle(n)


def test_matching_oracle():
    # two columns that both only accept symbol 0 cannot be matched
    assert not _has_perfect_matching([0, 1], [1, 1])
    assert _has_perfect_matching([0, 1], [1, 3])


def test_completion_of_random_rectangles():
    rng = random.Random(4)
    for n in (5, 6, 7, 8):
        # rows of a shuffled cyclic square form a latin rectangle
        perm = rng.sample(range(n), n)
        rows = [[(perm[i] + j) % n for j in range(n)] for i in range(n)]
        k = rng.randint(1, n - 1)
        pt = PartialCayleyTable(n)
        pt.cells[:k] = rows[:k]
        t = complete_rectangle(pt)
        assert validate(t).is_latin
        assert (t.cells[:k] == pt.cells[:k]).all()


def test_completion_rejects_non_rectangles():
    pt = PartialCayleyTable(3)
    pt.cells[0] = [0, 1, 2]
    pt.cells[2] = [1, 2, 0]
    with pytest.raises(ValueError):
        complete_rectangle(pt)
    pt = PartialCayleyTable(3)
    pt.cells[0] = [0, 0, 2]
    with pytest.raises(ValueError):
        complete_rectangle(pt)


def test_normalize_first_column():
    t = CayleyTable([[1, 2, 0], [0, 1, 2], [2, 0, 1]])
    u = normalize_first_column(t)
    assert [r[0] for r in u.rows] == [0, 1, 2]


def test_symbol_order_changes_only_the_completion():
    a = construct_even_loop(12)
    b = construct_even_loop(12, symbol_order=list(reversed(range(12))))
    assert a.rows[:7] == b.rows[:7]
    assert certify_even_generators(b)


@pytest.mark.parametrize("n", [6, 8] + list(range(10, 42, 2)))
def test_even_loops(n):
    t = construct_even_loop(n)
    rep = analyze(t)
    assert rep.is_loop and rep.identity == 0
    assert rep.unbreakable and not rep.commutative and not rep.associative
    assert rep.group_order == factorial(n)
    if n >= 10:
        claims = certify_even_generators(t)
        assert all(claims.values())
        p = n // 2
        assert (("L1 has 2-cycle (q+1 3q)" in claims) == (p % 2 == 0))


@pytest.mark.parametrize("p", range(5, 21))
def test_relabeling_automorphism(p):
    f = relabeling_automorphism(p)
    assert sorted(f.images) == list(range(2 * p))
    assert f(0) == 0 and f(p) == 1 and f(p + 1) == 2 * p - 1


def test_relabeling_takes_the_leftover_point():
    # the one point not covered by the listed images is 2p-1, sent to 2p-3
    for p in range(5, 15):
        assert relabeling_automorphism(p)(2 * p - 1) == 2 * p - 3


def test_certificate_catches_a_broken_table():
    t = construct_even_loop(10)
    swapped = t.relabel([0, 1, 2, 4, 3] + list(range(5, 10)))
    with pytest.raises(CertificateError):
        certify_even_generators(swapped)


def test_even_order_bounds():
    for n in (4, 7):
        with pytest.raises(ValueError):
            construct_even_loop(n)
