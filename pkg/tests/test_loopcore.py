import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from loopforge.loopcore import (CayleyTable, TableError, analyze, canonical_form, cyclic_group,
                                is_associative, is_commutative, is_unbreakable, left_action,
                                multiplication_group, right_action, subloop_closure, validate)
from loopforge.permgroup import classify_group
from loopforge.search import enumerate_loops, random_reduced_table

from oracles import brute_canonical, brute_identity, brute_is_latin, brute_unbreakable

# x*y = -x-y mod 3: latin, but no element acts as identity
NO_IDENTITY = [[0, 2, 1], [2, 1, 0], [1, 0, 2]]

small_tables = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n))


@given(small_tables)
def test_validate_matches_definition(rows):
    v = validate(CayleyTable(rows))
    latin = brute_is_latin(rows)
    assert v.is_latin == latin
    assert v.is_loop == (latin and brute_identity(rows) is not None)
    if v.is_loop:
        assert v.identity == brute_identity(rows)
    if not latin:
        kind, idx, value = v.witness
        line = rows[idx] if kind == "row" else [r[idx] for r in rows]
        assert line.count(value) > 1


def test_validate_statuses():
    assert validate(cyclic_group(4)).status == "Loop"
    assert validate(CayleyTable(NO_IDENTITY)).status == "LatinNotLoop"
    assert validate(CayleyTable([[0, 1], [1, 1]])).status == "NotLatin"


def test_table_shape_and_range_checked():
    with pytest.raises(TableError):
        CayleyTable([[0, 1], [1]])
    with pytest.raises(TableError):
        CayleyTable([[0, 2], [2, 0]])


def test_cells_are_read_only():
    t = cyclic_group(3)
    with pytest.raises(ValueError):
        t.cells[0, 0] = 1


def test_actions_read_rows_and_columns():
    t = CayleyTable([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert left_action(t, 1).images == (1, 2, 0)
    assert right_action(t, 2).images == (2, 0, 1)


def test_cyclic_groups():
    for n in range(1, 8):
        t = cyclic_group(n)
        assert is_associative(t) and is_commutative(t)
        prime = n > 1 and all(n % d for d in range(2, n))
        assert is_unbreakable(t) == (prime or n <= 2)


def test_z5_report():
    rep = analyze(cyclic_group(5))
    assert rep.is_loop and rep.associative and rep.unbreakable and rep.commutative
    assert str(rep.group_class) == "Other(5)"
    d = rep.to_dict()
    assert d["schema"] == 1 and d["group_order"] == "5"
    assert "right" not in d["generator_parities"]


def test_noncommutative_report_lists_right_parities():
    t = next(t for t in enumerate_loops(5) if not is_commutative(t))
    d = analyze(t).to_dict()
    assert len(d["generator_parities"]["right"]) == 5


def test_non_loop_report_stops_early():
    rep = analyze(CayleyTable(NO_IDENTITY))
    assert rep.is_latin and not rep.is_loop and rep.group_class is None


def test_subloop_closure_of_generator():
    t = cyclic_group(6)
    assert subloop_closure(t, {2}) == frozenset({0, 2, 4})
    assert subloop_closure(t, {1}) == frozenset(range(6))


@pytest.mark.parametrize("n", range(1, 7))
def test_unbreakable_against_all_subsets_small(n):
    for t in enumerate_loops(n):
        assert is_unbreakable(t) == brute_unbreakable(t.rows)


def test_unbreakable_against_all_subsets_random_7_8():
    rng = random.Random(11)
    done = 0
    while done < 50:
        n = rng.choice((7, 8))
        t = random_reduced_table(n, rng, no_square_roots_of_identity=rng.random() < 0.5)
        if t is None:
            continue
        sigma = [0] + rng.sample(range(1, n), n - 1)
        t = t.relabel(sigma)
        assert is_unbreakable(t) == brute_unbreakable(t.rows)
        done += 1


def test_multiplication_group_uses_both_actions():
    for t in enumerate_loops(5):
        gd = multiplication_group(t)
        gens = [left_action(t, a) for a in range(5)] + [right_action(t, a) for a in range(5)]
        from loopforge.permgroup import sgs_from_generators
        assert gd.order == sgs_from_generators(gens).order


def test_canonical_form_matches_definition():
    rng = random.Random(3)
    for n in (3, 4, 5):
        for t in enumerate_loops(n):
            assert canonical_form(t).rows == brute_canonical(t.rows)
    for _ in range(5):
        t = random_reduced_table(6, rng)
        assert canonical_form(t).rows == brute_canonical(t.rows)


@settings(max_examples=40, deadline=None)
@given(st.permutations(list(range(1, 6))), st.integers(0, 108))
def test_canonical_form_is_a_relabeling_invariant(rest, idx):
    loops = _order6()
    t = loops[idx]
    u = t.relabel([0] + list(rest))
    assert canonical_form(u) == canonical_form(t) == t


_cache = {}


def _order6():
    if "6" not in _cache:
        _cache["6"] = list(enumerate_loops(6))
    return _cache["6"]


def test_canonical_form_needs_identity_at_zero():
    t = cyclic_group(3).relabel([1, 0, 2])
    with pytest.raises(TableError):
        canonical_form(t)


def test_associative_unbreakable_loops_are_cyclic_of_prime_order():
    for n in range(2, 7):
        for t in enumerate_loops(n):
            rep = analyze(t)
            if rep.associative and rep.unbreakable:
                assert n in (2, 3, 5)
                assert classify_group(multiplication_group(t)).order == n
