from math import factorial

import pytest

from loopforge import fragments
from loopforge.construct_odd import (ALTERNATING, SYMMETRIC, SYM_PATTERN, InfeasibleTarget,
                                     TemplateError, applicable_rows, boundary_state,
                                     build_augmented_template, build_simplified_template,
                                     build_template, certify_odd_generators, construct_odd_loop,
                                     fill_alternating, fill_symmetric, find_block,
                                     stretched_zone, zone_row_parity, zone_segment)
from loopforge.loopcore import (CayleyTable, all_left_even, analyze, canonical_form,
                                is_commutative, left_action, multiplication_group)
from loopforge.partial import PartialCayleyTable
from loopforge.permgroup import Parity, Permutation
from loopforge.search import census, enumerate_loops
from loopforge.zone import ZoneConstraints, ZoneSearchError, complete_zone, iter_completions


def _listed_cells(n):
    p = (n - 1) // 2
    cells = {(1, 2), (1, p + 2), (p + 4, n - 1), (1, n - 1)}
    cells |= {(i, n - i + k) for i in range(2, 6) for k in range(i)}
    cells |= {(p + 1, p + k) for k in range(1, 6)} | {(p + 2, p + k) for k in range(2, 5)}
    cells |= {(p + 3, p + 3)}
    return cells | {(j, i) for i, j in cells}


@pytest.mark.parametrize("n", [15, 17, 21, 23, 43, 61])
def test_template_differs_from_cyclic_only_at_listed_cells(n):
    pt = build_template(n)
    listed = _listed_cells(n)
    p = (n - 1) // 2
    for i in range(n):
        for j in range(n):
            v = pt[i, j]
            in_zone = n <= i + j <= n + 5
            if v is None:
                assert in_zone and (i, j) not in listed
            elif v != (i + j) % n:
                assert (i, j) in listed
    for cell in [(1, 2), (1, p + 2), (p + 4, n - 1)]:
        assert pt[cell] != sum(cell) % n
    assert pt.is_symmetric() and not pt.conflicts()


def test_template_needs_order_13():
    with pytest.raises(TemplateError):
        build_template(11)
    # at 13 and 19 the top-right region and the central triangle clash
    for n in (13, 19):
        with pytest.raises(TemplateError, match="top-right.*central-triangle"):
            build_template(n)
    with pytest.raises(TemplateError):
        build_augmented_template(41)
    with pytest.raises(ValueError):
        build_template(22)


def test_augmented_rows():
    n = 43
    p = 21
    pt = build_augmented_template(n)
    assert zone_segment(pt, 6) == (3, 1, 5, 2, 0, 4)
    assert zone_segment(pt, 7) == (1, 2, 0, 3, 4, 5)
    assert zone_segment(pt, p) == (1, 2, 0, 3, 4, 5)
    assert zone_segment(pt, p - 1) == (1, 2, 0, 3, 4, 5)


def test_simplified_template_leaves_rows_1_and_2_open():
    pt = build_simplified_template(15)
    assert pt[1, 14] is None and pt[2, 13] is None and pt[2, 14] is None
    assert pt[1, 2] == 0
    assert build_simplified_template(25)[13, 13] == 3      # central triangle pinned


def test_cross_region_inversions_even():
    for n in range(5, 200, 2):
        assert all(i * (n - i) % 2 == 0 for i in range(n))


def test_overconstrained_zone_is_unsatisfiable():
    pt = build_template(21)
    cell = (6, 15)
    assert pt[cell] is None
    c = ZoneConstraints(forbidden={cell: set(range(6))})
    assert complete_zone(pt, c) is None


def test_node_limit_reports():
    with pytest.raises(ZoneSearchError):
        complete_zone(build_template(61), ZoneConstraints.all_even(61), node_limit=3)


def test_zone_search_needs_symmetric_input():
    pt = PartialCayleyTable(3)
    pt[0, 1] = 1
    with pytest.raises(ValueError):
        complete_zone(pt)


def test_template_21_with_an_odd_row():
    t = complete_zone(build_template(21), ZoneConstraints(require_odd_row=True))
    rep = analyze(t)
    assert rep.unbreakable and rep.commutative
    assert rep.group_order == factorial(21)


def test_completions_are_distinct_and_valid():
    pt = build_simplified_template(9)
    out = []
    for t in iter_completions(pt, ZoneConstraints(alphabet=None)):
        out.append(t)
        if len(out) == 5:
            break
    assert len(set(out)) == len(out) == 5
    mask = pt.cells != -1
    for t in out:
        assert (t.cells[mask] == pt.cells[mask]).all()
        assert t == t.transpose()


def _check_odd_loop(t, target):
    n = t.order
    rep = analyze(t)
    assert rep.is_loop and rep.identity == 0
    assert rep.unbreakable and not rep.associative
    assert rep.commutative
    assert rep.group_class.kind == target
    if target == ALTERNATING:
        assert all_left_even(t)
    return rep


def _check_zone_parity(t):
    n = t.order
    for i in applicable_rows(n):
        assert zone_row_parity(t, i) == left_action(t, i).parity(), i


@pytest.mark.parametrize("n", range(21, 63, 2))
def test_fill_symmetric(n):
    t = fill_symmetric(n)
    _check_odd_loop(t, SYMMETRIC)
    _check_zone_parity(t)
    assert all(t[i, n - i] != 0 for i in range(1, n))
    p = (n - 1) // 2
    copies = max(0, (p - 10) // 4)
    for k in range(4 * copies):
        assert zone_segment(t, p - k) == SYM_PATTERN[k % 4]
    assert certify_odd_generators(t)


def test_fill_symmetric_residue_heights():
    # the residue above the stacked pattern is 5..8 rows tall
    for n in range(41, 80, 2):
        p = (n - 1) // 2
        assert 5 <= p - 5 - 4 * ((p - 10) // 4) <= 8


def test_l1_cycle_structure_at_21():
    t = fill_symmetric(21)
    assert sorted(left_action(t, 1).cycles()) == [(0, 1, 2), tuple(range(3, 13)), tuple(range(13, 21))]


@pytest.mark.parametrize("n", [43, 45, 51, 61, 99, 101, 119, 133])
def test_fill_alternating(n):
    t = fill_alternating(n)
    _check_odd_loop(t, ALTERNATING)
    _check_zone_parity(t)
    assert all(t[i, n - i] != 0 for i in range(1, n))
    assert certify_odd_generators(t)


def test_blocks_repeat():
    segs = [zone_segment(fill_alternating(61), i) for i in range(6, 31)]
    a, b = find_block(segs, 6, 9, 25)
    assert boundary_state(segs, a - 6) == boundary_state(segs, b - 6)
    assert len(boundary_state(segs, a - 6)) == 15
    grown = stretched_zone(2 * (30 + 3 * (b - a)) + 1)
    assert grown is not None and len(grown) == 30 + 3 * (b - a) - 5


def test_fragment_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("LOOPFORGE_CACHE", str(tmp_path))
    segs = [(1, 2, 0, 3, 4, 5), (3, 1, 5, 2, 0, 4)]
    fragments.save("demo", 43, [8, 9], segs)
    text = (tmp_path / "demo.txt").read_text()
    assert text.splitlines()[0] == "zone-fragment n=43 rows=8..9"
    assert fragments.load("demo") == (43, [8, 9], segs)
    (tmp_path / "demo.txt").write_text("zone-fragment n=43 rows=8..9\n1 1 1 1 1 1\n")
    assert fragments.load("demo") is None
    assert fragments.load("missing") is None
    with pytest.raises(ValueError):
        fragments.save("../escape", 43, [8], segs[:1])


def test_stale_cache_does_not_change_results(tmp_path, monkeypatch):
    monkeypatch.setenv("LOOPFORGE_CACHE", str(tmp_path))
    good = fill_alternating(45)
    for f in tmp_path.iterdir():
        lines = f.read_text().splitlines()
        f.write_text("\n".join(lines[:1] + ["0 1 2 3 4 5"] * (len(lines) - 1)) + "\n")
    again = fill_alternating(45)
    _check_odd_loop(again, ALTERNATING)


@pytest.mark.parametrize("n", range(7, 21, 2))
@pytest.mark.parametrize("target", [SYMMETRIC, ALTERNATING])
def test_intermediate_orders(n, target):
    _check_odd_loop(construct_odd_loop(n, target), target)


@pytest.mark.parametrize("n", [21, 23, 25, 31, 37, 41])
def test_alternating_below_43(n):
    _check_odd_loop(construct_odd_loop(n, ALTERNATING), ALTERNATING)


def test_order_7_alternating_is_the_census_one():
    t = construct_odd_loop(7, ALTERNATING)
    alts = [c for c in enumerate_loops(7, commutative=True)
            if analyze(c).unbreakable and analyze(c).group_class.kind == ALTERNATING]
    assert [canonical_form(t)] == alts


def test_order_5():
    t = construct_odd_loop(5, SYMMETRIC)
    rep = analyze(t)
    assert rep.unbreakable and rep.group_class.kind == SYMMETRIC
    with pytest.raises(InfeasibleTarget):
        construct_odd_loop(5, ALTERNATING)


def test_bad_requests():
    with pytest.raises(ValueError):
        construct_odd_loop(8, SYMMETRIC)
    with pytest.raises(ValueError):
        construct_odd_loop(3, SYMMETRIC)
    with pytest.raises(ValueError):
        construct_odd_loop(9, "Dihedral")
    with pytest.raises(InfeasibleTarget):
        fill_symmetric(19)
    with pytest.raises(InfeasibleTarget):
        fill_alternating(41)


def test_zone_row_parity_domain():
    t = fill_symmetric(21)
    with pytest.raises(ValueError):
        zone_row_parity(t, 5)
    with pytest.raises(ValueError):
        zone_row_parity(t, 12)      # p + 2


def test_certificate_reports_failures():
    t = fill_symmetric(25)
    swapped = t.relabel([0, 1, 3, 2] + list(range(4, 25)))
    claims = certify_odd_generators(swapped, strict=False)
    assert not all(claims.values())
    with pytest.raises(AssertionError):
        certify_odd_generators(swapped)
