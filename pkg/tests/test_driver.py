"""Pipeline: bounds, canonical form, decision tree, two-handed reduction."""

import pytest

from pumpkit import (
    Path,
    analyze,
    bound,
    bound_theorem1_extent,
    bound_theorem1_square_half_side,
    bound_theorem_main_distance,
    canonicalize,
    driver,
    oracle,
    reduce_2ham,
    verify_fragile_cert,
    verify_pumpable_cert,
)
from pumpkit.budgets import EnumBudget
from pumpkit.errors import BadCounts, TooShort

from conftest import path_of, system_of


def test_bound_values():
    assert bound(1, 1) == 10240
    assert bound(2, 1) == 1342177280
    assert bound_theorem_main_distance(1, 1) == 10240
    assert bound_theorem1_square_half_side(1, 1) == 10241
    assert bound_theorem1_extent(1, 1) == 8 ** 5 * 11


def test_bound_monotone():
    vals = [[bound(t, s) for s in range(1, 6)] for t in range(1, 6)]
    for row in vals:
        assert row == sorted(row) and len(set(row)) == len(row)
    for col in zip(*vals):
        assert list(col) == sorted(col) and len(set(col)) == len(col)


def test_bound_rejects_zero():
    with pytest.raises(BadCounts):
        bound(0, 1)
    with pytest.raises(BadCounts):
        bound(1, 0)


def test_canonicalize_east_line_is_identity(unit):
    p = path_of(unit, *[(x, 0, "A") for x in range(1, 6)])
    canon = canonicalize(unit, p, bound_override=3)
    assert canon.rotations == 0
    assert canon.truncated_at == 4  # first tile on the half-side-4 square
    last = canon.path.pos(len(canon.path) - 1)
    xs = [x for x, _ in canon.path.positions] + \
         [x for x, _ in canon.sys.seed.tiles]
    ys = [y for _, y in canon.path.positions] + \
         [y for _, y in canon.sys.seed.tiles]
    assert min(xs) == 0 and min(ys) == 0
    assert last[0] == max(xs)


def test_canonicalize_north_line_rotates():
    sys_ = system_of([("N", "g", None, "g", None)], {(0, 0): "N"})
    p = path_of(sys_, *[(0, y, "N") for y in range(1, 6)])
    canon = canonicalize(sys_, p, bound_override=3)
    assert canon.rotations == 3
    last = canon.path.pos(len(canon.path) - 1)
    xs = [x for x, _ in canon.path.positions]
    assert last[0] == max(xs)


def test_canonicalize_too_short(unit):
    p = path_of(unit, (1, 0, "A"), (2, 0, "A"))
    with pytest.raises(TooShort):
        canonicalize(unit, p, bound_override=50)


def test_canonicalize_restores_positions(unit):
    p = path_of(unit, *[(x, 0, "A") for x in range(1, 6)])
    canon = canonicalize(unit, p, bound_override=3)
    for idx in range(canon.truncated_at + 1):
        assert canon.restore_position(canon.path.pos(idx)) == p.pos(idx)


def test_canonicalize_random_corpus(rng):
    budget = EnumBudget(max_path_len=9, max_nodes=300)
    checked = 0
    while checked < 120:
        sys_ = oracle.random_system(rng)
        for p in oracle.PathEnumeration(sys_, budget, max_paths=60):
            if len(p) < 4:
                continue
            try:
                canon = canonicalize(sys_, p, bound_override=3)
            except TooShort:
                continue
            from pumpkit.tam import validate_producible_path

            assert validate_producible_path(canon.sys, canon.path).ok
            xs = [x for x, _ in canon.path.positions] + \
                 [x for x, _ in canon.sys.seed.tiles]
            last_x = canon.path.pos(len(canon.path) - 1)[0]
            assert xs.count(last_x) == 1 and last_x == max(xs)
            checked += 1


def test_analyze_unit(unit, unit_path):
    res = analyze(unit, unit_path, bound_override=2)
    assert res.kind == "pumpable"
    assert res.pumpable.vector == (1, 0)
    assert any("equal-span-pair" in t for t in res.trail)
    assert verify_pumpable_cert(unit, res.pumpable).ok


def test_analyze_no_shield_short():
    # Four tiles, no repeated span signature below the bound.
    sys_ = system_of([("A", None, "a", None, None), ("B", None, "b", None, "a"),
                      ("C", None, "c", None, "b"), ("D", None, None, None, "c")],
                     {(0, 0): "A"})
    p = path_of(sys_, (1, 0, "B"), (2, 0, "C"), (3, 0, "D"))
    res = analyze(sys_, p, bound_override=2)
    assert res.kind == "no_shield"


def test_analyze_fragile_instance(analyze_fragile):
    sys_, p = analyze_fragile
    res = analyze(sys_, p, bound_override=2)
    assert res.kind == "fragile"
    assert verify_fragile_cert(sys_, p, res.fragile).ok
    assert any("west-pigeonhole" in t for t in res.trail)


def test_analyze_battlements_couple_use(battlements):
    sys_, p = battlements
    res = analyze(sys_, p, bound_override=4)
    assert res.kind == "pumpable"
    assert verify_pumpable_cert(sys_, res.pumpable).ok
    assert any("equal-span-pair" in t for t in res.trail)


def test_analyze_transform_outcome_kind(staircase):
    sys_, p = staircase
    base = analyze(sys_, p, bound_override=2).kind
    for op in ("flipH", "flipV"):
        tsys = driver.transform(sys_, op)
        tpath = driver.transform_path(p, tsys, op)
        assert analyze(tsys, tpath, bound_override=2).kind == base


def test_analyze_corpus_certificates(rng):
    budget = EnumBudget(max_path_len=10, max_nodes=4000)
    kinds = {"pumpable": 0, "fragile": 0, "no_shield": 0}
    for _ in range(80):
        sys_ = oracle.random_system(rng)
        enum = oracle.PathEnumeration(sys_, budget, max_paths=200)
        paths = list(enum)
        if enum.truncated:
            continue
        for p in paths:
            if len(p) < 3:
                continue
            res = analyze(sys_, p, bound_override=2, budget=budget)
            kinds[res.kind] += 1
            if res.kind == "pumpable":
                assert verify_pumpable_cert(sys_, res.pumpable).ok
            elif res.kind == "fragile":
                assert verify_fragile_cert(sys_, p, res.fragile).ok
    assert kinds["pumpable"] > 90


def test_analyze_without_override_reports_below_bound(unit, unit_path):
    # Without an override the true bound applies; a three-tile path falls
    # back to the untruncated frame and the trail says so.  It still gets
    # decided: the spans machinery needs no bound.
    res = analyze(unit, unit_path)
    assert any("below-bound" in t for t in res.trail)
    assert res.kind == "pumpable"


# -- two-handed reduction -------------------------------------------------------


def test_reduce_east_line(unit):
    A = unit.by_name["A"]
    p = Path([((x, 0), A) for x in (5, 6, 7)])
    red = reduce_2ham([A], p)
    assert sorted(red.sys.seed.tiles) == [(5, 0)]
    assert len(red.path) == 2
    from pumpkit.tam import validate_producible_path

    assert validate_producible_path(red.sys, red.path).ok


def test_reduce_vertical_rotates():
    sys_ = system_of([("N", "g", None, "g", None)], {(0, 0): "N"})
    N = sys_.by_name["N"]
    p = Path([((0, y), N) for y in range(4)])
    red = reduce_2ham([N], p)
    assert "rotated upright" in red.notes
    xs = [x for x, _ in red.path.positions]
    assert max(xs) - min(xs) == len(red.path) - 1  # now horizontal


def test_reduce_tiebreak_reports():
    sys_ = system_of([("T", "t", "t", "t", "t")], {(9, 9): "T"})
    T = sys_.by_name["T"]
    p = Path([((0, 1), T), ((1, 1), T), ((1, 0), T), ((0, 0), T)])
    red = reduce_2ham([T], p)
    assert any("westernmost" in n for n in red.notes)


def test_reduce_random_snakes(rng):
    # Random glue-matched snakes re-seed and validate.
    sys_ = system_of([("T", "t", "t", "t", "t")], {(99, 99): "T"})
    T = sys_.by_name["T"]
    for _ in range(100):
        walk = [(0, 0)]
        seen = {(0, 0)}
        for _ in range(rng.randrange(2, 12)):
            x, y = walk[-1]
            nxt = rng.choice([(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)])
            if nxt in seen:
                break
            walk.append(nxt)
            seen.add(nxt)
        if len(walk) < 3:
            continue
        red = reduce_2ham([T], Path([(pos, T) for pos in walk]))
        from pumpkit.tam import validate_producible_path

        assert validate_producible_path(red.sys, red.path).ok


def test_reduce_with_width_truncation(unit):
    A = unit.by_name["A"]
    p = Path([((x, 0), A) for x in range(10)])
    red = reduce_2ham([A], p, target_width=3)
    xs = [x for x, _ in red.path.positions] + [x for x, _ in red.sys.seed.tiles]
    assert max(xs) - min(xs) == 3
