"""Tile-assembly core: validation, replay, extraction, pumping, verifiers."""


import pytest

from pumpkit import (
    Assembly,
    PumpingSpec,
    extract_path,
    pumping_term,
    replay_assembly_sequence,
    validate_producible_path,
    verify_fragile_cert,
    verify_pumpable_cert,
)
from pumpkit import driver, oracle
from pumpkit.budgets import EnumBudget
from pumpkit.errors import BadSystem, BadTarget, IllegalAttachment, Occupied
from pumpkit.tam import FragilityCert

from conftest import path_of, system_of


def test_validate_ok(unit, unit_path):
    rep = validate_producible_path(unit, unit_path)
    assert rep.ok and not rep.notes


def test_validate_overlaps_seed(unit):
    p = path_of(unit, (1, 0, "A"), (0, 0, "A"))
    rep = validate_producible_path(unit, p)
    assert (rep.code, rep.index) == ("OverlapsSeed", 1)


def test_validate_glue_mismatch():
    sys_ = system_of([("A", None, "g", None, "g"), ("X", None, "h", None, "h")],
                     {(0, 0): "A"})
    p = path_of(sys_, (1, 0, "A"), (2, 0, "X"))
    rep = validate_producible_path(sys_, p)
    assert (rep.code, rep.index) == ("GlueMismatch", 1)


def test_validate_not_simple(unit):
    p = path_of(unit, (1, 0, "A"), (2, 0, "A"), (1, 0, "A"))
    rep = validate_producible_path(unit, p)
    assert (rep.code, rep.index) == ("NotSimple", 2)


def test_validate_detached(unit):
    p = path_of(unit, (5, 5, "A"), (6, 5, "A"))
    rep = validate_producible_path(unit, p)
    assert rep.code == "SeedDetached"


def test_validate_extra_seed_contact_is_note_only():
    sys_ = system_of([("A", "g", "g", "g", "g")], {(0, 0): "A"})
    p = path_of(sys_, (0, 1, "A"), (1, 1, "A"), (1, 0, "A"))
    rep = validate_producible_path(sys_, p)
    assert rep.ok and rep.notes


def test_seed_must_be_connected():
    with pytest.raises(BadSystem):
        system_of([("A", None, "g", None, "g")], {(0, 0): "A", (2, 2): "A"})


def test_replay(unit):
    a = replay_assembly_sequence(unit, [((1, 0), unit.by_name["A"])])
    assert len(a) == 2


def test_replay_detached(unit):
    with pytest.raises(IllegalAttachment) as e:
        replay_assembly_sequence(unit, [((5, 5), unit.by_name["A"])])
    assert e.value.step == 0


def test_replay_occupied(unit):
    with pytest.raises(Occupied):
        replay_assembly_sequence(
            unit, [((1, 0), unit.by_name["A"]), ((1, 0), unit.by_name["A"])])


def test_extract_path(unit):
    A = unit.by_name["A"]
    alpha = Assembly({(0, 0): A, (1, 0): A, (2, 0): A})
    p = extract_path(unit, alpha, (2, 0))
    assert p.positions == ((1, 0), (2, 0))
    assert validate_producible_path(unit, p).ok


def test_extract_path_bad_target(unit):
    with pytest.raises(BadTarget):
        extract_path(unit, Assembly({(0, 0): unit.by_name["A"]}), (0, 0))


def test_replay_of_valid_path_reproduces_union(rng):
    # A validated path, replayed in its own order, grows exactly the
    # union of seed and path assembly.
    budget = EnumBudget(max_path_len=8, max_nodes=400)
    checked = 0
    for _ in range(40):
        sys_ = oracle.random_system(rng)
        for p in oracle.PathEnumeration(sys_, budget, max_paths=40):
            assert validate_producible_path(sys_, p).ok
            final = replay_assembly_sequence(sys_, p.entries)
            want = dict(sys_.seed.tiles)
            want.update(dict(p.entries))
            assert final.tiles == want
            checked += 1
    assert checked > 100


def test_extract_path_branching_validates(rng):
    budget = EnumBudget(max_path_len=7, max_nodes=500)
    for _ in range(30):
        sys_ = oracle.random_system(rng)
        for p in oracle.PathEnumeration(sys_, budget, max_paths=40):
            alpha = Assembly(dict(list(sys_.seed.tiles.items()) + list(p.entries)),
                             require_connected=False)
            q = extract_path(sys_, alpha, p.positions[-1])
            assert validate_producible_path(sys_, q).ok


# -- pumping ------------------------------------------------------------------


def test_pumping_term_examples(unit, unit_path):
    spec = PumpingSpec(unit_path, 0, 1)
    assert pumping_term(spec, 4) == ((5, 0), unit.by_name["A"])
    for k in range(0, 30):
        (x0, y0), _ = pumping_term(spec, k)
        (x1, y1), _ = pumping_term(spec, k + 1)
        assert (x1 - x0, y1 - y0) == (1, 0)


def test_pumping_shift_identity(rng):
    # term(k + period) == term(k) + vector, for random paths and pairs.
    budget = EnumBudget(max_path_len=9, max_nodes=400)
    checked = 0
    while checked < 50:
        sys_ = oracle.random_system(rng)
        for p in oracle.PathEnumeration(sys_, budget, max_paths=30):
            if len(p) < 2:
                continue
            i = rng.randrange(len(p) - 1)
            j = rng.randrange(i + 1, len(p))
            spec = PumpingSpec(p, i, j)
            v = spec.vector
            # The shift identity starts at the pumping base index; right at
            # the base only the positions coincide (the base tile keeps the
            # path's type, the shifted one the period's).
            for k in range(i, i + 201):
                (x, y), t = pumping_term(spec, k)
                (x2, y2), t2 = pumping_term(spec, k + (j - i))
                assert (x2, y2) == (x + v[0], y + v[1])
                assert k == i or t2 == t
            checked += 1
            break


def test_verify_pumpable_unit(unit, unit_path):
    assert verify_pumpable_cert(unit, PumpingSpec(unit_path, 0, 1)).ok


def test_verify_pumpable_rejects_overlapping_period():
    # A U-turn period overlaps its own translate.
    sys_ = system_of([("U", "u", "u", "u", "u")], {(0, 0): "U"})
    p = path_of(sys_, (1, 0, "U"), (2, 0, "U"), (2, 1, "U"), (1, 1, "U"),
                (1, 2, "U"), (2, 2, "U"), (3, 2, "U"), (3, 1, "U"), (4, 1, "U"))
    assert validate_producible_path(sys_, p).ok
    res = verify_pumpable_cert(sys_, PumpingSpec(p, 1, 7))
    assert not res.ok and res.reason.startswith("(b)")


def test_verify_pumpable_rejects_path_collision():
    # A down-marching period whose first copy lands on the retained prefix.
    sys_ = system_of([("A", "a", "b", "d", None),
                      ("B", "d", "a", "a", "d"),
                      ("C", "c", None, "d", "b")],
                     {(0, 0): "B"})
    p = path_of(sys_, (0, 1, "C"), (-1, 1, "A"), (-1, 2, "B"), (-1, 3, "A"),
                (-1, 4, "B"), (-1, 5, "A"), (0, 5, "C"), (0, 4, "B"),
                (0, 3, "A"))
    assert validate_producible_path(sys_, p).ok
    res = verify_pumpable_cert(sys_, PumpingSpec(p, 6, 8))
    assert not res.ok and res.reason.startswith("(c)")


def test_verify_pumpable_matches_simulation(rng):
    # Verifier verdict equals disjointness scan plus explicit simulation
    # deep enough to cover the verifier's own sweep.
    budget = EnumBudget(max_path_len=8, max_nodes=300, max_pump_depth=64)
    checked = 0
    while checked < 200:
        sys_ = oracle.random_system(rng)
        for p in oracle.PathEnumeration(sys_, budget, max_paths=40):
            if len(p) < 2:
                continue
            i = rng.randrange(len(p) - 1)
            j = rng.randrange(i + 1, len(p))
            verdict = bool(verify_pumpable_cert(sys_, PumpingSpec(p, i, j)))
            sim = oracle.confirm_pumpable(sys_, p, i, j, budget)
            assert verdict == sim, (p.entries, i, j)
            checked += 1


def test_verify_fragile(blocker):
    sys_, p = blocker
    A = sys_.by_name["A"]
    good = FragilityCert((((1, 0), A), ((2, 0), A), ((3, 0), A)), (3, 0))
    assert verify_fragile_cert(sys_, p, good).ok
    no_conflict = FragilityCert((((1, 0), A),), (1, 0))
    res = verify_fragile_cert(sys_, p, no_conflict)
    assert not res.ok and "NoConflict" in res.reason
    detached = FragilityCert((((9, 9), A),), (9, 9))
    assert not verify_fragile_cert(sys_, p, detached).ok


# -- transform invariance ---------------------------------------------------------


def test_transform_identities(unit):
    flipped = driver.transform(driver.transform(unit, "flipH"), "flipH")
    assert flipped.tiles == unit.tiles and flipped.seed.tiles == unit.seed.tiles
    rotated = unit
    for _ in range(4):
        rotated = driver.transform(rotated, "rot90")
    assert rotated.tiles == unit.tiles and rotated.seed.tiles == unit.seed.tiles


def test_verifier_verdicts_transform_invariant(rng):
    budget = EnumBudget(max_path_len=8, max_nodes=300)
    checked = 0
    while checked < 100:
        sys_ = oracle.random_system(rng)
        for p in oracle.PathEnumeration(sys_, budget, max_paths=30):
            if len(p) < 2:
                continue
            i = rng.randrange(len(p) - 1)
            j = rng.randrange(i + 1, len(p))
            base = bool(verify_pumpable_cert(sys_, PumpingSpec(p, i, j)))
            for op in ("rot90", "flipH", "flipV"):
                tsys = driver.transform(sys_, op)
                tpath = driver.transform_path(p, tsys, op)
                assert bool(verify_pumpable_cert(tsys, PumpingSpec(tpath, i, j))) == base
            checked += 1
