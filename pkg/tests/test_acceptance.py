"""Acceptance suite: one test per criterion, each printing a pass line.

Corpus parameters (generator seed, tile/seed caps, enumeration caps) are
fixed in this file so every run is reproducible.  The theorem-scale
experiment (paths wider than the true distance bound) is not reproducible
at desk scale even for one tile type; the suite exercises the full
pipeline through explicit bound overrides instead, as the engine- and
lemma-level checks below.
"""

import random
import time

from pumpkit import (
    PumpingSpec,
    analyze,
    bound,
    classify_side,
    enumerate_shields,
    precious_check,
    pump_or_block,
    pumping_term,
    verify_fragile_cert,
    verify_pumpable_cert,
)
from pumpkit import oracle, driver
from pumpkit.budgets import EnumBudget
from pumpkit.errors import ClaimViolation, NotEasternmost
from pumpkit.geometry import Side
from pumpkit.oracle import FloodFill
from pumpkit.shield import Shield, build_workspace
from pumpkit.visibility import GlueView, check_glue_east, check_glue_side

from conftest import path_of

CORPUS_SEED = 20260810
CORPUS_SYSTEMS = 500
CORPUS_MAX_TILES = 3
CORPUS_MAX_SEED = 2
CORPUS_PATH_CAP = 3000  # systems enumerating past this are not kept


def _timed(limit):
    start = time.time()

    def done(label):
        elapsed = time.time() - start
        assert elapsed < limit, f"{label} took {elapsed:.1f}s (limit {limit}s)"
        return elapsed

    return done


def _corpus(n_systems, rng, budget, cap=CORPUS_PATH_CAP):
    kept = 0
    while kept < n_systems:
        sys_ = oracle.random_system(rng, max_tiles=CORPUS_MAX_TILES,
                                    max_seed=CORPUS_MAX_SEED)
        enum = oracle.PathEnumeration(sys_, budget, max_paths=cap)
        paths = list(enum)
        if enum.truncated:
            continue  # complete enumeration only
        kept += 1
        yield sys_, paths


def test_criterion_1_unit_pump(unit, unit_path):
    done = _timed(1.0)
    res = analyze(unit, unit_path, bound_override=2)
    assert res.kind == "pumpable"
    assert res.pumpable.vector == (1, 0)
    assert verify_pumpable_cert(unit, res.pumpable).ok
    assert oracle._simulate_pumping(unit, res.pumpable, depth=50)
    elapsed = done("criterion 1")
    print(f"\nPASS criterion 1: unit pump, vector (1,0), 50 periods clean "
          f"({elapsed:.2f}s)")


def test_criterion_2_exit_repeat_shortcut(unit):
    done = _timed(1.0)
    p = path_of(unit, (1, 0, "A"), (2, 0, "A"), (3, 0, "A"))
    shields = enumerate_shields(unit, p)
    assert shields == [Shield(0, 1, 1)]
    assert shields[0].j == shields[0].k
    out = pump_or_block(unit, p, shields[0])
    assert out.kind == "pumpable" and out.branch == "repeat-at-exit"
    res = analyze(unit, p, bound_override=2)
    assert any("repeat-at-exit" in t for t in res.trail)
    elapsed = done("criterion 2")
    print(f"\nPASS criterion 2: equal-index shortcut branch recorded "
          f"({elapsed:.2f}s)")


def test_criterion_3_fragility(blocker):
    done = _timed(30.0)
    sys_, p = blocker
    out = pump_or_block(sys_, p, Shield(0, 1, 2))
    assert out.kind == "fragile"
    cert = out.fragile
    assert verify_fragile_cert(sys_, p, cert).ok
    ws = build_workspace(sys_, p.prefix(3), Shield(0, 1, 2))
    prefix = set(p.positions[:1])
    for pos, _ in cert.attachments:
        if pos not in prefix:
            assert ws.cache.side((2 * pos[0], 2 * pos[1])) is not Side.LEFT
    found = oracle.brute_fragile(sys_, p, EnumBudget(max_assembly_size=30))
    assert found is not None and verify_fragile_cert(sys_, p, found).ok
    elapsed = done("criterion 3")
    print(f"\nPASS criterion 3: blocker is fragile, certificate replays, "
          f"blocking growth inside the workspace, brute search at size<=30 "
          f"agrees ({elapsed:.2f}s)")


def test_criterion_4_differential_corpus():
    done = _timed(600.0)
    rng = random.Random(CORPUS_SEED)
    budget = EnumBudget(max_path_len=14, max_nodes=10 ** 6)
    n_paths = n_decided = violations = 0
    kinds = {"pumpable": 0, "fragile": 0}
    for sys_, paths in _corpus(CORPUS_SYSTEMS, rng, budget):
        n_paths += len(paths)
        for p in paths:
            shields = enumerate_shields(sys_, p)
            if not shields:
                continue
            chosen = [shields[0]]
            deeper = next((s for s in shields if s.j < s.k), None)
            if deeper is not None and deeper != shields[0]:
                chosen.append(deeper)
            for sh in chosen:
                try:
                    out = pump_or_block(sys_, p, sh, budget)
                except ClaimViolation:
                    violations += 1
                    continue
                kinds[out.kind] += 1
                if out.kind == "pumpable":
                    assert verify_pumpable_cert(sys_, out.pumpable).ok
                else:
                    assert verify_fragile_cert(sys_, p, out.fragile).ok
                n_decided += 1
    assert violations == 0
    assert n_decided > 1000 and kinds["fragile"] > 0
    elapsed = done("criterion 4")
    print(f"\nPASS criterion 4: {CORPUS_SYSTEMS} systems "
          f"(seed {CORPUS_SEED}, |T|<={CORPUS_MAX_TILES}, "
          f"seed<={CORPUS_MAX_SEED}), {n_paths} paths enumerated to length "
          f"14, {n_decided} certificates all verified "
          f"({kinds['pumpable']} pumpable / {kinds['fragile']} fragile), "
          f"0 claim violations ({elapsed:.1f}s)")


def test_criterion_5_lemma_property_suites():
    done = _timed(120.0)
    rng = random.Random(CORPUS_SEED + 1)
    budget = EnumBudget(max_path_len=10, max_nodes=10 ** 6)
    east_checked = side_checked = 0
    for sys_, paths in _corpus(150, rng, budget, cap=400):
        for p in paths:
            if len(p) < 2:
                continue
            csys, cpath = sys_, p
            for _ in range(4):
                view = GlueView(csys, cpath)
                lg = view.glues[-1]
                if lg.horizontal and view.visible(lg.index, "north"):
                    assert check_glue_east(csys, cpath) is None
                    east_checked += 1
                try:
                    assert check_glue_side(csys, cpath) is None
                    side_checked += 1
                except NotEasternmost:
                    pass
                csys = driver.transform(csys, "rot90")
                cpath = driver.transform_path(cpath, csys, "rot90")
    assert east_checked > 500 and side_checked > 500

    # Shift identity to depth 200 on corpus-drawn pumping specs.
    rng2 = random.Random(CORPUS_SEED + 2)
    specs_checked = 0
    for sys_, paths in _corpus(40, rng2, budget, cap=200):
        for p in paths[: 20]:
            if len(p) < 2:
                continue
            for i in range(len(p) - 1):
                for j in range(i + 1, len(p)):
                    spec = PumpingSpec(p, i, j)
                    v = spec.vector
                    for k in range(i, i + 201):
                        (x, y), _ = pumping_term(spec, k)
                        (x2, y2), _ = pumping_term(spec, k + (j - i))
                        assert (x2, y2) == (x + v[0], y + v[1])
                    specs_checked += 1
                    if specs_checked >= 300:
                        break
                if specs_checked >= 300:
                    break
            if specs_checked >= 300:
                break
        if specs_checked >= 300:
            break
    assert specs_checked >= 300

    # Translate disjointness: 1000 random triples with the premise true.
    rng3 = random.Random(CORPUS_SEED + 3)
    tested = 0
    while tested < 1000:
        cells = {(0, 0)}
        for _ in range(rng3.randrange(1, 8)):
            x, y = rng3.choice(sorted(cells))
            dx, dy = rng3.choice([(2, 0), (-2, 0), (0, 2), (0, -2)])
            cells.add((x + dx, y + dy))
        v = (rng3.randrange(-8, 9) * 2, rng3.randrange(-8, 9) * 2)
        if v == (0, 0) or not precious_check(cells, v):
            continue
        tested += 1
        for c in range(-8, 9):
            if c == 0:
                continue
            moved = {(x + c * v[0], y + c * v[1]) for x, y in cells}
            assert not (cells & moved)
    elapsed = done("criterion 5")
    print(f"\nPASS criterion 5: order/side disciplines on "
          f"{east_checked}/{side_checked} canonicalized paths, shift "
          f"identity to depth 200 on {specs_checked} specs, translate "
          f"disjointness on 1000 triples ({elapsed:.1f}s)")


def _random_curve(rng, corners):
    pts = [(rng.randrange(-6, 7) * 2 + 1, -10)]
    y = -10
    for _ in range(corners):
        x = pts[-1][0]
        nx = x + rng.choice([-2, -1, 1, 2]) * rng.randrange(1, 4)
        pts.append((nx, y))
        y += rng.randrange(1, 4)
        pts.append((nx, y))
    from pumpkit.geometry import PolyCurve

    return PolyCurve(pts, south_ray=True, north_ray=True)


def test_criterion_6_jordan_agreement():
    done = _timed(60.0)
    rng = random.Random(CORPUS_SEED + 4)
    points = 0
    for _ in range(1000):
        curve = _random_curve(rng, corners=8)
        x0, y0, x1, y1 = curve.bbox()
        cx, cy = (x0 + x1) // 2, (y0 + y1) // 2
        window = (cx - 20, cy - 20, cx + 20, cy + 20)
        fill_window = (min(window[0], x0 - 2), min(window[1], y0 - 2),
                       max(window[2], x1 + 2), max(window[3], y1 + 2))
        fill = FloodFill(curve, fill_window)
        for x in range(window[0], window[2] + 1):
            for y in range(window[1], window[3] + 1):
                assert classify_side(curve, (x, y)) is fill.side((x, y))
                points += 1
    elapsed = done("criterion 6")
    print(f"\nPASS criterion 6: parity classifier equals flood fill on "
          f"1000 curves x {points // 1000} window points ({elapsed:.1f}s)")


def test_criterion_7_bound_arithmetic():
    assert bound(1, 1) == 10240
    assert bound(2, 1) == 1342177280
    assert isinstance(bound(5, 5), int)
    # Same formula, evaluated independently with pow/int arithmetic.
    for t in range(1, 6):
        for s in range(1, 6):
            assert bound(t, s) == pow(4 * t, 4 * t + 1) * (4 * s + 6)
    print("\nPASS criterion 7: bound(1,1)=10240, bound(2,1)=1342177280, "
          "exact big integers; theorem-scale widths are out of desk reach "
          "by construction, covered via bound overrides above")


def test_criterion_8_roundtrips_and_goldens(tmp_path):
    from pumpkit.formats import (
        emit_certificate,
        parse_certificate,
        parse_system,
        print_system,
    )

    done = _timed(30.0)
    rng = random.Random(CORPUS_SEED + 5)
    budget = EnumBudget(max_path_len=9, max_nodes=10 ** 6)
    files = certs = 0
    for sys_, paths in _corpus(80, rng, budget, cap=300):
        path = paths[-1] if paths else None
        text = print_system(sys_, path)
        sys2, path2 = parse_system(text)
        assert sys2.tiles == sys_.tiles and sys2.seed.tiles == sys_.seed.tiles
        assert path2 == path and print_system(sys2, path2) == text
        files += 1
        for p in paths:
            shields = enumerate_shields(sys_, p)
            if not shields:
                continue
            out = pump_or_block(sys_, p, shields[0], budget)
            text = emit_certificate(out)
            back = parse_certificate(text, sys_, p)
            assert emit_certificate(back) == text
            if out.kind == "pumpable":
                assert verify_pumpable_cert(sys_, back).ok
            else:
                assert verify_fragile_cert(sys_, p, back).ok
            certs += 1
            break  # one certificate per system keeps this under budget

    import os

    from test_formats import GOLDEN_DIR, _golden_cases

    for name, svg in _golden_cases():
        with open(os.path.join(GOLDEN_DIR, name), encoding="utf-8") as fh:
            assert fh.read() == svg
    elapsed = done("criterion 8")
    print(f"\nPASS criterion 8: {files} system files and {certs} "
          f"certificates round-trip, 3 golden figures byte-identical "
          f"({elapsed:.1f}s)")
