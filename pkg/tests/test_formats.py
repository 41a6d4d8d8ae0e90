"""Text formats, SVG rendering, and the command line."""

import os
import subprocess
import sys as _pysys

import pytest

from pumpkit import PumpingSpec, oracle, pump_or_block
from pumpkit.budgets import EnumBudget
from pumpkit.errors import DisconnectedSeed, DuplicateTile, ParseError
from pumpkit.formats import (
    emit_certificate,
    parse_certificate,
    parse_system,
    print_system,
)
from pumpkit.shield import Shield
from pumpkit.svgout import render_svg

from conftest import path_of, system_of

UNIT_TEXT = """\
tile A north=- east=g south=- west=g
seed 0 0 A
path 1 0 A ; 2 0 A ; 3 0 A
"""

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")


def test_parse_unit():
    sys_, path = parse_system(UNIT_TEXT)
    assert [t.name for t in sys_.tiles] == ["A"]
    assert sys_.tiles[0].east == "g" and sys_.tiles[0].north is None
    assert path.positions == ((1, 0), (2, 0), (3, 0))


def test_print_parse_roundtrip():
    sys_, path = parse_system(UNIT_TEXT)
    text = print_system(sys_, path)
    sys2, path2 = parse_system(text)
    assert sys2.tiles == sys_.tiles
    assert sys2.seed.tiles == sys_.seed.tiles
    assert path2 == path
    assert print_system(sys2, path2) == text


def test_parse_duplicate_tile():
    with pytest.raises(DuplicateTile):
        parse_system("tile A north=- east=- south=- west=-\n"
                     "tile A north=- east=- south=- west=-\nseed 0 0 A\n")


def test_parse_disconnected_seed():
    with pytest.raises(DisconnectedSeed):
        parse_system("tile A north=a east=a south=a west=a\n"
                     "seed 0 0 A\nseed 5 5 A\n")


def test_parse_unknown_directive():
    with pytest.raises(ParseError) as e:
        parse_system("tile A north=- east=g south=- west=g\nseed 0 0 A\nnope\n")
    assert e.value.line == 3


def test_roundtrip_random_systems(rng):
    for _ in range(50):
        sys_ = oracle.random_system(rng)
        budget = EnumBudget(max_path_len=6, max_nodes=100)
        paths = list(oracle.PathEnumeration(sys_, budget, max_paths=5))
        path = paths[-1] if paths else None
        text = print_system(sys_, path)
        sys2, path2 = parse_system(text)
        assert sys2.tiles == sys_.tiles and sys2.seed.tiles == sys_.seed.tiles
        assert path2 == path
        assert print_system(sys2, path2) == text


def test_pumpable_cert_roundtrip(unit, unit_path):
    spec = PumpingSpec(unit_path, 0, 1)
    text = emit_certificate(spec)
    assert text == "kind pumpable i=0 j=1\nvector 1 0\n"
    back = parse_certificate(text, unit, unit_path)
    assert back == spec


def test_fragile_cert_roundtrip(blocker):
    sys_, p = blocker
    out = pump_or_block(sys_, p, Shield(0, 1, 2))
    text = emit_certificate(out)
    assert text.startswith("kind fragile\n")
    assert len(text.strip().splitlines()) == len(out.fragile.attachments) + 2
    back = parse_certificate(text, sys_, p)
    assert back == out.fragile
    assert emit_certificate(back) == text


def test_cert_roundtrip_corpus(rng):
    from pumpkit import enumerate_shields, verify_fragile_cert, verify_pumpable_cert

    budget = EnumBudget(max_path_len=9, max_nodes=1500)
    n = 0
    for _ in range(250):
        sys_ = oracle.random_system(rng)
        enum = oracle.PathEnumeration(sys_, budget, max_paths=400)
        paths = list(enum)
        if enum.truncated:
            continue
        for p in paths:
            shields = enumerate_shields(sys_, p)
            if not shields:
                continue
            out = pump_or_block(sys_, p, shields[0], budget)
            text = emit_certificate(out)
            back = parse_certificate(text, sys_, p)
            if out.kind == "pumpable":
                assert back == out.pumpable
                assert verify_pumpable_cert(sys_, back).ok
            else:
                assert back == out.fragile
                assert verify_fragile_cert(sys_, p, back).ok
            assert emit_certificate(back) == text
            n += 1
    assert n > 60


# -- SVG --------------------------------------------------------------------------


def test_svg_tile_count(unit, unit_path):
    svg = render_svg(unit, unit_path)
    assert svg.count("<rect") == 4  # seed + three path tiles


def test_svg_region_single_polygon(unit, unit_path):
    svg = render_svg(unit, unit_path, overlays={"regions"}, shield=Shield(0, 1, 1))
    assert svg.count("<polygon") == 1


def test_svg_deterministic(unit, unit_path):
    a = render_svg(unit, unit_path, overlays={"rays", "cut", "regions"},
                   shield=Shield(0, 1, 1))
    b = render_svg(unit, unit_path, overlays={"rays", "cut", "regions"},
                   shield=Shield(0, 1, 1))
    assert a == b


def _golden_cases():
    unit = system_of([("A", None, "g", None, "g")], {(0, 0): "A"})
    unit_path = path_of(unit, (1, 0, "A"), (2, 0, "A"), (3, 0, "A"))
    stair = system_of([("S", "b", "a", "b", "a")], {(0, 0): "S"})
    stair_path = path_of(stair, (1, 0, "S"), (2, 0, "S"), (2, 1, "S"),
                         (3, 1, "S"), (3, 2, "S"), (4, 2, "S"))
    return [
        ("unit_plain.svg", render_svg(unit, unit_path)),
        ("unit_workspace.svg",
         render_svg(unit, unit_path, overlays={"cut", "regions"},
                    shield=Shield(0, 1, 1))),
        ("staircase_rays.svg",
         render_svg(stair, stair_path, overlays={"rays"}, shield=Shield(0, 2, 4))),
    ]


@pytest.mark.parametrize("name,svg", _golden_cases())
def test_svg_golden(name, svg):
    path = os.path.join(GOLDEN_DIR, name)
    with open(path, "r", encoding="utf-8") as fh:
        assert fh.read() == svg


# -- CLI --------------------------------------------------------------------------


def _run(args, cwd):
    return subprocess.run(
        [_pysys.executable, "-m", "pumpkit.cli", *args],
        capture_output=True, text=True, cwd=cwd)


@pytest.fixture
def unit_file(tmp_path):
    f = tmp_path / "unit.tiles"
    f.write_text(UNIT_TEXT)
    return f


def test_cli_validate(unit_file, tmp_path):
    r = _run(["validate", str(unit_file)], tmp_path)
    assert r.returncode == 0 and "path ok" in r.stdout


def test_cli_analyze_exit_code_pumpable(unit_file, tmp_path):
    r = _run(["analyze", str(unit_file), "--bound-override", "2"], tmp_path)
    assert r.returncode == 0
    assert "pumpable i=0 j=1" in r.stdout


def test_cli_analyze_exit_code_fragile(tmp_path, analyze_fragile):
    sys_, p = analyze_fragile
    f = tmp_path / "frag.tiles"
    f.write_text(print_system(sys_, p))
    r = _run(["analyze", str(f), "--bound-override", "2"], tmp_path)
    assert r.returncode == 1 and "fragile" in r.stdout


def test_cli_analyze_exit_code_no_shield(tmp_path):
    sys_ = system_of([("A", None, "a", None, None), ("B", None, "b", None, "a"),
                      ("C", None, "c", None, "b"), ("D", None, None, None, "c")],
                     {(0, 0): "A"})
    p = path_of(sys_, (1, 0, "B"), (2, 0, "C"), (3, 0, "D"))
    f = tmp_path / "noshield.tiles"
    f.write_text(print_system(sys_, p))
    r = _run(["analyze", str(f), "--bound-override", "2"], tmp_path)
    assert r.returncode == 2


def test_cli_pump_or_block_and_verify(unit_file, tmp_path):
    cert = tmp_path / "cert.txt"
    r = _run(["pump-or-block", str(unit_file), "--shield", "0", "1", "1",
              "-o", str(cert)], tmp_path)
    assert r.returncode == 0
    r2 = _run(["verify", str(unit_file), str(cert)], tmp_path)
    assert r2.returncode == 0 and "valid" in r2.stdout


def test_cli_shields_spans_render_bound(unit_file, tmp_path):
    assert "shield 0 1 1" in _run(["shields", str(unit_file)], tmp_path).stdout
    spans_out = _run(["spans", str(unit_file)], tmp_path).stdout
    assert "span coord=1" in spans_out and "span coord=2" in spans_out
    out = tmp_path / "fig.svg"
    assert _run(["render", str(unit_file), "-o", str(out)], tmp_path).returncode == 0
    assert out.read_text().startswith("<svg")
    assert _run(["bound", "--tiles", "1", "--seed", "1"],
                tmp_path).stdout.strip() == "10240"


def test_cli_oracle_modes(unit_file, tmp_path, blocker):
    r = _run(["oracle", "enumerate", str(unit_file)], tmp_path)
    assert r.returncode == 0 and "producible path(s)" in r.stdout
    sys_, p = blocker
    f = tmp_path / "blocker.tiles"
    f.write_text(print_system(sys_, p))
    r2 = _run(["oracle", "fragile", str(f)], tmp_path)
    assert r2.returncode == 1 and "conflict at" in r2.stdout
    r3 = _run(["oracle", "pumpable", str(unit_file)], tmp_path)
    assert r3.returncode == 0
    r4 = _run(["oracle", "rp", str(f), "--shield", "0", "1", "2"], tmp_path)
    assert r4.returncode == 0 and "routes agree" in r4.stdout


def test_cli_reduce_2ham(tmp_path):
    sys_ = system_of([("A", None, "g", None, "g")], {(9, 9): "A"})
    p = path_of(sys_, (0, 0, "A"), (1, 0, "A"), (2, 0, "A"))
    f = tmp_path / "free.tiles"
    f.write_text(print_system(sys_, p))
    r = _run(["reduce-2ham", str(f)], tmp_path)
    assert r.returncode == 0 and "seed 0 0 A" in r.stdout


def test_cli_budget_env(unit_file, tmp_path):
    env = dict(os.environ, PUMPKIT_BUDGET_MAX_PATH_LEN="2")
    r = subprocess.run(
        [_pysys.executable, "-m", "pumpkit.cli", "oracle", "enumerate",
         str(unit_file)],
        capture_output=True, text=True, cwd=tmp_path, env=env)
    assert "4 producible path(s)" in r.stdout
