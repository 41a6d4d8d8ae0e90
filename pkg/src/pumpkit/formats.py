"""Plain-text formats for systems, paths, and certificates.

System files hold one ``tile`` line per type, ``seed`` lines, and an
optional ``path`` line; certificate files carry either an index pair or
an attachment sequence with a conflict position.  Coordinates are tile
units; the doubled lattice never leaks into files.  Printing is
canonical, so ``parse(print(x)) == x``.
"""

from __future__ import annotations

from typing import Optional, Union

from .driver import AnalysisResult
from .errors import BadSystem, DisconnectedSeed, DuplicateTile, ParseError
from .shield import ShieldOutcome
from .tam import Assembly, FragilityCert, Path, PumpingSpec, TileSystem, TileType

NULL_GLUE = "-"
_SIDES = ("north", "east", "south", "west")


def _glue_out(label: Optional[str]) -> str:
    return NULL_GLUE if label is None else label


def _glue_in(token: str, lineno: int) -> Optional[str]:
    if token == NULL_GLUE:
        return None
    if not token.isascii() or not token.isprintable() or "=" in token:
        raise ParseError(lineno, f"bad glue label {token!r}")
    return token


def parse_system(text: str):
    """Parse a system file; returns ``(system, path_or_None)``."""
    tiles: dict[str, TileType] = {}
    tile_order: list[TileType] = []
    seed_entries: dict[tuple[int, int], TileType] = {}
    path_entries = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "tile":
            if len(words) != 6:
                raise ParseError(lineno, "tile line needs a name and four sides")
            name = words[1]
            if name in tiles:
                raise DuplicateTile(lineno, f"tile {name!r} declared twice")
            glues = {}
            for token in words[2:]:
                if "=" not in token:
                    raise ParseError(lineno, f"expected side=glue, got {token!r}")
                side, _, label = token.partition("=")
                if side not in _SIDES or side in glues:
                    raise ParseError(lineno, f"bad or repeated side {side!r}")
                glues[side] = _glue_in(label, lineno)
            if set(glues) != set(_SIDES):
                raise ParseError(lineno, "tile line must name all four sides")
            t = TileType(name, **glues)
            tiles[name] = t
            tile_order.append(t)
        elif words[0] == "seed":
            if len(words) != 4:
                raise ParseError(lineno, "seed line is: seed <x> <y> <name>")
            try:
                x, y = int(words[1]), int(words[2])
            except ValueError:
                raise ParseError(lineno, "seed coordinates must be integers")
            t = tiles.get(words[3])
            if t is None:
                raise ParseError(lineno, f"unknown tile {words[3]!r}")
            if (x, y) in seed_entries:
                raise ParseError(lineno, f"seed position {(x, y)} repeated")
            seed_entries[(x, y)] = t
        elif words[0] == "path":
            if path_entries is not None:
                raise ParseError(lineno, "more than one path line")
            path_entries = []
            for part in " ".join(words[1:]).split(";"):
                fields = part.split()
                if len(fields) != 3:
                    raise ParseError(lineno, "path entries are: <x> <y> <name>")
                try:
                    x, y = int(fields[0]), int(fields[1])
                except ValueError:
                    raise ParseError(lineno, "path coordinates must be integers")
                t = tiles.get(fields[2])
                if t is None:
                    raise ParseError(lineno, f"unknown tile {fields[2]!r}")
                path_entries.append(((x, y), t))
        else:
            raise ParseError(lineno, f"unknown directive {words[0]!r}")
    if not seed_entries:
        raise ParseError(0, "no seed lines")
    try:
        system = TileSystem(tile_order, Assembly(seed_entries))
    except BadSystem as e:
        if "connected" in str(e):
            raise DisconnectedSeed(str(e))
        raise
    path = Path(path_entries) if path_entries is not None else None
    return system, path


def print_system(sys: TileSystem, path: Optional[Path] = None) -> str:
    lines = []
    for t in sys.tiles:
        sides = " ".join(f"{s}={_glue_out(t.glue(s))}" for s in _SIDES)
        lines.append(f"tile {t.name} {sides}")
    for (x, y), t in sorted(sys.seed.tiles.items()):
        lines.append(f"seed {x} {y} {t.name}")
    if path is not None:
        entries = " ; ".join(f"{x} {y} {t.name}" for (x, y), t in path.entries)
        lines.append(f"path {entries}")
    return "\n".join(lines) + "\n"


Certificate = Union[PumpingSpec, FragilityCert]


def emit_certificate(outcome: Union[ShieldOutcome, AnalysisResult,
                                    PumpingSpec, FragilityCert]) -> str:
    """Render a verified outcome as a certificate file."""
    if isinstance(outcome, (ShieldOutcome, AnalysisResult)):
        payload = outcome.pumpable if outcome.kind == "pumpable" else outcome.fragile
        if payload is None:
            raise ValueError(f"no certificate in a {outcome.kind} outcome")
        return emit_certificate(payload)
    if isinstance(outcome, PumpingSpec):
        vx, vy = outcome.vector
        return f"kind pumpable i={outcome.i} j={outcome.j}\nvector {vx} {vy}\n"
    lines = ["kind fragile"]
    for (x, y), t in outcome.attachments:
        lines.append(f"attach {x} {y} {t.name}")
    lines.append(f"conflict {outcome.conflict[0]} {outcome.conflict[1]}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str, sys: TileSystem,
                      path: Optional[Path] = None) -> Certificate:
    """Parse a certificate file back into a verifiable object.

    Pumping certificates reference path indices, so ``path`` is required
    for them; blocking certificates only need the system's tile names.
    """
    lines = [l.split("#", 1)[0].strip() for l in text.splitlines()]
    lines = [(no, l) for no, l in enumerate(lines, start=1) if l]
    if not lines:
        raise ParseError(0, "empty certificate")
    no, head = lines[0]
    words = head.split()
    if words[0] != "kind" or len(words) < 2:
        raise ParseError(no, "certificate must start with a kind line")
    if words[1] == "pumpable":
        fields = dict(w.partition("=")[::2] for w in words[2:])
        try:
            i, j = int(fields["i"]), int(fields["j"])
        except (KeyError, ValueError):
            raise ParseError(no, "pumpable line needs i=<int> j=<int>")
        if path is None:
            raise ParseError(no, "pumping certificate needs the path")
        spec = PumpingSpec(path, i, j)
        for no2, l in lines[1:]:
            words = l.split()
            if words[0] != "vector" or len(words) != 3:
                raise ParseError(no2, f"unexpected line {l!r}")
            if (int(words[1]), int(words[2])) != spec.vector:
                raise ParseError(no2, "vector does not match the index pair")
        return spec
    if words[1] == "fragile":
        attachments = []
        conflict = None
        for no2, l in lines[1:]:
            words = l.split()
            if words[0] == "attach" and len(words) == 4:
                t = sys.by_name.get(words[3])
                if t is None:
                    raise ParseError(no2, f"unknown tile {words[3]!r}")
                attachments.append(((int(words[1]), int(words[2])), t))
            elif words[0] == "conflict" and len(words) == 3:
                if conflict is not None:
                    raise ParseError(no2, "two conflict lines")
                conflict = (int(words[1]), int(words[2]))
            else:
                raise ParseError(no2, f"unexpected line {l!r}")
        if conflict is None:
            raise ParseError(no, "fragile certificate has no conflict line")
        return FragilityCert(tuple(attachments), conflict)
    raise ParseError(no, f"unknown certificate kind {words[1]!r}")
