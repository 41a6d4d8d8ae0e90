"""Noncooperative (temperature 1) tile assembly: systems, paths, verifiers.

Positions here are plain tile coordinates on Z^2; the doubled lattice of
:mod:`pumpkit.geometry` is entered only when embedding paths as curves.
A tile binds when at least one abutting pair of sides carries the same
non-null glue label, so glue strengths never appear explicitly: a present
label has strength 1, an absent one strength 0.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import geometry
from .errors import BadSystem, BadTarget, IllegalAttachment, Occupied
from .geometry import Displacement

Position = tuple[int, int]

NORTH, EAST, SOUTH, WEST = "north", "east", "south", "west"
SIDES = (NORTH, EAST, SOUTH, WEST)
STEP = {NORTH: (0, 1), EAST: (1, 0), SOUTH: (0, -1), WEST: (-1, 0)}
OPPOSITE = {NORTH: SOUTH, SOUTH: NORTH, EAST: WEST, WEST: EAST}
SIDE_OF_STEP = {v: k for k, v in STEP.items()}


@dataclass(frozen=True, order=True)
class TileType:
    """A unit square with an optional glue label on each side."""

    name: str
    north: Optional[str] = None
    east: Optional[str] = None
    south: Optional[str] = None
    west: Optional[str] = None

    def glue(self, side: str) -> Optional[str]:
        return getattr(self, side)

    def interacts(self, other: "TileType", step: Position) -> bool:
        """Whether ``other`` placed one ``step`` away binds to this tile."""
        side = SIDE_OF_STEP[step]
        mine = self.glue(side)
        return mine is not None and mine == other.glue(OPPOSITE[side])


class Assembly:
    """Finite placement of tile types on a connected set of positions."""

    __slots__ = ("tiles",)

    def __init__(self, tiles: dict[Position, TileType], require_connected=True):
        if require_connected and tiles and not _connected(tiles.keys()):
            raise BadSystem("assembly domain is not connected")
        self.tiles = dict(tiles)

    def __len__(self):
        return len(self.tiles)

    def __contains__(self, pos: Position):
        return pos in self.tiles

    def __iter__(self):
        return iter(sorted(self.tiles.items()))

    def get(self, pos: Position) -> Optional[TileType]:
        return self.tiles.get(pos)

    def positions(self) -> frozenset[Position]:
        return frozenset(self.tiles)

    def translate(self, v: Position) -> "Assembly":
        return Assembly({(x + v[0], y + v[1]): t for (x, y), t in self.tiles.items()},
                        require_connected=False)


def _connected(positions: Iterable[Position]) -> bool:
    todo = set(positions)
    if not todo:
        return True
    frontier = deque([next(iter(todo))])
    todo.discard(frontier[0])
    while frontier:
        x, y = frontier.popleft()
        for dx, dy in STEP.values():
            q = (x + dx, y + dy)
            if q in todo:
                todo.discard(q)
                frontier.append(q)
    return not todo


class TileSystem:
    """A tile set plus a seed assembly; the temperature is always 1."""

    temperature = 1

    def __init__(self, tiles: Sequence[TileType], seed: Assembly,
                 seed_only_types: Sequence[TileType] = ()):
        names = [t.name for t in tiles]
        if len(set(names)) != len(names):
            raise BadSystem("duplicate tile type names")
        if not tiles:
            raise BadSystem("tile set is empty")
        if not len(seed):
            raise BadSystem("seed is empty")
        self.tiles = tuple(sorted(tiles))  # canonical ordering: by name
        self.by_name = {t.name: t for t in self.tiles}
        extra = {t.name: t for t in seed_only_types}
        for pos, t in seed.tiles.items():
            known = self.by_name.get(t.name) or extra.get(t.name)
            if known != t:
                raise BadSystem(f"seed tile at {pos} uses undeclared type {t.name!r}")
        self.seed = seed
        self.seed_only_types = tuple(sorted(seed_only_types))

    def __repr__(self):
        return f"TileSystem({len(self.tiles)} tiles, seed of {len(self.seed)})"


class Path:
    """A sequence of placed tiles; validity is checked by the functions below.

    Storing possibly-invalid sequences is deliberate: the validator has to
    be able to point at the first broken entry of a candidate path.
    """

    __slots__ = ("entries", "_pos_index")

    def __init__(self, entries: Sequence[tuple[Position, TileType]]):
        self.entries = tuple((tuple(p), t) for p, t in entries)
        self._pos_index = None

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, Path) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Path({len(self.entries)} tiles)"

    @property
    def positions(self) -> tuple[Position, ...]:
        return tuple(p for p, _ in self.entries)

    @property
    def types(self) -> tuple[TileType, ...]:
        return tuple(t for _, t in self.entries)

    def pos(self, i: int) -> Position:
        return self.entries[i][0]

    def type(self, i: int) -> TileType:
        return self.entries[i][1]

    def index_of(self, pos: Position) -> Optional[int]:
        if self._pos_index is None:
            self._pos_index = {p: i for i, (p, _) in enumerate(self.entries)}
        return self._pos_index.get(pos)

    def prefix(self, end: int) -> "Path":
        """Entries 0..end inclusive."""
        return Path(self.entries[: end + 1])

    def translate(self, v: Position) -> "Path":
        return Path([((p[0] + v[0], p[1] + v[1]), t) for p, t in self.entries])

    def assembly(self) -> Assembly:
        return Assembly({p: t for p, t in self.entries}, require_connected=False)

    def embed(self) -> geometry.PolyCurve:
        return geometry.embed_path(self.positions)

    def glue_vector(self, i: int, j: int) -> Displacement:
        """Doubled vector from tile i to tile j."""
        (xi, yi), (xj, yj) = self.pos(i), self.pos(j)
        return (2 * (xj - xi), 2 * (yj - yi))


def seed_contacts(sys: TileSystem, tile: tuple[Position, TileType]) -> int:
    """Number of seed tiles the given tile binds to."""
    pos, t = tile
    n = 0
    for step in STEP.values():
        q = (pos[0] + step[0], pos[1] + step[1])
        s = sys.seed.get(q)
        if s is not None and t.interacts(s, step):
            n += 1
    return n


@dataclass
class ValidationReport:
    ok: bool
    code: Optional[str] = None
    index: Optional[int] = None
    notes: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate_producible_path(sys: TileSystem, p: Path) -> ValidationReport:
    """Check the four conditions that make a path producible.

    The path must be simple, disjoint from the seed, consecutive tiles
    must bind, and the first tile must bind to the seed.  The report names
    the first violated condition; extra seed contacts after the first tile
    are legal and only reported as notes.
    """
    if len(p) == 0:
        return ValidationReport(False, "EmptyPath", 0)
    seen: set[Position] = set()
    notes: list[str] = []
    for i, (pos, t) in enumerate(p.entries):
        if pos in sys.seed:
            return ValidationReport(False, "OverlapsSeed", i)
        if pos in seen:
            return ValidationReport(False, "NotSimple", i)
        seen.add(pos)
        if i > 0:
            prev_pos, prev_t = p.entries[i - 1]
            step = (pos[0] - prev_pos[0], pos[1] - prev_pos[1])
            if step not in SIDE_OF_STEP or not prev_t.interacts(t, step):
                return ValidationReport(False, "GlueMismatch", i)
            if seed_contacts(sys, p.entries[i]):
                notes.append(f"tile {i} also touches the seed")
    if not seed_contacts(sys, p.entries[0]):
        return ValidationReport(False, "SeedDetached", 0)
    return ValidationReport(True, notes=notes)


def replay_assembly_sequence(sys: TileSystem,
                             seq: Sequence[tuple[Position, TileType]]) -> Assembly:
    """Grow the seed by the given attachments, checking each one binds.

    Raises :class:`Occupied` or :class:`IllegalAttachment` with the index
    of the offending step.
    """
    tiles = dict(sys.seed.tiles)
    for step_no, (pos, t) in enumerate(seq):
        if pos in tiles:
            raise Occupied(step_no, f"position {pos} already filled")
        bound = False
        for step in STEP.values():
            q = (pos[0] + step[0], pos[1] + step[1])
            nb = tiles.get(q)
            if nb is not None and t.interacts(nb, step):
                bound = True
                break
        if not bound:
            raise IllegalAttachment(step_no, f"tile {t.name} at {pos} binds nothing")
        tiles[pos] = t
    return Assembly(tiles, require_connected=False)


def extract_path(sys: TileSystem, alpha: Assembly, target: Position) -> Path:
    """A producible path through ``alpha`` ending at ``target``.

    Breadth-first search over the binding graph from all seed positions;
    the tree path to ``target`` visits the seed exactly once (at its
    root), so dropping that root leaves a valid producible path.
    """
    if target in sys.seed or target not in alpha:
        raise BadTarget(f"{target} is not a non-seed position of the assembly")
    combined = dict(sys.seed.tiles)
    combined.update(alpha.tiles)
    parent: dict[Position, Optional[Position]] = {}
    frontier = deque()
    for pos in sys.seed.tiles:
        parent[pos] = None
        frontier.append(pos)
    while frontier:
        pos = frontier.popleft()
        if pos == target:
            break
        t = combined[pos]
        for step in STEP.values():
            q = (pos[0] + step[0], pos[1] + step[1])
            if q in parent or q not in combined:
                continue
            if t.interacts(combined[q], step):
                parent[q] = pos
                frontier.append(q)
    if target not in parent:
        raise BadTarget(f"{target} is not reachable through the binding graph")
    chain = []
    cur: Optional[Position] = target
    while cur is not None and cur not in sys.seed:
        chain.append(cur)
        cur = parent[cur]
    chain.reverse()
    return Path([(pos, combined[pos]) for pos in chain])


# -- pumping -----------------------------------------------------------------


@dataclass(frozen=True)
class PumpingSpec:
    """Certificate data for an ultimately periodic infinite path."""

    path: Path
    i: int
    j: int

    def __post_init__(self):
        if not (0 <= self.i < self.j < len(self.path)):
            raise ValueError("need 0 <= i < j < |path|")
        if self.vector == (0, 0):
            raise ValueError("pumping vector must be nonzero")

    @property
    def vector(self) -> Position:
        """Tile-coordinate vector from tile i to tile j."""
        (xi, yi), (xj, yj) = self.path.pos(self.i), self.path.pos(self.j)
        return (xj - xi, yj - yi)


def pumping_term(spec: PumpingSpec, k: int) -> tuple[Position, TileType]:
    """Tile ``k`` of the infinite ultimately periodic sequence.

    Terms up to ``i`` copy the path; afterwards the segment ``i+1..j``
    repeats, shifted by one more copy of the vector each period, so the
    sequence satisfies ``term(k + (j - i)) == term(k) + vector``.
    """
    if k < 0:
        raise ValueError("term index must be >= 0")
    p, i, j = spec.path, spec.i, spec.j
    if k <= i:
        return p.entries[k]
    period = j - i
    r = (k - i - 1) % period + 1
    m = (k - i - r) // period
    (x, y), t = p.entries[i + r]
    vx, vy = spec.vector
    return ((x + m * vx, y + m * vy), t)


@dataclass
class VerifyResult:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self):
        return self.ok


def _bbox(positions: Iterable[Position]):
    xs, ys = zip(*positions)
    return min(xs), min(ys), max(xs), max(ys)


def verify_pumpable_cert(sys: TileSystem, spec: PumpingSpec) -> VerifyResult:
    """Decide whether the pumping between ``i`` and ``j`` is producible.

    Three finite checks suffice:

    (a) the first repeated tile binds across the seam to tile ``j``;
    (b) one period avoids its own translate, which by the translate
        disjointness lemma separates all pairs of periods;
    (c) enough initial periods avoid the seed and the retained prefix
        that the remaining ones are past every finite obstacle, the count
        coming from the bounding boxes and the vector's dominant axis.
    """
    p, i, j = spec.path, spec.i, spec.j
    v = spec.vector
    # (a) seam interaction
    seam_from = p.pos(j)
    seam_to = (p.pos(i + 1)[0] + v[0], p.pos(i + 1)[1] + v[1])
    step = (seam_to[0] - seam_from[0], seam_to[1] - seam_from[1])
    if step not in SIDE_OF_STEP:
        return VerifyResult(False, "(a) seam tiles are not adjacent")
    if not p.type(j).interacts(p.type(i + 1), step):
        return VerifyResult(False, "(a) seam glue does not bind")
    # (b) period avoids its own translate
    period_pos = [p.pos(s) for s in range(i + 1, j + 1)]
    if not geometry.precious_check([(2 * x, 2 * y) for x, y in period_pos],
                                   (2 * v[0], 2 * v[1])):
        return VerifyResult(False, "(b) period overlaps its translate")
    # (c) enough periods clear all finite geometry
    obstacles = set(sys.seed.tiles)
    obstacles.update(p.pos(s) for s in range(0, i + 1))
    ox0, oy0, ox1, oy1 = _bbox(obstacles)
    px0, py0, px1, py1 = _bbox(period_pos)
    step_len = max(abs(v[0]), abs(v[1]))
    span = max(ox1, px1) - min(ox0, px0) + max(oy1, py1) - min(oy0, py0)
    reps = span // step_len + 2
    for m in range(1, reps + 1):
        shift = (m * v[0], m * v[1])
        for x, y in period_pos:
            q = (x + shift[0], y + shift[1])
            if q in obstacles:
                return VerifyResult(
                    False, f"(c) period copy {m} hits the seed or prefix at {q}")
    return VerifyResult(True)


@dataclass(frozen=True)
class FragilityCert:
    """A replayable assembly sequence that blocks a path.

    ``attachments`` grow from the seed; after the replay the assembly
    holds a different tile type than the path wants at ``conflict``.
    """

    attachments: tuple[tuple[Position, TileType], ...]
    conflict: Position

    def __post_init__(self):
        object.__setattr__(self, "attachments", tuple(self.attachments))


def verify_fragile_cert(sys: TileSystem, p: Path,
                        cert: FragilityCert) -> VerifyResult:
    """Replay the certificate and check it really conflicts with the path."""
    try:
        final = replay_assembly_sequence(sys, cert.attachments)
    except IllegalAttachment as e:
        return VerifyResult(False, f"replay failed at step {e.step}: {e}")
    placed = final.get(cert.conflict)
    if placed is None:
        return VerifyResult(False, "conflict position was never filled")
    want_idx = p.index_of(cert.conflict)
    if want_idx is None:
        return VerifyResult(False, "conflict position is not on the path")
    if p.type(want_idx) == placed:
        return VerifyResult(False, "NoConflict: same tile type at conflict position")
    return VerifyResult(True)


# -- convenient constructors --------------------------------------------------

def simple_system(tile_specs, seed_positions, seed_names=None) -> TileSystem:
    """Build a system from ``(name, n, e, s, w)`` tuples and seed placements."""
    tiles = [TileType(name, n or None, e or None, s or None, w or None)
             for name, n, e, s, w in tile_specs]
    by_name = {t.name: t for t in tiles}
    if seed_names is None:
        seed_names = [tiles[0].name] * len(seed_positions)
    seed = Assembly({tuple(pos): by_name[nm]
                     for pos, nm in zip(seed_positions, seed_names)})
    return TileSystem(tiles, seed)


def path_of(sys: TileSystem, *steps: tuple[int, int, str]) -> Path:
    """Build a path from ``(x, y, tile_name)`` triples."""
    return Path([((x, y), sys.by_name[nm]) for x, y, nm in steps])
