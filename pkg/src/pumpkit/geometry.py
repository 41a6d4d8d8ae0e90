"""Exact integer geometry on the doubled lattice.

Everything in this package that has a position lives on a lattice whose
unit is *half* a tile edge: a tile centered at tile coordinates (x, y)
sits at the doubled point (2x, 2y), and the midpoint of the shared edge
between two adjacent tiles has exactly one odd doubled coordinate.  All
predicates below are computed with plain ints, so results are exact and
every geometric object is hashable.

The central object is :class:`PolyCurve`: an axis-aligned polyline on the
doubled lattice, optionally extended by an infinite vertical ray to the
south at its first vertex and one to the north at its last vertex.  A
simple curve with both rays cuts the plane into a left and a right
component; :func:`classify_side` decides membership by counting how often
a diagonal ray from the query point crosses the curve, which needs no
clipping window and no floating point.
"""

from __future__ import annotations

import enum
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    EmptyPath,
    NonSimpleCurve,
    NotAdjacent,
    NotAlmostVertical,
    NotOnCurve,
    ZeroVector,
)

Point = tuple[int, int]
Displacement = tuple[int, int]


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    ON = "on"


class Turn(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    SAME = "same"


def add(p: Point, v: Displacement) -> Point:
    return (p[0] + v[0], p[1] + v[1])


def sub(p: Point, q: Point) -> Displacement:
    return (p[0] - q[0], p[1] - q[1])


def neg(v: Displacement) -> Displacement:
    return (-v[0], -v[1])


def scale(v: Displacement, c: int) -> Displacement:
    return (c * v[0], c * v[1])


def rot_cw(v: Displacement) -> Displacement:
    """Quarter turn clockwise (y axis pointing north)."""
    return (v[1], -v[0])


class VRay:
    """Symbolic infinite ray from an anchor point.

    Vertical and horizontal headings cover visibility rays and curve ends;
    the two diagonal headings only ever appear inside the crossing-parity
    computation of :func:`classify_side`.
    """

    HEADINGS = ("north", "south", "east", "west", "diag-ne", "diag-sw")

    __slots__ = ("start", "heading")

    def __init__(self, start: Point, heading: str):
        if heading not in self.HEADINGS:
            raise ValueError(f"unknown heading {heading!r}")
        self.start = start
        self.heading = heading

    def __repr__(self):
        return f"VRay({self.start}, {self.heading!r})"

    def __eq__(self, other):
        return (
            isinstance(other, VRay)
            and self.start == other.start
            and self.heading == other.heading
        )

    def __hash__(self):
        return hash((self.start, self.heading))

    def contains(self, p: Point) -> bool:
        x0, y0 = self.start
        x, y = p
        if self.heading == "north":
            return x == x0 and y >= y0
        if self.heading == "south":
            return x == x0 and y <= y0
        if self.heading == "east":
            return y == y0 and x >= x0
        if self.heading == "west":
            return y == y0 and x <= x0
        d = x - x0
        if self.heading == "diag-ne":
            return y - y0 == d and d >= 0
        return y - y0 == d and d <= 0

    def translate(self, v: Displacement) -> "VRay":
        return VRay(add(self.start, v), self.heading)


def _steps_between(a: Point, b: Point) -> Iterator[Point]:
    """Unit-step lattice points from a (exclusive) to b (inclusive)."""
    ax, ay = a
    bx, by = b
    if ax == bx:
        step = 1 if by > ay else -1
        for y in range(ay + step, by + step, step):
            yield (ax, y)
    elif ay == by:
        step = 1 if bx > ax else -1
        for x in range(ax + step, bx + step, step):
            yield (x, ay)
    else:
        raise ValueError(f"segment {a}-{b} is not axis-aligned")


class PolyCurve:
    """Axis-aligned polyline on the doubled lattice, with optional rays.

    ``points`` are the vertices in curve order; consecutive vertices must
    differ by an axis-aligned doubled step, naturally of length 1 or 2
    (half or full tile edge) for curves built from paths and glues.
    ``south_ray``/``north_ray`` extend the curve to infinity below the
    first vertex / above the last vertex.
    """

    __slots__ = ("points", "south_ray", "north_ray", "_lattice", "_simple", "_bbox")

    def __init__(self, points: Sequence[Point], south_ray: bool = False,
                 north_ray: bool = False):
        pts = tuple(points)
        if not pts:
            raise EmptyPath("a curve needs at least one vertex")
        for a, b in zip(pts, pts[1:]):
            dx, dy = b[0] - a[0], b[1] - a[1]
            if (dx == 0) == (dy == 0):
                raise ValueError(f"bad curve step {a} -> {b}")
        self.points = pts
        self.south_ray = south_ray
        self.north_ray = north_ray
        self._lattice = None
        self._simple = None
        self._bbox = None

    def __repr__(self):
        ray = ("S" if self.south_ray else "") + ("N" if self.north_ray else "")
        return f"PolyCurve({len(self.points)} pts{',' + ray if ray else ''})"

    def __eq__(self, other):
        return (
            isinstance(other, PolyCurve)
            and self.points == other.points
            and self.south_ray == other.south_ray
            and self.north_ray == other.north_ray
        )

    def __hash__(self):
        return hash((self.points, self.south_ray, self.north_ray))

    # -- derived data, computed lazily -------------------------------------

    def lattice_points(self) -> tuple[Point, ...]:
        """All doubled-lattice points of the finite part, in curve order."""
        if self._lattice is None:
            pts = [self.points[0]]
            for a, b in zip(self.points, self.points[1:]):
                pts.extend(_steps_between(a, b))
            self._lattice = tuple(pts)
        return self._lattice

    def lattice_set(self) -> frozenset[Point]:
        return frozenset(self.lattice_points())

    @property
    def is_almost_vertical(self) -> bool:
        return self.south_ray and self.north_ray

    def is_simple(self) -> bool:
        """No doubled-lattice point is visited twice (rays included).

        For axis-aligned curves at this granularity, repeated lattice
        points are the only way two pieces can meet, so this is a complete
        self-intersection test.
        """
        if self._simple is None:
            pts = self.lattice_points()
            seen = set(pts)
            ok = len(seen) == len(pts)
            if ok and self.south_ray:
                sx, sy = self.points[0]
                ok = not any(x == sx and y < sy for x, y in seen)
            if ok and self.north_ray:
                nx, ny = self.points[-1]
                ok = not any(x == nx and y > ny for x, y in seen)
            # A tail/tail meeting of the two rays always implies one ray
            # passes a finite endpoint of the other, which the scans above
            # already caught; no separate ray/ray test is needed.
            self._simple = ok
        return self._simple

    def bbox(self) -> tuple[int, int, int, int]:
        """(min_x, min_y, max_x, max_y) of the finite vertex set."""
        if self._bbox is None:
            xs = [p[0] for p in self.points]
            ys = [p[1] for p in self.points]
            self._bbox = (min(xs), min(ys), max(xs), max(ys))
        return self._bbox

    def contains(self, p: Point) -> bool:
        if p in self.lattice_set():
            return True
        if self.south_ray:
            sx, sy = self.points[0]
            if p[0] == sx and p[1] < sy:
                return True
        if self.north_ray:
            nx, ny = self.points[-1]
            if p[0] == nx and p[1] > ny:
                return True
        return False

    def translate(self, v: Displacement) -> "PolyCurve":
        return PolyCurve([add(p, v) for p in self.points],
                         self.south_ray, self.north_ray)

    def scaled(self, factor: int) -> "PolyCurve":
        return PolyCurve([(factor * x, factor * y) for x, y in self.points],
                         self.south_ray, self.north_ray)

    def concat(self, other: "PolyCurve") -> "PolyCurve":
        """Join two curves whose endpoint/startpoint coincide."""
        if self.north_ray or other.south_ray:
            raise ValueError("cannot concatenate through an infinite ray")
        if self.points[-1] != other.points[0]:
            raise ValueError("curves do not share an endpoint")
        return PolyCurve(self.points + other.points[1:],
                         self.south_ray, other.north_ray)


def embed_path(positions: Sequence[Point]) -> PolyCurve:
    """Piecewise-linear curve through the doubled centers of a tile path.

    Input positions are in tile coordinates; consecutive ones must be
    grid neighbours.  A single tile yields a degenerate one-point curve.
    """
    if len(positions) == 0:
        raise EmptyPath("cannot embed an empty path")
    doubled = []
    prev = None
    for pos in positions:
        p = (2 * pos[0], 2 * pos[1])
        if prev is not None and abs(p[0] - prev[0]) + abs(p[1] - prev[1]) != 2:
            raise NotAdjacent(f"positions {prev} and {p} (doubled) are not adjacent")
        doubled.append(p)
        prev = p
    return PolyCurve(doubled)


# -- side classification ----------------------------------------------------

def _diag_crossing_parity(curve: PolyCurve, p: Point, toward_ne: bool) -> int:
    """Parity of crossings between the curve and a diagonal ray from p.

    The ray has direction (1, 1) when ``toward_ne`` else (-1, -1).  The
    point p must not lie on the curve.  A crossing is a sign change of the
    vertex sequence relative to the diagonal line through p; a vertex the
    line merely grazes (both neighbours on the same side) does not count.
    Because curve segments are axis-aligned and the diagonal is not, every
    meeting point is an exact lattice point, and no two consecutive
    vertices can both lie on the line.
    """
    px, py = p
    verts = list(curve.points)
    if curve.south_ray:
        sx, sy = verts[0]
        reach = abs(sy - py) + abs(sx - px) + 2
        verts.insert(0, (sx, sy - reach))
    if curve.north_ray:
        nx, ny = verts[-1]
        reach = abs(ny - py) + abs(nx - px) + 2
        verts.append((nx, ny + reach))

    def on_ray(q: Point) -> bool:
        t = q[0] - px
        return t > 0 if toward_ne else t < 0

    crossings = 0
    last_sign = 0
    pending_zero: Optional[Point] = None
    for q in verts:
        s = (q[1] - py) - (q[0] - px)
        if s == 0:
            pending_zero = q
            continue
        sign = 1 if s > 0 else -1
        if last_sign != 0 and sign != last_sign:
            if pending_zero is not None:
                if on_ray(pending_zero):
                    crossings += 1
            else:
                # The meeting point is interior to the last segment; its
                # coordinates follow from the segment's fixed axis.
                a = prev_vert
                b = q
                if a[1] == b[1]:
                    meet = (px + (a[1] - py), a[1])
                else:
                    meet = (a[0], py + (a[0] - px))
                if on_ray(meet):
                    crossings += 1
        last_sign = sign
        pending_zero = None
        prev_vert = q
    return crossings & 1


def classify_side(curve: PolyCurve, p: Point) -> Side:
    """Which side of a simple almost-vertical curve a lattice point is on.

    Points of the curve itself answer ``Side.ON``; otherwise the parity of
    crossings of the south-west diagonal ray decides (odd means RIGHT, as
    the far east is reachable from the right component).  Points east of
    the curve's easternmost extent therefore classify RIGHT.
    """
    if not curve.is_almost_vertical:
        raise NotAlmostVertical("side classification needs both infinite rays")
    if not curve.is_simple():
        raise NonSimpleCurve("side classification needs a simple curve")
    if curve.contains(p):
        return Side.ON
    parity = _diag_crossing_parity(curve, p, toward_ne=False)
    return Side.RIGHT if parity else Side.LEFT


def crossing_parity(curve: PolyCurve, p: Point, toward_ne: bool) -> int:
    """Exposed for tests: parity of diagonal-ray crossings (0 or 1)."""
    if curve.contains(p):
        raise NotOnCurve("parity undefined for points on the curve")
    return _diag_crossing_parity(curve, p, toward_ne)


class Region:
    """One side of a plane cut, with the window holding all finite geometry.

    The window is bookkeeping for renderers and flood fills; membership
    itself is decided exactly by the boundary.
    """

    __slots__ = ("boundary", "side", "window")

    def __init__(self, boundary: PolyCurve, side: Side,
                 window: tuple[int, int, int, int]):
        self.boundary = boundary
        self.side = side
        self.window = window

    def __repr__(self):
        return f"Region({self.side.value} of {self.boundary!r})"


class SideCache:
    """Memoized side classification against one fixed curve.

    The engine asks the same membership questions many times while
    checking its invariants; the cache also offers the half-step query
    used when both endpoints of a unit step lie on the curve.
    """

    __slots__ = ("curve", "_memo", "_scaled", "_memo2")

    def __init__(self, curve: PolyCurve):
        if not curve.is_almost_vertical:
            raise NotAlmostVertical("region boundary needs both infinite rays")
        if not curve.is_simple():
            raise NonSimpleCurve("region boundary must be simple")
        self.curve = curve
        self._memo: dict[Point, Side] = {}
        self._scaled: Optional[PolyCurve] = None
        self._memo2: dict[Point, Side] = {}

    def side(self, p: Point) -> Side:
        got = self._memo.get(p)
        if got is None:
            got = classify_side(self.curve, p)
            self._memo[p] = got
        return got

    def side_half(self, p2: Point) -> Side:
        """Side of a half-lattice point given in *quadrupled* coordinates."""
        got = self._memo2.get(p2)
        if got is None:
            if self._scaled is None:
                self._scaled = self.curve.scaled(2)
            got = classify_side(self._scaled, p2)
            self._memo2[p2] = got
        return got

    def in_right_closed(self, p: Point) -> bool:
        return self.side(p) is not Side.LEFT

    def in_left_closed(self, p: Point) -> bool:
        return self.side(p) is not Side.RIGHT


def curve_in_closed_right(sub: PolyCurve, cache: SideCache) -> Optional[Point]:
    """First witness point of ``sub`` outside the closed right side, if any.

    Checks every doubled-lattice point of ``sub``; when a whole unit step
    has both endpoints on the boundary the step's midpoint is tested at
    half resolution, since such a step may leave the region without
    touching any lattice point strictly.  Infinite ray tails are compared
    against the boundary's own rays symbolically.
    """
    pts = sub.lattice_points()
    for q in pts:
        if cache.side(q) is Side.LEFT:
            return q
    for a, b in zip(pts, pts[1:]):
        if cache.side(a) is Side.ON and cache.side(b) is Side.ON:
            mid2 = (a[0] + b[0], a[1] + b[1])
            if cache.side_half(mid2) is Side.LEFT:
                return ((a[0] + b[0]) // 2, (a[1] + b[1]) // 2)
    boundary = cache.curve
    if sub.south_ray:
        sx, sy = sub.points[0]
        bx, by = boundary.points[0]
        # Below everything finite, only the boundary's south ray matters:
        # strictly east of it is RIGHT, on it is ON, west of it is LEFT.
        floor = min(sy, boundary.bbox()[1]) - 2
        for y in range(floor, sy):
            if cache.side((sx, y)) is Side.LEFT:
                return (sx, y)
        if sx < bx:
            return (sx, floor - 2)
    if sub.north_ray:
        nx, ny = sub.points[-1]
        bx, by = boundary.points[-1]
        ceil_ = max(ny, boundary.bbox()[3]) + 2
        for y in range(ny + 1, ceil_ + 1):
            if cache.side((nx, y)) is Side.LEFT:
                return (nx, y)
        if nx < bx:
            return (nx, ceil_ + 2)
    return None


# -- curve/curve intersections ----------------------------------------------

INFINITE_OVERLAP = object()


def _ray_parts(curve: PolyCurve) -> list[VRay]:
    rays = []
    if curve.south_ray:
        rays.append(VRay(curve.points[0], "south"))
    if curve.north_ray:
        rays.append(VRay(curve.points[-1], "north"))
    return rays


def curve_intersection(a: PolyCurve, b: PolyCurve):
    """Lattice points shared by two curves, or INFINITE_OVERLAP.

    Since all segments are axis-aligned with doubled-integer endpoints,
    two curves can only meet at lattice points or along shared segments,
    and a shared segment always contains at least two lattice points; the
    returned set is therefore a faithful picture of the intersection
    whenever it is used to check "at most/exactly one meeting point".
    Overlapping infinite rays report INFINITE_OVERLAP.
    """
    fa, fb = a.lattice_set(), b.lattice_set()
    pts = set(fa & fb)
    for ray in _ray_parts(a):
        for q in fb:
            if ray.contains(q):
                pts.add(q)
    for ray in _ray_parts(b):
        for q in fa:
            if ray.contains(q):
                pts.add(q)
    for ra in _ray_parts(a):
        for rb in _ray_parts(b):
            if ra.start[0] != rb.start[0]:
                continue
            if ra.heading == rb.heading:
                return INFINITE_OVERLAP
            north_y = ra.start[1] if ra.heading == "north" else rb.start[1]
            south_y = rb.start[1] if ra.heading == "north" else ra.start[1]
            overlap = south_y - north_y + 1
            if overlap > 2:
                return INFINITE_OVERLAP
            for y in range(north_y, south_y + 1):
                pts.add((ra.start[0], y))
    return pts


# -- path turns ---------------------------------------------------------------

def turn_right_of_path(prev: Point, cur: Point, taken: Point,
                       candidate: Point) -> Turn:
    """Order two candidate continuations of a path at ``cur`` clockwise.

    ``prev`` is the point the path arrived from.  The three possible
    steps out of ``cur`` (everything but going back) are ranked clockwise
    starting just after the back direction; ``candidate`` is RIGHT of
    ``taken`` when it comes later in that ranking.
    """
    back = sub(prev, cur)
    step_taken = sub(taken, cur)
    step_cand = sub(candidate, cur)
    mag = abs(back[0]) + abs(back[1])
    for name, step in (("prev/cur", back), ("taken", step_taken),
                       ("candidate", step_cand)):
        if (step[0] == 0) == (step[1] == 0) or abs(step[0]) + abs(step[1]) != mag:
            raise NotAdjacent(f"{name} is not a grid step of matching length")
    if step_taken == back or step_cand == back:
        raise NotAdjacent("taken/candidate may not double back to prev")
    if step_cand == step_taken:
        return Turn.SAME
    order = (rot_cw(back), rot_cw(rot_cw(back)), rot_cw(rot_cw(rot_cw(back))))
    return Turn.RIGHT if order.index(step_cand) > order.index(step_taken) else Turn.LEFT


def clockwise_successors(prev: Point, cur: Point) -> list[Point]:
    """Candidate next points from ``cur``, most-right-turning first.

    Step length matches the incoming step ``prev -> cur``.
    """
    back = sub(prev, cur)
    r1 = rot_cw(back)
    return [add(cur, rot_cw(rot_cw(r1))), add(cur, rot_cw(r1)), add(cur, r1)]


def first_departure(d: PolyCurve, c: PolyCurve):
    """First place where curve ``d`` leaves curve ``c``, with the side entered.

    Returns ``None`` when ``d`` never leaves ``c``; otherwise a pair
    ``(index, side)`` where ``index`` counts unit lattice steps along
    ``d``.  When a step leaves ``c`` only through its interior (both
    endpoints on ``c``), the index of the step's far end is reported and
    the side is measured at the step midpoint.
    """
    if not c.is_almost_vertical or not c.is_simple():
        raise NonSimpleCurve("reference curve must be simple and almost-vertical")
    pts = d.lattice_points()
    if not c.contains(pts[0]):
        raise NotOnCurve("d does not start on c")
    cache = SideCache(c)
    for idx in range(1, len(pts)):
        q = pts[idx]
        side = cache.side(q)
        if side is not Side.ON:
            return idx, side
        a = pts[idx - 1]
        mid2 = (a[0] + q[0], a[1] + q[1])
        mside = cache.side_half(mid2)
        if mside is not Side.ON:
            return idx, mside
    return None


# -- translate disjointness ---------------------------------------------------

def precious_check(cells: Iterable[Point], v: Displacement) -> bool:
    """Whether a cell set is disjoint from its translate by ``v``.

    Cells are unit squares addressed by their (doubled, even) centers.
    When this premise holds for a connected set, the translate by any
    nonzero multiple of ``v`` is disjoint as well; the property suite
    checks that consequence against this predicate.
    """
    if v == (0, 0):
        raise ZeroVector("translate vector must be nonzero")
    cset = set(cells)
    if not cset:
        raise ValueError("cell set must be nonempty")
    return cset.isdisjoint({add(p, v) for p in cset})
