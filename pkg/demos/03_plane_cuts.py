"""Cutting the plane with an infinite axis-aligned curve, two ways.

The engine constantly asks on which side of a cut a point lies.  The
production classifier counts crossings of a diagonal ray with the curve,
which needs no window and no floats; the oracle floods the window from
its west and east edges.  This script draws a random cut and checks the
two agree everywhere, then shows the closing fact used for ray
containment: a south ray strictly east of the cut's own south ray lies
entirely in the right component.
"""

import random

from pumpkit import PolyCurve, Side, classify_side
from pumpkit.geometry import SideCache, curve_in_closed_right
from pumpkit.oracle import FloodFill

rng = random.Random(7)

points = [(1, -8)]
y = -8
for _ in range(7):
    x = points[-1][0] + rng.choice([-2, -1, 1, 2]) * rng.randrange(1, 3)
    points.append((x, y))
    y += rng.randrange(1, 3)
    points.append((x, y))
curve = PolyCurve(points, south_ray=True, north_ray=True)
print(f"curve through {len(curve.points)} vertices, simple: {curve.is_simple()}")

x0, y0, x1, y1 = curve.bbox()
window = (x0 - 4, y0 - 4, x1 + 4, y1 + 4)
fill = FloodFill(curve, window)

glyph = {Side.LEFT: ".", Side.RIGHT: "#", Side.ON: "o"}
disagreements = 0
rows = []
for yy in range(window[3], window[1] - 1, -1):
    row = []
    for xx in range(window[0], window[2] + 1):
        a = classify_side(curve, (xx, yy))
        b = fill.side((xx, yy))
        disagreements += a is not b
        row.append(glyph[a])
    rows.append("".join(row))
print("\n".join(rows))
print(f"disagreements between classifier and flood fill: {disagreements}")

probe = PolyCurve([(x1 + 2, y0)], south_ray=True)
escape = curve_in_closed_right(probe, SideCache(curve))
print(f"south ray east of the cut stays right of it: {escape is None}")
