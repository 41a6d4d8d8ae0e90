"""Seedless growth reduced to seeded growth.

In the two-handed model whole assemblies stick to each other, so a path
needs no seed; planting a single-tile seed at the path's westernmost tile
makes the rest reachable by ordinary one-tile-at-a-time growth, and the
whole seeded analysis applies unchanged.
"""

import random

from pumpkit import Path, TileType, analyze, reduce_2ham
from pumpkit.formats import print_system

T = TileType("T", north="t", east="t", south="t", west="t")

rng = random.Random(3)
walk = None
while walk is None or len(walk) < 9:
    walk = [(0, 0)]
    seen = {(0, 0)}
    while len(walk) < 12:
        x, y = walk[-1]
        step = rng.choice([(1, 0), (1, 0), (0, 1), (0, -1)])
        q = (x + step[0], y + step[1])
        if q in seen:
            break
        walk.append(q)
        seen.add(q)

free_path = Path([(pos, T) for pos in walk])
print(f"free-floating path of {len(free_path)} tiles: {walk}")

red = reduce_2ham([T], free_path)
for note in red.notes:
    print(f"note: {note}")
print("as a seeded system:")
print(print_system(red.sys, red.path), end="")

result = analyze(red.sys, red.path, bound_override=2)
print(f"analysis of the reduced instance: {result.kind}")
