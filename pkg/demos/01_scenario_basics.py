"""Mobility scenarios: parsing, interpolation, resampling, distances.

A scenario is a set of per-node waypoint traces. Between waypoints a
node moves on a straight line at constant speed; after its last
waypoint it holds position. The simulator never uses raw waypoints
directly: it samples every node's position on a fixed epoch grid and
precomputes all pairwise distances per epoch.
"""

from meshpay import (
    distances,
    format_scenario,
    generate_synthetic,
    parse_scenario,
    position_at,
    resample,
)

TEXT = """\
# node time x y
0 0 0 0
0 600 300 400
1 0 100 0
1 300 100 300
1 900 400 300
"""

scn = parse_scenario(TEXT)
print(f"parsed {scn.nodes} nodes, duration {scn.duration:.0f} s, "
      f"bounding box {scn.bounding_box}")

# linear interpolation between waypoints, hold after the last one
for t in (0.0, 300.0, 600.0, 900.0):
    x, y = position_at(scn.traces[0], t, end=scn.duration)
    print(f"  node 0 at t={t:>5.0f}: ({x:6.1f}, {y:6.1f})")

# the epoch grid: floor(duration / interval) frames starting at t=0
frames = resample(scn, interval=300.0)
print(f"resampled to {len(frames)} epochs at 300 s spacing")

table = distances(frames)
print(f"distance table shape {table.matrix.shape} (epochs x nodes x nodes)")
print(f"  d(0,1) per epoch: {[round(float(d), 1) for d in table.matrix[:, 0, 1]]}")

# synthetic scenarios: random-waypoint motion in a rectangular arena,
# fully determined by the seed
synth = generate_synthetic(nodes=5, duration=1800.0, bbox=(200.0, 200.0), seed=42)
again = generate_synthetic(nodes=5, duration=1800.0, bbox=(200.0, 200.0), seed=42)
assert format_scenario(synth) == format_scenario(again)
print(f"synthetic: {synth.nodes} nodes, "
      f"{sum(len(t) for t in synth.traces)} waypoints, deterministic by seed")
