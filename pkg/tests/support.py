"""Independent oracles used by the test suite.

These deliberately avoid the package's vectorized evaluation path: the
objective oracle is a direct transcription of the grouped-cost and
torque-deviation definitions with explicit loops, and the hypervolume
routine is a z-sweep over 2-D staircase areas.  They exist to check the
production code, so they must not share its shortcuts.
"""
import math

from modgroup import design_size


def literal_objectives(catalog, curve, group_sizes):
    """Grouped objectives via explicit member loops and scalar cost lookups."""
    candidates = catalog.candidates
    start = 1
    cost = 0.0
    dev1 = 0.0
    dev2 = 0.0
    for size in group_sizes:
        end = start + size - 1
        members = candidates[start - 1:end]
        representative_size = design_size(candidates[end - 1])
        weight = curve.unit_cost(size)
        ceiling1 = max(c.tau1 for c in members)
        ceiling2 = max(c.tau2 for c in members)
        for member in members:
            cost += weight * representative_size
            dev1 += abs(ceiling1 - member.tau1)
            dev2 += abs(ceiling2 - member.tau2)
        start = end + 1
    assert start == catalog.m + 1, "group sizes must cover the catalog exactly"
    return cost, dev1, dev2


def weakly_dominates(a, b):
    """a <= b in every component."""
    return all(x <= y for x, y in zip(a, b))


def strictly_dominates(a, b):
    return weakly_dominates(a, b) and any(x < y for x, y in zip(a, b))


def brute_force_front(triples):
    """Indices of the non-dominated triples, by pairwise comparison."""
    front = []
    for i, t in enumerate(triples):
        if not any(strictly_dominates(other, t) for other in triples):
            front.append(i)
    return front


def _union_area(corners, ref_x, ref_y):
    """Area of the union of rectangles [x, ref_x] x [y, ref_y]."""
    stair = []
    best_y = math.inf
    for x, y in sorted(corners):
        if y < best_y:
            stair.append((x, y))
            best_y = y
    area = 0.0
    for i, (x, y) in enumerate(stair):
        next_x = stair[i + 1][0] if i + 1 < len(stair) else ref_x
        area += (next_x - x) * (ref_y - y)
    return area


def hypervolume_3d(points, ref):
    """Volume dominated by ``points`` (minimization) up to the reference box corner."""
    ref_x, ref_y, ref_z = ref
    pts = [p for p in points if p[0] < ref_x and p[1] < ref_y and p[2] < ref_z]
    if not pts:
        return 0.0
    levels = sorted({p[2] for p in pts}) + [ref_z]
    total = 0.0
    for bottom, top in zip(levels, levels[1:]):
        active = [(x, y) for x, y, z in pts if z <= bottom]
        total += _union_area(active, ref_x, ref_y) * (top - bottom)
    return total
