"""Stochastic extremal search: set annealing and value-grid coordinate ascent.

Both optimizers maximize a normalized sharpness ratio whose supremum is 1;
the rigidity theory predicts *where* the maximum sits (cubes; scaled cuboid
indicators), not that a heuristic finds it, so convergence targets are soft.
Runs are deterministic given the seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from . import kernels
from .core import Cuboid, LatticeSet, SparseFunction
from .errors import InvalidInputError
from .lab import gn_ratio, iso_ratio_from_counts


class Objective(str, Enum):
    GN_RATIO = "GN_RATIO"
    ISO_RATIO = "ISO_RATIO"
    BL_RATIO = "BL_RATIO"


@dataclass
class SearchTrace:
    seed: int
    objective: Objective
    iterations: int
    best_value: float
    best_input: Union[SparseFunction, LatticeSet]
    history: list = field(default_factory=list)  # (iteration, running best)


def _box_side_for(size: int, n: int) -> int:
    side = max(2, math.ceil(size ** (1.0 / n)) * 2 + 1)
    while side ** n < size:
        side += 1
    return side


def anneal_sets(
    n: int,
    size: int,
    iters: int = 100_000,
    seed: int = 0,
    t0: float = 0.05,
    alpha: float = 0.999,
    box_side: Optional[int] = None,
) -> SearchTrace:
    """Simulated annealing over size-`size` subsets of a box, maximizing the
    isoperimetric ratio.

    Moves swap one member for a point adjacent to the set, so cardinality
    never changes and the set stays inside the box.  Geometric cooling
    T_k = t0 * alpha^k with Metropolis acceptance exp(delta/T); stops early
    once the theorem maximum 1 is attained.
    """
    if n < 2:
        raise InvalidInputError("annealing needs ambient dimension >= 2")
    if size < 1:
        raise InvalidInputError("set size must be >= 1")
    if box_side is None:
        box_side = _box_side_for(size, n)
    cells = box_side ** n
    if cells < size:
        raise InvalidInputError(f"box {box_side}^{n} cannot hold {size} points")
    dims = (box_side,) * n

    # neighbor table over flat cell indices
    strides = kernels.strides(dims)
    neighbors = []
    for idx in range(cells):
        rem, coords = idx, []
        for ax in range(n):
            coords.append(rem % dims[ax])
            rem //= dims[ax]
        nbs = []
        for ax in range(n):
            if coords[ax] > 0:
                nbs.append(idx - strides[ax])
            if coords[ax] < dims[ax] - 1:
                nbs.append(idx + strides[ax])
        neighbors.append(tuple(nbs))

    rng = random.Random(seed)
    members = rng.sample(range(cells), size)
    member_set = set(members)
    mask = 0
    for idx in members:
        mask |= 1 << idx

    def ratio_of(m: int) -> float:
        return iso_ratio_from_counts(size, kernels.subset_boundary(m, dims), n)

    current = ratio_of(mask)
    best = current
    best_mask = mask
    history = [(0, best)]
    sample_every = max(1, iters // 256)
    temperature = t0
    steps = 0

    for k in range(1, iters + 1):
        steps = k
        if best == 1.0:
            break
        # swap proposal: drop a member, add a free neighbor of the set
        shell = set()
        for idx in members:
            for nb in neighbors[idx]:
                if nb not in member_set:
                    shell.add(nb)
        if not shell:
            break  # set fills the box
        out_pos = rng.randrange(size)
        out_idx = members[out_pos]
        in_idx = rng.choice(sorted(shell))
        new_mask = mask ^ (1 << out_idx) | (1 << in_idx)
        proposal = ratio_of(new_mask)
        delta = proposal - current
        if delta >= 0 or rng.random() < math.exp(delta / temperature):
            mask = new_mask
            current = proposal
            members[out_pos] = in_idx
            member_set.discard(out_idx)
            member_set.add(in_idx)
            if current > best:
                best = current
                best_mask = mask
        temperature = max(temperature * alpha, 1e-300)
        if k % sample_every == 0:
            history.append((k, best))

    if not history or history[-1][0] != steps:
        history.append((steps, best))
    best_set = LatticeSet(n, kernels.unpack(best_mask, dims))
    return SearchTrace(
        seed=seed,
        objective=Objective.ISO_RATIO,
        iterations=steps,
        best_value=best,
        best_input=best_set,
        history=history,
    )


# ---------------------------------------------------------------------------
# coordinate ascent on function values
# ---------------------------------------------------------------------------

COARSE_DENOM = 64
FINE_DENOM = 64 * 64
FINE_STEP = 4  # fine pass samples every 4/4096 within +-1/64 of the best cell


def _candidate_values(best: Fraction) -> list:
    coarse = [Fraction(j, COARSE_DENOM) for j in range(COARSE_DENOM + 1)]
    center = round(best * FINE_DENOM)
    lo = max(0, center - COARSE_DENOM)
    hi = min(FINE_DENOM, center + COARSE_DENOM)
    fine = [Fraction(j, FINE_DENOM) for j in range(lo, hi + 1, FINE_STEP)]
    seen = set()
    out = []
    for v in coarse + fine:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def ascend_function(
    n: int,
    window: Union[Cuboid, int],
    iters: int = 10_000,
    seed: int = 0,
    start: str = "random",
) -> SearchTrace:
    """Seeded multi-start cyclic coordinate ascent on the difference-product
    ratio over nonnegative values on a fixed window.

    Each iteration re-optimizes one window point over the value grid
    {j/64} refined once (step 1/4096) around the best coarse cell; values
    stay exact rationals.  A sweep that changes nothing is a coordinate-wise
    local maximum, so the search reseeds from a fresh random point and keeps
    the running best; it stops at the iteration budget or on reaching the
    known supremum 1.  `start` is "random" (seeded grid values) or
    "indicator" (all ones, which is already extremal on a cuboid window).
    """
    if isinstance(window, int):
        window = Cuboid.from_sides((window,) * n)
    if window.dim != n:
        raise InvalidInputError(f"window dimension {window.dim} != n={n}")
    if start not in ("random", "indicator"):
        raise InvalidInputError(f"unknown start {start!r}")
    points = window.points().sorted_points()
    rng = random.Random(seed)

    def fresh_values(kind: str) -> dict:
        if kind == "indicator":
            return {z: Fraction(1) for z in points}
        values = {
            z: Fraction(rng.randrange(COARSE_DENOM + 1), COARSE_DENOM) for z in points
        }
        if not any(values.values()):
            values[points[rng.randrange(len(points))]] = Fraction(1)
        return values

    def build(values: dict) -> SparseFunction:
        return SparseFunction._from_clean(n, {z: v for z, v in values.items() if v})

    values = fresh_values(start)
    current_f = build(values)
    current = gn_ratio(current_f)
    best = current
    best_f = current_f
    history = [(0, best)]
    steps = 0

    # multi-start: a sweep that changes nothing means a coordinate-wise local
    # maximum; reseed from a fresh random point and keep the running best
    while steps < iters and best < 1.0:
        improved_in_sweep = False
        for z in points:
            if steps >= iters or best == 1.0:
                break
            steps += 1
            old = values[z]
            pick_v, pick_r = old, current
            support_elsewhere = any(v for w, v in values.items() if w != z)
            for v in _candidate_values(old):
                if v == old:
                    continue
                if not v and not support_elsewhere:
                    continue  # would zero out the function
                values[z] = v
                r = gn_ratio(build(values))
                if r > pick_r:
                    pick_v, pick_r = v, r
            values[z] = pick_v
            if pick_v != old:
                improved_in_sweep = True
                current = pick_r
                current_f = build(values)
                if current > best:
                    best = current
                    best_f = current_f
            history.append((steps, best))
        if not improved_in_sweep and best < 1.0 and steps < iters:
            values = fresh_values("random")
            current_f = build(values)
            current = gn_ratio(current_f)

    if not history or history[-1][0] != steps:
        history.append((steps, best))
    return SearchTrace(
        seed=seed,
        objective=Objective.GN_RATIO,
        iterations=steps,
        best_value=best,
        best_input=best_f,
        history=history,
    )
