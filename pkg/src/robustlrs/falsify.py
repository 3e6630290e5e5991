"""Monte-Carlo differential-testing oracle for the deciders.

Samples the neighbourhood with rational points (exact membership), runs a
vectorized float orbit screen over the horizon, and confirms candidate
violations by exact evaluation, so any returned witness is exactly
verifiable.  Absence of a witness proves nothing; the value of the module
is that a found witness is never wrong.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import linalg
from .neighbourhoods import Neighbourhood, row_functionals
from .recurrences import LrsInstance, companion
from .scalars import as_exact, scalar_sign
from .uniform import directed_direction, _rational_upper, _sqrt_upper


@dataclass
class FalsifierConfig:
    horizon: int = 10_000
    samples: int = 1_000
    seed: int = 20240517
    boundary_fraction: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if self.horizon < 1 or self.samples < 1:
            raise ValueError("horizon and samples must be at least 1")


@dataclass
class FalsifierWitness:
    c_prime: list
    n: int
    value: object


def directed_sample(inst: LrsInstance, nb: Neighbourhood, n: int) -> list:
    """The exact boundary point minimizing the n-th term: the worst case is
    closed-form, not sampled."""
    h = row_functionals(inst, n + 1)[n]
    d = directed_direction(nb, h)
    return [c - x for c, x in zip(inst.init, d)]


def sample_points(inst: LrsInstance, nb: Neighbourhood, cfg: FalsifierConfig) -> list:
    """Deterministic rational points of the closed ball (interior plus
    near-boundary), exactly membership-checked."""
    rng = random.Random(cfg.seed)
    k = inst.order
    pts = []
    n_boundary = int(cfg.samples * Fraction(cfg.boundary_fraction))
    # rational approximations of the inverse-sqrt pivots for the pullback
    dinv = []
    for dpiv in nb.D:
        up = _rational_upper(as_exact(dpiv))
        s_up = _sqrt_upper(up)
        dinv.append(1 / s_up)
    Lt = linalg.transpose(nb.L)
    for i in range(cfg.samples):
        u = [Fraction(rng.randint(-1024, 1024), 1024) for _ in range(k)]
        norm_sq = sum(x * x for x in u)
        if norm_sq == 0:
            u[0] = Fraction(1, 2)
            norm_sq = Fraction(1, 4)
        target = Fraction(1) if i < n_boundary else Fraction(rng.randint(1, 1000), 1000)
        scale = target / _sqrt_upper(norm_sq)
        r = [x * scale * dinv[j] for j, x in enumerate(u)]
        # solve L^T d = r exactly (unit upper triangular system)
        d = list(r)
        for row in range(k - 1, -1, -1):
            acc = r[row]
            for col in range(row + 1, k):
                acc = acc - Lt[row][col] * d[col]
            d[row] = acc
        q = linalg.vec_dot(d, linalg.mat_vec(nb.S, d))
        if scalar_sign(q - 1) > 0:
            shrink = 1 / _sqrt_upper(_rational_upper(q))
            d = [x * shrink for x in d]
            q = linalg.vec_dot(d, linalg.mat_vec(nb.S, d))
            if scalar_sign(q - 1) > 0:
                continue
        pts.append([c + x for c, x in zip(inst.init, d)])
    return pts


def falsify(
    inst: LrsInstance, nb: Neighbourhood, cfg: Optional[FalsifierConfig] = None
) -> Optional[FalsifierWitness]:
    """Hunt for an exact positivity violation inside the ball.

    Vectorized float orbits (renormalized against overflow) flag candidate
    (point, index) pairs; each flagged pair is confirmed with exact
    arithmetic before being reported.  Deterministic for a fixed config.
    """
    cfg = cfg or FalsifierConfig()
    pts = sample_points(inst, nb, cfg)
    pts.append(list(inst.init))  # the center rides along
    k = inst.order
    A_f = np.array([[float(x) for x in row] for row in companion(inst.recurrence)])
    states = np.array([[float(x) for x in p] for p in pts]).T  # k x m
    m = states.shape[1]
    candidates: list[tuple[int, int]] = []  # (n, point index)
    scale_log = np.zeros(m)
    tol = 1e-9
    for n in range(cfg.horizon + 1):
        first = states[0]
        mags = np.max(np.abs(states), axis=0)
        neg = np.where(first < -tol * np.maximum(mags, 1e-300))[0]
        for j in neg:
            candidates.append((n, int(j)))
        if len(candidates) > 4 * cfg.samples:
            break
        states = A_f @ states
        big = np.max(np.abs(states), axis=0)
        over = big > 1e200
        if np.any(over):
            states[:, over] /= big[over]
    candidates.sort()
    for n, j in candidates:
        val = LrsInstance(inst.recurrence, pts[j]).evaluate(n)
        if scalar_sign(val) < 0:
            return FalsifierWitness(pts[j], n, val)
    return None
