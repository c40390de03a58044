"""Continuous ant lion mechanics on the unit hypercube.

Random walks, trap bounds that shrink as the run progresses, and the
roulette wheel used by ants to pick the antlion they walk around.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

# (fraction of T that must be exceeded, exponent w)
W_SCHEDULE = (
    (Fraction(1, 10), 2),
    (Fraction(1, 2), 3),
    (Fraction(3, 4), 4),
    (Fraction(9, 10), 5),
    (Fraction(19, 20), 6),
)

ROULETTE_EPS = 1e-10


@dataclass(frozen=True)
class WalkBounds:
    lower: np.ndarray
    upper: np.ndarray


def exploitation_exponent(t: int, T: int) -> int | None:
    """Exponent ``w`` in effect at iteration ``t``, None before the first threshold."""
    w = None
    for frac, exponent in W_SCHEDULE:
        if t > frac * T:
            w = exponent
    return w


def ratio_I(t: int, T: int) -> float:
    """Shrink ratio ``1 + 10**w * t / T``; exactly 1 while ``t <= T / 10``."""
    if T < 1 or not 1 <= t <= T:
        raise ValueError(f"iteration {t} outside 1..{T}")
    w = exploitation_exponent(t, T)
    if w is None:
        return 1.0
    return 1.0 + 10.0**w * (t / T)


def shrink_bounds(lower, upper, ratio: float) -> WalkBounds:
    if ratio < 1:
        raise ValueError(f"shrink ratio must be >= 1, got {ratio}")
    return WalkBounds(np.asarray(lower, dtype=np.float64) / ratio,
                      np.asarray(upper, dtype=np.float64) / ratio)


def center_bounds(antlion, shrunk: WalkBounds, rng: np.random.Generator) -> WalkBounds:
    """Move the shrunk interval onto the antlion.

    Each bound gets its own fair-coin sign before being added to the antlion
    position, so traps open below as often as above. The result is clipped to
    [0, 1] and reordered so that lower <= upper.
    """
    antlion = np.asarray(antlion, dtype=np.float64)
    sign_lower = 1.0 if rng.random() < 0.5 else -1.0
    sign_upper = 1.0 if rng.random() < 0.5 else -1.0
    lo = np.clip(antlion + sign_lower * shrunk.lower, 0.0, 1.0)
    hi = np.clip(antlion + sign_upper * shrunk.upper, 0.0, 1.0)
    return WalkBounds(np.minimum(lo, hi), np.maximum(lo, hi))


def random_walk(T: int, rng: np.random.Generator) -> np.ndarray:
    """``[0, cumsum(+-1 steps)]`` of length ``T + 1``."""
    return random_walks(T, 1, rng)[0]


def random_walks(T: int, n_walks: int, rng: np.random.Generator) -> np.ndarray:
    """``n_walks`` independent walks, one per row, each of length ``T + 1``."""
    if T < 1:
        raise ValueError("T must be >= 1")
    steps = np.where(rng.random((n_walks, T)) < 0.5, 1.0, -1.0)
    walks = np.zeros((n_walks, T + 1))
    np.cumsum(steps, axis=1, out=walks[:, 1:])
    return walks


def walk_position(walk, t: int, lower, upper):
    """Min-max map of ``walk[..., t]`` from the walk's range onto ``[lower, upper]``.

    ``walk`` may hold one walk per row; ``lower``/``upper`` broadcast against
    the rows. A flat walk maps to the interval midpoint.
    """
    walk = np.asarray(walk, dtype=np.float64)
    lo = walk.min(axis=-1)
    hi = walk.max(axis=-1)
    span = hi - lo
    flat = span == 0
    pos = walk[..., t]
    safe = np.where(flat, 1.0, span)
    value = (pos - lo) * (np.asarray(upper) - np.asarray(lower)) / safe + lower
    value = np.where(flat, (np.asarray(lower) + np.asarray(upper)) / 2.0, value)
    # rounding can push the endpoint a hair outside the interval
    value = np.clip(value, lower, upper)
    return float(value) if np.ndim(value) == 0 else value


def roulette_weights(fitnesses) -> np.ndarray:
    f = np.asarray(fitnesses, dtype=np.float64)
    w = 1.0 / (f + ROULETTE_EPS)
    return w / w.sum()


def roulette_select(fitnesses, rng: np.random.Generator) -> int:
    """Index drawn with probability proportional to ``1 / (fitness + eps)``."""
    f = np.asarray(fitnesses, dtype=np.float64)
    if f.size == 0:
        raise ValueError("cannot select from an empty population")
    cum = np.cumsum(1.0 / (f + ROULETTE_EPS))
    idx = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
    return min(idx, f.size - 1)
