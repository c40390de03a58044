"""S-shaped and V-shaped transfer functions and the two binarization rules.

An S-shaped curve gives the probability that a bit is *set*; a V-shaped
curve gives the probability that the current bit is *flipped*.
"""

from __future__ import annotations

import enum

import numpy as np
from scipy.special import erf, expit

_SQRT_PI_2 = np.sqrt(np.pi) / 2.0


class TransferFunction(str, enum.Enum):
    S0 = "s0"
    S1 = "s1"
    S2 = "s2"
    S3 = "s3"
    V0 = "v0"
    V1 = "v1"
    V2 = "v2"
    V3 = "v3"

    @property
    def family(self) -> str:
        return "S" if self.value.startswith("s") else "V"

    @property
    def is_s_shaped(self) -> bool:
        return self.family == "S"

    @property
    def is_v_shaped(self) -> bool:
        return self.family == "V"

    @classmethod
    def parse(cls, name) -> "TransferFunction":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown transfer function {name!r}; expected one of {choices}") from None

    def __call__(self, x):
        return transfer_value(self, x)


def _s0(x):
    return expit(x)


def _s1(x):
    return expit(2.0 * x)


def _s2(x):
    return expit(x / 2.0)


def _s3(x):
    return expit(x / 3.0)


def _v0(x):
    return np.abs(np.tanh(x))


def _v1(x):
    return np.abs(erf(_SQRT_PI_2 * x))


def _v2(x):
    # hypot avoids overflow of 1 + x**2
    return np.abs(x / np.hypot(1.0, x))


def _v3(x):
    return np.abs((2.0 / np.pi) * np.arctan((np.pi / 2.0) * x))


_CURVES = {
    TransferFunction.S0: _s0,
    TransferFunction.S1: _s1,
    TransferFunction.S2: _s2,
    TransferFunction.S3: _s3,
    TransferFunction.V0: _v0,
    TransferFunction.V1: _v1,
    TransferFunction.V2: _v2,
    TransferFunction.V3: _v3,
}


def transfer_value(tf, x):
    """Probability in [0, 1] for step ``x`` (scalar or array)."""
    tf = TransferFunction.parse(tf)
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("transfer functions require finite input")
    out = _CURVES[tf](arr)
    return float(out) if out.ndim == 0 else out


def binarize_s(step, tf, rng: np.random.Generator) -> np.ndarray:
    """Set bit ``d`` when a fresh uniform draw falls below ``S(step_d)``."""
    tf = TransferFunction.parse(tf)
    if not tf.is_s_shaped:
        raise ValueError(f"{tf.value} is not S-shaped")
    prob = transfer_value(tf, np.atleast_1d(step))
    return rng.random(prob.shape[0]) < prob


def binarize_v(step, current, tf, rng: np.random.Generator) -> np.ndarray:
    """Flip bit ``d`` of ``current`` when a fresh uniform draw falls below ``V(step_d)``."""
    tf = TransferFunction.parse(tf)
    if not tf.is_v_shaped:
        raise ValueError(f"{tf.value} is not V-shaped")
    step = np.atleast_1d(step)
    current = np.asarray(current, dtype=bool)
    if step.shape != current.shape:
        raise ValueError("step and current differ in length")
    prob = transfer_value(tf, step)
    return current ^ (rng.random(prob.shape[0]) < prob)


def binarize(step, current, tf, rng: np.random.Generator) -> np.ndarray:
    """Dispatch on the family of ``tf``; ``current`` is ignored for S-shaped curves."""
    tf = TransferFunction.parse(tf)
    if tf.is_s_shaped:
        return binarize_s(step, tf, rng)
    return binarize_v(step, current, tf, rng)
