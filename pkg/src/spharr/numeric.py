"""Tolerance policy, small-vector helpers, and rank computation.

Every approximate comparison in the package routes through a single
:class:`Tolerance` value; no other module defines its own epsilon.  Vectors
are plain float64 numpy arrays, validated by :func:`as_vector`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class GeometryError(ValueError):
    """Base class for all geometric input errors raised by this package."""


class DimensionMismatch(GeometryError):
    """Vectors of different dimensions were mixed in one operation."""


class DegenerateInput(GeometryError):
    """An input was too close to degenerate to work with (e.g. a zero vector)."""


class PreconditionError(GeometryError):
    """An operation was called outside its documented domain."""


@dataclass(frozen=True)
class Tolerance:
    """Comparison thresholds: ``abs_eps`` for lengths/coordinates (dimensionless),
    ``angle_eps`` for angles (radians)."""

    abs_eps: float = 1e-9
    angle_eps: float = 1e-9

    def __post_init__(self) -> None:
        if not (self.abs_eps > 0.0 and self.angle_eps > 0.0):
            raise ValueError("tolerances must be positive")

    def is_zero(self, x: float) -> bool:
        return abs(x) <= self.abs_eps

    def eq(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.abs_eps

    def angle_eq(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.angle_eps


DEFAULT_TOL = Tolerance()


def as_vector(coords: Iterable[float]) -> np.ndarray:
    """Coerce *coords* to a 1-d float64 array of dimension >= 1."""
    v = np.asarray(coords, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise DimensionMismatch(f"expected a 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise DegenerateInput("vector has non-finite coordinates")
    return v


def norm(v: np.ndarray) -> float:
    return float(math.sqrt(float(np.dot(v, v))))


def normalize(v: Iterable[float], tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Return *v* scaled to unit length.

    Rejects near-zero vectors (norm <= abs_eps).  A vector already within
    abs_eps of unit length is returned unscaled, which makes the operation
    idempotent (canonical serialized normals round-trip bit-exactly).
    """
    v = as_vector(v)
    n = norm(v)
    if n <= tol.abs_eps:
        raise DegenerateInput(f"cannot normalize near-zero vector (norm={n:g})")
    if abs(n - 1.0) <= tol.abs_eps:
        return v.copy()
    return v / n


def cross(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Cross product, defined for dimension 3 only."""
    if len(u) != 3 or len(v) != 3:
        raise DimensionMismatch("cross product requires 3-vectors")
    return np.cross(u, v)


def rank(vectors: Sequence[Iterable[float]], tol: Tolerance = DEFAULT_TOL) -> int:
    """Dimension of the span of *vectors*, by pivoted Gaussian elimination.

    A pivot counts only while its magnitude exceeds abs_eps.  All vectors
    must share one dimension.
    """
    rows = [as_vector(v) for v in vectors]
    if not rows:
        return 0
    d = len(rows[0])
    for v in rows:
        if len(v) != d:
            raise DimensionMismatch(f"mixed dimensions: {len(v)} vs {d}")
    m = np.array(rows, dtype=float)
    r = 0
    for col in range(d):
        if r >= len(m):
            break
        piv = r + int(np.argmax(np.abs(m[r:, col])))
        if abs(m[piv, col]) <= tol.abs_eps:
            continue
        m[[r, piv]] = m[[piv, r]]
        m[r + 1:] -= np.outer(m[r + 1:, col] / m[r, col], m[r])
        r += 1
    return r


def clamped_acos(x: float) -> float:
    """arccos with the argument clamped to [-1, 1] to suppress rounding NaNs."""
    return math.acos(min(1.0, max(-1.0, x)))


def angle_between(u: Iterable[float], v: Iterable[float], tol: Tolerance = DEFAULT_TOL) -> float:
    """Angle in [0, pi] between two nonzero vectors of equal dimension."""
    u = as_vector(u)
    v = as_vector(v)
    if len(u) != len(v):
        raise DimensionMismatch(f"mixed dimensions: {len(u)} vs {len(v)}")
    nu, nv = norm(u), norm(v)
    if nu <= tol.abs_eps or nv <= tol.abs_eps:
        raise DegenerateInput("angle_between requires nonzero vectors")
    return clamped_acos(float(np.dot(u, v)) / (nu * nv))


def line_angle_between(u: np.ndarray, v: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> float:
    """Angle in [0, pi/2] between the lines spanned by u and v (sign-blind)."""
    a = angle_between(u, v, tol)
    return min(a, math.pi - a)
