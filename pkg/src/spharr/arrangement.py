"""Central hyperplane arrangements: data model, essentiality, pencils, and
the two mirror-symmetry tests.

A hyperplane is stored as a sign-canonicalized unit normal, an arrangement as
a deduplicated tuple of hyperplanes plus the tolerance policy.  The two
Coxeter tests — closure of the arrangement under its own reflections, and
equal angular spacing of every rank-two pencil — are independent
implementations kept deliberately separate so each can serve as an oracle
for the other.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .numeric import (
    DEFAULT_TOL,
    DegenerateInput,
    DimensionMismatch,
    PreconditionError,
    Tolerance,
    as_vector,
    norm,
    normalize,
    rank,
)


def canonical_normal(raw: Iterable[float], tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Unit normal with the first coordinate of magnitude > abs_eps positive."""
    v = normalize(raw, tol)
    for x in v:
        if abs(x) > tol.abs_eps:
            if x < 0.0:
                v = -v
            break
    return v


def _rejection_angle(u: np.ndarray, v: np.ndarray, dot: float) -> float:
    """Angle between unit vectors via atan2(|rejection|, dot).

    Unlike arccos of the dot product this resolves angles far below 1e-8,
    which the 1e-9 default angle tolerance requires.
    """
    r = v - dot * u
    return math.atan2(norm(r), dot)


def directions_equal(u: np.ndarray, v: np.ndarray, tol: Tolerance) -> bool:
    """True when two unit vectors point the same way within angle_eps."""
    return _rejection_angle(u, v, float(np.dot(u, v))) <= tol.angle_eps


def lines_equal(u: np.ndarray, v: np.ndarray, tol: Tolerance) -> bool:
    """True when two unit vectors span the same line within angle_eps."""
    d = float(np.dot(u, v))
    if d < 0.0:
        return _rejection_angle(u, -v, -d) <= tol.angle_eps
    return _rejection_angle(u, v, d) <= tol.angle_eps


@dataclass(frozen=True, eq=False)
class Hyperplane:
    """A linear hyperplane, represented by its canonical unit normal."""

    normal: np.ndarray
    tol: InitVar[Tolerance] = DEFAULT_TOL

    def __post_init__(self, tol: Tolerance) -> None:
        v = canonical_normal(self.normal, tol)
        v.setflags(write=False)
        object.__setattr__(self, "normal", v)

    @property
    def dim(self) -> int:
        return len(self.normal)

    def same_as(self, other: "Hyperplane", tol: Tolerance) -> bool:
        return lines_equal(self.normal, other.normal, tol)

    def reflect(self, v: np.ndarray) -> np.ndarray:
        """Image of vector v under the reflection fixing this hyperplane."""
        n = self.normal
        return v - 2.0 * float(np.dot(v, n)) * n

    def __repr__(self) -> str:
        return f"Hyperplane({np.array2string(self.normal, precision=6)})"


@dataclass(frozen=True, eq=False)
class Arrangement:
    """A deduplicated finite set of linear hyperplanes in R^dim."""

    dim: int
    hyperplanes: tuple[Hyperplane, ...]
    tol: Tolerance

    def __len__(self) -> int:
        return len(self.hyperplanes)

    @cached_property
    def normals(self) -> np.ndarray:
        """(n, dim) matrix of canonical unit normals (read-only)."""
        if not self.hyperplanes:
            m = np.zeros((0, self.dim))
        else:
            m = np.array([h.normal for h in self.hyperplanes])
        m.setflags(write=False)
        return m

    def __repr__(self) -> str:
        return f"Arrangement(dim={self.dim}, n={len(self.hyperplanes)})"


def make_arrangement(
    dim: int,
    raw_normals: Iterable[Iterable[float]],
    tol: Tolerance = DEFAULT_TOL,
) -> Arrangement:
    """Normalize, sign-canonicalize and deduplicate raw normals.

    Input order is preserved for the first representative of each hyperplane.
    Zero vectors and dimension mismatches are rejected.
    """
    if dim < 1:
        raise DimensionMismatch(f"dimension must be >= 1, got {dim}")
    kept: list[Hyperplane] = []
    for raw in raw_normals:
        v = as_vector(raw)
        if len(v) != dim:
            raise DimensionMismatch(f"normal of dimension {len(v)} in R^{dim}")
        h = Hyperplane(v, tol)
        if not any(h.same_as(other, tol) for other in kept):
            kept.append(h)
    return Arrangement(dim=dim, hyperplanes=tuple(kept), tol=tol)


def is_essential(a: Arrangement) -> bool:
    """True when the normals span the ambient space (common intersection {0})."""
    if not a.hyperplanes:
        return False
    return rank(list(a.normals), a.tol) == a.dim


def pencil_quotient(a: Arrangement) -> Arrangement:
    """Quotient a non-essential arrangement by the common intersection of its
    hyperplanes, re-expressing the normals in an orthonormal basis of their
    span.  The result is essential in dimension rank(normals)."""
    if not a.hyperplanes:
        raise PreconditionError("cannot quotient an empty arrangement")
    if is_essential(a):
        raise PreconditionError("arrangement is already essential")
    basis: list[np.ndarray] = []
    for row in a.normals:
        w = row.copy()
        for q in basis:
            w = w - float(np.dot(w, q)) * q
        nw = norm(w)
        if nw > a.tol.abs_eps:
            basis.append(w / nw)
    q_mat = np.array(basis)
    new_normals = [q_mat @ h.normal for h in a.hyperplanes]
    return make_arrangement(len(basis), new_normals, a.tol)


@dataclass(frozen=True, eq=False)
class RankTwoSubarrangement:
    """All hyperplanes of an arrangement containing one codimension-2
    subspace U, together with their trace angles in the plane orthogonal
    to U (line angles in [0, pi), sorted)."""

    basis: tuple[np.ndarray, ...]
    members: tuple[int, ...]
    pencil_angles: tuple[float, ...]


def _in_plane(v: np.ndarray, p1: np.ndarray, p2: np.ndarray, angle_eps: float) -> bool:
    r = v - float(np.dot(v, p1)) * p1 - float(np.dot(v, p2)) * p2
    return norm(r) <= angle_eps


def _complement_basis(p1: np.ndarray, p2: np.ndarray, tol: Tolerance) -> tuple[np.ndarray, ...]:
    """Orthonormal basis of the orthogonal complement of span(p1, p2)."""
    d = len(p1)
    if d == 3:
        u = np.cross(p1, p2)
        return (u / norm(u),)
    held = [p1, p2]
    out: list[np.ndarray] = []
    while len(out) < d - 2:
        best: np.ndarray | None = None
        best_ne = 0.0
        for k in range(d):
            e = np.zeros(d)
            e[k] = 1.0
            for q in held:
                e = e - float(np.dot(e, q)) * q
            ne = norm(e)
            if ne > best_ne:
                best, best_ne = e, ne
        assert best is not None
        q = best / best_ne
        held.append(q)
        out.append(q)
    return tuple(out)


def rank_two_subarrangements(a: Arrangement) -> list[RankTwoSubarrangement]:
    """One entry per codimension-2 subspace shared by at least two
    hyperplanes; every unordered pair of hyperplanes lands in exactly one
    entry.  Grouping compares normal 2-planes pairwise (mutual containment
    of basis vectors within angle_eps), never hashed canonical forms."""
    if a.dim < 2:
        raise PreconditionError("rank-two decomposition needs dimension >= 2")
    tol = a.tol
    n = len(a)
    normals = a.normals
    planes: list[tuple[np.ndarray, np.ndarray]] = []
    for i in range(n):
        for j in range(i + 1, n):
            w1 = normals[i]
            w2 = normals[j] - float(np.dot(normals[j], w1)) * w1
            w2 = w2 / norm(w2)
            matched = False
            for p1, p2 in planes:
                if _in_plane(w1, p1, p2, tol.angle_eps) and _in_plane(w2, p1, p2, tol.angle_eps):
                    matched = True
                    break
            if not matched:
                planes.append((w1, w2))

    subs: list[RankTwoSubarrangement] = []
    for p1, p2 in planes:
        members = tuple(
            k for k in range(n) if _in_plane(normals[k], p1, p2, tol.angle_eps)
        )
        angles = sorted(
            (math.atan2(float(np.dot(normals[k], p2)), float(np.dot(normals[k], p1)))
             + math.pi / 2.0) % math.pi
            for k in members
        )
        subs.append(
            RankTwoSubarrangement(
                basis=_complement_basis(p1, p2, tol),
                members=members,
                pencil_angles=tuple(angles),
            )
        )
    return subs


def is_dihedral(s: RankTwoSubarrangement, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when the pencil's trace lines are equally spaced at pi/k.

    A two-member pencil therefore passes only at right angles: that is the
    unique two-line closed mirror system, and anything else would break the
    agreement with the reflection-closure test.
    """
    k = len(s.members)
    angs = s.pencil_angles
    target = math.pi / k
    for i in range(k - 1):
        if abs((angs[i + 1] - angs[i]) - target) > tol.angle_eps:
            return False
    last = math.pi - angs[k - 1] + angs[0]
    return abs(last - target) <= tol.angle_eps


def is_coxeter_rank_two(a: Arrangement) -> bool:
    """True when every rank-two pencil is equally spaced (dihedral)."""
    if len(a) <= 1 or a.dim < 2:
        return True
    return all(is_dihedral(s, a.tol) for s in rank_two_subarrangements(a))


def is_coxeter_mirror_closure(a: Arrangement) -> bool:
    """True when reflecting any hyperplane across any other stays inside the
    arrangement (closed system of mirrors).  Empty and single-hyperplane
    arrangements are closed."""
    n = len(a)
    if n <= 1:
        return True
    normals = a.normals
    for i in range(n):
        ni = normals[i]
        reflected = normals - 2.0 * np.outer(normals @ ni, ni)
        dots = reflected @ normals.T
        best = np.argmax(np.abs(dots), axis=1)
        for j in range(n):
            if j == i:
                continue
            k = int(best[j])
            if not lines_equal(reflected[j], normals[k], a.tol):
                return False
    return True
