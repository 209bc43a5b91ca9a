"""Canonical boundary signatures for polygon congruence.

A polygon's boundary walk yields a cyclic sequence of (interior angle,
following edge length) pairs.  Its signature is the lexicographically
smallest sequence over all rotations of the walk and both walk orientations,
so polygons related by any isometry (rotations and reflections alike) share
one signature.  Canonicalization is exact; tolerances enter only when two
signatures are compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class CongruenceSignature:
    canonical: tuple[tuple[float, float], ...]

    def __len__(self) -> int:
        return len(self.canonical)


def _reversed_walk(pairs: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    """Boundary pairs of the same polygon walked in the opposite direction.

    Angles stay attached to their vertices; the edge following a vertex in
    the reversed walk is the edge that preceded it in the forward walk.
    """
    k = len(pairs)
    return [(pairs[-j % k][0], pairs[(-j - 1) % k][1]) for j in range(k)]


def _alignments(pairs: Sequence[tuple[float, float]]) -> list[tuple[tuple[float, float], ...]]:
    k = len(pairs)
    fwd = list(pairs)
    rev = _reversed_walk(pairs)
    out = []
    for seq in (fwd, rev):
        for r in range(k):
            out.append(tuple(seq[(r + t) % k] for t in range(k)))
    return out


def boundary_signature(pairs: Sequence[tuple[float, float]]) -> CongruenceSignature:
    """Canonical signature of a cyclic (angle, following-edge) boundary."""
    if not pairs:
        raise ValueError("empty boundary")
    return CongruenceSignature(canonical=min(_alignments(pairs)))


def signatures_equal(
    a: CongruenceSignature,
    b: CongruenceSignature,
    angle_eps: float,
    length_eps: float,
) -> bool:
    """Tolerance-robust congruence test.

    Exact lexicographic canonicalization can pick different rotations for two
    boundaries that tie within tolerance, so equality re-checks every
    alignment of one canonical sequence against the other.
    """
    if len(a) != len(b):
        return False
    ref = a.canonical
    for cand in _alignments(b.canonical):
        ok = True
        for (ang1, len1), (ang2, len2) in zip(ref, cand):
            if abs(ang1 - ang2) > angle_eps or abs(len1 - len2) > length_eps:
                ok = False
                break
        if ok:
            return True
    return False


def signature_distance(a: CongruenceSignature, b: CongruenceSignature) -> float:
    """Smallest over alignments of the largest component difference.

    Infinite when the boundary lengths differ.  Used as a dissimilarity
    measure; zero means congruent up to rounding.
    """
    if len(a) != len(b):
        return math.inf
    ref = a.canonical
    best = math.inf
    for cand in _alignments(b.canonical):
        worst = 0.0
        for (ang1, len1), (ang2, len2) in zip(ref, cand):
            worst = max(worst, abs(ang1 - ang2), abs(len1 - len2))
            if worst >= best:
                break
        best = min(best, worst)
    return best


def group_by_equality(
    sigs: Sequence[CongruenceSignature],
    angle_eps: float,
    length_eps: float,
) -> list[list[int]]:
    """Greedy first-representative grouping under the tolerance comparator."""
    groups: list[list[int]] = []
    for i, s in enumerate(sigs):
        for g in groups:
            if signatures_equal(sigs[g[0]], s, angle_eps, length_eps):
                g.append(i)
                break
        else:
            groups.append([i])
    return groups
