"""Great-circle cell complexes on the unit sphere.

An essential 3D arrangement cuts the sphere into vertices (pairwise circle
intersections, antipodes kept), arcs, and convex faces; the faces are the
spherical sections of the arrangement's regions.  This module builds that
complex and provides the checks that drive the isometry/mirror analysis:
face congruence, simpliciality, vertex angle cycles and their run parity,
and the structural invariants (Euler count, even degrees, excess areas,
law of sines, antipodal symmetry).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .arrangement import Arrangement, directions_equal, is_essential
from .numeric import GeometryError, PreconditionError, Tolerance, norm
from .signature import (
    CongruenceSignature,
    boundary_signature,
    group_by_equality,
    signatures_equal,
)

FOUR_PI = 4.0 * math.pi


class LabelingError(GeometryError):
    """An incident angle matched none of the triangle's angle classes,
    which signals non-congruent faces upstream."""


@dataclass(frozen=True)
class Arc:
    """Great-circle segment between consecutive vertices on one circle."""

    circle: int
    endpoints: tuple[int, int]
    length: float


@dataclass(frozen=True, eq=False)
class SphericalPolygon:
    """Face boundary: cyclic (vertex index, interior angle, following edge
    length), walked counterclockwise with the interior on the left."""

    boundary: tuple[tuple[int, float, float], ...]

    def __len__(self) -> int:
        return len(self.boundary)

    @property
    def vertex_indices(self) -> tuple[int, ...]:
        return tuple(v for v, _a, _e in self.boundary)

    @property
    def angles(self) -> tuple[float, ...]:
        return tuple(a for _v, a, _e in self.boundary)

    @property
    def edge_lengths(self) -> tuple[float, ...]:
        return tuple(e for _v, _a, e in self.boundary)

    @property
    def is_triangle(self) -> bool:
        return len(self.boundary) == 3

    def excess(self) -> float:
        """Angle sum minus (k-2)*pi; for a triangle this is its area."""
        return sum(self.angles) - (len(self.boundary) - 2) * math.pi


@dataclass(frozen=True, eq=False)
class SphericalComplex:
    """Vertices, arcs, faces and vertex incidence of a great-circle complex.

    ``incidence[v]`` lists (arc index, face index, face angle) cyclically
    counterclockwise around vertex v; the number of entries is both the edge
    degree and the angle count of v (the two coincide here and are checked
    in :func:`verify_invariants`).
    """

    arrangement: Arrangement
    vertices: np.ndarray
    vertex_circles: tuple[tuple[int, ...], ...]
    arcs: tuple[Arc, ...]
    circle_arcs: tuple[tuple[int, ...], ...]
    faces: tuple[SphericalPolygon, ...]
    face_areas: tuple[float, ...]
    incidence: tuple[tuple[tuple[int, int, float], ...], ...]

    @property
    def tol(self) -> Tolerance:
        return self.arrangement.tol

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_circles)

    @property
    def num_edges(self) -> int:
        return len(self.arcs)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])


def _corner_angle(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    """Spherical angle at b of the triangle (a, b, c), from the tangent
    vectors at b toward a and toward c."""
    t1 = a - float(np.dot(a, b)) * b
    t2 = c - float(np.dot(c, b)) * b
    cr = np.cross(t1, t2)
    return math.atan2(norm(cr), float(np.dot(t1, t2)))


def _fan_area(coords: Sequence[np.ndarray]) -> float:
    """Polygon area as the sum of triangle excesses over the fan from the
    first vertex.  Valid for the convex faces produced here."""
    k = len(coords)
    total = 0.0
    for i in range(1, k - 1):
        a, b, c = coords[0], coords[i], coords[i + 1]
        total += (
            _corner_angle(b, a, c)
            + _corner_angle(a, b, c)
            + _corner_angle(a, c, b)
            - math.pi
        )
    return total


def build_complex(a: Arrangement) -> SphericalComplex:
    """Cell complex induced on the unit sphere by an essential 3D arrangement
    of at least three hyperplanes."""
    if a.dim != 3:
        raise PreconditionError(f"sphere complex needs dimension 3, got {a.dim}")
    if len(a) < 3:
        raise PreconditionError("sphere complex needs at least 3 hyperplanes")
    if not is_essential(a):
        raise PreconditionError("sphere complex needs an essential arrangement")

    tables = kernels.build_sphere_tables(
        [tuple(h.normal) for h in a.hyperplanes], a.tol.abs_eps, a.tol.angle_eps
    )

    vertices = np.array(tables["vertices"])
    vertices.setflags(write=False)
    arcs = tuple(
        Arc(circle=c, endpoints=(u, w), length=length)
        for c, u, w, length in tables["arcs"]
    )
    faces = []
    areas = []
    for vs, angs, lens in zip(
        tables["face_vertices"], tables["face_angles"], tables["face_edges"]
    ):
        faces.append(
            SphericalPolygon(boundary=tuple(zip(vs, angs, lens)))
        )
        areas.append(_fan_area([vertices[v] for v in vs]))

    return SphericalComplex(
        arrangement=a,
        vertices=vertices,
        vertex_circles=tuple(tuple(c) for c in tables["vertex_circles"]),
        arcs=arcs,
        circle_arcs=tuple(tuple(ids) for ids in tables["circle_arcs"]),
        faces=tuple(faces),
        face_areas=tuple(areas),
        incidence=tuple(tuple(entries) for entries in tables["vertex_cycles"]),
    )


def face_signature(f: SphericalPolygon, tol: Tolerance | None = None) -> CongruenceSignature:
    """Canonical congruence signature of a face.

    Canonicalization is exact; ``tol`` governs comparisons between
    signatures and is accepted here for interface symmetry.
    """
    return boundary_signature([(ang, el) for _v, ang, el in f.boundary])


def all_regions_isometric(c: SphericalComplex, tol: Tolerance | None = None) -> bool:
    """True when every pair of faces has equal signatures (sphere lengths are
    radians, so both components compare under angle_eps)."""
    tol = tol or c.tol
    sigs = [face_signature(f) for f in c.faces]
    for i in range(len(sigs)):
        for j in range(i + 1, len(sigs)):
            if not signatures_equal(sigs[i], sigs[j], tol.angle_eps, tol.angle_eps):
                return False
    return True


def is_simplicial(c: SphericalComplex) -> bool:
    return all(f.is_triangle for f in c.faces)


def count_simplicial_regions(c: SphericalComplex) -> int:
    return sum(1 for f in c.faces if f.is_triangle)


def min_degree_vertex(c: SphericalComplex) -> tuple[int, int]:
    degs = [c.degree(v) for v in range(c.num_vertices)]
    v = int(np.argmin(degs))
    return v, degs[v]


def triangle_angle_classes(c: SphericalComplex, tol: Tolerance | None = None) -> list[float]:
    """Distinct angle values of the (shared) triangle type, largest first.

    Labels returned by :func:`vertex_angle_cycle` index into this list.
    """
    tol = tol or c.tol
    if not c.faces or not c.faces[0].is_triangle:
        raise PreconditionError("angle classes need a triangulated complex")
    classes: list[float] = []
    for ang in c.faces[0].angles:
        if not any(abs(ang - cls) <= tol.angle_eps for cls in classes):
            classes.append(ang)
    classes.sort(reverse=True)
    return classes


def vertex_angle_cycle(c: SphericalComplex, v: int) -> list[int]:
    """Labels of the angles around vertex v in counterclockwise order.

    Labels index :func:`triangle_angle_classes`.  An incident angle that
    matches no class within angle_eps raises :class:`LabelingError`.
    """
    tol = c.tol
    classes = triangle_angle_classes(c)
    cycle: list[int] = []
    for _arc, _face, ang in c.incidence[v]:
        for label, cls in enumerate(classes):
            if abs(ang - cls) <= tol.angle_eps:
                cycle.append(label)
                break
        else:
            raise LabelingError(
                f"angle {ang!r} at vertex {v} matches no triangle angle class"
            )
    return cycle


def check_parity_lemma(cycle: Sequence[int], distinct_angles: int = 3) -> bool:
    """Run-parity rule for the labels around a vertex: a maximal run of one
    label must be bordered by equal labels when its length is even and by
    different labels when odd.  A cycle made of a single label is vacuously
    fine."""
    k = len(cycle)
    if len(set(cycle)) > distinct_angles:
        raise ValueError("more labels in the cycle than declared angle classes")
    if k == 0 or all(x == cycle[0] for x in cycle):
        return True
    start = next(i for i in range(k) if cycle[i] != cycle[i - 1])
    rotated = [cycle[(start + t) % k] for t in range(k)]
    runs: list[tuple[int, int]] = []
    for x in rotated:
        if runs and runs[-1][0] == x:
            runs[-1] = (x, runs[-1][1] + 1)
        else:
            runs.append((x, 1))
    m = len(runs)
    for idx, (_label, length) in enumerate(runs):
        before = runs[(idx - 1) % m][0]
        after = runs[(idx + 1) % m][0]
        if length % 2 == 0 and before != after:
            return False
        if length % 2 == 1 and before == after:
            return False
    return True


def check_all_vertices_uniform(c: SphericalComplex, tol: Tolerance | None = None) -> bool:
    """True when each vertex sees only one angle value (within angle_eps)."""
    tol = tol or c.tol
    for entries in c.incidence:
        angs = [ang for _arc, _face, ang in entries]
        if max(angs) - min(angs) > tol.angle_eps:
            return False
    return True


def _antipode_table(c: SphericalComplex) -> list[int] | None:
    tol = c.tol
    nv = c.num_vertices
    table = [-1] * nv
    for v in range(nv):
        target = -c.vertices[v]
        for u in range(nv):
            if directions_equal(target, c.vertices[u], tol):
                table[v] = u
                break
        if table[v] < 0:
            return None
    return table


def verify_invariants(c: SphericalComplex) -> list[str]:
    """Run every structural check on a built complex; returns the list of
    violated invariants (empty when all hold)."""
    fails: list[str] = []
    nv, ne, nf = c.num_vertices, c.num_edges, c.num_faces
    n = len(c.arrangement)

    if nv - ne + nf != 2:
        fails.append(f"euler: V-E+F = {nv - ne + nf}, expected 2")

    for v, circles in enumerate(c.vertex_circles):
        if len(circles) < 2:
            fails.append(f"vertex {v} lies on fewer than 2 circles")

    # degree bookkeeping: arc endpoints per vertex vs incidence corners
    arc_deg = [0] * nv
    for arc in c.arcs:
        arc_deg[arc.endpoints[0]] += 1
        arc_deg[arc.endpoints[1]] += 1
    for v in range(nv):
        corners = len(c.incidence[v])
        if corners % 2 != 0:
            fails.append(f"vertex {v} has odd angle count {corners}")
        if corners != arc_deg[v]:
            fails.append(
                f"vertex {v}: edge degree {arc_deg[v]} != angle count {corners}"
            )

    for ids in c.circle_arcs:
        total = sum(c.arcs[a].length for a in ids)
        if abs(total - 2.0 * math.pi) > 1e-7:
            fails.append(f"circle arcs sum to {total!r}, expected 2*pi")

    area = sum(c.face_areas)
    if abs(area - FOUR_PI) > 1e-7:
        fails.append(f"total area {area!r} differs from 4*pi beyond 1e-7")

    for i, f in enumerate(c.faces):
        for ang in f.angles:
            if not 0.0 < ang < math.pi:
                fails.append(f"face {i}: interior angle {ang!r} outside (0, pi)")
        for el in f.edge_lengths:
            if not 0.0 < el < math.pi:
                fails.append(f"face {i}: edge length {el!r} outside (0, pi)")
        if f.is_triangle:
            exc = f.excess()
            if exc <= 0.0:
                fails.append(f"face {i}: non-positive excess {exc!r}")
            if abs(exc - c.face_areas[i]) > 1e-9:
                fails.append(
                    f"face {i}: excess {exc!r} vs area {c.face_areas[i]!r} beyond 1e-9"
                )
            a1, a2, a3 = f.angles
            e1, e2, e3 = f.edge_lengths
            # side opposite a corner is the edge not incident to it
            ratios = (
                math.sin(e2) / math.sin(a1),
                math.sin(e3) / math.sin(a2),
                math.sin(e1) / math.sin(a3),
            )
            if max(ratios) - min(ratios) > 1e-7:
                fails.append(f"face {i}: law-of-sines ratios {ratios!r} disagree")

    _v, mindeg = min_degree_vertex(c)
    if mindeg > 5:
        fails.append(f"minimum vertex degree {mindeg} exceeds 5")
    if is_simplicial(c) and mindeg != 4:
        fails.append(f"triangulation has minimum degree {mindeg}, expected 4")

    if count_simplicial_regions(c) < 2 * n:
        fails.append(
            f"only {count_simplicial_regions(c)} triangular faces for {n} hyperplanes"
        )

    table = _antipode_table(c)
    if table is None:
        fails.append("antipodal map is not a bijection on vertices")
    else:
        arc_keys: dict[tuple[int, int, int], int] = {}
        for a in c.arcs:
            u, w = sorted(a.endpoints)
            arc_keys[(a.circle, u, w)] = arc_keys.get((a.circle, u, w), 0) + 1
        for a in c.arcs:
            u, w = sorted((table[a.endpoints[0]], table[a.endpoints[1]]))
            if (a.circle, u, w) not in arc_keys:
                fails.append(f"antipodal image of arc {a} is not an arc")
                break
        face_sets = Counter(frozenset(f.vertex_indices) for f in c.faces)
        mapped = Counter(
            frozenset(table[v] for v in f.vertex_indices) for f in c.faces
        )
        if face_sets != mapped:
            fails.append("antipodal map does not permute faces")

    return fails


def signature_groups(c: SphericalComplex, tol: Tolerance | None = None) -> list[list[int]]:
    """Faces grouped by congruence; one group means isometric regions."""
    tol = tol or c.tol
    sigs = [face_signature(f) for f in c.faces]
    return group_by_equality(sigs, tol.angle_eps, tol.angle_eps)
