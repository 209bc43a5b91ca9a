"""Infinite affine line families in the plane, analyzed through a window.

The three families of interest are the triangular-lattice family, the
square-plus-diagonals family (lines x=k, y=k, x+-y=2k), and the integer
grid, each composed with an invertible linear map.  Families are kept
intensionally (base normals, offset spacings, and the map), so membership of
a reflected line is decided against the defining congruences rather than a
finite truncation.  Regions are read off a windowed planar subdivision;
cells whose closure touches the window boundary are clipping artifacts and
are not regions of the infinite arrangement.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from typing import Iterable, Sequence

import numpy as np

from .arrangement import directions_equal
from .numeric import (
    DEFAULT_TOL,
    DegenerateInput,
    GeometryError,
    PreconditionError,
    Tolerance,
    as_vector,
    norm,
)
from .signature import CongruenceSignature, boundary_signature, signatures_equal

TWO_PI = 2.0 * math.pi

Window = tuple[float, float, float, float]  # xmin, xmax, ymin, ymax

FAMILY_NAMES = ("shearedA2t", "shearedB2t", "shearedGrid")


class LabelingError(GeometryError):
    """An angle matched none of the region's angle classes."""


@dataclass(frozen=True, eq=False)
class AffineLine:
    """Line {x . normal = offset} with unit, sign-canonicalized normal;
    the offset flips in tandem with the normal sign."""

    normal: np.ndarray
    offset: float
    tol: InitVar[Tolerance] = DEFAULT_TOL

    def __post_init__(self, tol: Tolerance) -> None:
        v = as_vector(self.normal)
        if len(v) != 2:
            raise DegenerateInput("affine lines live in the plane")
        g = norm(v)
        if g <= tol.abs_eps:
            raise DegenerateInput("near-zero line normal")
        off = float(self.offset)
        if abs(g - 1.0) > tol.abs_eps:
            v = v / g
            off = off / g
        for x in v:
            if abs(x) > tol.abs_eps:
                if x < 0.0:
                    v = -v
                    off = -off
                break
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "normal", v)
        object.__setattr__(self, "offset", off)

    def same_as(self, other: "AffineLine", tol: Tolerance) -> bool:
        return (
            directions_equal(self.normal, other.normal, tol)
            and abs(self.offset - other.offset) <= tol.abs_eps
        )


def reflect_line(line: AffineLine, mirror: AffineLine, tol: Tolerance = DEFAULT_TOL) -> AffineLine:
    """Image of *line* under the Euclidean reflection fixing *mirror*."""
    n, c = mirror.normal, mirror.offset
    m, b = line.normal, line.offset
    d = float(np.dot(n, m))
    return AffineLine(m - 2.0 * d * n, b - 2.0 * c * d, tol)


@dataclass(frozen=True, eq=False)
class LineFamily:
    """Image of a base family {x . n_j = k * s_j : k integer} under an
    invertible linear map."""

    name: str
    base_normals: tuple[np.ndarray, ...]
    spacings: tuple[float, ...]
    matrix: np.ndarray

    def _pullback(self, line: AffineLine, tol: Tolerance) -> tuple[np.ndarray, float] | None:
        q = self.matrix.T @ line.normal
        g = norm(q)
        if g <= tol.abs_eps:
            return None
        return q / g, line.offset / g

    def contains_line(self, line: AffineLine, tol: Tolerance) -> bool:
        """Membership in the infinite family, tested on the preimage under
        the map: the pulled-back normal must match a base direction and the
        pulled-back offset must sit on that direction's integer ladder."""
        pulled = self._pullback(line, tol)
        if pulled is None:
            return False
        u, d = pulled
        for n, s in zip(self.base_normals, self.spacings):
            if float(np.dot(u, n)) < 0.0:
                uu, dd = -u, -d
            else:
                uu, dd = u, d
            if directions_equal(uu, n, tol):
                r = dd / s
                return abs(r - round(r)) <= tol.abs_eps * max(1.0, abs(r))
        return False

    def lines_in_window(self, window: Window, tol: Tolerance) -> list[AffineLine]:
        """All family lines meeting the open window (lines collinear with a
        window edge are excluded; they cannot border an interior region)."""
        x0, x1, y0, y1 = window
        corners = ((x0, y0), (x0, y1), (x1, y0), (x1, y1))
        inv_t = np.linalg.inv(self.matrix).T
        out: list[AffineLine] = []
        for n, s in zip(self.base_normals, self.spacings):
            q = inv_t @ n
            g = norm(q)
            m = q / g
            step = s / g
            dots = [m[0] * cx + m[1] * cy for cx, cy in corners]
            lo, hi = min(dots), max(dots)
            kmin = math.ceil((lo + tol.abs_eps) / step)
            kmax = math.floor((hi - tol.abs_eps) / step)
            for k in range(kmin, kmax + 1):
                out.append(AffineLine(m, k * step, tol))
        return out


@dataclass(frozen=True, eq=False)
class PlanarPolygon:
    """Convex cell boundary walked counterclockwise: vertex coordinates,
    interior angles, and following edge lengths, index-aligned."""

    vertices: tuple[tuple[float, float], ...]
    angles: tuple[float, ...]
    edge_lengths: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def signature(self) -> CongruenceSignature:
        return boundary_signature(list(zip(self.angles, self.edge_lengths)))


@dataclass(frozen=True, eq=False)
class WindowedArrangement:
    """Finite view of a line arrangement: the lines meeting the window, the
    interior cells, and the full angle fan around every strictly interior
    vertex (used for the run-parity checks)."""

    family: LineFamily | None
    lines: tuple[AffineLine, ...]
    window: Window
    regions: tuple[PlanarPolygon, ...]
    interior_vertex_angles: tuple[tuple[float, ...], ...]


def _intersect(a: AffineLine, b: AffineLine) -> tuple[float, float] | None:
    det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0]
    if abs(det) <= 1e-12:
        return None
    px = (a.offset * b.normal[1] - b.offset * a.normal[1]) / det
    py = (a.normal[0] * b.offset - b.normal[0] * a.offset) / det
    return px, py


def build_windowed(
    family: LineFamily | None,
    lines: Sequence[AffineLine],
    window: Window,
    tol: Tolerance = DEFAULT_TOL,
) -> WindowedArrangement:
    """Planar subdivision of the window by *lines* plus the window border,
    with faces recovered by the leftmost-turn walk on directed edges."""
    x0, x1, y0, y1 = window
    if not (x1 > x0 and y1 > y0):
        raise PreconditionError("empty window")
    eps = tol.abs_eps
    border = [
        AffineLine(np.array([1.0, 0.0]), x0, tol),
        AffineLine(np.array([1.0, 0.0]), x1, tol),
        AffineLine(np.array([0.0, 1.0]), y0, tol),
        AffineLine(np.array([0.0, 1.0]), y1, tol),
    ]
    all_lines = list(lines) + border

    pts: list[tuple[float, float]] = []
    for i in range(len(all_lines)):
        for j in range(i + 1, len(all_lines)):
            p = _intersect(all_lines[i], all_lines[j])
            if p is None:
                continue
            px, py = p
            if not (x0 - eps <= px <= x1 + eps and y0 - eps <= py <= y1 + eps):
                continue
            dup = False
            for qx, qy in pts:
                if math.hypot(px - qx, py - qy) <= eps:
                    dup = True
                    break
            if not dup:
                pts.append((px, py))
    nv = len(pts)

    edges: list[tuple[int, int]] = []
    for line in all_lines:
        nx, ny = float(line.normal[0]), float(line.normal[1])
        c = line.offset
        keyed = []
        for vid, (px, py) in enumerate(pts):
            if abs(px * nx + py * ny - c) <= eps:
                keyed.append((px * -ny + py * nx, vid))
        keyed.sort()
        for k in range(len(keyed) - 1):
            u = keyed[k][1]
            w = keyed[k + 1][1]
            if u != w:
                edges.append((u, w))
    ne = len(edges)

    # darts: 2e is u->w, 2e+1 is w->u; psi is the travel direction angle
    psi_of = [0.0] * (2 * ne)
    dart_head = [0] * (2 * ne)
    out_lists: list[list[tuple[float, int]]] = [[] for _ in range(nv)]
    for e, (u, w) in enumerate(edges):
        dx = pts[w][0] - pts[u][0]
        dy = pts[w][1] - pts[u][1]
        psi_fwd = math.atan2(dy, dx)
        psi_bwd = math.atan2(-dy, -dx)
        psi_of[2 * e] = psi_fwd
        psi_of[2 * e + 1] = psi_bwd
        dart_head[2 * e] = w
        dart_head[2 * e + 1] = u
        out_lists[u].append((psi_fwd, 2 * e))
        out_lists[w].append((psi_bwd, 2 * e + 1))

    dart_slot = [0] * (2 * ne)
    out_order: list[list[int]] = []
    for v in range(nv):
        lst = sorted(out_lists[v])
        order = [d for _psi, d in lst]
        for idx, d in enumerate(order):
            dart_slot[d] = idx
        out_order.append(order)

    next_dart = [0] * (2 * ne)
    for d in range(2 * ne):
        order = out_order[dart_head[d]]
        next_dart[d] = order[dart_slot[d ^ 1] - 1]

    dart_face = [-1] * (2 * ne)
    face_darts: list[list[int]] = []
    for start in range(2 * ne):
        if dart_face[start] >= 0:
            continue
        f = len(face_darts)
        cycle = []
        d = start
        while True:
            dart_face[d] = f
            cycle.append(d)
            d = next_dart[d]
            if d == start:
                break
        face_darts.append(cycle)

    def _strictly_inside(px: float, py: float) -> bool:
        return (x0 + eps < px < x1 - eps) and (y0 + eps < py < y1 - eps)

    regions: list[PlanarPolygon] = []
    for cycle in face_darts:
        vs = [dart_head[d] for d in cycle]
        coords = [pts[v] for v in vs]
        area2 = 0.0
        for i in range(len(coords)):
            ax, ay = coords[i]
            bx, by = coords[(i + 1) % len(coords)]
            area2 += ax * by - ay * bx
        if area2 <= 0.0:  # the single outer face is walked clockwise
            continue
        if not all(_strictly_inside(px, py) for px, py in coords):
            continue
        k = len(cycle)
        angles = []
        lens = []
        for i in range(k):
            d = cycle[i]
            d_next = cycle[(i + 1) % k]
            ang = psi_of[d ^ 1] - psi_of[d_next]
            if ang <= 0.0:
                ang += TWO_PI
            angles.append(ang)
            a = pts[dart_head[d]]
            b = pts[dart_head[d_next]]
            lens.append(math.hypot(b[0] - a[0], b[1] - a[1]))
        regions.append(
            PlanarPolygon(
                vertices=tuple(coords),
                angles=tuple(angles),
                edge_lengths=tuple(lens),
            )
        )

    interior_cycles: list[tuple[float, ...]] = []
    for v in range(nv):
        if not _strictly_inside(*pts[v]):
            continue
        order = out_order[v]
        psis = [psi_of[d] for d in order]
        m = len(order)
        fan = []
        for j in range(m):
            ang = psis[(j + 1) % m] - psis[j]
            if ang <= 0.0:
                ang += TWO_PI
            fan.append(ang)
        interior_cycles.append(tuple(fan))

    return WindowedArrangement(
        family=family,
        lines=tuple(lines),
        window=window,
        regions=tuple(regions),
        interior_vertex_angles=tuple(interior_cycles),
    )


def _base_family(name: str) -> tuple[list[tuple[float, float]], list[float]]:
    h = math.sqrt(3.0) / 2.0
    s2 = math.sqrt(2.0)
    if name == "shearedA2t":
        # three directions 60 degrees apart with unit spacing; the third
        # normal is the difference of the first two, so triples of lines
        # meet in the points of a triangular lattice
        return [(1.0, 0.0), (0.5, h), (-0.5, h)], [1.0, 1.0, 1.0]
    if name == "shearedB2t":
        return (
            [(1.0, 0.0), (0.0, 1.0), (1.0 / s2, 1.0 / s2), (1.0 / s2, -1.0 / s2)],
            [1.0, 1.0, s2, s2],
        )
    if name == "shearedGrid":
        return [(1.0, 0.0), (0.0, 1.0)], [1.0, 1.0]
    raise GeometryError(f"unknown affine family: {name!r}")


def _as_matrix(param) -> np.ndarray:
    if np.isscalar(param):
        return np.array([[float(param), 0.0], [0.0, 1.0]])
    m = np.asarray(param, dtype=float)
    if m.shape != (2, 2):
        raise GeometryError(f"expected a scalar or 2x2 matrix, got shape {m.shape}")
    return m


def affine_family(
    name: str,
    param,
    window: Window,
    tol: Tolerance = DEFAULT_TOL,
) -> WindowedArrangement:
    """Windowed view of a named family composed with a linear map.

    ``param`` is a 2x2 matrix, or a scalar c standing for diag(c, 1).
    The map must be invertible and the window large enough to contain at
    least 10 interior regions.
    """
    base_normals, spacings = _base_family(name)
    matrix = _as_matrix(param)
    if abs(float(np.linalg.det(matrix))) <= tol.abs_eps:
        raise DegenerateInput("family map is singular")
    family = LineFamily(
        name=name,
        base_normals=tuple(as_vector(n) for n in base_normals),
        spacings=tuple(spacings),
        matrix=matrix,
    )
    lines = family.lines_in_window(window, tol)
    w = build_windowed(family, lines, window, tol)
    if len(w.regions) < 10:
        raise PreconditionError(
            f"window holds only {len(w.regions)} interior regions; need >= 10"
        )
    return w


def windowed_from_lines(
    lines: Iterable[AffineLine],
    window: Window,
    tol: Tolerance = DEFAULT_TOL,
) -> WindowedArrangement:
    """Windowed subdivision of an explicit, deduplicated line list (no
    intensional family; reflection closure is undefined for these)."""
    kept: list[AffineLine] = []
    for line in lines:
        if not any(line.same_as(other, tol) for other in kept):
            kept.append(line)
    return build_windowed(None, kept, window, tol)


def windowed_regions_isometric(w: WindowedArrangement, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when all interior regions share one congruence signature
    (angles within angle_eps, Euclidean lengths within abs_eps)."""
    if len(w.regions) < 2:
        raise PreconditionError("need at least two interior regions")
    sigs = [r.signature() for r in w.regions]
    for i in range(len(sigs)):
        for j in range(i + 1, len(sigs)):
            if not signatures_equal(sigs[i], sigs[j], tol.angle_eps, tol.abs_eps):
                return False
    return True


def is_locally_reflection_closed(w: WindowedArrangement, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when reflecting any window line across any other lands on a line
    of the *infinite* family (membership via the defining congruences)."""
    if w.family is None:
        raise PreconditionError("reflection closure needs an intensional family")
    for mirror in w.lines:
        for line in w.lines:
            if line is mirror:
                continue
            if not w.family.contains_line(reflect_line(line, mirror, tol), tol):
                return False
    return True


def region_angle_classes(w: WindowedArrangement, tol: Tolerance = DEFAULT_TOL) -> list[float]:
    """Distinct angle values of the first interior region, largest first."""
    if not w.regions:
        raise PreconditionError("no interior regions")
    classes: list[float] = []
    for ang in w.regions[0].angles:
        if not any(abs(ang - cls) <= tol.angle_eps for cls in classes):
            classes.append(ang)
    classes.sort(reverse=True)
    return classes


def interior_vertex_label_cycles(
    w: WindowedArrangement, tol: Tolerance = DEFAULT_TOL
) -> list[list[int]]:
    """Angle-label cycles around every strictly interior vertex, labels
    indexing :func:`region_angle_classes`."""
    classes = region_angle_classes(w, tol)
    out: list[list[int]] = []
    for fan in w.interior_vertex_angles:
        cycle: list[int] = []
        for ang in fan:
            for label, cls in enumerate(classes):
                if abs(ang - cls) <= tol.angle_eps:
                    cycle.append(label)
                    break
            else:
                raise LabelingError(
                    f"vertex angle {ang!r} matches no region angle class"
                )
        out.append(cycle)
    return out
