"""Named 3D mirror arrangements and curated negative controls.

The reflection arrangements (A1^3, the dihedral prisms I2(m)xA1, A3, B3,
and the icosahedral H3) give the test corpus its ground truth; the
non-examples each break one advertised property.  Expected values recorded
here are re-verified by the arrangement and sphere modules at test time,
never trusted blindly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .arrangement import Arrangement, make_arrangement
from .numeric import DEFAULT_TOL, GeometryError, Tolerance


@dataclass(frozen=True)
class Expected:
    is_coxeter: bool
    region_count: int | None = None
    angle_multiset: tuple[float, ...] | None = None


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    arrangement: Arrangement
    expected: Expected


_I2_RE = re.compile(r"^I2\((\d+)\)xA1$")

COXETER_NAMES = ("A1xA1xA1", "I2(m)xA1", "A3", "B3", "H3")
NON_EXAMPLE_NAMES = ("skew_pencil", "stretched_B3", "quad_faces")


def _a1_cubed() -> list[tuple[float, float, float]]:
    return [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)]


def _i2m_a1(m: int) -> list[tuple[float, float, float]]:
    out = []
    for j in range(m):
        t = j * math.pi / m
        out.append((math.cos(t), math.sin(t), 0.0))
    out.append((0.0, 0.0, 1.0))
    return out


def _a3() -> list[tuple[float, float, float]]:
    s = 1.0 / math.sqrt(2.0)
    return [
        (s, s, 0.0),
        (s, -s, 0.0),
        (s, 0.0, s),
        (s, 0.0, -s),
        (0.0, s, s),
        (0.0, s, -s),
    ]


def _b3() -> list[tuple[float, float, float]]:
    s = 1.0 / math.sqrt(2.0)
    out = _a1_cubed()
    for i in range(3):
        for j in range(i + 1, 3):
            for sign in (1.0, -1.0):
                v = [0.0, 0.0, 0.0]
                v[i] = s
                v[j] = sign * s
                out.append(tuple(v))
    return out


def _h3() -> list[tuple[float, float, float]]:
    """All 30 icosahedral roots; deduplication pairs them into 15 mirrors."""
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    inv = phi - 1.0  # 1/phi
    roots = list(_a1_cubed())
    for perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        for s0 in (1.0, -1.0):
            for s1 in (1.0, -1.0):
                for s2 in (1.0, -1.0):
                    v = [0.0, 0.0, 0.0]
                    v[perm[0]] = s0 * phi / 2.0
                    v[perm[1]] = s1 * 0.5
                    v[perm[2]] = s2 * inv / 2.0
                    roots.append(tuple(v))
    return roots


def coxeter_3d(name: str, tol: Tolerance = DEFAULT_TOL) -> CatalogEntry:
    """Standard essential 3D reflection arrangement by name: ``A1xA1xA1``,
    ``I2(m)xA1`` for m >= 2, ``A3``, ``B3``, or ``H3``."""
    if name == "A1xA1xA1":
        normals = _a1_cubed()
        expected = Expected(True, 8, (math.pi / 2, math.pi / 2, math.pi / 2))
    elif name == "A3":
        normals = _a3()
        expected = Expected(True, 24, (math.pi / 2, math.pi / 3, math.pi / 3))
    elif name == "B3":
        normals = _b3()
        expected = Expected(True, 48, (math.pi / 2, math.pi / 3, math.pi / 4))
    elif name == "H3":
        normals = _h3()
        expected = Expected(True, 120, (math.pi / 2, math.pi / 3, math.pi / 5))
    else:
        m = _I2_RE.match(name)
        if not m:
            raise GeometryError(f"unknown catalog name: {name!r}")
        k = int(m.group(1))
        if k < 2:
            raise GeometryError(f"I2(m)xA1 needs m >= 2, got m={k}")
        normals = _i2m_a1(k)
        expected = Expected(True, 4 * k, (math.pi / 2, math.pi / 2, math.pi / k))
    return CatalogEntry(name, make_arrangement(3, normals, tol), expected)


def non_examples(name: str, tol: Tolerance = DEFAULT_TOL) -> CatalogEntry:
    """Negative controls:

    - ``skew_pencil``: a 3-plane pencil at angles 0, pi/4, pi/2 plus the
      orthogonal plane; its unequal pencil gaps fail both mirror tests.
    - ``stretched_B3``: B3 with x-coordinates scaled by 1.1 and renormalized;
      anisotropic scaling kills isometry and mirror closure.
    - ``quad_faces``: four planes in general position (no two share a
      pencil with a third), whose complex contains quadrilateral faces.
    """
    s = 1.0 / math.sqrt(2.0)
    if name == "skew_pencil":
        normals = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (s, s, 0.0), (0.0, 0.0, 1.0)]
        expected = Expected(False, 12, None)
    elif name == "stretched_B3":
        normals = []
        for x, y, z in _b3():
            v = (1.1 * x, y, z)
            n = math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
            normals.append((v[0] / n, v[1] / n, v[2] / n))
        expected = Expected(False, 48, None)
    elif name == "quad_faces":
        t = 1.0 / math.sqrt(3.0)
        normals = [
            (1.0, 0.0, 0.0),
            (0.0, 1.0, 0.0),
            (0.0, 0.0, 1.0),
            (t, t, t),
        ]
        expected = Expected(False, 14, None)
    else:
        raise GeometryError(f"unknown non-example name: {name!r}")
    return CatalogEntry(name, make_arrangement(3, normals, tol), expected)


def entry_by_name(name: str, tol: Tolerance = DEFAULT_TOL) -> CatalogEntry:
    """Look up either a reflection arrangement or a non-example."""
    if name in NON_EXAMPLE_NAMES:
        return non_examples(name, tol)
    return coxeter_3d(name, tol)


def known_names() -> list[str]:
    """Stable identifiers accepted by :func:`entry_by_name` (with I2(m)xA1
    standing for the whole parametric family)."""
    return list(COXETER_NAMES) + list(NON_EXAMPLE_NAMES)
