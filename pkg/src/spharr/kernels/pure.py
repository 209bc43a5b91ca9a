"""Hot geometry kernels, pure-Python reference implementation.

Two entry points live here: :func:`build_sphere_tables`, the great-circle
cell-complex builder, and :func:`region_sign_vectors`, the chamber
enumerator used by the higher-dimensional hunt.  ``spharr.kernels._speed``
is a Cython translation with identical arithmetic (same operations in the
same order, libm throughout); any change here must be mirrored there.
"""

from math import atan2, fabs, sqrt

TWO_PI = 6.283185307179586476925287


def _plane_basis(n):
    """Orthonormal (e1, e2) spanning the plane orthogonal to unit vector n,
    with e2 = n x e1 (so increasing angle runs counterclockwise around n)."""
    ax = 0
    if fabs(n[1]) < fabs(n[0]):
        ax = 1
    if fabs(n[2]) < fabs(n[ax]):
        ax = 2
    a = [0.0, 0.0, 0.0]
    a[ax] = 1.0
    e1x = n[1] * a[2] - n[2] * a[1]
    e1y = n[2] * a[0] - n[0] * a[2]
    e1z = n[0] * a[1] - n[1] * a[0]
    s = sqrt(e1x * e1x + e1y * e1y + e1z * e1z)
    e1x /= s
    e1y /= s
    e1z /= s
    e2x = n[1] * e1z - n[2] * e1y
    e2y = n[2] * e1x - n[0] * e1z
    e2z = n[0] * e1y - n[1] * e1x
    return (e1x, e1y, e1z), (e2x, e2y, e2z)


def build_sphere_tables(normals, abs_eps, angle_eps):
    """Combinatorial and metric tables of the great-circle complex.

    ``normals`` is a list of unit 3-tuples, pairwise non-parallel as lines.
    Vertices are the pairwise circle intersections (antipodes kept), arcs the
    circle segments between consecutive vertices, faces recovered by walking
    directed arcs with the region kept on the left.

    Returns a dict of parallel tables:

    - ``vertices``: list of unit (x, y, z)
    - ``vertex_circles``: circles through each vertex
    - ``arcs``: (circle, tail, head, length), head counterclockwise of tail
    - ``circle_arcs``: arc ids per circle in angular order
    - ``face_vertices`` / ``face_angles`` / ``face_edges`` / ``face_arcs``:
      per face and boundary position: corner vertex, interior angle, length
      and arc id of the edge leading to the next corner
    - ``vertex_cycles``: per vertex, counterclockwise (arc, face, angle)
    """
    n = len(normals)
    if n < 2:
        raise ValueError("need at least two circles")

    # Vertices: deduplicated +/- cross products of all normal pairs.
    verts = []
    for i in range(n):
        ni = normals[i]
        for j in range(i + 1, n):
            nj = normals[j]
            cx = ni[1] * nj[2] - ni[2] * nj[1]
            cy = ni[2] * nj[0] - ni[0] * nj[2]
            cz = ni[0] * nj[1] - ni[1] * nj[0]
            cn = sqrt(cx * cx + cy * cy + cz * cz)
            if cn <= abs_eps:
                continue
            vx = cx / cn
            vy = cy / cn
            vz = cz / cn
            for sgn in (1.0, -1.0):
                wx = vx * sgn
                wy = vy * sgn
                wz = vz * sgn
                dup = False
                for u in verts:
                    d = u[0] * wx + u[1] * wy + u[2] * wz
                    rx = u[1] * wz - u[2] * wy
                    ry = u[2] * wx - u[0] * wz
                    rz = u[0] * wy - u[1] * wx
                    if atan2(sqrt(rx * rx + ry * ry + rz * rz), d) <= angle_eps:
                        dup = True
                        break
                if not dup:
                    verts.append((wx, wy, wz))
    nv = len(verts)

    vertex_circles = []
    for v in verts:
        on = []
        for i in range(n):
            ni = normals[i]
            if fabs(v[0] * ni[0] + v[1] * ni[1] + v[2] * ni[2]) <= abs_eps:
                on.append(i)
        vertex_circles.append(on)

    # Arcs: per circle, vertices sorted by angular parameter; consecutive
    # pairs bound one arc each.  Dart 2*a is tail->head (counterclockwise
    # around the circle normal), dart 2*a + 1 the reverse.
    arcs = []
    circle_arcs = []
    for c in range(n):
        nc = normals[c]
        e1, e2 = _plane_basis(nc)
        keyed = []
        for v in range(nv):
            if c in vertex_circles[v]:
                p = verts[v]
                th = atan2(
                    p[0] * e2[0] + p[1] * e2[1] + p[2] * e2[2],
                    p[0] * e1[0] + p[1] * e1[1] + p[2] * e1[2],
                )
                keyed.append((th, v))
        if len(keyed) < 2:
            raise ValueError(f"circle {c} carries fewer than two vertices")
        keyed.sort()
        ids = []
        m = len(keyed)
        for k in range(m):
            th_u, u = keyed[k]
            th_w, w = keyed[(k + 1) % m]
            length = th_w - th_u
            if length <= 0.0:
                length += TWO_PI
            ids.append(len(arcs))
            arcs.append((c, u, w, length))
        circle_arcs.append(ids)
    na = len(arcs)

    # Outgoing darts per vertex, sorted counterclockwise by tangent angle in
    # the local frame (f1, f2 = v x f1).
    out_psis = [[] for _ in range(nv)]
    psi_of = [0.0] * (2 * na)
    frames = []
    for v in range(nv):
        p = verts[v]
        f1, f2 = _plane_basis(p)
        frames.append((f1, f2))
    for a in range(na):
        c, u, w, _length = arcs[a]
        nc = normals[c]
        for dart, tail, sgn in ((2 * a, u, 1.0), (2 * a + 1, w, -1.0)):
            p = verts[tail]
            tx = (nc[1] * p[2] - nc[2] * p[1]) * sgn
            ty = (nc[2] * p[0] - nc[0] * p[2]) * sgn
            tz = (nc[0] * p[1] - nc[1] * p[0]) * sgn
            f1, f2 = frames[tail]
            psi = atan2(
                tx * f2[0] + ty * f2[1] + tz * f2[2],
                tx * f1[0] + ty * f1[1] + tz * f1[2],
            )
            psi_of[dart] = psi
            out_psis[tail].append((psi, dart))

    dart_slot = [0] * (2 * na)
    out_order = []
    for v in range(nv):
        lst = out_psis[v]
        lst.sort()
        order = [dart for _psi, dart in lst]
        for idx, dart in enumerate(order):
            dart_slot[dart] = idx
        out_order.append(order)

    # Face walk: the successor of a dart is the counterclockwise predecessor
    # of its twin among the darts leaving the head vertex (sharpest available
    # turn that keeps the region on the left).
    dart_head = [0] * (2 * na)
    for a in range(na):
        dart_head[2 * a] = arcs[a][2]
        dart_head[2 * a + 1] = arcs[a][1]
    next_dart = [0] * (2 * na)
    for dart in range(2 * na):
        twin = dart ^ 1
        head = dart_head[dart]
        order = out_order[head]
        next_dart[dart] = order[dart_slot[twin] - 1]

    dart_face = [-1] * (2 * na)
    face_darts = []
    for start in range(2 * na):
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

    face_vertices = []
    face_angles = []
    face_edges = []
    face_arcs = []
    for cycle in face_darts:
        k = len(cycle)
        vs = []
        angs = []
        lens = []
        aids = []
        for i in range(k):
            d = cycle[i]
            d_next = cycle[(i + 1) % k]
            vs.append(dart_head[d])
            ang = psi_of[d ^ 1] - psi_of[d_next]
            if ang <= 0.0:
                ang += TWO_PI
            angs.append(ang)
            lens.append(arcs[d_next >> 1][3])
            aids.append(d_next >> 1)
        face_vertices.append(vs)
        face_angles.append(angs)
        face_edges.append(lens)
        face_arcs.append(aids)

    vertex_cycles = []
    for v in range(nv):
        order = out_order[v]
        psis = [psi_of[d] for d in order]
        m = len(order)
        entries = []
        for j in range(m):
            ang = psis[(j + 1) % m] - psis[j]
            if ang <= 0.0:
                ang += TWO_PI
            entries.append((order[j] >> 1, dart_face[order[j]], ang))
        vertex_cycles.append(entries)

    return {
        "vertices": verts,
        "vertex_circles": vertex_circles,
        "arcs": arcs,
        "circle_arcs": circle_arcs,
        "face_vertices": face_vertices,
        "face_angles": face_angles,
        "face_edges": face_edges,
        "face_arcs": face_arcs,
        "vertex_cycles": vertex_cycles,
    }


def _solve_dual(rows, d):
    """Invert the d x d matrix given as a flat row-major list via Gauss-Jordan.
    Returns the inverse as flat row-major list, or None if a pivot falls
    below 1e-12."""
    a = list(rows)
    inv = [0.0] * (d * d)
    for i in range(d):
        inv[i * d + i] = 1.0
    for col in range(d):
        piv = col
        best = fabs(a[col * d + col])
        for r in range(col + 1, d):
            cand = fabs(a[r * d + col])
            if cand > best:
                best = cand
                piv = r
        if best <= 1e-12:
            return None
        if piv != col:
            for k in range(d):
                a[piv * d + k], a[col * d + k] = a[col * d + k], a[piv * d + k]
                inv[piv * d + k], inv[col * d + k] = inv[col * d + k], inv[piv * d + k]
        p = a[col * d + col]
        for k in range(d):
            a[col * d + k] /= p
            inv[col * d + k] /= p
        for r in range(d):
            if r == col:
                continue
            f = a[r * d + col]
            if f != 0.0:
                for k in range(d):
                    a[r * d + k] -= f * a[col * d + k]
                    inv[r * d + k] -= f * inv[col * d + k]
    return inv


def region_sign_vectors(normals, d, delta):
    """Sign bitmasks of the chambers, by perturbing points around the
    intersection rays of (d-1)-subsets of hyperplanes.

    ``normals`` is a list of unit d-vectors (any sequence of floats).  Around
    each ray the 2^(d-1) side-combinations of the defining hyperplanes are
    realized via the dual basis, so the enumeration is exact whenever every
    ray lies on exactly d-1 hyperplanes (the generic case) and ``delta`` is
    small against the angular gaps.  Near-degenerate inputs may be
    undercounted; points landing within 1e-12 of a hyperplane are dropped.
    Chambers come in antipodal pairs, so each mask is recorded together with
    its complement.  Returns the sorted list of masks (bit k set when the
    chamber point has positive dot with normal k).
    """
    n = len(normals)
    if n < d or d < 2:
        raise ValueError("need at least d normals in dimension d >= 2")
    if n > 62:
        raise ValueError("sign-vector masks support at most 62 hyperplanes")
    full = (1 << n) - 1
    found = set()

    # lexicographic (d-1)-subsets of range(n)
    idx = list(range(d - 1))
    while True:
        # null direction of the subset: Gauss-Jordan on the (d-1) x d system
        a = []
        for i in idx:
            row = normals[i]
            for k in range(d):
                a.append(float(row[k]))
        nr = d - 1
        piv_cols = []
        r = 0
        for col in range(d):
            if r >= nr:
                break
            piv = r
            best = fabs(a[r * d + col])
            for rr in range(r + 1, nr):
                cand = fabs(a[rr * d + col])
                if cand > best:
                    best = cand
                    piv = rr
            if best <= 1e-12:
                continue
            if piv != r:
                for k in range(d):
                    a[piv * d + k], a[r * d + k] = a[r * d + k], a[piv * d + k]
            p = a[r * d + col]
            for k in range(d):
                a[r * d + k] /= p
            for rr in range(nr):
                if rr == r:
                    continue
                f = a[rr * d + col]
                if f != 0.0:
                    for k in range(d):
                        a[rr * d + k] -= f * a[r * d + k]
            piv_cols.append(col)
            r += 1
        if r == nr:
            free_col = 0
            for col in range(d):
                if col not in piv_cols:
                    free_col = col
                    break
            u = [0.0] * d
            u[free_col] = 1.0
            for rr in range(nr):
                u[piv_cols[rr]] = -a[rr * d + free_col]
            s = 0.0
            for k in range(d):
                s += u[k] * u[k]
            s = sqrt(s)
            for k in range(d):
                u[k] /= s

            # dual basis in the hyperplane orthogonal to u
            rows = []
            for i in idx:
                row = normals[i]
                for k in range(d):
                    rows.append(float(row[k]))
            for k in range(d):
                rows.append(u[k])
            inv = _solve_dual(rows, d)
            if inv is not None:
                # column i of the inverse satisfies m_i . n_j = delta_ij, m_i . u = 0
                for sigma in range(1 << (d - 1)):
                    p = list(u)
                    for i in range(d - 1):
                        s = delta if (sigma >> i) & 1 else -delta
                        for k in range(d):
                            p[k] += s * inv[k * d + i]
                    mask = 0
                    ok = True
                    for k in range(n):
                        row = normals[k]
                        dot = 0.0
                        for t in range(d):
                            dot += p[t] * float(row[t])
                        if fabs(dot) <= 1e-12:
                            ok = False
                            break
                        if dot > 0.0:
                            mask |= 1 << k
                    if ok:
                        found.add(mask)
                        found.add(mask ^ full)

        # advance subset
        pos = d - 2
        while pos >= 0 and idx[pos] == n - (d - 1 - pos):
            pos -= 1
        if pos < 0:
            break
        idx[pos] += 1
        for t in range(pos + 1, d - 1):
            idx[t] = idx[t - 1] + 1

    return sorted(found)
