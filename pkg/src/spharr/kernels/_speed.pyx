# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Cython twin of spharr.kernels.pure.

Same algorithms, same arithmetic order, libm throughout; the build compiles
with -ffp-contract=off so results match the pure backend bit for bit.  Any
change to spharr/kernels/pure.py must be mirrored here.
"""

from libc.math cimport atan2, fabs, sqrt
from libc.stdlib cimport free, malloc

cdef double TWO_PI = 6.283185307179586476925287


cdef void _plane_basis(double nx, double ny, double nz,
                       double* e1, double* e2) noexcept:
    cdef int ax = 0
    cdef double ax0 = fabs(nx), ax1 = fabs(ny), ax2 = fabs(nz)
    cdef double a0 = 0.0, a1 = 0.0, a2 = 0.0, s
    if ax1 < ax0:
        ax = 1
    if ax == 0:
        if ax2 < ax0:
            ax = 2
    else:
        if ax2 < ax1:
            ax = 2
    if ax == 0:
        a0 = 1.0
    elif ax == 1:
        a1 = 1.0
    else:
        a2 = 1.0
    e1[0] = ny * a2 - nz * a1
    e1[1] = nz * a0 - nx * a2
    e1[2] = nx * a1 - ny * a0
    s = sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2])
    e1[0] /= s
    e1[1] /= s
    e1[2] /= s
    e2[0] = ny * e1[2] - nz * e1[1]
    e2[1] = nz * e1[0] - nx * e1[2]
    e2[2] = nx * e1[1] - ny * e1[0]


def build_sphere_tables(normals, double abs_eps, double angle_eps):
    """See spharr.kernels.pure.build_sphere_tables."""
    cdef int n = len(normals)
    if n < 2:
        raise ValueError("need at least two circles")

    cdef double* nrm = NULL
    cdef double* vb = NULL
    cdef char* inc = NULL
    cdef int* arc_c = NULL
    cdef int* arc_u = NULL
    cdef int* arc_w = NULL
    cdef double* arc_len = NULL
    cdef double* psi_of = NULL
    cdef int* dart_slot = NULL
    cdef int* dart_head = NULL
    cdef int* out_flat = NULL
    cdef int* out_start = NULL
    cdef int* next_dart = NULL
    cdef int* dart_face = NULL

    cdef int i, j, k, c, v, nv, cap, na, m, a, dart, twin, head, slot, deg
    cdef int sgn_i, dup, pos, f, d, d_next, total_inc, start
    cdef double cx, cy, cz, cn, vx, vy, vz, wx, wy, wz, dd, rx, ry, rz
    cdef double th, th_u, th_w, length, psi, tx, ty, tz, sgn, ang
    cdef double e1[3]
    cdef double e2[3]
    cdef double px, py, pz

    try:
        nrm = <double*> malloc(3 * n * sizeof(double))
        if nrm == NULL:
            raise MemoryError()
        for i in range(n):
            row = normals[i]
            nrm[3 * i] = row[0]
            nrm[3 * i + 1] = row[1]
            nrm[3 * i + 2] = row[2]

        # Vertices: deduplicated +/- cross products of all normal pairs.
        cap = n * (n - 1)
        vb = <double*> malloc(3 * cap * sizeof(double))
        if vb == NULL:
            raise MemoryError()
        nv = 0
        for i in range(n):
            for j in range(i + 1, n):
                cx = nrm[3 * i + 1] * nrm[3 * j + 2] - nrm[3 * i + 2] * nrm[3 * j + 1]
                cy = nrm[3 * i + 2] * nrm[3 * j] - nrm[3 * i] * nrm[3 * j + 2]
                cz = nrm[3 * i] * nrm[3 * j + 1] - nrm[3 * i + 1] * nrm[3 * j]
                cn = sqrt(cx * cx + cy * cy + cz * cz)
                if cn <= abs_eps:
                    continue
                vx = cx / cn
                vy = cy / cn
                vz = cz / cn
                for sgn_i in range(2):
                    if sgn_i == 0:
                        wx = vx
                        wy = vy
                        wz = vz
                    else:
                        wx = -vx
                        wy = -vy
                        wz = -vz
                    dup = 0
                    for k in range(nv):
                        dd = vb[3 * k] * wx + vb[3 * k + 1] * wy + vb[3 * k + 2] * wz
                        rx = vb[3 * k + 1] * wz - vb[3 * k + 2] * wy
                        ry = vb[3 * k + 2] * wx - vb[3 * k] * wz
                        rz = vb[3 * k] * wy - vb[3 * k + 1] * wx
                        if atan2(sqrt(rx * rx + ry * ry + rz * rz), dd) <= angle_eps:
                            dup = 1
                            break
                    if not dup:
                        vb[3 * nv] = wx
                        vb[3 * nv + 1] = wy
                        vb[3 * nv + 2] = wz
                        nv += 1

        verts = []
        for v in range(nv):
            verts.append((vb[3 * v], vb[3 * v + 1], vb[3 * v + 2]))

        inc = <char*> malloc(nv * n * sizeof(char))
        if inc == NULL:
            raise MemoryError()
        vertex_circles = []
        total_inc = 0
        for v in range(nv):
            on = []
            for i in range(n):
                if fabs(vb[3 * v] * nrm[3 * i] + vb[3 * v + 1] * nrm[3 * i + 1]
                        + vb[3 * v + 2] * nrm[3 * i + 2]) <= abs_eps:
                    inc[v * n + i] = 1
                    on.append(i)
                    total_inc += 1
                else:
                    inc[v * n + i] = 0
            vertex_circles.append(on)

        # Arcs: per circle, vertices sorted by angular parameter.
        arc_c = <int*> malloc(total_inc * sizeof(int))
        arc_u = <int*> malloc(total_inc * sizeof(int))
        arc_w = <int*> malloc(total_inc * sizeof(int))
        arc_len = <double*> malloc(total_inc * sizeof(double))
        if arc_c == NULL or arc_u == NULL or arc_w == NULL or arc_len == NULL:
            raise MemoryError()
        arcs = []
        circle_arcs = []
        na = 0
        for c in range(n):
            _plane_basis(nrm[3 * c], nrm[3 * c + 1], nrm[3 * c + 2], e1, e2)
            keyed = []
            for v in range(nv):
                if inc[v * n + c]:
                    px = vb[3 * v]
                    py = vb[3 * v + 1]
                    pz = vb[3 * v + 2]
                    th = atan2(px * e2[0] + py * e2[1] + pz * e2[2],
                               px * e1[0] + py * e1[1] + pz * e1[2])
                    keyed.append((th, v))
            if len(keyed) < 2:
                raise ValueError(f"circle {c} carries fewer than two vertices")
            keyed.sort()
            ids = []
            m = len(keyed)
            for k in range(m):
                th_u = keyed[k][0]
                i = keyed[k][1]
                th_w = keyed[(k + 1) % m][0]
                j = keyed[(k + 1) % m][1]
                length = th_w - th_u
                if length <= 0.0:
                    length += TWO_PI
                ids.append(na)
                arc_c[na] = c
                arc_u[na] = i
                arc_w[na] = j
                arc_len[na] = length
                arcs.append((c, i, j, length))
                na += 1
            circle_arcs.append(ids)

        # Outgoing darts per vertex, sorted counterclockwise.
        psi_of = <double*> malloc(2 * na * sizeof(double))
        dart_slot = <int*> malloc(2 * na * sizeof(int))
        dart_head = <int*> malloc(2 * na * sizeof(int))
        out_flat = <int*> malloc(2 * na * sizeof(int))
        out_start = <int*> malloc((nv + 1) * sizeof(int))
        next_dart = <int*> malloc(2 * na * sizeof(int))
        dart_face = <int*> malloc(2 * na * sizeof(int))
        if (psi_of == NULL or dart_slot == NULL or dart_head == NULL
                or out_flat == NULL or out_start == NULL or next_dart == NULL
                or dart_face == NULL):
            raise MemoryError()

        out_psis = [[] for _ in range(nv)]
        for a in range(na):
            c = arc_c[a]
            for sgn_i in range(2):
                if sgn_i == 0:
                    dart = 2 * a
                    v = arc_u[a]
                    sgn = 1.0
                else:
                    dart = 2 * a + 1
                    v = arc_w[a]
                    sgn = -1.0
                px = vb[3 * v]
                py = vb[3 * v + 1]
                pz = vb[3 * v + 2]
                tx = (nrm[3 * c + 1] * pz - nrm[3 * c + 2] * py) * sgn
                ty = (nrm[3 * c + 2] * px - nrm[3 * c] * pz) * sgn
                tz = (nrm[3 * c] * py - nrm[3 * c + 1] * px) * sgn
                _plane_basis(px, py, pz, e1, e2)
                psi = atan2(tx * e2[0] + ty * e2[1] + tz * e2[2],
                            tx * e1[0] + ty * e1[1] + tz * e1[2])
                psi_of[dart] = psi
                out_psis[v].append((psi, dart))

        pos = 0
        for v in range(nv):
            lst = out_psis[v]
            lst.sort()
            out_start[v] = pos
            for item in lst:
                dart = item[1]
                dart_slot[dart] = pos - out_start[v]
                out_flat[pos] = dart
                pos += 1
        out_start[nv] = pos

        for a in range(na):
            dart_head[2 * a] = arc_w[a]
            dart_head[2 * a + 1] = arc_u[a]
        for dart in range(2 * na):
            twin = dart ^ 1
            head = dart_head[dart]
            deg = out_start[head + 1] - out_start[head]
            slot = dart_slot[twin] - 1
            if slot < 0:
                slot = deg - 1
            next_dart[dart] = out_flat[out_start[head] + slot]

        # Face walk.
        for dart in range(2 * na):
            dart_face[dart] = -1
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
            m = len(cycle)
            vs = []
            angs = []
            lens = []
            aids = []
            for k in range(m):
                d = cycle[k]
                d_next = cycle[(k + 1) % m]
                vs.append(dart_head[d])
                ang = psi_of[d ^ 1] - psi_of[d_next]
                if ang <= 0.0:
                    ang += TWO_PI
                angs.append(ang)
                lens.append(arc_len[d_next >> 1])
                aids.append(d_next >> 1)
            face_vertices.append(vs)
            face_angles.append(angs)
            face_edges.append(lens)
            face_arcs.append(aids)

        vertex_cycles = []
        for v in range(nv):
            start = out_start[v]
            m = out_start[v + 1] - start
            entries = []
            for j in range(m):
                k = j + 1
                if k == m:
                    k = 0
                ang = psi_of[out_flat[start + k]] - psi_of[out_flat[start + j]]
                if ang <= 0.0:
                    ang += TWO_PI
                dart = out_flat[start + j]
                entries.append((dart >> 1, dart_face[dart], ang))
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
    finally:
        free(nrm)
        free(vb)
        free(inc)
        free(arc_c)
        free(arc_u)
        free(arc_w)
        free(arc_len)
        free(psi_of)
        free(dart_slot)
        free(dart_head)
        free(out_flat)
        free(out_start)
        free(next_dart)
        free(dart_face)


cdef int _solve_dual_c(double* a, double* inv, int d) noexcept:
    """Gauss-Jordan inverse of the d x d row-major matrix a (destroyed).
    Returns 0 on success, -1 when a pivot falls below 1e-12."""
    cdef int i, col, r, k, piv
    cdef double best, cand, p, f, tmp
    for i in range(d * d):
        inv[i] = 0.0
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
            return -1
        if piv != col:
            for k in range(d):
                tmp = a[piv * d + k]
                a[piv * d + k] = a[col * d + k]
                a[col * d + k] = tmp
                tmp = inv[piv * d + k]
                inv[piv * d + k] = inv[col * d + k]
                inv[col * d + k] = tmp
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
    return 0


def region_sign_vectors(normals, int d, double delta):
    """See spharr.kernels.pure.region_sign_vectors."""
    cdef int n = len(normals)
    if n < d or d < 2:
        raise ValueError("need at least d normals in dimension d >= 2")
    if n > 62:
        raise ValueError("sign-vector masks support at most 62 hyperplanes")

    cdef double* nrm = NULL
    cdef double* a = NULL
    cdef double* rows = NULL
    cdef double* inv = NULL
    cdef double* u = NULL
    cdef double* pt = NULL
    cdef int* idx = NULL
    cdef int* piv_cols = NULL
    cdef int* is_piv = NULL

    cdef int i, j, k, t, col, r, rr, piv, nr, free_col, pos, sigma, ok
    cdef double best, cand, p, f, s, dot
    cdef unsigned long long mask, full

    full = (<unsigned long long> 1 << n) - 1
    found = set()
    nr = d - 1

    try:
        nrm = <double*> malloc(n * d * sizeof(double))
        a = <double*> malloc(nr * d * sizeof(double))
        rows = <double*> malloc(d * d * sizeof(double))
        inv = <double*> malloc(d * d * sizeof(double))
        u = <double*> malloc(d * sizeof(double))
        pt = <double*> malloc(d * sizeof(double))
        idx = <int*> malloc(nr * sizeof(int))
        piv_cols = <int*> malloc(nr * sizeof(int))
        is_piv = <int*> malloc(d * sizeof(int))
        if (nrm == NULL or a == NULL or rows == NULL or inv == NULL
                or u == NULL or pt == NULL or idx == NULL or piv_cols == NULL
                or is_piv == NULL):
            raise MemoryError()
        for i in range(n):
            row = normals[i]
            for k in range(d):
                nrm[i * d + k] = float(row[k])
        for i in range(nr):
            idx[i] = i

        while True:
            for i in range(nr):
                for k in range(d):
                    a[i * d + k] = nrm[idx[i] * d + k]
            r = 0
            for col in range(d):
                is_piv[col] = 0
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
                        s = a[piv * d + k]
                        a[piv * d + k] = a[r * d + k]
                        a[r * d + k] = s
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
                piv_cols[r] = col
                is_piv[col] = 1
                r += 1
            if r == nr:
                free_col = 0
                for col in range(d):
                    if not is_piv[col]:
                        free_col = col
                        break
                for k in range(d):
                    u[k] = 0.0
                u[free_col] = 1.0
                for rr in range(nr):
                    u[piv_cols[rr]] = -a[rr * d + free_col]
                s = 0.0
                for k in range(d):
                    s += u[k] * u[k]
                s = sqrt(s)
                for k in range(d):
                    u[k] /= s

                for i in range(nr):
                    for k in range(d):
                        rows[i * d + k] = nrm[idx[i] * d + k]
                for k in range(d):
                    rows[nr * d + k] = u[k]
                if _solve_dual_c(rows, inv, d) == 0:
                    for sigma in range(1 << nr):
                        for k in range(d):
                            pt[k] = u[k]
                        for i in range(nr):
                            if (sigma >> i) & 1:
                                s = delta
                            else:
                                s = -delta
                            for k in range(d):
                                pt[k] += s * inv[k * d + i]
                        mask = 0
                        ok = 1
                        for k in range(n):
                            dot = 0.0
                            for t in range(d):
                                dot += pt[t] * nrm[k * d + t]
                            if fabs(dot) <= 1e-12:
                                ok = 0
                                break
                            if dot > 0.0:
                                mask |= <unsigned long long> 1 << k
                        if ok:
                            found.add(mask)
                            found.add(mask ^ full)

            pos = nr - 1
            while pos >= 0 and idx[pos] == n - (nr - pos):
                pos -= 1
            if pos < 0:
                break
            idx[pos] += 1
            for t in range(pos + 1, nr):
                idx[t] = idx[t - 1] + 1

        return sorted(found)
    finally:
        free(nrm)
        free(a)
        free(rows)
        free(inv)
        free(u)
        free(pt)
        free(idx)
        free(piv_cols)
        free(is_piv)
