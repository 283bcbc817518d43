# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the quadratic-cost geometry kernels."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, atan2, fabs

cnp.import_array()


def reflected_diameter(const double[::1] x, const double[::1] z):
    """Max of |(x_i + x_j, z_i - z_j)| over all sample pairs."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t a, i, j, bi = 0, bj = 0
    cdef double xmax = x[0], zmin = z[0], zmax = z[0]
    cdef double best = -1.0, dx, dz, d2, ub, reach
    for i in range(n):
        if x[i] > xmax:
            xmax = x[i]
        if z[i] < zmin:
            zmin = z[i]
        if z[i] > zmax:
            zmax = z[i]
    ubs = np.empty(n)
    cdef double[::1] ubv = ubs
    for i in range(n):
        reach = z[i] - zmin
        if zmax - z[i] > reach:
            reach = zmax - z[i]
        ubv[i] = (x[i] + xmax) * (x[i] + xmax) + reach * reach
    cdef cnp.intp_t[::1] order = np.argsort(-ubs)
    for a in range(n):
        i = order[a]
        if ubv[i] <= best:
            break
        for j in range(n):
            dx = x[i] + x[j]
            dz = z[i] - z[j]
            d2 = dx * dx + dz * dz
            if d2 > best:
                best = d2
                bi = i
                bj = j
    return sqrt(best), bi, bj


def convex_margin(const double[::1] vx, const double[::1] vz, double cx, double cz,
                  const double[::1] px, const double[::1] pz):
    """Signed distance of each point to the boundary of a convex polygon.

    Vertices run counterclockwise around the interior point (cx, cz);
    positive values are inside.
    """
    cdef Py_ssize_t m = vx.shape[0], n = px.shape[0]
    cdef Py_ssize_t i, lo, hi, mid, k, k1, prev = 0
    cdef double ang, ex, ez, elen
    angles = np.empty(m)
    cdef double[::1] av = angles
    cdef double base = atan2(vz[0] - cz, vx[0] - cx)
    cdef double twopi = 6.283185307179586
    for i in range(m):
        ang = atan2(vz[i] - cz, vx[i] - cx) - base
        while ang < 0:
            ang += twopi
        while ang >= twopi:
            ang -= twopi
        av[i] = ang
    out = np.empty(n)
    cdef double[::1] ov = out
    for i in range(n):
        ang = atan2(pz[i] - cz, px[i] - cx) - base
        while ang < 0:
            ang += twopi
        while ang >= twopi:
            ang -= twopi
        # consecutive samples usually fall in the same or an adjacent wedge
        k = -1
        for mid in range(prev - 1, prev + 2):
            if 0 <= mid < m and av[mid] <= ang and (mid == m - 1 or ang < av[mid + 1]):
                k = mid
                break
        if k < 0:
            lo = 0
            hi = m
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if av[mid] <= ang:
                    lo = mid
                else:
                    hi = mid
            k = lo
        prev = k
        k1 = k + 1
        if k1 == m:
            k1 = 0
        ex = vx[k1] - vx[k]
        ez = vz[k1] - vz[k]
        elen = sqrt(ex * ex + ez * ez)
        if elen == 0:
            ov[i] = 0.0
        else:
            ov[i] = (ex * (pz[i] - vz[k]) - ez * (px[i] - vx[k])) / elen
    return out
