"""Pure numpy versions of the compiled kernels (same signatures)."""

import math

import numpy as np

_CHUNK = 256


def reflected_diameter(x, z):
    """Max of |(x_i + x_j, z_i - z_j)| over all sample pairs."""
    x = np.ascontiguousarray(x, dtype=float)
    z = np.ascontiguousarray(z, dtype=float)
    reach = np.maximum(z - z.min(), z.max() - z)
    ub = (x + x.max()) ** 2 + reach ** 2
    order = np.argsort(-ub)
    best, bi, bj = -1.0, 0, 0
    for start in range(0, order.size, _CHUNK):
        idx = order[start:start + _CHUNK]
        if ub[idx[0]] <= best:
            break
        d2 = (x[idx, None] + x[None, :]) ** 2 + (z[idx, None] - z[None, :]) ** 2
        k = int(np.argmax(d2))
        if d2.flat[k] > best:
            best = float(d2.flat[k])
            bi, bj = int(idx[k // x.size]), int(k % x.size)
    return math.sqrt(best), bi, bj


def convex_margin(vx, vz, cx, cz, px, pz):
    """Signed distance of each point to the edge of its angular wedge.

    Vertices run counterclockwise around the interior point (cx, cz);
    positive values are inside.
    """
    vx = np.asarray(vx, dtype=float)
    vz = np.asarray(vz, dtype=float)
    px = np.asarray(px, dtype=float)
    pz = np.asarray(pz, dtype=float)
    base = math.atan2(vz[0] - cz, vx[0] - cx)
    av = np.mod(np.arctan2(vz - cz, vx - cx) - base, 2 * math.pi)
    pa = np.mod(np.arctan2(pz - cz, px - cx) - base, 2 * math.pi)
    k = np.clip(np.searchsorted(av, pa, side="right") - 1, 0, vx.size - 1)
    k1 = (k + 1) % vx.size
    ex = vx[k1] - vx[k]
    ez = vz[k1] - vz[k]
    elen = np.hypot(ex, ez)
    cross = ex * (pz - vz[k]) - ez * (px - vx[k])
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(elen > 0, cross / elen, 0.0)
