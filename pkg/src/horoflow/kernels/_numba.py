"""Numba-compiled loop implementations of the hot per-node kernels.

Same contracts as kernels._numpy; the loop formulation avoids temporary
arrays and is the default backend for flow runs.
"""

import numpy as np
from numba import njit

_STRAIGHT_TOL = 1e-13


@njit(cache=True)
def _node_frame(xm, x, xp, out_nu, out):
    """Circumcircle frame at one node; writes nu and (kappa, arc_prev, arc_next)."""
    c1x = x[0] - xm[0]
    c1y = x[1] - xm[1]
    c1z = x[2] - xm[2]
    c2x = xp[0] - x[0]
    c2y = xp[1] - x[1]
    c2z = xp[2] - x[2]

    mx = c1y * c2z - c1z * c2y
    my = c1z * c2x - c1x * c2z
    mz = c1x * c2y - c1y * c2x
    mn = np.sqrt(mx * mx + my * my + mz * mz)
    n1 = np.sqrt(c1x * c1x + c1y * c1y + c1z * c1z)
    n2 = np.sqrt(c2x * c2x + c2y * c2y + c2z * c2z)
    straight = mn <= _STRAIGHT_TOL * max(n1 * n2, 1e-300)

    # projected central-difference tangent
    tx = xp[0] - xm[0]
    ty = xp[1] - xm[1]
    tz = xp[2] - xm[2]
    dot = tx * x[0] + ty * x[1] + tz * x[2]
    tx -= dot * x[0]
    ty -= dot * x[1]
    tz -= dot * x[2]
    tn = np.sqrt(tx * tx + ty * ty + tz * tz)
    tx /= tn
    ty /= tn
    tz /= tn
    nux = ty * x[2] - tz * x[1]
    nuy = tz * x[0] - tx * x[2]
    nuz = tx * x[1] - ty * x[0]
    nn = np.sqrt(nux * nux + nuy * nuy + nuz * nuz)
    nux /= nn
    nuy /= nn
    nuz /= nn
    out_nu[0] = nux
    out_nu[1] = nuy
    out_nu[2] = nuz

    if straight:
        out[0] = 0.0
        # great-circle arcs
        cpx = xm[1] * x[2] - xm[2] * x[1]
        cpy = xm[2] * x[0] - xm[0] * x[2]
        cpz = xm[0] * x[1] - xm[1] * x[0]
        out[1] = np.arctan2(
            np.sqrt(cpx * cpx + cpy * cpy + cpz * cpz),
            xm[0] * x[0] + xm[1] * x[1] + xm[2] * x[2],
        )
        cpx = x[1] * xp[2] - x[2] * xp[1]
        cpy = x[2] * xp[0] - x[0] * xp[2]
        cpz = x[0] * xp[1] - x[1] * xp[0]
        out[2] = np.arctan2(
            np.sqrt(cpx * cpx + cpy * cpy + cpz * cpz),
            x[0] * xp[0] + x[1] * xp[1] + x[2] * xp[2],
        )
        return

    mx /= mn
    my /= mn
    mz /= mn
    d = mx * x[0] + my * x[1] + mz * x[2]
    s2 = 1.0 - d * d
    if s2 < 1e-30:
        s2 = 1e-30
    s = np.sqrt(s2)
    mdotnu = mx * nux + my * nuy + mz * nuz
    sign = -1.0 if mdotnu > 0.0 else 1.0
    out[0] = sign * d / s

    # arc lengths about the circumcircle axis
    for which in range(2):
        if which == 0:
            p = xm
            q = x
        else:
            p = x
            q = xp
        pd = mx * p[0] + my * p[1] + mz * p[2]
        qd = mx * q[0] + my * q[1] + mz * q[2]
        ppx = p[0] - pd * mx
        ppy = p[1] - pd * my
        ppz = p[2] - pd * mz
        qqx = q[0] - qd * mx
        qqy = q[1] - qd * my
        qqz = q[2] - qd * mz
        crx = ppy * qqz - ppz * qqy
        cry = ppz * qqx - ppx * qqz
        crz = ppx * qqy - ppy * qqx
        cr = np.sqrt(crx * crx + cry * cry + crz * crz)
        dt = ppx * qqx + ppy * qqy + ppz * qqz
        out[1 + which] = s * np.arctan2(cr, dt)


@njit(cache=True)
def closed_frame(X):
    N = X.shape[0]
    cells = np.empty(N)
    nu = np.empty((N, 3))
    kappa = np.empty(N)
    buf = np.empty(3)
    for j in range(N):
        jm = j - 1 if j > 0 else N - 1
        jp = j + 1 if j < N - 1 else 0
        _node_frame(X[jm], X[j], X[jp], nu[j], buf)
        kappa[j] = buf[0]
        cells[j] = 0.5 * (buf[1] + buf[2])
    return cells, nu, kappa


@njit(cache=True)
def open_frame(X):
    N = X.shape[0]
    cells = np.empty(N)
    nu = np.empty((N, 3))
    kappa = np.empty(N)
    buf = np.empty(3)
    ghost = np.empty(3)
    for j in range(N):
        if j == 0:
            ghost[0] = X[1, 0]
            ghost[1] = -X[1, 1]
            ghost[2] = X[1, 2]
            _node_frame(ghost, X[0], X[1], nu[0], buf)
        elif j == N - 1:
            ghost[0] = X[N - 2, 0]
            ghost[1] = -X[N - 2, 1]
            ghost[2] = X[N - 2, 2]
            _node_frame(X[N - 2], X[N - 1], ghost, nu[N - 1], buf)
        else:
            _node_frame(X[j - 1], X[j], X[j + 1], nu[j], buf)
        kappa[j] = buf[0]
        cells[j] = 0.5 * (buf[1] + buf[2])
    cells[0] *= 0.5
    cells[N - 1] *= 0.5
    return cells, nu, kappa


@njit(cache=True)
def elementary(kappa):
    N, m = kappa.shape
    e = np.zeros((N, m + 1))
    for i in range(N):
        e[i, 0] = 1.0
        for c in range(m):
            kc = kappa[i, c]
            top = c + 1 if c + 1 < m else m
            for j in range(top, 0, -1):
                e[i, j] += kc * e[i, j - 1]
    return e


@njit(cache=True)
def quotient_speed(kappa, k, phip, u, binom):
    N, m = kappa.shape
    speed = np.empty(N)
    F = np.empty(N)
    grad = np.empty((N, m))
    c = binom[k - 1] / binom[k]
    e = np.empty(m + 1)
    d = np.empty(k + 1)
    for i in range(N):
        for j in range(m + 1):
            e[j] = 0.0
        e[0] = 1.0
        for col in range(m):
            kc = kappa[i, col]
            top = col + 1 if col + 1 < m else m
            for j in range(top, 0, -1):
                e[j] += kc * e[j - 1]
        Fi = c * e[k] / e[k - 1]
        F[i] = Fi
        for v in range(m):
            ki = kappa[i, v]
            d[0] = 1.0
            for j in range(1, k + 1):
                d[j] = e[j] - ki * d[j - 1]
            dk2 = d[k - 2] if k >= 2 else 0.0
            grad[i, v] = c * (d[k - 1] * e[k - 1] - e[k] * dk2) / (e[k - 1] * e[k - 1])
        speed[i] = phip[i] / Fi - u[i]
    return speed, F, grad
