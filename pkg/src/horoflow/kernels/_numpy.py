"""Vectorized numpy implementations of the hot per-node kernels.

Curvature and normals use a local 3-point circumcircle construction on the
unit 2-sphere: it is exact on geodesic circles (so centered spheres are
exact fixed points of the flow) and second-order accurate on general smooth
curves.  Cell lengths are arcs of the same circumcircles, so total length is
exact on circles as well.
"""

import numpy as np

_STRAIGHT_TOL = 1e-13


def _row_norm(a):
    return np.sqrt(np.einsum("ij,ij->i", a, a))


def _frame_from_neighbors(X, Xm, Xp):
    """Shared core: circumcircle curvature, normal and edge arcs.

    Returns (nu, kappa, arc_prev, arc_next) where arc_prev/arc_next are the
    arc lengths from the previous/to the next node measured along the local
    circumcircle (falling back to great-circle arcs on straight segments).
    """
    c1 = X - Xm
    c2 = Xp - X
    m_raw = np.cross(c1, c2)
    mn = _row_norm(m_raw)
    chord = _row_norm(c1) * _row_norm(c2)
    straight = mn <= _STRAIGHT_TOL * np.maximum(chord, 1e-300)

    # Tangent frame: central difference projected to the sphere tangent plane.
    t_raw = Xp - Xm
    t_raw = t_raw - np.einsum("ij,ij->i", t_raw, X)[:, None] * X
    t_norm = _row_norm(t_raw)
    T = t_raw / t_norm[:, None]
    nu = np.cross(T, X)
    nu = nu / _row_norm(nu)[:, None]

    safe_mn = np.where(mn > 0, mn, 1.0)
    m = m_raw / safe_mn[:, None]
    d = np.einsum("ij,ij->i", m, X)
    s2 = np.clip(1.0 - d * d, 1e-30, None)
    s = np.sqrt(s2)
    sign = -np.sign(np.einsum("ij,ij->i", m, nu))
    kappa = np.where(straight, 0.0, sign * d / s)

    # Arc lengths about the circumcircle axis.
    def _arc(p, q):
        pp = p - np.einsum("ij,ij->i", m, p)[:, None] * m
        qq = q - np.einsum("ij,ij->i", m, q)[:, None] * m
        cr = _row_norm(np.cross(pp, qq))
        dt = np.einsum("ij,ij->i", pp, qq)
        return s * np.arctan2(cr, dt)

    def _geo(p, q):
        cr = _row_norm(np.cross(p, q))
        dt = np.einsum("ij,ij->i", p, q)
        return np.arctan2(cr, dt)

    arc_prev = np.where(straight, _geo(Xm, X), _arc(Xm, X))
    arc_next = np.where(straight, _geo(X, Xp), _arc(X, Xp))
    return nu, kappa, arc_prev, arc_next


def closed_frame(X):
    """Frame of a closed curve on the unit 2-sphere.

    Returns (cells, nu, kappa): per-node cell lengths, unit normals in the
    orientation induced by node ordering, and signed geodesic curvature.
    """
    Xm = np.roll(X, 1, axis=0)
    Xp = np.roll(X, -1, axis=0)
    nu, kappa, arc_prev, arc_next = _frame_from_neighbors(X, Xm, Xp)
    cells = 0.5 * (arc_prev + arc_next)
    return cells, nu, kappa


def open_frame(X):
    """Frame of an open profile meeting the axis plane {y = 0} at both ends.

    Ghost nodes are reflections across the axis plane, which enforces
    orthogonal incidence.  Endpoint cells carry half weight.
    """
    refl = np.array([1.0, -1.0, 1.0])
    Xm = np.vstack([X[1] * refl, X[:-1]])
    Xp = np.vstack([X[1:], X[-2] * refl])
    nu, kappa, arc_prev, arc_next = _frame_from_neighbors(X, Xm, Xp)
    cells = 0.5 * (arc_prev + arc_next)
    cells[0] *= 0.5
    cells[-1] *= 0.5
    return cells, nu, kappa


def elementary(kappa):
    """Elementary symmetric polynomials e_0..e_m per row of kappa (N, m)."""
    N, m = kappa.shape
    e = np.zeros((N, m + 1))
    e[:, 0] = 1.0
    for c in range(m):
        kc = kappa[:, c]
        for j in range(min(c + 1, m), 0, -1):
            e[:, j] += kc * e[:, j - 1]
    return e


def quotient_speed(kappa, k, phip, u, binom):
    """Speed field of the flow for F = H_k/H_{k-1}.

    binom is the row of binomial coefficients C(m, 0..m).  Returns
    (speed, F, grad) with grad the per-node gradient of F in kappa.
    Caller guarantees kappa > 0.
    """
    N, m = kappa.shape
    e = elementary(kappa)
    c = binom[k - 1] / binom[k]
    F = c * e[:, k] / e[:, k - 1]

    # sigma_j with one variable deleted, via d_j = e_j - kappa_i * d_{j-1}.
    grad = np.zeros((N, m))
    for i in range(m):
        ki = kappa[:, i]
        d = np.zeros((N, k + 1))
        d[:, 0] = 1.0
        for j in range(1, k + 1):
            d[:, j] = e[:, j] - ki * d[:, j - 1]
        dk1 = d[:, k - 1]
        dk2 = d[:, k - 2] if k >= 2 else np.zeros(N)
        grad[:, i] = c * (dk1 * e[:, k - 1] - e[:, k] * dk2) / e[:, k - 1] ** 2

    speed = phip / F - u
    return speed, F, grad
