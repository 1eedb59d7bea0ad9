"""
Small numerical kernels used by the physics modules.

Everything here is deterministic: the Jacobi sweep order is fixed, the
eigenvector phase is pinned, and the root finder scans a fixed grid.
"""

import math

import numpy as np

JACOBI_MAX_SWEEPS = 100
BISECTION_MAX_STEPS = 200


class NumericalError(RuntimeError):
    """Raised when an iterative kernel fails to converge."""


class EigenDecomposition:
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""

    def __init__(self, values, vectors):
        self.values = values
        self.vectors = vectors

    def __iter__(self):
        yield self.values
        yield self.vectors

    def __repr__(self):
        return "EigenDecomposition(dim=%d)" % len(self.values)


def _check_hermitian(h):
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("expected a square matrix, got shape %s" % (h.shape,))
    scale = np.max(np.abs(h)) if h.size else 0.0
    if scale > 0 and np.max(np.abs(h - h.conj().T)) > 1e-14 * scale:
        raise ValueError("matrix is not Hermitian")
    return h


def _fix_phase(vectors):
    # largest-magnitude component of each column made real and positive
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        k = int(np.argmax(np.abs(col)))
        mag = abs(col[k])
        col = col * (mag / col[k])
        col[k] = mag
        vectors[:, j] = col
    return vectors


def hermitian_eigen(h):
    """Diagonalise a dense Hermitian matrix with cyclic Jacobi rotations.

    Each off-diagonal element a_pq = r e^{i phi} is first made real by a
    diagonal phase on index q, then annihilated by a real Givens rotation.
    Sweeps visit (p, q) in row-major order.

    Returns an :class:`EigenDecomposition` with ascending values and
    eigenvector columns whose largest component is real-positive.
    """
    a = _check_hermitian(h).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    if n == 0:
        return EigenDecomposition(np.zeros(0), v)

    fro = np.linalg.norm(a)
    tol = 1e-15 * fro
    converged = False
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol:
            converged = True
            break
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                # negligible against both diagonals: drop without rotating
                if r < 1e-18 * abs(app) and r < 1e-18 * abs(aqq):
                    a[p, q] = a[q, p] = 0.0
                    continue
                rotated = True
                phase = apq / r
                a[:, q] *= phase.conjugate()
                a[q, :] *= phase
                v[:, q] *= phase.conjugate()

                theta = (aqq - app) / (2.0 * r)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :]
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                a[p, q] = a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        if not rotated:
            converged = True
            break

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = _fix_phase(v[:, order])

    h0 = np.asarray(h, dtype=complex)
    residual = np.max(np.linalg.norm(h0 @ vectors - vectors * values, axis=0))
    bound = 1e-9 * max(np.max(np.abs(values)), 1e-300)
    if not converged or residual > bound:
        raise NumericalError(
            "Jacobi iteration did not converge after %d sweeps (residual %.3e)"
            % (JACOBI_MAX_SWEEPS, residual))
    return EigenDecomposition(values, vectors)


def find_real_roots(f, lo, hi, grid_points):
    """Bracket sign changes of ``f`` on a uniform grid and bisect each one.

    ``f`` may be vectorised over a numpy array; scalar-only callables are
    evaluated point by point. Roots of even multiplicity that fall between
    grid nodes are not detected.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    if grid_points < 2:
        raise ValueError("need at least two grid points")
    xs = np.linspace(lo, hi, int(grid_points))
    try:
        ys = np.asarray(f(xs), dtype=float)
        if ys.shape != xs.shape:
            raise TypeError
    except (TypeError, ValueError):
        ys = np.array([f(float(x)) for x in xs], dtype=float)

    width = hi - lo
    x_tol = 1e-12 * width
    roots = []
    for i in range(len(xs)):
        if ys[i] == 0.0:
            roots.append(float(xs[i]))
            continue
        if i + 1 < len(xs) and ys[i + 1] != 0.0 and (ys[i] < 0.0) != (ys[i + 1] < 0.0):
            a, b = float(xs[i]), float(xs[i + 1])
            fa = ys[i]
            for _ in range(BISECTION_MAX_STEPS):
                if b - a < x_tol:
                    break
                m = 0.5 * (a + b)
                fm = f(m)
                if fm == 0.0:
                    a = b = m
                    break
                if (fm < 0.0) == (fa < 0.0):
                    a, fa = m, fm
                else:
                    b = m
            roots.append(0.5 * (a + b))

    roots.sort()
    out = []
    for r in roots:
        if not out or r - out[-1] > 1e-10 * width:
            out.append(r)
    return out


def integrate_linear_ode(a, b, y0, t):
    """Closed-form solution of dy/dt = a + b*y at time ``t``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    bt = b * t
    if abs(bt) > 1e-12:
        # same as (y0 + a/b) e^{bt} - a/b without the cancellation at small b
        return y0 * math.exp(bt) + a * math.expm1(bt) / b
    return y0 + (a + b * y0) * t + 0.5 * a * b * t * t

