"""Dense small-matrix kernels (n <= ~8).

Everything downstream (Lyapunov/Riccati solves, pole placement, the IRL
least-squares step) is built on the routines here. The solvers are written
out explicitly -- Gaussian elimination, Householder QR, Kronecker
vectorization, Faddeev-LeVerrier, Routh-Hurwitz -- so the only numerics
dependency is numpy array arithmetic; ``numpy.linalg`` is reserved for test
oracles.
"""

import numpy as np

from .exceptions import NotPositiveDefinite, RankDeficient, SingularMatrix

PIVOT_RTOL = 1e-13
RANK_RTOL = 1e-10


def as_matrix(a, name="matrix"):
    """Validate and return ``a`` as a 2-d float array with finite entries."""
    m = np.atleast_2d(np.asarray(a, dtype=float))
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"{name} must be a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def as_vector(a, name="vector"):
    """Validate and return ``a`` as a 1-d float array with finite entries."""
    v = np.atleast_1d(np.asarray(a, dtype=float))
    if v.ndim != 1:
        raise ValueError(f"{name} must be 1-d, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    return v


def inf_norm(a):
    """Infinity norm: max |entry| for vectors, max absolute row sum for matrices."""
    a = np.asarray(a, dtype=float)
    if a.ndim <= 1:
        return float(np.max(np.abs(a))) if a.size else 0.0
    return float(np.max(np.sum(np.abs(a), axis=1)))


def symmetrize(m):
    """Return (M + M^T)/2; exact symmetry holds entrywise in floating point."""
    m = np.asarray(m, dtype=float)
    return (m + m.T) / 2.0


def linear_solve(m, b):
    """Solve M x = b by Gaussian elimination with partial pivoting.

    Parameters
    ----------
    m : (n, n) array_like
    b : (n,) array_like

    Returns
    -------
    (n,) ndarray

    Raises
    ------
    SingularMatrix
        If a pivot magnitude falls below ``1e-13 * ||M||_inf``.
    """
    a = as_matrix(m, "M").copy()
    x = as_vector(b, "b").copy()
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError(f"M must be square, got {a.shape}")
    if x.shape[0] != n:
        raise ValueError(f"b length {x.shape[0]} does not match M dimension {n}")

    scale = inf_norm(a)
    tol = PIVOT_RTOL * scale
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if np.abs(a[p, k]) < tol or a[p, k] == 0.0:
            raise SingularMatrix(f"pivot {abs(a[p, k]):.3e} below {tol:.3e} at column {k}")
        if p != k:
            a[[k, p]] = a[[p, k]]
            x[[k, p]] = x[[p, k]]
        factors = a[k + 1:, k] / a[k, k]
        a[k + 1:, k + 1:] -= np.outer(factors, a[k, k + 1:])
        x[k + 1:] -= factors * x[k]

    out = np.empty(n)
    for i in range(n - 1, -1, -1):
        out[i] = (x[i] - a[i, i + 1:] @ out[i + 1:]) / a[i, i]
    return out


def solve_matrix(m, b):
    """Solve M X = B column by column (small m x m systems such as R)."""
    b = as_matrix(b, "B")
    cols = [linear_solve(m, b[:, j]) for j in range(b.shape[1])]
    return np.column_stack(cols)


def determinant(m):
    """Determinant via LU with partial pivoting (sign-tracked pivot product)."""
    a = as_matrix(m, "M").copy()
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError(f"M must be square, got {a.shape}")
    det = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if a[p, k] == 0.0:
            return 0.0
        if p != k:
            a[[k, p]] = a[[p, k]]
            det = -det
        det *= a[k, k]
        factors = a[k + 1:, k] / a[k, k]
        a[k + 1:, k + 1:] -= np.outer(factors, a[k, k + 1:])
    return float(det)


def solve_least_squares(rows, rhs):
    """Minimize ||rows @ theta - rhs||_2 via Householder QR.

    Requires rows to be m x p with m >= p and full column rank.

    Raises
    ------
    RankDeficient
        If an R-diagonal magnitude falls below ``1e-10 * ||rows||_inf``,
        which upstream signals insufficient excitation.
    """
    a = as_matrix(rows, "rows").copy()
    y = as_vector(rhs, "rhs").copy()
    m, p = a.shape
    if m < p:
        raise ValueError(f"need at least as many rows as unknowns, got {m} x {p}")
    if y.shape[0] != m:
        raise ValueError(f"rhs length {y.shape[0]} does not match row count {m}")

    tol = RANK_RTOL * inf_norm(a)
    for j in range(p):
        col = a[j:, j]
        alpha = np.sqrt(col @ col)
        if alpha == 0.0:
            raise RankDeficient(f"column {j} is zero below the diagonal")
        if col[0] > 0:
            alpha = -alpha
        v = col.copy()
        v[0] -= alpha
        vnorm2 = v @ v
        if vnorm2 > 0.0:
            # Apply the reflector H = I - 2 v v^T / (v^T v) to A[j:, j:] and rhs.
            w = (v @ a[j:, j:]) * (2.0 / vnorm2)
            a[j:, j:] -= np.outer(v, w)
            y[j:] -= v * ((v @ y[j:]) * (2.0 / vnorm2))
        if np.abs(a[j, j]) < tol:
            raise RankDeficient(f"R diagonal {abs(a[j, j]):.3e} below {tol:.3e} at column {j}")

    theta = np.empty(p)
    for i in range(p - 1, -1, -1):
        theta[i] = (y[i] - a[i, i + 1:p] @ theta[i + 1:p]) / a[i, i]
    return theta


def solve_lyapunov(a_cl, q):
    """Solve A_cl^T P + P A_cl + Q = 0 for symmetric P.

    Uses Kronecker vectorization, ``(I (x) A^T + A^T (x) I) vec(P) = -vec(Q)``,
    then explicit symmetrization. Adequate and exact enough at n <= ~8; avoids
    any Schur decomposition dependency.

    Raises
    ------
    SingularMatrix
        When A_cl has eigenvalue pairs summing to zero (in particular any
        non-Hurwitz input with mirrored spectrum); callers treat this as a
        failed stabilization.
    """
    a = as_matrix(a_cl, "A_cl")
    qm = as_matrix(q, "Q")
    n = a.shape[0]
    if a.shape != (n, n) or qm.shape != (n, n):
        raise ValueError("A_cl and Q must be square with matching dimension")

    eye = np.eye(n)
    coeff = np.kron(eye, a.T) + np.kron(a.T, eye)
    vec_p = linear_solve(coeff, -qm.flatten(order="F"))
    p = vec_p.reshape((n, n), order="F")
    return symmetrize(p)


def lyapunov_residual(a_cl, q, p):
    """Infinity norm of A_cl^T P + P A_cl + Q."""
    a = np.asarray(a_cl, dtype=float)
    return inf_norm(a.T @ p + p @ a + np.asarray(q, dtype=float))


def char_poly(a):
    """Coefficients of det(sI - A), monic, highest power first.

    Computed with the Faddeev-LeVerrier recursion; no eigenvalue solver.
    """
    am = as_matrix(a, "A")
    n = am.shape[0]
    if am.shape[1] != n:
        raise ValueError(f"A must be square, got {am.shape}")
    coeffs = np.empty(n + 1)
    coeffs[0] = 1.0
    m = np.zeros((n, n))
    eye = np.eye(n)
    for k in range(1, n + 1):
        m = am @ m + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(am @ m) / k
    return coeffs


def is_hurwitz(a):
    """True iff every root of det(sI - A) has strictly negative real part.

    Decided by the Routh-Hurwitz criterion on the characteristic polynomial,
    with zero pivots perturbed by eps = 1e-12. All coefficients of a monic
    Hurwitz polynomial must be strictly positive, which is checked first.
    """
    coeffs = char_poly(a)
    return _routh_hurwitz(coeffs)


def _routh_hurwitz(coeffs, eps=1e-12):
    n = len(coeffs) - 1
    if n == 0:
        return True
    if np.any(coeffs <= 0.0):
        return False

    width = (n + 2) // 2
    row_prev = np.zeros(width)
    row_curr = np.zeros(width)
    row_prev[:len(coeffs[0::2])] = coeffs[0::2]
    row_curr[:len(coeffs[1::2])] = coeffs[1::2]

    for _ in range(n - 1):
        pivot = row_curr[0]
        if pivot == 0.0:
            pivot = eps
        nxt = np.zeros(width)
        nxt[:-1] = row_prev[1:] - (row_prev[0] / pivot) * row_curr[1:]
        if nxt[0] <= 0.0:
            return False
        row_prev = row_curr
        row_curr = nxt
    return True


def leading_minors(m):
    """Determinants of the leading principal submatrices, sizes 1..n."""
    mm = as_matrix(m, "M")
    return [determinant(mm[:k, :k]) for k in range(1, mm.shape[0] + 1)]


def is_positive_definite(m):
    """Sylvester's criterion: all leading principal minors strictly positive."""
    return all(d > 0.0 for d in leading_minors(m))


def require_positive_definite(m, name="matrix"):
    if not is_positive_definite(m):
        raise NotPositiveDefinite(f"{name} is not positive definite")
    return m
