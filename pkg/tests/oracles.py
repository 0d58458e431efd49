"""Reference computations written independently of the package internals.

Norms are evaluated by plain Python loops, BJ orthogonality by a dense
grid over the scalar, and best approximations by closed forms or a
linear program.
"""
import cmath
import math

import numpy as np
from scipy.optimize import linprog


def vec_norm(kind, pX, v):
    if kind == "lp":
        return sum(abs(z) ** pX for z in v) ** (1.0 / pX)
    return math.sqrt(sum(abs(z) ** 2 for z in v))


def bochner_norm(kind, pX, weights, rows, p):
    return sum(w * vec_norm(kind, pX, r) ** p for w, r in zip(weights, rows)) ** (1.0 / p)


def grid_bj(kind, pX, weights, F, G, p, complex_field, n=401, rel=1e-9):
    """True when no grid scalar lambda decreases ||F + lambda G||_p.

    The grid covers |lambda| <= 2||F||/||G||, outside of which the norm
    cannot drop below ||F||. The grid is coarse, so only clear-cut
    decreases are detected; callers use it on well-separated instances.
    """
    nf = bochner_norm(kind, pX, weights, F, p)
    ng = bochner_norm(kind, pX, weights, G, p)
    if ng == 0 or nf == 0:
        return True
    R = 2 * nf / ng
    ts = np.linspace(-R, R, n)
    lams = ([complex(a, b) for a in ts[::8] for b in ts[::8]] if complex_field
            else list(ts))
    best = min(bochner_norm(kind, pX, weights, F + lam * G, p) for lam in lams)
    return best >= nf * (1 - rel)


def normal_equations(weights, F, Gs):
    """Coefficients of the L^2(mu, Hilbert) projection via the Gram system."""
    k = len(Gs)
    w = np.asarray(weights)

    def ip(a, b):  # <a, b> = sum_s w_s sum_i a conj(b)
        return np.sum(w[:, None] * a * np.conj(b))

    gram = np.array([[ip(Gs[j], Gs[i]) for j in range(k)] for i in range(k)])
    rhs = np.array([ip(F, Gs[i]) for i in range(k)])
    return np.linalg.solve(gram, rhs)


def l1_best_value(weights, f, Gs):
    """min_c sum_s w_s |f_s - sum_j c_j g_j(s)| for real scalar data, as an LP.

    Variables (c, t) with t_s >= +-(f_s - (G c)_s); minimize w . t.
    """
    n, k = len(f), len(Gs)
    G = np.stack(Gs, axis=1)
    cost = np.concatenate([np.zeros(k), weights])
    I = np.eye(n)
    A = np.block([[-G, -I], [G, -I]])
    b = np.concatenate([-f, f])
    res = linprog(cost, A_ub=A, b_ub=b, bounds=[(None, None)] * k + [(0, None)] * n,
                  method="highs")
    assert res.status == 0
    return res.fun, res.x[:k]


def inner_product(y, x):
    """<y, x> = sum y_i conj(x_i)."""
    return sum(a * complex(b).conjugate() for a, b in zip(y, x))


def phase(z):
    return cmath.phase(z)
