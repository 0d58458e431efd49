"""Derivative-free minimization of convex functions by golden-section search."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(fn: Callable[[float], float], lo: float, hi: float,
                   xtol: float = 1e-12, max_iter: int = 200):
    """Minimize a unimodal function on [lo, hi].

    Returns ``(x, fx)`` for the best point evaluated, endpoints included,
    so kinks at the bracket ends are not missed.
    """
    if hi < lo:
        lo, hi = hi, lo
    best_x, best_f = lo, fn(lo)
    f_hi = fn(hi)
    if f_hi < best_f:
        best_x, best_f = hi, f_hi
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    it = 0
    while hi - lo > xtol and it < max_iter:
        it += 1
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = fn(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = fn(x2)
    for x, fx in ((x1, f1), (x2, f2)):
        if fx < best_f:
            best_x, best_f = x, fx
    return best_x, best_f


def nested_golden(fn: Callable[[float, float], float], radius: float,
                  xtol: float = 1e-12):
    """Minimize a jointly convex function of two reals over a square box.

    The outer search runs over the partial minimum in the second
    coordinate, which is again convex, so kinks of ``fn`` cannot stall
    the search the way alternating coordinate steps can.
    """
    inner_best = {}

    def partial(a):
        b, val = golden_section(lambda b: fn(a, b), -radius, radius, xtol * radius)
        inner_best[a] = b
        return val

    a, val = golden_section(partial, -radius, radius, xtol * radius)
    return (a, inner_best[a]), val


def line_minimize(fn: Callable[[np.ndarray], float], x: np.ndarray, d: np.ndarray,
                  radius: float, xtol: float = 1e-12, f0: float | None = None):
    """Minimize t -> fn(x + t d) over |t| <= radius; keep x if nothing better."""
    if f0 is None:
        f0 = fn(x)
    t, ft = golden_section(lambda t: fn(x + t * d), -radius, radius,
                           xtol * max(radius, 1.0))
    if ft < f0:
        return x + t * d, ft, t
    return x, f0, 0.0


def ellipsoid_minimize(oracle: Callable[[np.ndarray], tuple], n: int,
                       radius: float = 1.0, gap_tol: float = 1e-12,
                       max_iter: int | None = None):
    """Minimize a convex function over the box [-radius, radius]^n.

    ``oracle(x)`` returns ``(value, subgradient)``. Central-cut ellipsoid
    method with feasibility cuts for the box; the best feasible center is
    returned as ``(x, value)``. One-dimensional problems fall back to
    golden-section search on the value alone.
    """
    if n == 1:
        t, val = golden_section(lambda t: oracle(np.array([t]))[0],
                                -radius, radius, gap_tol * radius)
        return np.array([t]), val
    if max_iter is None:
        max_iter = 60 * n * n + 200
    x = np.zeros(n)
    P = np.eye(n) * n * radius ** 2
    best_x, (best_v, _) = x.copy(), oracle(x)
    for _ in range(max_iter):
        i = int(np.argmax(np.abs(x)))
        if abs(x[i]) > radius:
            h = np.zeros(n)
            h[i] = np.sign(x[i])
        else:
            v, h = oracle(x)
            if v < best_v:
                best_x, best_v = x.copy(), v
            if not np.any(h):
                break
        Ph = P @ h
        hPh = float(h @ Ph)
        if hPh <= 0:
            break
        if abs(x[i]) <= radius and np.sqrt(hPh) < gap_tol:
            break
        Pg = Ph / np.sqrt(hPh)
        x = x - Pg / (n + 1)
        P = (n * n / (n * n - 1.0)) * (P - (2.0 / (n + 1)) * np.outer(Pg, Pg))
        P = 0.5 * (P + P.T)
    return best_x, best_v
