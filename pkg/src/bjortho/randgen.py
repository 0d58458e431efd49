"""Seeded random instances for the verification suites.

Atom counts are uniform in [2, 8], weights uniform in (0.1, 2], dims
uniform in [1, 6], p_X drawn from {1.5, 2, 3, 4} and coordinates uniform
in [-1, 1] (real and imaginary parts separately). Orthogonal pairs are
manufactured by correcting g against the relevant criterion so both
branches of each equivalence get exercised.
"""
from __future__ import annotations

import zlib

import numpy as np
from scipy.linalg import null_space

from .bochner import BochnerFunction, lp_norm
from .measure import DiscreteMeasure
from .ortho import l1_sides, pointwise_support_values
from .space import SmoothSpace, dual_point, support_functional

P_X_CHOICES = (1.5, 2.0, 3.0, 4.0)


def trial_rng(seed: int, suite: str, trial: int) -> np.random.Generator:
    """Independent stream per (seed, suite, trial); order of evaluation is irrelevant."""
    return np.random.default_rng([seed, zlib.crc32(suite.encode()), trial])


def random_field(rng) -> str:
    return "complex" if rng.random() < 0.5 else "real"


def random_space(rng, field=None, kind=None, min_dim=1) -> SmoothSpace:
    field = field or random_field(rng)
    if kind is None:
        kinds = ["lp", "hilbert"] + (["scalar"] if min_dim <= 1 else [])
        kind = kinds[rng.integers(len(kinds))]
    if kind == "scalar":
        return SmoothSpace(field, 1, "scalar")
    dim = int(rng.integers(min_dim, 7))
    if kind == "lp":
        return SmoothSpace(field, dim, "lp", float(rng.choice(P_X_CHOICES)))
    return SmoothSpace(field, dim, "hilbert")


def random_measure(rng, n=None) -> DiscreteMeasure:
    n = int(rng.integers(2, 9)) if n is None else n
    # (0.1, 2]: flip the half-open draw from [0, 1)
    w = 2.0 - 1.9 * rng.random(n)
    return DiscreteMeasure(tuple(range(1, n + 1)), w)


def random_values(rng, shape, field) -> np.ndarray:
    V = rng.uniform(-1, 1, shape)
    if field == "complex":
        V = V + 1j * rng.uniform(-1, 1, shape)
    return V


def random_vector(rng, sp: SmoothSpace) -> np.ndarray:
    return random_values(rng, sp.dim, sp.field)


def random_function(rng, m, sp, zero_prob=0.0) -> BochnerFunction:
    V = random_values(rng, (len(m), sp.dim), sp.field)
    if zero_prob > 0:
        Z = rng.random(len(m)) < zero_prob
        if Z.all():
            Z[rng.integers(len(m))] = False
        V[Z] = 0
    return BochnerFunction(m, sp, V)


def random_phase(rng, field):
    if field == "complex":
        return np.exp(2j * np.pi * rng.random())
    return 1.0 if rng.random() < 0.5 else -1.0


def lp_orthogonalize(f: BochnerFunction, g: BochnerFunction, p: float) -> BochnerFunction:
    """g - kappa f with kappa chosen so the L^p criterion integral vanishes."""
    w = f.measure.weights
    nrm = f.pointwise_norms()
    c = np.sum(w * nrm ** (p - 1) * pointwise_support_values(f, g))
    return g - f.scale(c / lp_norm(f, p) ** p)


def l1_retarget(f: BochnerFunction, g: BochnerFunction, target) -> BochnerFunction:
    """Shift g along f so the off-zero-set integral becomes ``target``.

    Values of g on Z(f) are untouched, so the right-hand side is unchanged.
    """
    c, _ = l1_sides(f, g)
    return g - f.scale((c - target) / lp_norm(f, 1))


def vector_orthogonalize(sp: SmoothSpace, x, y) -> np.ndarray:
    """y - (F_x(y)/||x||) x, which satisfies F_x(y') = 0."""
    F = support_functional(sp, x)
    return y - (np.dot(F.coeffs, y) / np.dot(F.coeffs, x)) * x


def pair_instance(rng, p: float, orthogonal: bool, field=None):
    """(f, g) in L^p(mu, X) with the requested verdict (away from the boundary)."""
    sp = random_space(rng, field)
    m = random_measure(rng)
    if p == 1:
        f = random_function(rng, m, sp, zero_prob=0.3)
        if orthogonal and not np.any(f.pointwise_norms() == 0):
            V = np.array(f.values)
            V[rng.integers(len(m))] = 0
            if not np.any(V != 0):
                V[0] = random_vector(rng, sp)
            f = BochnerFunction(m, sp, V)
        g = random_function(rng, m, sp)
        _, rhs = l1_sides(f, g)
        if orthogonal:
            size = rng.uniform(0.0, 0.9) * rhs
        else:
            size = rng.uniform(1.2, 2.0) * rhs + 0.05 * lp_norm(g, 1)
        g = l1_retarget(f, g, size * random_phase(rng, sp.field))
    else:
        f = random_function(rng, m, sp, zero_prob=0.2)
        g = random_function(rng, m, sp)
        if orthogonal:
            g = lp_orthogonalize(f, g, p)
    return f, g


def annihilating_vector(rng, sp: SmoothSpace, Y: np.ndarray) -> np.ndarray:
    """A nonzero x with F_x(y) = 0 for every row y of Y (needs rank Y < dim)."""
    N = null_space(Y)  # functionals phi with sum_i phi_i y_i = 0
    coef = random_values(rng, N.shape[1], sp.field)
    phi = N @ coef
    return dual_point(sp, phi) * rng.uniform(0.5, 2.0)
