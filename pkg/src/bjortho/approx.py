"""Best approximation from finite-dimensional subspaces of L^p(mu, X).

The solver minimizes the residual norm by cyclic golden-section line
searches and then certifies its answer with the integral optimality
conditions: for p = 1 the residual must be orthogonal to every basis
element in the L^1 sense (with the zero set of the residual split off),
for p > 1 the weighted support-functional integral against every basis
element must vanish.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space

from .bochner import BochnerFunction, _check_compatible, lp_norm, zero_mask
from .errors import DegenerateBasis, InvalidArgument, UncertifiedSolution
from .ortho import (OrthoCertificate, _vanishing, bj_l1_criterion, bj_lp_criterion)
from .search import ellipsoid_minimize, golden_section
from .space import SmoothSpace, as_vector, row_norms, support_rows


@dataclass(frozen=True)
class SubspaceBasis:
    elements: tuple
    max_condition: float = 1e10

    def __post_init__(self):
        els = tuple(self.elements)
        if not els:
            raise InvalidArgument("a subspace basis needs at least one element")
        for g in els[1:]:
            _check_compatible(els[0], g)
        for i, g in enumerate(els):
            if g.is_zero():
                raise DegenerateBasis(f"basis element {i} is the zero function")
        object.__setattr__(self, "elements", els)
        cond = np.linalg.cond(self.gram())
        if not cond < self.max_condition:
            raise DegenerateBasis(
                f"basis Gram matrix condition {cond:.3g} exceeds {self.max_condition:g}")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def measure(self):
        return self.elements[0].measure

    @property
    def space(self) -> SmoothSpace:
        return self.elements[0].space

    def stacked(self) -> np.ndarray:
        return np.stack([g.values for g in self.elements])

    def gram(self) -> np.ndarray:
        """Euclidean-surrogate Gram matrix sum_s w_s <g_j(s), g_i(s)>."""
        B = self.stacked()
        w = self.measure.weights
        return np.einsum("s,isd,jsd->ij", w, B, np.conj(B))

    def combine(self, coefficients) -> BochnerFunction:
        c = np.asarray(coefficients)
        if c.shape != (len(self),):
            raise InvalidArgument(f"need {len(self)} coefficients, got {c.shape}")
        if not self.space.is_complex:
            c = np.real(c)
        V = np.tensordot(c, self.stacked(), axes=1)
        return BochnerFunction(self.measure, self.space, V)


@dataclass(frozen=True)
class ApproxResult:
    coefficients: np.ndarray
    g0: BochnerFunction
    residual_norm: float
    optimality_residuals: np.ndarray
    certificates: tuple
    certified: bool
    p: float
    eps_zero: float
    f_in_subspace: bool = False
    sweeps: int = 0
    notes: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        c = self.coefficients
        coeffs = ([[float(z.real), float(z.imag)] for z in c]
                  if np.iscomplexobj(c) else [float(z) for z in c])
        return {"coefficients": coeffs,
                "residual_norm": self.residual_norm,
                "optimality_residuals": [float(r) for r in self.optimality_residuals],
                "certified": self.certified,
                "p": self.p,
                "eps_zero": self.eps_zero,
                "f_in_subspace": self.f_in_subspace,
                "sweeps": self.sweeps,
                "notes": list(self.notes),
                "certificates": [c.to_dict() for c in self.certificates]}


def check_l1_characterization(f: BochnerFunction, g0: BochnerFunction,
                              G: SubspaceBasis, eps_zero: float = 0.0,
                              tol: float = 1e-9) -> list[OrthoCertificate]:
    """Per-basis certificates for the p = 1 optimality condition at g0.

    Each certificate compares |int_{Z(f-g0)^c} (Re) F_{f(s)-g0(s)}(g(s))|
    with int_{Z(f-g0)} ||g(s)||; complex phases of g are covered by the
    phase reduction inside :func:`bj_l1_criterion`.
    """
    r = f - g0
    return [bj_l1_criterion(r, g, eps_zero, tol) for g in G]


def _l1_direction_oracle(r: BochnerFunction, G: SubspaceBasis, eps_zero: float):
    """One-sided derivative D(d) of t -> ||r - t g_d||_1 at t = 0+.

    For g_d = sum_j c_j(d) g_j,
    D(d) = int_{Z(r)} ||g_d|| - Re int_{Z(r)^c} F_{r(s)}(g_d(s)),
    negative exactly when g_d violates the p = 1 optimality condition.
    Returns ``(oracle, n)`` with oracle(d) = (D(d), subgradient) over n
    real coordinates.
    """
    sp, w = r.space, r.measure.weights
    k = len(G)
    B = G.stacked()
    Z = zero_mask(r, eps_zero)
    A = support_rows(sp, r.values)
    A[Z] = 0
    beta = np.einsum("s,sd,jsd->j", w, A, B)
    Bz, wz = B[:, Z, :], w[Z]
    cplx = sp.is_complex
    grad_L = np.concatenate([beta.real, -beta.imag]) if cplx else beta.real

    def oracle(d):
        c = d[:k] + 1j * d[k:] if cplx else d
        L = float(np.real(np.dot(c, beta)))
        if Bz.shape[1] == 0:
            return -L, -grad_L
        V = np.tensordot(c, Bz, axes=1)
        N = float(np.dot(wz, row_norms(sp, V)))
        gam = np.einsum("s,sd,jsd->j", wz, support_rows(sp, V), Bz)
        grad_N = np.concatenate([gam.real, -gam.imag]) if cplx else gam.real
        return N - L, grad_N - grad_L

    return oracle, (2 * k if cplx else k)


def check_l1_subspace(f: BochnerFunction, g0: BochnerFunction, G: SubspaceBasis,
                      eps_zero: float = 0.0, tol: float = 1e-9) -> OrthoCertificate:
    """p = 1 optimality condition over the whole span of G, not just its basis.

    The absolute-value condition is not linear in g, so passing it for each
    basis element does not imply it for their combinations once the zero
    set of the residual carries mass. Searches the coefficient box for the
    combination g maximizing Re int F_{f-g0}(g) - int_Z ||g||; ``lhs`` is
    that maximal violation (0 when certified), ``details['direction']`` its
    coefficients.
    """
    r = f - g0
    oracle, n = _l1_direction_oracle(r, G, eps_zero)
    scale = float(sum(lp_norm(g, 1) for g in G))
    d, val = ellipsoid_minimize(oracle, n, 1.0, gap_tol=1e-3 * tol * scale)
    k = len(G)
    coeffs = d[:k] + 1j * d[k:] if f.space.is_complex else d
    return _vanishing("l1-subspace", max(-val, 0.0), tol * scale, scale,
                      details={"direction": coeffs, "min_derivative": val})


def check_lp_characterization(f: BochnerFunction, g0: BochnerFunction,
                              G: SubspaceBasis, p: float, eps_zero: float = 0.0,
                              tol: float = 1e-9) -> list[OrthoCertificate]:
    """Per-basis certificates for the 1 < p < inf optimality condition.

    The residual for basis element g is the ``lhs`` of its certificate,
    |int_{Z(f-g0)^c} ||f(s)-g0(s)||^{p-1} F_{f(s)-g0(s)}(g(s))|.
    """
    if not 1 < p < np.inf:
        raise InvalidArgument(f"p must lie in (1, inf), got {p}")
    r = f - g0
    return [bj_lp_criterion(r, g, p, eps_zero, tol) for g in G]


class _Problem:
    """Real-coordinate view of c -> sum_s w_s ||f(s) - sum_j c_j g_j(s)||^p."""

    def __init__(self, f: BochnerFunction, G: SubspaceBasis, p: float):
        self.f, self.G, self.p = f, G, p
        self.sp = f.space
        self.R = f.values
        self.B = G.stacked()
        self.w = f.measure.weights
        self.k = len(G)
        self.n_real = 2 * self.k if self.sp.is_complex else self.k
        self.evals = 0

    def coeffs(self, theta):
        if self.sp.is_complex:
            return theta[:self.k] + 1j * theta[self.k:]
        return theta

    def residual(self, theta):
        return self.R - np.tensordot(self.coeffs(theta), self.B, axes=1)

    def __call__(self, theta):
        self.evals += 1
        r = row_norms(self.sp, self.residual(theta))
        return float(np.dot(self.w, r ** self.p))

    def slope(self, theta, d):
        """d/dt of the objective at theta + t d, t = 0 (p > 1 only)."""
        r = self.residual(theta)
        V = np.tensordot(self.coeffs(d), self.B, axes=1)
        rn = row_norms(self.sp, r)
        F = np.real(np.sum(support_rows(self.sp, r) * V, axis=1))
        return float(-self.p * np.dot(self.w, rn ** (self.p - 1.0) * F))

    def span_norm(self, d):
        V = np.tensordot(self.coeffs(d), self.B, axes=1)
        r = row_norms(self.sp, V)
        return float(np.dot(self.w, r ** self.p)) ** (1.0 / self.p)

    def active_directions(self, theta, rel=1e-9):
        """Directions keeping the (near) zero residuals at zero.

        With p = 1 the objective has kinks where a residual vanishes;
        moving within the kernel of those atoms stays on the smooth face.
        """
        rn = row_norms(self.sp, self.residual(theta))
        active = np.flatnonzero((rn <= rel * max(rn.max(), 1.0)) & (self.w > 0))
        if active.size == 0:
            return []
        rows = self.B[:, active, :].reshape(self.k, -1).T  # (atoms*dim, k)
        if self.sp.is_complex:
            M = np.block([[rows.real, -rows.imag], [rows.imag, rows.real]])
        else:
            M = rows
        N = null_space(M)
        return [N[:, i] for i in range(N.shape[1])]

    def phase_direction(self, j, phase):
        d = np.zeros(self.n_real)
        if self.sp.is_complex:
            d[j], d[self.k + j] = np.cos(phase), np.sin(phase)
        else:
            d[j] = np.cos(phase)
        return d


def _line(prob: _Problem, theta, fval, d, fnorm, xtol):
    dn = prob.span_norm(d)
    if dn == 0:
        return theta, fval
    gcur = prob.span_norm(theta)
    # any point not worse than the start has ||g|| <= 2||f|| + ||g_cur||
    radius = (gcur + 2.0 * fnorm) / dn
    t, ft = golden_section(lambda t: prob(theta + t * d), -radius, radius,
                           xtol * radius)
    if prob.p > 1:
        t, ft = _polish(prob, theta, d, t, ft, 1e-6 * radius)
    if ft < fval:
        return theta + t * d, ft
    return theta, fval


def _polish(prob: _Problem, theta, d, t, ft, h):
    """Refine a golden-section minimizer by root-finding on the slope.

    Value comparisons only resolve a smooth minimum to about sqrt(eps);
    the slope changes sign at the minimizer and a bracketed
    regula falsi (Illinois variant) resolves it to rounding level.
    """
    lo, hi = t - h, t + h
    s_lo, s_hi = prob.slope(theta + lo * d, d), prob.slope(theta + hi * d, d)
    if not s_lo < 0 < s_hi:
        return t, ft
    side = 0
    for _ in range(40):
        mid = hi - s_hi * (hi - lo) / (s_hi - s_lo)
        if not lo < mid < hi:
            break
        s_mid = prob.slope(theta + mid * d, d)
        if s_mid == 0:
            lo = hi = mid
            break
        if s_mid < 0:
            lo, s_lo = mid, s_mid
            if side == -1:
                s_hi *= 0.5
            side = -1
        else:
            hi, s_hi = mid, s_mid
            if side == 1:
                s_lo *= 0.5
            side = 1
        if hi - lo <= 4 * np.finfo(float).eps * max(abs(lo), abs(hi), h):
            break
    tm = 0.5 * (lo + hi)
    fm = prob(theta + tm * d)
    return (tm, fm) if fm <= ft else (t, ft)


def _powell(prob: _Problem, theta, fnorm, xtol, ftol, max_sweeps, extra=None,
            escape=None, converged=None, max_stalls=20):
    """Cyclic line searches with Powell direction replacement.

    Starts from the coordinate axes; after each sweep the net displacement
    replaces the direction of largest decrease. ``extra(theta)`` supplies
    additional directions every sweep and ``escape(theta)`` a descent
    direction when a sweep stalls. Stops after three consecutive sweeps
    without progress, resetting to the axes each time. When given,
    ``converged(theta)`` must also hold before a stall counts, up to
    ``max_stalls`` extra resets.
    """
    n = prob.n_real
    dirs = list(np.eye(n))
    fval = prob(theta)
    stagnant, sweeps, stalls = 0, 0, 0
    while sweeps < max_sweeps and stagnant < 3:
        sweeps += 1
        start, f_start = theta.copy(), fval
        best_drop, best_i = 0.0, 0
        for i, d in enumerate(dirs):
            before = fval
            theta, fval = _line(prob, theta, fval, d, fnorm, xtol)
            if before - fval > best_drop:
                best_drop, best_i = before - fval, i
        if extra is not None:
            for d in extra(theta):
                theta, fval = _line(prob, theta, fval, d, fnorm, xtol)
        disp = theta - start
        if np.any(disp != 0):
            theta, fval = _line(prob, theta, fval, disp, fnorm, xtol)
            dirs[best_i] = disp / np.linalg.norm(disp)
        if f_start - fval <= ftol * max(f_start, 1e-300):
            if escape is not None:
                d = escape(theta)
                if d is not None:
                    before = fval
                    theta, fval = _line(prob, theta, fval, d, fnorm, xtol)
                    if before - fval > ftol * max(before, 1e-300):
                        continue
            dirs = list(np.eye(n))
            if converged is not None and stalls < max_stalls and not converged(theta):
                stalls += 1
                stagnant = 0
                continue
            stagnant += 1
        else:
            stagnant = 0
    return theta, fval, sweeps


def best_approx(f: BochnerFunction, G: SubspaceBasis, p: float, tol: float = 1e-6,
                eps_zero: float | None = None, max_sweeps: int = 500,
                retries: int = 2, raise_uncertified: bool = True) -> ApproxResult:
    """Best approximation g0 = sum_j c_j g_j of f in span(G), certified.

    ``tol`` bounds both the relative stagnation of the objective and the
    certificate tolerance. For p = 1 the zero set of the residual is taken
    with ``eps_zero`` (default ``1e-7 * max_s ||f(s)||``) since the solver
    only reaches kinks to rounding accuracy.
    """
    _check_compatible(f, G.elements[0])
    if not (p >= 1 and np.isfinite(p)):
        raise InvalidArgument(f"p must lie in [1, inf), got {p}")
    prob = _Problem(f, G, p)
    fnorm = lp_norm(f, p)
    if eps_zero is None:
        eps_zero = 1e-7 * float(f.pointwise_norms().max()) if p == 1 else 0.0

    def extra(theta):
        dirs = prob.active_directions(theta)
        g0 = G.combine(prob.coeffs(theta))
        for j, cert in enumerate(check_l1_characterization(f, g0, G, eps_zero, tol)):
            if not cert.orthogonal:
                c = complex(cert.details["c"])
                dirs.append(prob.phase_direction(j, -np.angle(c)))
        return dirs

    def escape(theta):
        g0 = G.combine(prob.coeffs(theta))
        cert = check_l1_subspace(f, g0, G, eps_zero, tol * 1e-3)
        if cert.lhs <= 0:
            return None
        c = np.asarray(cert.details["direction"])
        return np.concatenate([c.real, c.imag]) if prob.sp.is_complex else c.real

    def converged(theta):
        # slope well inside the certificate tolerance, so the coefficients
        # are accurate even for ill-conditioned bases
        g0 = G.combine(prob.coeffs(theta))
        if lp_norm(f - g0, p) <= 1e-3 * tol * max(fnorm, 1e-300):
            # f in span(G): the residual's support functional is noise
            return True
        return all(c.lhs <= 1e-3 * c.tolerance
                   for c in check_lp_characterization(f, g0, G, p, eps_zero, tol))

    theta = np.zeros(prob.n_real)
    xtol, ftol = 1e-12, min(tol, 1e-9) * 1e-3
    total_sweeps = 0
    notes = []
    for attempt in range(retries + 1):
        theta, fval, sweeps = _powell(prob, theta, fnorm, xtol, ftol, max_sweeps,
                                      extra=extra if p == 1 else None,
                                      escape=escape if p == 1 else None,
                                      converged=converged if p > 1 else None)
        total_sweeps += sweeps
        result = _finish(f, G, p, prob, theta, tol, eps_zero, total_sweeps, notes)
        if result.certified:
            return result
        notes.append(f"attempt {attempt} uncertified; tightening brackets")
        xtol *= 1e-2
        ftol *= 1e-2
    result = _finish(f, G, p, prob, theta, tol, eps_zero, total_sweeps, notes)
    if raise_uncertified:
        raise UncertifiedSolution("best approximation failed certification", result)
    return result


def _finish(f, G, p, prob, theta, tol, eps_zero, sweeps, notes) -> ApproxResult:
    coeffs = prob.coeffs(theta).copy()
    g0 = G.combine(coeffs)
    res = lp_norm(f - g0, p)
    fnorm = lp_norm(f, p)
    in_G = res <= tol * max(fnorm, 1e-300)
    notes = list(notes)
    if in_G:
        notes.append("f lies in span(G) within tol; the characterization "
                     "hypothesis f outside the closure of G is violated")
    if p == 1:
        certs = check_l1_characterization(f, g0, G, eps_zero, tol)
        resid = np.array([c.lhs - c.rhs for c in certs])
        certs.append(check_l1_subspace(f, g0, G, eps_zero, tol))
    else:
        certs = check_lp_characterization(f, g0, G, p, eps_zero, tol)
        resid = np.array([c.lhs for c in certs])
    return ApproxResult(coeffs, g0, res, resid, tuple(certs),
                        # a residual within tol of zero is optimal on its own
                        bool(in_G) or all(c.orthogonal for c in certs), p, eps_zero,
                        bool(in_G), sweeps, tuple(notes))


@dataclass(frozen=True)
class LightResult:
    subspace_orthogonal: bool
    pointwise_failures: tuple
    ignored_atoms: tuple
    violating: tuple | None
    certificate: OrthoCertificate | None
    pointwise_values: np.ndarray

    def to_dict(self) -> dict:
        return {"subspace_verdict": "orthogonal" if self.subspace_orthogonal
                else "not-orthogonal",
                "pointwise_failures": list(self.pointwise_failures),
                "ignored_atoms": list(self.ignored_atoms),
                "violating": list(self.violating) if self.violating else None,
                "certificate": self.certificate.to_dict() if self.certificate else None}


def light_check(f: BochnerFunction, Ybasis, p: float, eps_zero: float = 0.0,
                tol: float = 1e-9) -> LightResult:
    """Compare f _|_ L^p(mu, Y) with pointwise f(s) _|_ Y.

    Pointwise: at a nonzero f(s), orthogonality to Y means F_{f(s)}(y_j) = 0
    for every basis vector y_j. Subspace: the L^p criterion against every
    basis function chi_{s} (x) y_j of L^p(mu, Y). Indices in the result
    are atom positions; atoms of zero weight are reported as ignored.
    """
    if not 1 < p < np.inf:
        raise InvalidArgument(f"p must lie in (1, inf), got {p}")
    sp, m = f.space, f.measure
    Y = np.array([as_vector(sp, y) for y in Ybasis])
    if Y.ndim != 2 or Y.shape[0] == 0:
        raise InvalidArgument("Y needs at least one basis vector")
    if np.linalg.matrix_rank(Y) < Y.shape[0]:
        raise DegenerateBasis("Y basis vectors are dependent")
    ynorms = row_norms(sp, Y)
    nrm = f.pointwise_norms()
    nonzero = nrm > eps_zero
    vals = support_rows(sp, f.values) @ Y.T  # (atoms, m): F_{f(s)}(y_j)
    bad = nonzero[:, None] & (np.abs(vals) > tol * ynorms[None, :])
    bad_atoms = bad.any(axis=1)
    positive = m.weights > 0
    failures = tuple(int(i) for i in np.flatnonzero(bad_atoms & positive))
    ignored = tuple(int(i) for i in np.flatnonzero(bad_atoms & ~positive))

    subspace_ok, violating, worst = True, None, None
    for s in range(len(m)):
        for j in range(Y.shape[0]):
            V = np.zeros((len(m), sp.dim), dtype=sp.dtype)
            V[s] = Y[j]
            g = BochnerFunction(m, sp, V)
            cert = bj_lp_criterion(f, g, p, eps_zero, tol)
            if not cert.orthogonal and (worst is None or cert.lhs / cert.scale
                                        > worst.lhs / worst.scale):
                subspace_ok, violating, worst = False, (s, j), cert
    return LightResult(subspace_ok, failures, ignored, violating, worst, vals)
