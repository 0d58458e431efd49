"""Birkhoff-James orthogonality tests for functions in L^p(mu, X).

Each test returns an :class:`OrthoCertificate` holding the two numeric
sides it compared. Three comparison forms are used:

* inequality criteria (``l1``, ``scalar-l1``): orthogonal iff
  ``lhs <= rhs + tolerance``; borderline iff ``|lhs - rhs| <= tolerance``;
* vanishing criteria (``lp``, ``scalar-lp``, ``keckic``, ``direct``): the
  left side should be zero (``rhs = 0``); orthogonal iff
  ``lhs <= tolerance``; borderline iff ``lhs`` lies within a factor
  ``BAND`` of the tolerance on either side.

Tolerances are relative: ``tolerance = tol * scale`` with a scale that
bounds ``lhs`` by Holder or the triangle inequality.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .bochner import BochnerFunction, _check_compatible, lp_norm, zero_mask
from .errors import InvalidArgument, UnsupportedSpace
from .measure import counting_measure
from .search import golden_section, nested_golden
from .space import KINDS, as_vector, row_norms, sign, support_rows

BAND = 1e3
ORTHOGONAL = "orthogonal"
NOT_ORTHOGONAL = "not-orthogonal"
BORDERLINE = "borderline"


@dataclass(frozen=True)
class OrthoCertificate:
    verdict: str
    orthogonal: bool
    criterion: str
    lhs: float
    rhs: float
    tolerance: float
    scale: float = 1.0
    witness: complex | float | None = None
    details: dict = field(default_factory=dict)

    @property
    def borderline(self) -> bool:
        return self.verdict == BORDERLINE

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    def to_dict(self) -> dict:
        d = asdict(self)
        w = self.witness
        if isinstance(w, complex):
            d["witness"] = [w.real, w.imag]
        d["details"] = _jsonable(self.details)
        return d


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _inequality(criterion, lhs, rhs, tolerance, scale, **kw) -> OrthoCertificate:
    ok = lhs <= rhs + tolerance
    verdict = BORDERLINE if abs(lhs - rhs) <= tolerance else (
        ORTHOGONAL if ok else NOT_ORTHOGONAL)
    return OrthoCertificate(verdict, bool(ok), criterion, float(lhs), float(rhs),
                            float(tolerance), float(scale), **kw)


def _vanishing(criterion, lhs, tolerance, scale, **kw) -> OrthoCertificate:
    ok = lhs <= tolerance
    if tolerance / BAND < lhs <= tolerance * BAND:
        verdict = BORDERLINE
    else:
        verdict = ORTHOGONAL if ok else NOT_ORTHOGONAL
    return OrthoCertificate(verdict, bool(ok), criterion, float(lhs), 0.0,
                            float(tolerance), float(scale), **kw)


def _trivial(criterion, reason, **kw) -> OrthoCertificate:
    return OrthoCertificate(ORTHOGONAL, True, criterion, 0.0, 0.0, 0.0, 0.0,
                            details={"trivial": reason}, **kw)


def _require_smooth(f: BochnerFunction):
    if f.space.kind not in KINDS:
        raise UnsupportedSpace(f"norm kind {f.space.kind!r} is not smooth")


def _check_p(p, allow_one=True):
    lo_ok = p >= 1 if allow_one else p > 1
    if not (lo_ok and np.isfinite(p)):
        rng = "[1, inf)" if allow_one else "(1, inf)"
        raise InvalidArgument(f"p must lie in {rng}, got {p}")


def pointwise_support_values(f: BochnerFunction, g: BochnerFunction) -> np.ndarray:
    """F_{f(s)}(g(s)) per atom, zero where f(s) = 0."""
    vals = np.sum(support_rows(f.space, f.values) * g.values, axis=1)
    return vals if f.space.is_complex else np.real(vals)


def _objective(f: BochnerFunction, g: BochnerFunction, p: float):
    F, G, w, sp = f.values, g.values, f.measure.weights, f.space
    big = max(np.abs(F).max(initial=0.0), np.abs(G).max(initial=0.0))

    def value(lam):
        r = row_norms(sp, F + lam * G)
        m = r.max()
        if m == 0:
            return 0.0
        return float(m * np.dot(w, (r / m) ** p) ** (1.0 / p))

    if not (1e-30 < big < 1e30) or sp.kind == "lp" and sp.exponent > 8:
        return value
    # moderate magnitudes: skip the overflow rescaling
    kp = sp.exponent if sp.kind == "lp" else 2.0

    def fast(lam):
        A = np.abs(F + lam * G)
        r = (A ** kp).sum(axis=1) if kp != 2.0 else (A * A).sum(axis=1)
        return float(np.dot(w, r ** (p / kp)) ** (1.0 / p))
    return fast


def bj_direct(f: BochnerFunction, g: BochnerFunction, p: float,
              tol: float = 1e-9, xtol: float = 1e-12) -> OrthoCertificate:
    """Decide f _|_ g from the definition by minimizing lambda -> ||f + lambda g||_p.

    Outside the disc |lambda| <= 2||f||/||g|| the norm already exceeds
    ||f||, so the search box is bounded. Real scalars get one golden-section
    search; complex scalars a nested one over (Re lambda, Im lambda).
    ``lhs`` is the best decrease found below ``||f||_p``.
    """
    _check_compatible(f, g)
    _check_p(p)
    if g.is_zero():
        return _trivial("direct", "g = 0")
    nf, ng = lp_norm(f, p), lp_norm(g, p)
    if nf == 0:
        return _trivial("direct", "f = 0")
    obj = _objective(f, g, p)
    radius = 2.0 * nf / ng
    if f.space.is_complex:
        (a, b), fmin = nested_golden(lambda a, b: obj(complex(a, b)), radius, xtol)
        lam = complex(a, b)
    else:
        lam, fmin = golden_section(obj, -radius, radius, xtol * radius)
        lam = float(lam)
    fmin = min(fmin, nf)
    cert = _vanishing("direct", nf - fmin, tol * nf, nf,
                      details={"norm_f": nf, "min_found": fmin, "radius": radius})
    if not cert.orthogonal:
        cert = OrthoCertificate(**{**cert.__dict__, "witness": lam})
    return cert


def bj_keckic(f: BochnerFunction, g: BochnerFunction, p: float,
              n_phases: int = 720, tol: float = 1e-6,
              refine: bool = True) -> OrthoCertificate:
    """Phase-derivative test: f _|_ g iff inf over phi of D_phi >= 0.

    D_phi is the one-sided difference quotient of the norm at f in the
    direction e^{i phi} g. The worst grid phase is refined by a local
    golden-section search when ``refine`` is set.
    """
    _check_compatible(f, g)
    _check_p(p)
    if g.is_zero():
        return _trivial("keckic", "g = 0", )
    nf, ng = lp_norm(f, p), lp_norm(g, p)
    if nf == 0:
        # D_phi = ||g|| for every phase
        return _vanishing("keckic", -ng, tol * ng, ng,
                          details={"min_derivative": ng})
    obj = _objective(f, g, p)
    t = 1e-7 * nf / max(ng, 1.0)

    def deriv(phi):
        return (obj(t * np.exp(1j * phi) if f.space.is_complex else t * np.cos(phi)) - nf) / t

    if f.space.is_complex:
        phases = 2 * np.pi * np.arange(n_phases) / n_phases
        D = np.array([deriv(ph) for ph in phases])
        k = int(np.argmin(D))
        phi, dmin = phases[k], D[k]
        if refine:
            h = 2 * np.pi / n_phases
            phi2, d2 = golden_section(deriv, phi - h, phi + h, 1e-10)
            if d2 < dmin:
                phi, dmin = phi2, d2
    else:
        d0, dpi = deriv(0.0), deriv(np.pi)
        phi, dmin = (0.0, d0) if d0 <= dpi else (np.pi, dpi)
    return _vanishing("keckic", -dmin, tol * ng, ng,
                      details={"min_derivative": dmin, "phase": float(phi) % (2 * np.pi),
                               "step": t})


def l1_sides(f: BochnerFunction, g: BochnerFunction, eps_zero: float = 0.0):
    """(c, rhs): the integral of F_{f(s)}(g(s)) off Z(f) and of ||g(s)|| on Z(f).

    Zero-weight atoms drop out of both sums.
    """
    w = f.measure.weights
    Z = zero_mask(f, eps_zero)
    Fg = pointwise_support_values(f, g)
    c = np.sum(np.where(~Z, w * Fg, 0))
    rhs = float(np.sum(np.where(Z, w * g.pointwise_norms(), 0.0)))
    return c, rhs


def phase_sweep_max(c: complex, n: int = 720) -> float:
    """max over n equispaced phases of |Re(e^{i phi} c)|."""
    phases = 2 * np.pi * np.arange(n) / n
    return float(np.max(np.abs(np.real(np.exp(1j * phases) * c))))


def bj_l1_criterion(f: BochnerFunction, g: BochnerFunction, eps_zero: float = 0.0,
                    tol: float = 1e-9, n_sweep: int = 720) -> OrthoCertificate:
    """L^1(mu, X) test: |int_{Z(f)^c} F_{f(s)}(g(s))| <= int_{Z(f)} ||g(s)||.

    For complex X the condition must hold for all multiples alpha g; the
    supremum over |alpha| = 1 of |Re(alpha c)| is |c|, and a phase sweep
    cross-checks that reduction.
    """
    _check_compatible(f, g)
    _require_smooth(f)
    if g.is_zero():
        return _trivial("l1", "g = 0")
    c, rhs = l1_sides(f, g, eps_zero)
    lhs = abs(c)
    details = {"c": c}
    if f.space.is_complex:
        sweep = phase_sweep_max(complex(c), n_sweep)
        # grid max undershoots |c| by at most |c|(1 - cos(pi/n))
        if abs(sweep - lhs) > 1e-4 * lhs + tol:
            raise RuntimeError(f"phase sweep {sweep} disagrees with |c| = {lhs}")
        details["phase_sweep"] = sweep
    scale = lp_norm(g, 1)
    return _inequality("l1", lhs, rhs, tol * scale, scale, details=details)


def bj_lp_criterion(f: BochnerFunction, g: BochnerFunction, p: float,
                    eps_zero: float = 0.0, tol: float = 1e-9) -> OrthoCertificate:
    """L^p(mu, X) test, 1 < p < inf: int_{Z(f)^c} ||f(s)||^{p-1} F_{f(s)}(g(s)) = 0."""
    _check_compatible(f, g)
    _check_p(p, allow_one=False)
    _require_smooth(f)
    w = f.measure.weights
    keep = ~zero_mask(f, eps_zero)
    nrm = f.pointwise_norms()
    Fg = pointwise_support_values(f, g)
    integral = np.sum(np.where(keep, w * nrm ** (p - 1.0) * Fg, 0))
    scale = lp_norm(f, p) ** (p - 1.0) * lp_norm(g, p)
    return _vanishing("lp", abs(integral), tol * scale, scale,
                      details={"integral": integral})


def _require_scalar(f: BochnerFunction):
    if f.space.kind != "scalar":
        raise InvalidArgument("scalar criteria need scalar-valued functions")


def bj_scalar_l1(f: BochnerFunction, g: BochnerFunction, eps_zero: float = 0.0,
                 tol: float = 1e-9) -> OrthoCertificate:
    """|int_{Z(f)^c} g conj(sign f)| <= int_{Z(f)} |g| for scalar L^1."""
    _check_compatible(f, g)
    _require_scalar(f)
    if g.is_zero():
        return _trivial("scalar-l1", "g = 0")
    w = f.measure.weights
    fv, gv = f.values[:, 0], g.values[:, 0]
    Z = np.abs(fv) <= eps_zero
    c = np.sum(np.where(~Z, w * gv * np.conj(sign(fv)), 0))
    rhs = float(np.sum(np.where(Z, w * np.abs(gv), 0.0)))
    scale = lp_norm(g, 1)
    return _inequality("scalar-l1", abs(c), rhs, tol * scale, scale,
                       details={"c": c})


def bj_scalar_lp(f: BochnerFunction, g: BochnerFunction, p: float,
                 tol: float = 1e-9) -> OrthoCertificate:
    """int g |f|^{p-1} conj(sign f) = 0 for scalar L^p, 1 < p < inf."""
    _check_compatible(f, g)
    _require_scalar(f)
    _check_p(p, allow_one=False)
    w = f.measure.weights
    fv, gv = f.values[:, 0], g.values[:, 0]
    integral = np.sum(w * gv * np.abs(fv) ** (p - 1.0) * np.conj(sign(fv)))
    scale = lp_norm(f, p) ** (p - 1.0) * lp_norm(g, p)
    return _vanishing("scalar-lp", abs(integral), tol * scale, scale,
                      details={"integral": integral})


def bj_vector(sp, x, y, tol: float = 1e-9) -> OrthoCertificate:
    """x _|_ y in a smooth space X: F_x(y) = 0 (x = 0 is orthogonal to all)."""
    x, y = as_vector(sp, x), as_vector(sp, y)
    if not np.any(x != 0) or not np.any(y != 0):
        return _trivial("vector", "zero vector")
    Fy = np.dot(support_rows(sp, x[None, :])[0], y)
    scale = float(row_norms(sp, y[None, :])[0])
    return _vanishing("vector", abs(Fy), tol * scale, scale,
                      details={"F_x(y)": Fy if sp.is_complex else float(np.real(Fy))})


def as_single_atom(sp, v) -> BochnerFunction:
    """A vector as a function on a one-atom unit measure, so ||.||_p = ||v||."""
    return BochnerFunction(counting_measure(1), sp, as_vector(sp, v)[None, :])


CRITERIA = ("auto", "l1", "lp", "scalar-l1", "scalar-lp", "keckic", "direct")


def bj_check(f: BochnerFunction, g: BochnerFunction, p: float,
             criterion: str = "auto", eps_zero: float = 0.0,
             tol: float = 1e-9) -> OrthoCertificate:
    """Dispatch to a named test; ``auto`` picks l1 for p = 1 and lp otherwise."""
    if criterion == "auto":
        criterion = "l1" if p == 1 else "lp"
    if criterion == "l1":
        if p != 1:
            raise InvalidArgument("the l1 criterion needs p = 1")
        return bj_l1_criterion(f, g, eps_zero, tol)
    if criterion == "lp":
        return bj_lp_criterion(f, g, p, eps_zero, tol)
    if criterion == "scalar-l1":
        if p != 1:
            raise InvalidArgument("the scalar-l1 criterion needs p = 1")
        return bj_scalar_l1(f, g, eps_zero, tol)
    if criterion == "scalar-lp":
        return bj_scalar_lp(f, g, p, tol)
    if criterion == "keckic":
        return bj_keckic(f, g, p, tol=max(tol, 1e-6))
    if criterion == "direct":
        return bj_direct(f, g, p, tol)
    raise InvalidArgument(f"unknown criterion {criterion!r}; choose from {CRITERIA}")
