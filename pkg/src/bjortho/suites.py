"""Seeded randomized property suites behind ``bjortho verify``.

Each suite returns a :class:`SuiteReport`: one row per trial with the
fixed CSV columns plus a summary. All randomness flows from
``RunConfig.seed`` through per-trial generators, so equal configs give
byte-identical reports.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import randgen as rg
from .approx import SubspaceBasis, best_approx
from .bochner import BochnerFunction, elementary_tensor, lp_norm, scalar_function
from .errors import DegenerateBasis, InvalidArgument, UncertifiedSolution
from .approx import light_check
from .ortho import (as_single_atom, bj_direct, bj_keckic, bj_l1_criterion,
                    bj_lp_criterion, bj_scalar_l1, bj_scalar_lp, bj_vector)
from .space import (SmoothSpace, dual_norm, norm, phase_gateaux,
                    support_functional)

CSV_COLUMNS = ("suite", "trial", "p", "dim", "atoms", "verdict_criterion",
               "verdict_oracle", "lhs", "rhs", "margin")
ORACLE_TOL = 1e-9

DEFAULT_P = {
    "thm-tensor-p": (1.5, 2.0, 3.0),
    "crit-vs-oracle": (1.0, 1.5, 2.0, 3.0),
    "light": (1.5, 2.0, 3.0),
    "approx": (2.0, 3.0),
    "duality-map": (),
}
SUITES = tuple(DEFAULT_P)


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    trials: int = 100
    tol: float = 1e-6
    p_list: tuple | None = None
    output: str = "-"
    format: str = "json"

    def __post_init__(self):
        if int(self.seed) != self.seed or self.seed < 0:
            raise InvalidArgument("seed must be an unsigned integer")
        if int(self.trials) != self.trials or self.trials < 1:
            raise InvalidArgument("trials must be >= 1")
        if not self.tol > 0:
            raise InvalidArgument("tol must be > 0")
        if self.p_list is not None:
            if any(not p >= 1 for p in self.p_list):
                raise InvalidArgument("every p must be >= 1")
            object.__setattr__(self, "p_list", tuple(float(p) for p in self.p_list))
        if self.format not in ("json", "csv"):
            raise InvalidArgument("format must be json or csv")

    def ps(self, suite: str) -> tuple:
        return self.p_list if self.p_list else DEFAULT_P[suite]


@dataclass
class SuiteReport:
    suite: str
    config: RunConfig
    rows: list = field(default_factory=list)
    failures: int = 0
    excluded: int = 0
    max_violation: float = 0.0

    @property
    def trials(self) -> int:
        return len(self.rows)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def add(self, row: dict, failed: bool, excluded: bool = False,
            violation: float = 0.0):
        row = {k: row.get(k, "") for k in CSV_COLUMNS} | {
            "status": "excluded" if excluded else ("fail" if failed else "pass")}
        self.rows.append(row)
        if excluded:
            self.excluded += 1
        elif failed:
            self.failures += 1
            self.max_violation = max(self.max_violation, float(violation))

    def summary(self) -> dict:
        return {"suite": self.suite, "seed": self.config.seed,
                "trials": self.trials, "tol": self.config.tol,
                "p_list": list(self.config.ps(self.suite)),
                "failures": self.failures,
                "borderline_excluded": self.excluded,
                "max_margin_violation": self.max_violation,
                "passed": self.passed}


def _verdict(orth: bool) -> str:
    return "orthogonal" if orth else "not-orthogonal"


def _row(suite, trial, p, dim, atoms, crit, oracle_orth, **kw):
    r = {"suite": suite, "trial": trial, "p": p, "dim": dim, "atoms": atoms,
         "verdict_criterion": crit.verdict, "verdict_oracle": _verdict(oracle_orth),
         "lhs": crit.lhs, "rhs": crit.rhs, "margin": crit.lhs - crit.rhs}
    r.update(kw)
    return r


def _trial_p(ps, trial):
    if not ps:
        raise InvalidArgument("suite needs at least one p")
    return ps[trial % len(ps)]


def suite_thm_tensor_p(cfg: RunConfig) -> SuiteReport:
    """f (x) x _|_ g (x) y  iff  f _|_ g or x _|_ y, for 1 < p < inf.

    ``trials`` instances per p. The four cases (f _|_ g, x _|_ y, both,
    neither) rotate with the trial index; every verdict is also checked
    against the direct oracle.
    """
    rep = SuiteReport("thm-tensor-p", cfg)
    for p in cfg.ps(rep.suite):
        if not p > 1:
            raise InvalidArgument("thm-tensor-p needs p > 1")
        for t in range(cfg.trials):
            rng = rg.trial_rng(cfg.seed, f"{rep.suite}:{p}", t)
            X = rg.random_space(rng)
            m = rg.random_measure(rng)
            fs = rg.random_function(rng, m, X.scalar_space(), zero_prob=0.2)
            gs = rg.random_function(rng, m, X.scalar_space())
            x = rg.random_vector(rng, X)
            y = rg.random_vector(rng, X)
            case = t % 4
            if case in (0, 2):
                gs = rg.lp_orthogonalize(fs, gs, p)
            if case in (1, 2):
                y = rg.vector_orthogonalize(X, x, y)
            h1, h2 = elementary_tensor(fs, x, X), elementary_tensor(gs, y, X)
            ct = bj_lp_criterion(h1, h2, p, tol=cfg.tol)
            cf = bj_scalar_lp(fs, gs, p, tol=cfg.tol)
            cx = bj_vector(X, x, y, tol=cfg.tol)
            dt = bj_direct(h1, h2, p, ORACLE_TOL)
            df = bj_direct(fs, gs, p, ORACLE_TOL)
            dx = bj_direct(as_single_atom(X, x), as_single_atom(X, y), p, ORACLE_TOL)
            excluded = ct.borderline or cf.borderline or cx.borderline
            failed = (ct.orthogonal != (cf.orthogonal or cx.orthogonal)
                      or ct.orthogonal != dt.orthogonal
                      or cf.orthogonal != df.orthogonal
                      or cx.orthogonal != dx.orthogonal)
            rep.add(_row(rep.suite, t, p, X.dim, len(m), ct, dt.orthogonal),
                    failed, excluded, ct.lhs / max(ct.scale, 1e-300))
    return rep


def suite_crit_vs_oracle(cfg: RunConfig) -> SuiteReport:
    """L^1 / L^p criteria against the direct and phase-derivative oracles."""
    rep = SuiteReport("crit-vs-oracle", cfg)
    ps = cfg.ps(rep.suite)
    for t in range(cfg.trials):
        p = _trial_p(ps, t)
        rng = rg.trial_rng(cfg.seed, rep.suite, t)
        want = rng.random() < 0.5
        f, g = rg.pair_instance(rng, p, want)
        if p == 1:
            crit = bj_l1_criterion(f, g, tol=cfg.tol)
            scal = bj_scalar_l1(f, g, tol=cfg.tol) if f.space.kind == "scalar" else None
        else:
            crit = bj_lp_criterion(f, g, p, tol=cfg.tol)
            scal = bj_scalar_lp(f, g, p, tol=cfg.tol) if f.space.kind == "scalar" else None
        direct = bj_direct(f, g, p, ORACLE_TOL)
        keck = bj_keckic(f, g, p, tol=cfg.tol)
        excluded = crit.borderline
        failed = (crit.orthogonal != direct.orthogonal
                  or crit.orthogonal != keck.orthogonal
                  or (scal is not None and scal.orthogonal != crit.orthogonal))
        rep.add(_row(rep.suite, t, p, f.space.dim, len(f.measure), crit,
                     direct.orthogonal), failed, excluded, abs(crit.lhs - crit.rhs))
    return rep


def _light_instance(rng, p, case):
    X = rg.random_space(rng, min_dim=2)
    n_y = int(rng.integers(1, X.dim))
    Y = np.array([rg.random_vector(rng, X) for _ in range(n_y)])
    m = rg.random_measure(rng)
    V = np.zeros((len(m), X.dim), dtype=X.dtype)
    for s in range(len(m)):
        if rng.random() < 0.15:
            continue  # f(s) = 0 is orthogonal to everything
        V[s] = rg.annihilating_vector(rng, X, Y)
    bad = int(rng.integers(len(m)))
    if case in (1, 2):
        V[bad] = rg.random_vector(rng, X)
    if case == 2:
        w = np.array(m.weights)
        w[bad] = 0.0
        m = type(m)(m.atoms, w)
    if case == 3:
        V = rg.random_values(rng, V.shape, X.field)
    return BochnerFunction(m, X, V), Y, bad


def suite_light(cfg: RunConfig) -> SuiteReport:
    """f _|_ L^p(mu, Y) iff f(s) _|_ Y at every positive-weight atom.

    Cases rotate: pointwise orthogonal, one violating atom, one violating
    atom of zero weight, unconstrained random.
    """
    rep = SuiteReport("light", cfg)
    ps = cfg.ps(rep.suite)
    for t in range(cfg.trials):
        p = _trial_p(ps, t)
        if not p > 1:
            raise InvalidArgument("light needs p > 1")
        rng = rg.trial_rng(cfg.seed, rep.suite, t)
        case = t % 4
        f, Y, bad = _light_instance(rng, p, case)
        res = light_check(f, Y, p, tol=cfg.tol)
        agree = res.subspace_orthogonal == (len(res.pointwise_failures) == 0)
        expected_ok = {0: res.subspace_orthogonal and not res.pointwise_failures,
                       1: (not res.subspace_orthogonal) and res.pointwise_failures == (bad,),
                       2: res.subspace_orthogonal and res.ignored_atoms == (bad,),
                       3: True}[case]
        oracle_orth = res.subspace_orthogonal
        if res.violating is not None:
            s, j = res.violating
            Vg = np.zeros_like(f.values)
            Vg[s] = Y[j]
            g = BochnerFunction(f.measure, f.space, Vg)
            oracle_orth = bj_direct(f, g, p, ORACLE_TOL).orthogonal
        failed = not (agree and expected_ok and oracle_orth == res.subspace_orthogonal)
        cert = res.certificate
        row = {"suite": rep.suite, "trial": t, "p": p, "dim": f.space.dim,
               "atoms": len(f.measure),
               "verdict_criterion": _verdict(res.subspace_orthogonal),
               "verdict_oracle": _verdict(not res.pointwise_failures),
               "lhs": cert.lhs if cert else 0.0, "rhs": 0.0,
               "margin": cert.lhs if cert else 0.0}
        rep.add(row, failed, False, 1.0 if failed else 0.0)
    return rep


def normal_equations(f: BochnerFunction, G: SubspaceBasis) -> np.ndarray:
    """Weighted least-squares coefficients: the L^2(mu, Hilbert) projection."""
    sw = np.sqrt(f.measure.weights)[:, None]
    A = np.stack([(sw * g.values).ravel() for g in G], axis=1)
    b = (sw * f.values).ravel()
    return np.linalg.lstsq(A, b, rcond=None)[0]


def _approx_instance(rng, p):
    while True:
        X = rg.random_space(rng, kind="hilbert" if p == 2 else None)
        m = rg.random_measure(rng)
        kmax = min(4, len(m) * X.dim - 1)
        if kmax < 1:
            continue
        k = int(rng.integers(1, kmax + 1))
        f = rg.random_function(rng, m, X)
        try:
            G = SubspaceBasis(tuple(rg.random_function(rng, m, X) for _ in range(k)),
                              max_condition=1e6)
        except DegenerateBasis:
            continue
        return f, G


def suite_approx(cfg: RunConfig, n_perturb: int = 1000) -> SuiteReport:
    """Solver checks: p = 2 Hilbert against normal equations, other p
    against the characterization and random coefficient perturbations."""
    rep = SuiteReport("approx", cfg)
    for p in cfg.ps(rep.suite):
        for t in range(cfg.trials):
            rng = rg.trial_rng(cfg.seed, f"{rep.suite}:{p}", t)
            f, G = _approx_instance(rng, p)
            try:
                res = best_approx(f, G, p, tol=cfg.tol)
            except UncertifiedSolution as exc:
                res = exc.result
            worst = max((c.lhs / max(c.scale, 1e-300) for c in res.certificates),
                        default=0.0)
            row = {"suite": rep.suite, "trial": t, "p": p, "dim": f.space.dim,
                   "atoms": len(f.measure),
                   "verdict_criterion": "certified" if res.certified else "uncertified"}
            if p == 2 and f.space.kind == "hilbert":
                ref = normal_equations(f, G)
                err = float(np.max(np.abs(ref - res.coefficients)))
                ok = err <= 1e-6
                row |= {"verdict_oracle": "match" if ok else "mismatch",
                        "lhs": err, "rhs": 1e-6, "margin": err - 1e-6}
                failed = not (ok and res.certified)
                viol = err
            else:
                best = _perturbation_probe(rng, f, G, p, res, cfg.tol, n_perturb)
                improve = res.residual_norm - best
                ok = improve <= cfg.tol
                row |= {"verdict_oracle": "optimal" if ok else "improvable",
                        "lhs": worst, "rhs": cfg.tol, "margin": worst - cfg.tol}
                failed = not (ok and res.certified)
                viol = max(improve, worst)
            rep.add(row, failed, False, viol)
    return rep


def _perturbation_probe(rng, f, G, p, res, tol, n):
    """Smallest objective over n random coefficient perturbations of size 10 tol."""
    k = len(G)
    best = np.inf
    for _ in range(n):
        d = rg.random_values(rng, k, f.space.field)
        d *= 10 * tol / np.linalg.norm(d)
        best = min(best, lp_norm(f - G.combine(res.coefficients + d), p))
    return best


DUALITY_KINDS = ("lp", "hilbert", "scalar")


def _continuity_ok(rng, sp):
    x = rg.random_vector(rng, sp)
    x = x / norm(sp, x)
    h = rg.random_vector(rng, sp)
    h = h / norm(sp, h)
    Fx = support_functional(sp, x)
    dists = [dual_norm(sp, support_functional(sp, x + e * h) - Fx)
             for e in (1e-3, 1e-4, 1e-5)]
    slack = 1e-14
    ok = dists[1] <= dists[0] + slack and dists[2] <= dists[1] + slack
    # locally constant maps (e.g. dim 1) give all-zero distances
    return ok and (dists[2] < dists[0] or dists[0] <= slack), dists


def suite_duality_map(cfg: RunConfig) -> SuiteReport:
    """Support-functional identities, homogeneity, Gateaux derivative and
    a continuity smoke test; ``trials`` vectors per space kind."""
    rep = SuiteReport("duality-map", cfg)
    for kind in DUALITY_KINDS:
        for t in range(cfg.trials):
            rng = rg.trial_rng(cfg.seed, f"{rep.suite}:{kind}", t)
            sp = rg.random_space(rng, kind=kind)
            x = rg.random_vector(rng, sp)
            y = rg.random_vector(rng, sp)
            nx = norm(sp, x)
            F = support_functional(sp, x)
            e_val = abs(F(x) - nx) / nx
            e_dual = abs(dual_norm(sp, F) - 1.0)
            alpha = float(np.exp(rng.uniform(np.log(1e-2), np.log(1e2))))
            e_hom = float(np.max(np.abs(support_functional(sp, alpha * x).coeffs - F.coeffs)))
            phi = (2 * np.pi * rng.random() if sp.is_complex
                   else (0.0 if rng.random() < 0.5 else np.pi))
            tt = 1e-6
            fd = (norm(sp, x + tt * np.exp(1j * phi) * y if sp.is_complex
                       else x + tt * np.cos(phi) * y) - nx) / tt
            e_gat = abs(phase_gateaux(sp, x, y, phi) - fd)
            cont, dists = _continuity_ok(rng, sp)
            checks = [e_val <= 1e-12, e_dual <= 1e-12, e_hom <= 1e-12,
                      e_gat <= 1e-5, cont]
            failed = not all(checks)
            row = {"suite": rep.suite, "trial": t, "p": sp.exponent or "",
                   "dim": sp.dim, "atoms": "",
                   "verdict_criterion": "fail" if failed else "pass",
                   "verdict_oracle": kind,
                   "lhs": max(e_val, e_dual, e_hom), "rhs": 1e-12,
                   "margin": e_gat}
            rep.add(row, failed, False, max(e_val, e_dual, e_hom, e_gat))
    return rep


RUNNERS = {
    "thm-tensor-p": suite_thm_tensor_p,
    "crit-vs-oracle": suite_crit_vs_oracle,
    "light": suite_light,
    "approx": suite_approx,
    "duality-map": suite_duality_map,
}


def run_suite(name: str, cfg: RunConfig) -> SuiteReport:
    if name not in RUNNERS:
        raise InvalidArgument(f"unknown suite {name!r}; choose from {SUITES}")
    return RUNNERS[name](cfg)
