import json

import numpy as np
import pytest

from bjortho import randgen as rg
from bjortho.approx import (SubspaceBasis, best_approx, check_l1_characterization,
                            check_l1_subspace, check_lp_characterization, light_check)
from bjortho.bochner import BochnerFunction, lp_norm, scalar_function
from bjortho.errors import DegenerateBasis, InvalidArgument, UncertifiedSolution
from bjortho.measure import DiscreteMeasure, counting_measure
from bjortho.ortho import bj_direct
from bjortho.space import hilbert, lp_space, scalar_space, support_functional
from oracles import l1_best_value, normal_equations


def instance(seed, p, kind=None, field=None, k=None, scalar=False):
    rng = np.random.default_rng(seed)
    sp = (scalar_space(field or rg.random_field(rng)) if scalar
          else rg.random_space(rng, field=field, kind=kind))
    m = rg.random_measure(rng)
    k = k or int(rng.integers(1, min(3, len(m) * sp.dim - 1) + 1))
    f = rg.random_function(rng, m, sp)
    G = SubspaceBasis(tuple(rg.random_function(rng, m, sp) for _ in range(k)))
    return rng, f, G


@pytest.mark.parametrize("seed", range(8))
def test_p2_hilbert_matches_normal_equations(seed):
    _, f, G = instance(seed, 2, kind="hilbert")
    res = best_approx(f, G, 2.0)
    ref = normal_equations(f.measure.weights, f.values, [g.values for g in G])
    np.testing.assert_allclose(res.coefficients, ref, atol=1e-6)
    assert res.certified


def test_p2_hilbert_residuals_are_normal_equation_residuals():
    _, f, G = instance(3, 2, kind="hilbert", k=2)
    c = np.array([0.3, -0.2])
    g0 = G.combine(c)
    certs = check_lp_characterization(f, g0, G, 2.0)
    r = f - g0
    w = f.measure.weights
    for cert, g in zip(certs, G):
        ip = np.sum(w[:, None] * g.values * np.conj(r.values))
        # F_{r(s)} scaled by ||r(s)|| is conj(r(s)), so the integral is <g, r>
        assert cert.lhs == pytest.approx(abs(ip), rel=1e-12)


@pytest.mark.parametrize("seed,p", [(s, p) for s in range(4) for p in (1.5, 3.0)])
def test_lp_solver_certified_and_unbeaten(seed, p):
    rng, f, G = instance(seed, p)
    res = best_approx(f, G, p, tol=1e-6)
    assert res.certified
    assert all(c.lhs <= c.tolerance for c in res.certificates)
    np.testing.assert_array_equal(G.combine(res.coefficients).values, res.g0.values)
    for _ in range(200):
        d = rg.random_values(rng, len(G), f.space.field)
        d *= 1e-5 / np.linalg.norm(d)
        assert lp_norm(f - G.combine(res.coefficients + d), p) > res.residual_norm - 1e-6


@pytest.mark.parametrize("seed", range(6))
def test_p1_real_scalar_matches_lp_oracle(seed):
    _, f, G = instance(seed, 1, field="real", scalar=True, k=2)
    res = best_approx(f, G, 1.0)
    val, _ = l1_best_value(f.measure.weights, f.values[:, 0], [g.values[:, 0] for g in G])
    assert res.certified
    assert res.residual_norm == pytest.approx(val, rel=1e-6, abs=1e-9)


@pytest.mark.parametrize("seed", range(4))
def test_p1_vector_certified_and_unbeaten(seed):
    rng, f, G = instance(100 + seed, 1)
    res = best_approx(f, G, 1.0)
    assert res.certified
    kinds = [c.criterion for c in res.certificates]
    assert kinds.count("l1-subspace") == 1 and kinds.count("l1") == len(G)
    for _ in range(200):
        d = rg.random_values(rng, len(G), f.space.field)
        d *= 1e-5 / np.linalg.norm(d)
        assert lp_norm(f - G.combine(res.coefficients + d), 1) > res.residual_norm - 1e-6


def test_p1_per_basis_check_is_not_enough():
    """Two basis functions, each passing the p = 1 basis test, whose sum fails it."""
    m = counting_measure(3)
    sp = scalar_space("real")
    f = BochnerFunction(m, sp, np.array([0.0, 0.0, 1.0]))
    g1 = BochnerFunction(m, sp, np.array([1.0, -1.0, 1.0]))
    g2 = BochnerFunction(m, sp, np.array([-1.0, 1.0, 1.0]))
    G = SubspaceBasis((g1, g2))
    zero = G.combine([0.0, 0.0])
    assert all(c.orthogonal for c in check_l1_characterization(f, zero, G))
    sub = check_l1_subspace(f, zero, G)
    assert not sub.orthogonal
    # g1 + g2 = (0, 0, 2) reaches f exactly; 0 is not a best approximation
    assert lp_norm(f - G.combine([0.25, 0.25]), 1) < lp_norm(f, 1)
    res = best_approx(f, G, 1.0)
    assert res.residual_norm == pytest.approx(0.0, abs=1e-7)


def test_p1_perturbed_g0_fails():
    rng, f, G = instance(7, 1, field="real", scalar=True, k=2)
    res = best_approx(f, G, 1.0)
    r = f - res.g0
    assert np.any(r.pointwise_norms() <= res.eps_zero)
    delta = 1e-3
    for j, g in enumerate(G):
        c = res.coefficients.copy()
        c[j] += delta
        g1 = G.combine(c)
        certs = check_l1_characterization(f, g1, G, res.eps_zero, 1e-9)
        assert not all(cc.orthogonal for cc in certs)
        assert lp_norm(f - g1, 1) > res.residual_norm - 1e-6


def test_f_in_span_flagged():
    _, f, G = instance(2, 2, kind="hilbert", k=2)
    f = G.combine([0.7, -1.1])
    for p in (1.0, 2.0, 3.0):
        res = best_approx(f, G, p)
        assert res.f_in_subspace and res.certified
        assert res.residual_norm <= 1e-6 * lp_norm(f, p)
        np.testing.assert_allclose(res.g0.values, f.values, atol=1e-6)


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0])
def test_orthogonal_f_gives_zero_coefficient(p):
    rng = np.random.default_rng(int(p * 10))
    m = rg.random_measure(rng)
    sp = rg.random_space(rng, field="real")
    f = rg.random_function(rng, m, sp)
    g = rg.random_function(rng, m, sp)
    if p == 1:
        g = rg.l1_retarget(f, g, 0.0)
    else:
        g = rg.lp_orthogonalize(f, g, p)
    res = best_approx(f, SubspaceBasis((g,)), p)
    assert res.residual_norm == pytest.approx(lp_norm(f, p), rel=1e-9)


@pytest.mark.parametrize("seed,p", [(s, p) for s in range(5) for p in (1.0, 2.0, 3.0)])
def test_characterization_iff_direct(seed, p):
    """g0 passes the check iff bj_direct says f - g0 _|_ g for every g."""
    rng, f, G = instance(200 + seed, p, k=2)

    def checks(g0):
        if p == 1:
            return check_l1_characterization(f, g0, G, 1e-9, 1e-6)
        return check_lp_characterization(f, g0, G, p, 0.0, 1e-6)

    g0 = best_approx(f, G, p).g0
    assert all(c.orthogonal for c in checks(g0))
    assert all(bj_direct(f - g0, g, p, 1e-6).orthogonal for g in G)
    for _ in range(5):
        g0 = G.combine(rg.random_values(rng, len(G), f.space.field))
        certs = checks(g0)
        if any(c.borderline for c in certs):
            continue
        direct = [bj_direct(f - g0, g, p, 1e-9).orthogonal for g in G]
        assert [c.orthogonal for c in certs] == direct


def test_degenerate_basis():
    m = counting_measure(3)
    sp = hilbert(2)
    g = BochnerFunction(m, sp, np.ones((3, 2)))
    with pytest.raises(DegenerateBasis):
        SubspaceBasis((g, g.scale(2.0)))
    with pytest.raises(DegenerateBasis):
        SubspaceBasis((BochnerFunction(m, sp, np.zeros((3, 2))),))
    with pytest.raises(InvalidArgument):
        SubspaceBasis(())
    with pytest.raises(InvalidArgument):
        SubspaceBasis((g, BochnerFunction(counting_measure(4), sp, np.ones((4, 2)))))


def test_uncertified_raises_with_result():
    _, f, G = instance(1, 3, k=2)
    with pytest.raises(UncertifiedSolution) as exc:
        best_approx(f, G, 3.0, tol=1e-30, max_sweeps=1, retries=0)
    assert exc.value.result is not None and not exc.value.result.certified
    res = best_approx(f, G, 3.0, tol=1e-30, max_sweeps=1, retries=0,
                      raise_uncertified=False)
    assert not res.certified


def test_result_json():
    _, f, G = instance(4, 1, field="complex", k=2)
    d = json.loads(json.dumps(best_approx(f, G, 1.0).to_dict()))
    assert len(d["coefficients"]) == 2 and len(d["coefficients"][0]) == 2
    assert d["certified"] is True


def test_bad_p():
    _, f, G = instance(0, 2)
    with pytest.raises(InvalidArgument):
        best_approx(f, G, 0.5)
    with pytest.raises(InvalidArgument):
        check_lp_characterization(f, f, G, 1.0)


# Light's theorem

def _annihilated(rng, sp, Y, m):
    return BochnerFunction(m, sp, np.array([rg.annihilating_vector(rng, sp, Y)
                                            for _ in range(len(m))]))


def test_light_pointwise_orthogonal():
    rng = np.random.default_rng(0)
    sp = lp_space(4, 3.0, "complex")
    Y = np.array([rg.random_vector(rng, sp) for _ in range(2)])
    f = _annihilated(rng, sp, Y, counting_measure(4))
    res = light_check(f, Y, 2.0)
    assert res.subspace_orthogonal and res.pointwise_failures == ()


def test_light_single_violation():
    rng = np.random.default_rng(1)
    sp = hilbert(3)
    Y = np.array([[1.0, 0.0, 0.0]])
    f = _annihilated(rng, sp, Y, counting_measure(4))
    V = np.array(f.values)
    V[2] = [1.0, 1.0, 0.0]
    res = light_check(BochnerFunction(f.measure, sp, V), Y, 3.0)
    assert not res.subspace_orthogonal
    assert res.pointwise_failures == (2,) and res.violating == (2, 0)
    assert not res.certificate.orthogonal


def test_light_zero_weight_atom_ignored():
    sp = hilbert(2)
    m = DiscreteMeasure((0, 1, 2), [1.0, 0.0, 2.0])
    f = BochnerFunction(m, sp, np.array([[0.0, 1.0], [1.0, 1.0], [0.0, -2.0]]))
    res = light_check(f, [[1.0, 0.0]], 2.0)
    assert res.subspace_orthogonal
    assert res.pointwise_failures == () and res.ignored_atoms == (1,)


def test_light_zero_values_vacuous():
    sp = hilbert(2)
    f = BochnerFunction(counting_measure(2), sp, np.zeros((2, 2)))
    res = light_check(f, [[1.0, 0.0]], 1.5)
    assert res.subspace_orthogonal and res.pointwise_failures == ()


def test_light_errors():
    sp = hilbert(2)
    f = BochnerFunction(counting_measure(2), sp, np.ones((2, 2)))
    with pytest.raises(InvalidArgument):
        light_check(f, [[1.0, 0.0]], 1.0)
    with pytest.raises(DegenerateBasis):
        light_check(f, [[1.0, 0.0], [2.0, 0.0]], 2.0)


def test_light_equivalence_random():
    rng = np.random.default_rng(9)
    for t in range(40):
        sp = rg.random_space(rng, min_dim=2)
        m = rg.random_measure(rng)
        Y = np.array([rg.random_vector(rng, sp)])
        f = _annihilated(rng, sp, Y, m)
        if t % 2:
            V = np.array(f.values)
            V[0] = rg.random_vector(rng, sp)
            f = BochnerFunction(m, sp, V)
        res = light_check(f, Y, 2.5)
        assert res.subspace_orthogonal == (res.pointwise_failures == ())
