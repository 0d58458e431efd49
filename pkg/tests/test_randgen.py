import numpy as np
import pytest

from bjortho import randgen as rg
from bjortho.ortho import bj_l1_criterion, bj_lp_criterion, bj_vector, l1_sides
from bjortho.space import support_functional


def test_trial_rng_streams():
    a = rg.trial_rng(1, "s", 3).random(4)
    np.testing.assert_array_equal(a, rg.trial_rng(1, "s", 3).random(4))
    assert not np.array_equal(a, rg.trial_rng(1, "s", 4).random(4))
    assert not np.array_equal(a, rg.trial_rng(1, "t", 3).random(4))
    assert not np.array_equal(a, rg.trial_rng(2, "s", 3).random(4))


def test_generator_ranges():
    rng = np.random.default_rng(0)
    for _ in range(300):
        m = rg.random_measure(rng)
        assert 2 <= len(m) <= 8
        assert np.all((m.weights > 0.1) & (m.weights <= 2.0))
        sp = rg.random_space(rng)
        assert 1 <= sp.dim <= 6
        if sp.kind == "lp":
            assert sp.exponent in rg.P_X_CHOICES
        v = rg.random_vector(rng, sp)
        assert np.all(np.abs(v.real) <= 1) and np.all(np.abs(np.imag(v)) <= 1)
    assert rg.random_space(rng, min_dim=3).dim >= 3


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_lp_orthogonalize(p):
    rng = np.random.default_rng(int(p * 7))
    for _ in range(30):
        m, sp = rg.random_measure(rng), rg.random_space(rng)
        f = rg.random_function(rng, m, sp, zero_prob=0.3)
        g = rg.lp_orthogonalize(f, rg.random_function(rng, m, sp), p)
        c = bj_lp_criterion(f, g, p)
        assert c.lhs <= 1e-12 * c.scale


def test_l1_retarget():
    rng = np.random.default_rng(4)
    for _ in range(30):
        m, sp = rg.random_measure(rng), rg.random_space(rng)
        f = rg.random_function(rng, m, sp, zero_prob=0.3)
        g = rg.random_function(rng, m, sp)
        _, rhs0 = l1_sides(f, g)
        target = 0.37 * rg.random_phase(rng, sp.field)
        c, rhs = l1_sides(f, rg.l1_retarget(f, g, target))
        assert c == pytest.approx(target, abs=1e-12)
        assert rhs == rhs0


def test_vector_orthogonalize():
    rng = np.random.default_rng(5)
    for _ in range(30):
        sp = rg.random_space(rng)
        x = rg.random_vector(rng, sp)
        y = rg.vector_orthogonalize(sp, x, rg.random_vector(rng, sp))
        assert abs(support_functional(sp, x)(y)) <= 1e-12


@pytest.mark.parametrize("p", [1.0, 1.5, 3.0])
def test_pair_instance_verdicts(p):
    rng = np.random.default_rng(6)
    for t in range(40):
        want = t % 2 == 0
        f, g = rg.pair_instance(rng, p, want)
        c = bj_l1_criterion(f, g) if p == 1 else bj_lp_criterion(f, g, p)
        assert c.orthogonal == want


def test_annihilating_vector():
    rng = np.random.default_rng(8)
    for _ in range(30):
        sp = rg.random_space(rng, min_dim=2)
        Y = np.array([rg.random_vector(rng, sp) for _ in range(sp.dim - 1)])
        x = rg.annihilating_vector(rng, sp, Y)
        assert np.any(x != 0)
        for y in Y:
            assert bj_vector(sp, x, y).lhs <= 1e-9
