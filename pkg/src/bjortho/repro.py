"""Exact reproduction of the two p = 1 tensor counterexamples.

``tensor-hilbert``: on counting(5) with X = l^2(C^5), A = {1,2,3},
B = {2,3,5}, x = (i, -i, 0, 0, 0), y = (i, 0, -i, 0, 0). Neither
chi_A _|_ chi_B in L^1 nor x _|_ y in X, yet chi_A (x) x _|_ chi_B (x) y
in L^1(mu, X).

``tensor-l1l1``: the same A, B together with C = [-1, 2], D = [-2, 1] on
a 4-cell midpoint rule over [-2, 2]; chi_{A x C} _|_ chi_{B x D} in
L^1(mu x nu) although neither factor pair is orthogonal.

Every quantity is compared with its closed-form value at 1e-9.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bochner import elementary_tensor, scalar_function, scalar_product_function
from .errors import InvalidArgument
from .measure import counting_measure, interval_quadrature, product_measure
from .ortho import (as_single_atom, bj_direct, bj_l1_criterion, bj_scalar_l1,
                    bj_vector)
from .space import hilbert

EXAMPLES = ("tensor-hilbert", "tensor-l1l1")
REPRO_TOL = 1e-9
A, B = (1, 2, 3), (2, 3, 5)


@dataclass
class Quantity:
    name: str
    value: float | bool | str
    expected: float | bool | str

    @property
    def ok(self) -> bool:
        if isinstance(self.expected, float):
            return abs(self.value - self.expected) <= REPRO_TOL
        return self.value == self.expected

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value,
                "expected": self.expected, "ok": self.ok}


@dataclass
class ReproReport:
    example: str
    quantities: list = field(default_factory=list)

    def add(self, name, value, expected):
        if isinstance(expected, float):
            value = float(value)
        self.quantities.append(Quantity(name, value, expected))

    @property
    def passed(self) -> bool:
        return all(q.ok for q in self.quantities)

    def get(self, name):
        return next(q.value for q in self.quantities if q.name == name)

    def to_dict(self) -> dict:
        return {"example": self.example, "tolerance": REPRO_TOL,
                "passed": self.passed,
                "quantities": [q.to_dict() for q in self.quantities]}


def _verdict(cert) -> str:
    return "orthogonal" if cert.orthogonal else "not-orthogonal"


def repro_tensor_hilbert() -> ReproReport:
    rep = ReproReport("tensor-hilbert")
    mu = counting_measure(5)
    X = hilbert(5, "complex")
    x = np.array([1j, -1j, 0, 0, 0])
    y = np.array([1j, 0, -1j, 0, 0])
    chiA = scalar_function(mu, mu.indicator(A), "complex")
    chiB = scalar_function(mu, mu.indicator(B), "complex")
    AB = mu.measure_of(set(A) & set(B))
    AcB = mu.measure_of(set(B) - set(A))
    rep.add("mu(A & B)", AB, 2.0)
    rep.add("mu(A^c & B)", AcB, 1.0)
    scal = bj_scalar_l1(chiA, chiB)
    rep.add("scalar lhs", scal.lhs, 2.0)
    rep.add("scalar rhs", scal.rhs, 1.0)
    rep.add("chi_A vs chi_B", _verdict(scal), "not-orthogonal")
    inner = complex(np.vdot(x, y))  # <y, x> = sum y conj(x)
    rep.add("Re <y,x>", inner.real, 1.0)
    rep.add("Im <y,x>", inner.imag, 0.0)
    vec = bj_vector(X, x, y)
    rep.add("x vs y", _verdict(vec), "not-orthogonal")
    h1, h2 = elementary_tensor(chiA, x, X), elementary_tensor(chiB, y, X)
    crit = bj_l1_criterion(h1, h2)
    rep.add("tensor lhs", crit.lhs, math.sqrt(2.0))
    rep.add("tensor rhs", crit.rhs, math.sqrt(2.0))
    rep.add("tensor phase sweep", crit.details["phase_sweep"], math.sqrt(2.0))
    rep.add("h1 vs h2", _verdict(crit), "orthogonal")
    rep.add("h1 vs h2 borderline", crit.borderline, True)
    rep.add("h1 vs h2 (direct)", _verdict(bj_direct(h1, h2, 1.0)), "orthogonal")
    rep.add("x vs y (direct)", _verdict(bj_direct(as_single_atom(X, x),
                                                  as_single_atom(X, y), 1.0)),
            "not-orthogonal")
    return rep


def repro_tensor_l1l1() -> ReproReport:
    rep = ReproReport("tensor-l1l1")
    mu = counting_measure(5)
    nu = interval_quadrature(-2.0, 2.0, 4)
    C = lambda t: -1.0 <= t <= 2.0
    D = lambda t: -2.0 <= t <= 1.0
    chiA = scalar_function(mu, mu.indicator(A))
    chiB = scalar_function(mu, mu.indicator(B))
    chiC = scalar_function(nu, nu.indicator(C))
    chiD = scalar_function(nu, nu.indicator(D))
    rep.add("mu(A & B)", mu.measure_of(set(A) & set(B)), 2.0)
    rep.add("mu(A^c & B)", mu.measure_of(set(B) - set(A)), 1.0)
    rep.add("nu(C & D)", nu.measure_of(lambda t: C(t) and D(t)), 2.0)
    rep.add("nu(C^c & D)", nu.measure_of(lambda t: D(t) and not C(t)), 1.0)
    cab = bj_scalar_l1(chiA, chiB)
    ccd = bj_scalar_l1(chiC, chiD)
    rep.add("chi_A vs chi_B lhs", cab.lhs, 2.0)
    rep.add("chi_A vs chi_B rhs", cab.rhs, 1.0)
    rep.add("chi_A vs chi_B", _verdict(cab), "not-orthogonal")
    rep.add("chi_C vs chi_D lhs", ccd.lhs, 2.0)
    rep.add("chi_C vs chi_D rhs", ccd.rhs, 1.0)
    rep.add("chi_C vs chi_D", _verdict(ccd), "not-orthogonal")
    f = scalar_product_function(chiA, chiC)
    g = scalar_product_function(chiB, chiD)
    assert f.measure == product_measure(mu, nu)
    prod = bj_scalar_l1(f, g)
    rep.add("product lhs", prod.lhs, 4.0)
    rep.add("product rhs", prod.rhs, 5.0)
    rep.add("product", _verdict(prod), "orthogonal")
    rep.add("product (direct)", _verdict(bj_direct(f, g, 1.0)), "orthogonal")
    return rep


def run_repro(example: str) -> ReproReport:
    if example == "tensor-hilbert":
        return repro_tensor_hilbert()
    if example == "tensor-l1l1":
        return repro_tensor_l1l1()
    raise InvalidArgument(f"unknown example {example!r}; choose from {EXAMPLES}")
