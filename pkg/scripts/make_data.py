"""Regenerate the JSON inputs under data/."""
import json
from pathlib import Path

import numpy as np

from bjortho.bochner import (bochner_to_dict, elementary_tensor, scalar_function,
                             scalar_product_function, zero_function)
from bjortho.measure import counting_measure, interval_quadrature
from bjortho.space import hilbert, lp_space

OUT = Path(__file__).resolve().parent.parent / "data"


def dump(name, doc):
    OUT.mkdir(exist_ok=True)
    (OUT / name).write_text(json.dumps(doc, indent=1) + "\n")


def main():
    mu = counting_measure(5)
    A, B = (1, 2, 3), (2, 3, 5)
    X = hilbert(5, "complex")
    chiA = scalar_function(mu, mu.indicator(A), "complex")
    chiB = scalar_function(mu, mu.indicator(B), "complex")
    h1 = elementary_tensor(chiA, [1j, -1j, 0, 0, 0], X)
    h2 = elementary_tensor(chiB, [1j, 0, -1j, 0, 0], X)
    dump("example1_check.json", {"p": 1, "criterion": "l1",
                                 "f": bochner_to_dict(h1), "g": bochner_to_dict(h2)})
    dump("g_zero_check.json", {"p": 2, "f": bochner_to_dict(h1),
                               "g": bochner_to_dict(zero_function(mu, X))})

    nu = interval_quadrature(-2.0, 2.0, 4)
    fA = scalar_function(mu, mu.indicator(A))
    fB = scalar_function(mu, mu.indicator(B))
    fC = scalar_function(nu, nu.indicator(lambda t: -1 <= t <= 2))
    fD = scalar_function(nu, nu.indicator(lambda t: -2 <= t <= 1))
    dump("final_example_check.json", {
        "p": 1, "criterion": "scalar-l1",
        "f": bochner_to_dict(scalar_product_function(fA, fC)),
        "g": bochner_to_dict(scalar_product_function(fB, fD))})

    rng = np.random.default_rng(7)
    m = counting_measure(6)
    Y = lp_space(3, 3.0)
    f = rng.uniform(-1, 1, (6, 3))
    basis = [rng.uniform(-1, 1, (6, 3)) for _ in range(2)]
    from bjortho.bochner import BochnerFunction
    dump("approx_l3.json", {
        "p": 3, "f": bochner_to_dict(BochnerFunction(m, Y, f)),
        "basis": [bochner_to_dict(BochnerFunction(m, Y, b)) for b in basis]})


if __name__ == "__main__":
    main()
