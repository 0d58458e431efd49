"""Coefficient accuracy of best_approx against the weighted least-squares oracle.

For p = 2 in a Hilbert space the best approximation solves the normal
equations; this script reports the relative coefficient error of the
line-search solver over random instances, bucketed by basis condition.
"""
import argparse

import numpy as np

from bjortho.approx import best_approx
from bjortho.randgen import trial_rng
from bjortho.suites import _approx_instance, normal_equations


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    errs, conds = [], []
    for t in range(args.trials):
        f, G = _approx_instance(trial_rng(args.seed, "approx-accuracy", t), 2.0)
        c = best_approx(f, G, 2.0).coefficients
        ref = normal_equations(f, G)
        errs.append(np.linalg.norm(c - ref) / max(np.linalg.norm(ref), 1.0))
        conds.append(np.linalg.cond(G.gram()))
    errs, conds = np.array(errs), np.array(conds)
    edges = [1.0, 1e1, 1e2, 1e3, 1e4, 1e6]
    print(f"{'condition':>16s} {'n':>4s} {'median':>10s} {'max':>10s}")
    for lo, hi in zip(edges, edges[1:]):
        sel = (conds >= lo) & (conds < hi)
        if sel.any():
            print(f"[{lo:7.0e},{hi:7.0e}) {sel.sum():4d} "
                  f"{np.median(errs[sel]):10.2e} {errs[sel].max():10.2e}")
    print(f"overall max error {errs.max():.2e}")


if __name__ == "__main__":
    main()
