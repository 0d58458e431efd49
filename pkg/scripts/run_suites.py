"""Run every randomized suite for a few seeds and print a summary table."""
import argparse
import time

from bjortho.suites import SUITES, RunConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--suite", choices=SUITES, action="append")
    args = ap.parse_args()
    print(f"{'suite':16s} {'seed':>4s} {'trials':>6s} {'fail':>4s} {'excl':>4s} {'sec':>6s}")
    for name in args.suite or SUITES:
        for seed in range(args.seeds):
            t = time.perf_counter()
            rep = run_suite(name, RunConfig(seed=seed, trials=args.trials))
            print(f"{name:16s} {seed:4d} {rep.trials:6d} {rep.failures:4d} "
                  f"{rep.excluded:4d} {time.perf_counter() - t:6.1f}", flush=True)


if __name__ == "__main__":
    main()
