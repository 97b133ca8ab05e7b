#!/usr/bin/env python3
"""Drive a perturbed shape to a disc under the kappa*L objective and print
the convergence trace summary.

Usage: python3 scripts/optimize_to_disc.py [seed] [objective]
"""

import sys

from discwitness.characterize import kl_profile
from discwitness.shapeopt import OptOptions, ShapeVector, minimize


def main():
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
    objective = sys.argv[2] if len(sys.argv) > 2 else "kl"
    start = ShapeVector(cos=(0.0, 0.0, 0.1), sin=(0.0, 0.04))
    res = minimize(start, objective, OptOptions(seed=seed))
    print(f"objective       : {res.objective:.3e}")
    print(f"iterations      : {res.iterations}")
    print(f"circle distance : {res.circle_distance:.3e}")
    print(f"min rho         : {res.min_rho:.6f}")
    step = max(1, len(res.trace) // 12)
    for i in range(0, len(res.trace), step):
        print(f"  trace[{i:>5}] = {res.trace[i]:.6e}")
    verdict = kl_profile(res.best.decode(), 512, tol=1e-3).verdict
    print(f"final verdict   : {verdict}")
    print(f"final shape     : {res.best.decode().to_spec()}")


if __name__ == "__main__":
    main()
