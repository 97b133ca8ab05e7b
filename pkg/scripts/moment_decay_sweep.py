#!/usr/bin/env python3
"""Sweep moment magnitudes over n for a shape and compare the chord moment
against the main-term bracket as n grows.

Usage: python3 scripts/moment_decay_sweep.py [shape.json] [n_max]
"""

import json
import math
import sys

from discwitness import build_curve, chord_chart
from discwitness.asymptotics import bracket_main_term
from discwitness.moments import moment_chord

DEFAULT_SHAPE = {"type": "support_fourier", "a0": 1,
                 "cos": [0, 0.05], "sin": [0, 0, 0.03]}


def main():
    if len(sys.argv) > 1:
        with open(sys.argv[1]) as fh:
            spec = json.load(fh)
    else:
        spec = DEFAULT_SHAPE
    n_max = int(sys.argv[2]) if len(sys.argv) > 2 else 401
    chart = chord_chart(build_curve(spec))
    print(f"{'n':>5} {'log|M_n|':>12} {'log|bracket/(n+1)|':>20} {'ratio_err':>10}")
    for n in range(19, n_max, 40):
        m = (n + 1) // 2
        moment = moment_chord(chart, n)
        bt = bracket_main_term(chart, m)
        rhs = bt.bracket.shifted(-math.log(n + 1.0))
        err = (abs(moment.as_logcomplex().ratio(rhs) - 1.0)
               if rhs.abs_log() > -1e30 else float("nan"))
        print(f"{n:>5} {moment.abs_log():>12.4f} {rhs.abs_log():>20.4f} "
              f"{err:>10.2e}")


if __name__ == "__main__":
    main()
