import math

import numpy as np
import pytest
from hypothesis import strategies as st

from discwitness import build_curve


@pytest.fixture
def unit_disc():
    return build_curve({"type": "circle", "center": [0, 0], "radius": 1})


@pytest.fixture
def ellipse():
    return build_curve({"type": "ellipse", "a": 2, "b": 1})


@pytest.fixture
def three_lobe():
    # constant width: single odd harmonic
    return build_curve({"type": "support_fourier", "a0": 1, "cos": [0, 0, 0.1]})


@pytest.fixture
def asymmetric():
    return build_curve({"type": "support_fourier", "a0": 1,
                        "cos": [0, 0.05], "sin": [0, 0, 0.03]})


def small_fourier_curves(max_harmonic=4, scale=0.2):
    """Strategy: strictly convex Fourier shapes (coefficients kept small
    enough that sum k^2 |coef| stays below 0.8)."""
    coef = st.floats(-scale, scale, allow_nan=False, allow_infinity=False)

    def build(args):
        cos, sin = args
        cos = [0.0] + list(cos[1:])
        sin = [0.0] + list(sin[1:])
        k2 = np.arange(1, max_harmonic + 1) ** 2
        weight = float(k2 @ np.abs(cos) + k2 @ np.abs(sin))
        if weight > 0.8:
            shrink = 0.8 / weight
            cos = [v * shrink for v in cos]
            sin = [v * shrink for v in sin]
        return build_curve({"type": "support_fourier", "a0": 1.0,
                            "cos": cos, "sin": sin})

    lists = st.lists(coef, min_size=max_harmonic, max_size=max_harmonic)
    return st.tuples(lists, lists).map(build)


def angles():
    return st.floats(0.0, 2.0 * math.pi, allow_nan=False)
