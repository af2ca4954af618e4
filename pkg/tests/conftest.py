"""Shared test oracles.

The quadrature oracle evaluates the defining integral of E1 directly with
adaptive quadrature; it shares no code with the series/continued-fraction
implementation under test.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad


def e1_quadrature(x: float) -> float:
    """Adaptive quadrature of the integral of exp(-t)/t from x to infinity."""
    value, _ = quad(lambda t: math.exp(-t) / t, x, np.inf,
                    epsabs=0.0, epsrel=1e-13, limit=400)
    return value


@pytest.fixture(scope="session")
def e1_oracle():
    return e1_quadrature
