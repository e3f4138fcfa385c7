import numpy as np
import pytest

from simplexinterp import Polynomial, enumerate_upto


@pytest.fixture
def rng():
    return np.random.default_rng(987654321)


def random_polynomial(d, degree, rng, scale=1.0):
    """Dense random polynomial with coefficients uniform in [-scale, scale]."""
    exps = enumerate_upto(d, degree)
    coeffs = rng.uniform(-scale, scale, size=len(exps))
    return Polynomial.from_terms(d, {tuple(e): c for e, c in zip(exps, coeffs)})
