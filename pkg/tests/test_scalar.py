import decimal
import pickle
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tameshear.scalar import (EXACT, BackendMismatchError, FloatBackend, GaussianRational,
                              InexactError, exact_sqrt, pick_root, quadratic_roots)

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=30)
gauss = st.builds(GaussianRational, fracs, fracs)


def _pair_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


@given(fracs, fracs, fracs, fracs)
def test_multiplication_matches_pair_formula(a, b, c, d):
    z = GaussianRational(a, b) * GaussianRational(c, d)
    assert (z.re, z.im) == _pair_mul((a, b), (c, d))


@given(gauss, gauss, gauss)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0
    if x != 0:
        assert x * (1 / x) == 1


@given(gauss)
def test_conjugate_norm(x):
    assert x * x.conjugate() == GaussianRational(x.abs2())


def test_from_float_is_exact():
    assert GaussianRational.from_float(0.1).re == Fraction(0.1)
    assert GaussianRational.from_float(complex(0.5, -0.25)) == GaussianRational(Fraction(1, 2), Fraction(-1, 4))


def test_mixing_backends_raises():
    with pytest.raises(BackendMismatchError):
        GaussianRational(1) + 0.5
    with pytest.raises(BackendMismatchError):
        GaussianRational(1, 2) * complex(1, 1)


def test_exact_sqrt():
    assert exact_sqrt(GaussianRational(-4)) == GaussianRational(0, 2)
    assert exact_sqrt(GaussianRational(Fraction(9, 16))) == GaussianRational(Fraction(3, 4))
    assert exact_sqrt(GaussianRational(3, 4)) ** 2 == GaussianRational(3, 4)
    with pytest.raises(InexactError):
        exact_sqrt(GaussianRational(2))


def test_exact_backend_refuses_transcendentals():
    assert EXACT.log(GaussianRational(1)) == 0
    with pytest.raises(InexactError):
        EXACT.log(GaussianRational(2))
    with pytest.raises(InexactError):
        EXACT.exp(GaussianRational(1))


@given(st.complex_numbers(min_magnitude=0.1, max_magnitude=100),
       st.complex_numbers(max_magnitude=100), st.complex_numbers(max_magnitude=100))
def test_quadratic_roots_against_numpy(a, b, c):
    got = quadratic_roots(a, b, c, FloatBackend(1e-9))
    ref = np.roots([a, b, c])
    tol = 1e-6 * max(1.0, *(abs(r) for r in ref))
    assert all(min(abs(g - r) for r in ref) <= tol for g in got)
    assert all(min(abs(g - r) for g in got) <= tol for r in ref)
    assert abs(got[0] * got[1] - c / a) <= 1e-9 * max(1.0, abs(c / a))


def test_quadratic_zero_constant_term_is_exact():
    r = quadratic_roots(GaussianRational(3), GaussianRational(5), GaussianRational(0), EXACT)
    assert r == (0, GaussianRational(Fraction(-5, 3)))


def test_pick_root_rule():
    assert pick_root([complex(2, 0), complex(-1, 0)]) == complex(-1, 0)
    # equal modulus: larger real part, then larger imaginary part
    assert pick_root([complex(-1, 0), complex(1, 0)]) == complex(1, 0)
    assert pick_root([complex(0, -1), complex(0, 1)]) == complex(0, 1)
    assert pick_root([GaussianRational(-1), GaussianRational(1)]) == 1


def test_multiprecision_backend():
    fb = FloatBackend(1e-9, dps=50)
    root = fb.sqrt(2)
    decimal.getcontext().prec = 60
    ref = decimal.Decimal(2).sqrt()
    assert abs(decimal.Decimal(str(root.real)) - ref) < decimal.Decimal("1e-48")
    assert abs(fb.coerce(GaussianRational(Fraction(1, 3))).real * 3 - 1) < 1e-49


def test_backend_pickles():
    fb = pickle.loads(pickle.dumps(FloatBackend(1e-7, dps=30)))
    assert (fb.tol, fb.dps) == (1e-7, 30)
    assert abs(fb.exp(1) - fb.coerce(np.e)) < 1e-15


def test_float_backend_validation():
    with pytest.raises(ValueError):
        FloatBackend(0)
    with pytest.raises(ValueError):
        FloatBackend(1e-9, dps=5)
