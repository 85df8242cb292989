import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tameshear.danielewski import (DANI_RING, RELATION, DanielewskiPoint, NotOnSurfaceError,
                                   build_dani_program, dani_fields, dani_point,
                                   field_annihilates_relation, flow_phi, flow_psi, flow_scale,
                                   sl2_to_dani, solve_step_f, step_g_value, verify_dani_program)
from tameshear.fields import VectorField
from tameshear.flows import Generator, flow_basic
from tameshear.matrix import Mat2, random_sl2
from tameshear.scalar import EXACT, FloatBackend, GaussianRational as G, InexactError
from tameshear.tame_sl2 import InjectionTable

qs = st.fractions(-10, 10, max_denominator=8).map(G)
mats = st.integers(0, 10 ** 6).map(lambda s: random_sl2(random.Random(s)))
x, y, z = DANI_RING.gens()


def test_frozen_step_values():
    # [DERIVED] numpy.roots([3, 5, 1]) -> -1.43425855, -0.23240812; the smaller root is taken
    assert abs(solve_step_f(2, 1, FloatBackend()) - (-0.23240812075600178)) < 1e-12
    # [DERIVED] numpy.roots([2, 3, -2]) -> -2, 0.5
    f = solve_step_f(1, 3, EXACT)
    assert f == Fraction(1, 2)
    assert step_g_value(1, 3, f) == Fraction(-2, 3)


def test_irrational_step_is_inexact():
    with pytest.raises(InexactError):
        build_dani_program(InjectionTable(((2, 1),)), EXACT)


def test_one_to_three_end_to_end():
    table = InjectionTable(((1, 3),))
    rep = verify_dani_program(table, build_dani_program(table), EXACT)
    assert rep.passed
    assert rep.cases[0].trace[-1] == dani_point(3)


@given(mats, qs)
def test_sl2_quotient_intertwines(m, t):
    p = sl2_to_dani(m)
    assert p.relation() == 0
    assert sl2_to_dani(flow_basic(Generator.W, t, m)) == flow_psi(t, p)
    assert sl2_to_dani(flow_basic(Generator.V, t, m)) == flow_phi(t, p)


@given(mats, st.floats(-1, 1))
def test_scaling_intertwines(m, t):
    mf = Mat2(*(complex(v) for v in m.entries))
    lhs = sl2_to_dani(flow_basic(Generator.U, t, mf))
    rhs = flow_scale(-t, sl2_to_dani(mf))
    assert lhs.distance(rhs) <= 1e-12 * max(1, abs(rhs.x), abs(rhs.y))


def test_fields_annihilate_relation():
    assert all(field_annihilates_relation())
    # the constant-coefficient reading 2 dx - 2 dy is not tangent to the surface
    assert not VectorField(DANI_RING, {"x": 2, "y": -2})(RELATION).is_zero()


@pytest.mark.parametrize("name", ["phi", "psi"])
def test_fields_are_flow_derivatives(name):
    flow = {"phi": flow_phi, "psi": flow_psi}[name]
    p = DanielewskiPoint.of(2, 3, 3)
    t = G(Fraction(1, 7))
    moved = flow(t, p)
    X = dani_fields()[name]
    # quadratic in t: (flow_t - flow_{-t}) / 2t is exactly the field
    back = flow(-t, p)
    for v in "xyz":
        want = X.component(v).evaluate(p.coords())
        assert (getattr(moved, v) - getattr(back, v)) / (2 * t) == want


def test_scale_field_is_flow_derivative():
    p = DanielewskiPoint(complex(2), complex(3), complex(3))
    h = 1e-6
    plus, minus = flow_scale(h, p), flow_scale(-h, p)
    X = dani_fields()["scale"]
    for v in "xy":
        deriv = (getattr(plus, v) - getattr(minus, v)) / (2 * h)
        assert abs(deriv - X.component(v).evaluate(p.coords())) < 1e-6


def test_surface_check():
    with pytest.raises(NotOnSurfaceError):
        DanielewskiPoint.of(1, 1, 1)


@pytest.mark.parametrize("seed", range(3))
def test_double_precision_small_tables(seed):
    rng = random.Random(seed)
    pairs = tuple(zip(rng.sample(range(1, 20), 4), rng.sample(range(1, 20), 4)))
    fb = FloatBackend(1e-9)
    table = InjectionTable(pairs)
    assert verify_dani_program(table, build_dani_program(table, fb), fb).passed
