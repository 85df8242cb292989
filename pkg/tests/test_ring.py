import cmath
import math

from hypothesis import given, strategies as st

from tameshear.ring import Poly, Ring, Trig, radical_inverse, ring_derive, ring_normal_form

R = Ring(["x", "y"])
T = Ring(["z"], trig=Trig("z"))
Q = Ring(["z"], radicals={"r3": 3, "r5": 5})
x, y = R.gens()

small = st.integers(-4, 4)
monos = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(monos, small, max_size=5).map(lambda d: Poly(R, d))
points = st.tuples(st.integers(-5, 5), st.integers(-5, 5))


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == 0


@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(f, g, pt):
    vals = {"x": pt[0], "y": pt[1]}
    assert (f * g).evaluate(vals) == f.evaluate(vals) * g.evaluate(vals)
    assert (f + g).evaluate(vals) == f.evaluate(vals) + g.evaluate(vals)


@given(polys, polys)
def test_leibniz(f, g):
    for v in ("x", "y"):
        assert ring_derive(f * g, v) == ring_derive(f, v) * g + f * ring_derive(g, v)


@given(polys)
def test_substitution_composes(f):
    g = f.substitute({"x": x + y})
    assert g.substitute({"x": x - y}) == f


def test_trig_normal_form():
    z, s, c, p = T.gens()
    assert s * s + c * c == 1
    assert (s ** 3).degree(["s"]) == 1
    assert ring_derive(s, "z") == p * c
    assert ring_derive(c, "z") == -p * s


@given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 4), st.integers(0, 4), st.integers(0, 1)),
                       small, max_size=5),
       st.floats(-1, 1))
def test_trig_normal_form_is_numerically_faithful(terms, t):
    f = Poly(T, terms, normalize=False)
    raw = sum(coef * t ** a * math.sin(2 * math.pi * t) ** b * math.cos(2 * math.pi * t) ** cc * (2 * math.pi) ** d
              for (a, b, cc, d), coef in terms.items())
    got = ring_normal_form(Poly(T, terms)).evaluate({"z": complex(t)})
    assert abs(got - raw) <= 1e-9 * max(1.0, abs(raw))


def test_radicals():
    z, r3, r5 = Q.gens()
    assert r5 * r5 == 5
    e = 2 + r3 - 3 * r5 + r3 * r5
    assert e * radical_inverse(e) == 1
    assert abs(complex((r5 / 5 - r3 / 3).evaluate({})) - (1 / math.sqrt(5) - 1 / math.sqrt(3))) < 1e-15


def test_trig_evaluation_defaults_to_two_pi():
    z, s, c, p = T.gens()
    assert abs(s.evaluate({"z": 0.25j}) - cmath.sin(2 * math.pi * 0.25j)) < 1e-12
