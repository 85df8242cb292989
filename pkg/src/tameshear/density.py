"""Symbolic certificates for the Lie-algebra computations on C^2 and on SL2.

The plane ring has coordinates (z, w), the trig pair s = sin(p z),
c = cos(p z) with p standing for 2*pi, and the radicals r3 = sqrt 3,
r5 = sqrt 5. Taylor data at (j, 0), j an integer, is read off after the
shift z -> j + z, using sin(p(j + z)) = sin(p z) and cos(p(j + z)) = cos(p z)
truncated at degree 3.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .danielewski import field_annihilates_relation
from .fields import Certificate, VectorField, lie_bracket
from .flows import Generator, sl2_field
from .interpolation import newton_build
from .ring import Poly, Ring, Trig, radical_inverse, ring_derive
from .scalar import GaussianRational
from .spectral import spectral_kernel_certificates

PLANE = Ring(["z", "w"], trig=Trig("z"), radicals={"r3": 3, "r5": 5})
POLY_PLANE = Ring(["z", "w"])
z, w, s, c, p, r3, r5 = PLANE.gens()
TAYLOR_CAP = 3


# -- SL2, Danielewski and spectral fields ------------------------------------------

def sl2_bracket_relations_check():
    """Certificates for the sl2 commutation relations of the left-multiplication fields.

    The relation [U, W] = 2W is certified literally and fails; Jacobi together
    with [V, W] = U and [U, V] = 2V forces [U, W] = -2W, certified separately.
    """
    V, W, U = (sl2_field(g) for g in (Generator.V, Generator.W, Generator.U))
    rows = [("[V,W] = U", lie_bracket(V, W), U),
            ("[U,V] = 2V", lie_bracket(U, V), V * 2),
            ("[U,W] = 2W", lie_bracket(U, W), W * 2),
            ("[U,W] = -2W", lie_bracket(U, W), W * -2)]
    out = []
    for name, lhs, rhs in rows:
        ok = lhs == rhs
        detail = "" if ok else f"lhs = {lhs!r}"
        data = {"known_defect": True} if name == "[U,W] = 2W" else {}
        out.append(Certificate(name, ok, detail=detail, data=data))
    return out


def dani_field_checks():
    return field_annihilates_relation()


def spectral_field_checks():
    return spectral_kernel_certificates()


# -- Z identity and the product-bracket (KK) instance ------------------------------

def z_identity_check(b: Poly) -> Certificate:
    """[b dw, w dz] + b' w dw == b dz for a function b of z."""
    ring = b.ring
    zz, ww = ring.gen("z"), ring.gen("w")
    lhs = (lie_bracket(VectorField(ring, {"w": b}), VectorField(ring, {"z": ww}))
           + VectorField(ring, {"w": ring_derive(b, "z") * ww}))
    rhs = VectorField(ring, {"z": b})
    ok = lhs == rhs
    return Certificate(f"Z identity with b = {b!r}", ok, detail="" if ok else f"lhs = {lhs!r}")


def z_identity_checks():
    return [z_identity_check(s), z_identity_check(POLY_PLANE.gen("z")),
            z_identity_check(POLY_PLANE.one())]


def kk_identity_check(k: int, l: int):
    """Returns (certificate, sign) for [z^k U, w^l W] - [z^k V, w^(l+1) W] = sign z^k w^l s W.

    V = s dw, U = s w dw, W = w dz; sign is 0 when neither sign works.
    """
    V = VectorField(PLANE, {"w": s})
    U = VectorField(PLANE, {"w": s * w})
    W = VectorField(PLANE, {"z": w})
    lhs = lie_bracket(U * z ** k, W * w ** l) - lie_bracket(V * z ** k, W * w ** (l + 1))
    rhs = W * (z ** k * w ** l * s)
    sign = 1 if lhs == rhs else -1 if lhs == rhs * -1 else 0
    cert = Certificate(f"KK identity k={k}, l={l}", sign != 0,
                       detail="" if sign else f"lhs = {lhs!r}", data={"sign": sign})
    return cert, sign


def kk_sweep(kmax: int = 4, lmax: int = 4) -> Certificate:
    signs = {}
    for k in range(kmax + 1):
        for l in range(lmax + 1):
            signs[(k, l)] = kk_identity_check(k, l)[1]
    values = set(signs.values())
    ok = len(values) == 1 and 0 not in values
    return Certificate(f"KK identity with one global sign for k, l <= {kmax}, {lmax}", ok,
                       detail="" if ok else f"signs {signs}",
                       data={"sign": values.pop() if ok else 0})


# -- Taylor data at (j, 0) --------------------------------------------------------

def local_expansion(f: Poly, j: int, cap: int = TAYLOR_CAP) -> Poly:
    """Taylor polynomial of f at (j, 0) in the shifted coordinates, total degree <= cap."""
    ring = f.ring
    mapping = {"z": ring.gen("z") + j}
    if ring.trig is not None:
        zz, pp = ring.gen("z"), ring.gen(ring.trig.freq)
        # exact through degree 3 in z
        mapping[ring.trig.sin] = pp * zz - pp ** 3 * zz ** 3 / 6
        mapping[ring.trig.cos] = 1 - pp ** 2 * zz ** 2 / 2
    return f.substitute(mapping).truncate(["z", "w"], cap)


class NonVanishingError(ValueError):
    pass


@dataclass(frozen=True)
class LinearPart:
    """(alpha z + beta w) dz + (gamma z + delta w) dw at (j, 0); entries are ring constants."""

    alpha: object
    beta: object
    gamma: object
    delta: object

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma, self.delta)

    def __eq__(self, other):
        return all(_const(x) == _const(y) for x, y in zip(self.as_tuple(), other.as_tuple()))

    def __hash__(self):
        return hash(tuple(str(x) for x in self.as_tuple()))


def _const(x) -> Poly:
    return x if isinstance(x, Poly) else PLANE.const(x)


def linear_part_at(X: VectorField, j: int) -> LinearPart:
    ring = X.ring
    zs = local_expansion(X.component("z"), j)
    ws = local_expansion(X.component("w"), j)
    for comp in (zs, ws):
        if not comp.coefficient({"z": 0, "w": 0}).is_zero():
            raise NonVanishingError(f"field does not vanish at ({j}, 0)")
    co = lambda e, mono: _lift_plane(e.coefficient(mono), ring)
    return LinearPart(co(zs, {"z": 1, "w": 0}), co(zs, {"z": 0, "w": 1}),
                      co(ws, {"z": 1, "w": 0}), co(ws, {"z": 0, "w": 1}))


def _lift_plane(e: Poly, ring: Ring) -> Poly:
    if ring == PLANE:
        return e
    out = PLANE.zero()
    for exps, coef in e.terms.items():
        mono = PLANE.const(coef)
        for v, k in zip(ring.variables, exps):
            if k:
                mono = mono * PLANE.gen(v) ** k
        out = out + mono
    return out


def order_vanishing(X: VectorField, j: int):
    """Minimal total degree of the Taylor expansion at (j, 0), capped at 3; inf for X = 0."""
    if X.is_zero():
        return math.inf
    order = TAYLOR_CAP
    for f in X.components.values():
        loc = local_expansion(f, j)
        for exps, _ in loc.terms.items():
            deg = exps[loc.ring.index["z"]] + exps[loc.ring.index["w"]]
            order = min(order, deg)
    return order


# -- the 4x4 spanning system ------------------------------------------------------

def spanning_matrix():
    """Rows act on (a_j, b_j, c_j, d_j); columns are the contributions of V, Z, V', W'."""
    i5, i3 = r5 / 5, r3 / 3
    one, zero = PLANE.one(), PLANE.zero()
    return [[zero, one, one, one],
            [zero, zero, -i5, -i3],
            [one, zero, r5, r3],
            [zero, zero, -one, -one]]


def _det(m):
    if len(m) == 1:
        return m[0][0]
    total = PLANE.zero()
    for col, entry in enumerate(m[0]):
        if entry.is_zero():
            continue
        minor = [row[:col] + row[col + 1:] for row in m[1:]]
        term = entry * _det(minor)
        total = total + term if col % 2 == 0 else total - term
    return total


SPANNING_DET = r5 / 5 - r3 / 3


def spanning_det_certificate():
    """Exact determinant, plus float checks against sqrt and against the printed decimal.

    1/sqrt5 - 1/sqrt3 = -0.1301367...; the decimal -0.130189 quoted alongside
    it is off in the fifth digit, so that literal check is flagged as a known defect.
    """
    det = _det(spanning_matrix())
    num = complex(det.evaluate({}))
    ref = 1 / math.sqrt(5) - 1 / math.sqrt(3)
    exact_ok = det == SPANNING_DET
    float_ok = abs(num - ref) <= 1e-12
    printed_ok = abs(num.real + 0.130189) <= 1e-9 and abs(num.imag) <= 1e-9
    return [
        Certificate("spanning matrix determinant = 1/sqrt5 - 1/sqrt3 (exact)", exact_ok,
                    detail=f"det = {det!r}", data={"det": det}),
        Certificate("spanning determinant float value matches 1/sqrt5 - 1/sqrt3", float_ok,
                    detail=f"{num.real:.15f} vs {ref:.15f}"),
        Certificate("spanning determinant float value within 1e-9 of -0.130189", printed_ok,
                    detail=f"{num.real:.15f}", data={"known_defect": True}),
    ]


def _is_radical_const(e: Poly) -> bool:
    return e.variables_used() <= set(PLANE.radicals)


def _inverse(e: Poly) -> Poly:
    if e.is_constant():
        return PLANE.const(GaussianRational(1) / e.constant_term())
    return radical_inverse(e)


def mat_vec(m, v):
    return [sum((row[i] * v[i] for i in range(len(v))), PLANE.zero()) for row in m]


@dataclass(frozen=True)
class SpanningSolution:
    a: Poly
    b: Poly
    c: Poly
    d: Poly

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)


def spanning_matrix_solve(target: LinearPart) -> SpanningSolution:
    """Gaussian elimination over Q(i)(sqrt3, sqrt5)[p]; pivots are radical constants."""
    m = [row[:] + [_const(t)] for row, t in zip(spanning_matrix(), target.as_tuple())]
    n = 4
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("spanning matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        if not _is_radical_const(m[col][col]):
            raise ValueError("pivot outside Q(i)(sqrt3, sqrt5)")
        inv = _inverse(m[col][col])
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and not m[r][col].is_zero():
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return SpanningSolution(*(m[i][n] for i in range(n)))


def spanning_residual(target: LinearPart, sol: SpanningSolution):
    """Entries of M sol - target (all zero for an exact solution)."""
    got = mat_vec(spanning_matrix(), list(sol.as_tuple()))
    return [g - _const(t) for g, t in zip(got, target.as_tuple())]


# -- matching fields and the order-2 step ----------------------------------------

def vanishing_poly(points) -> Poly:
    return vanishing_poly_at(points, z)


def _q_prime(points, j):
    out = 1
    for k in points:
        if k != j:
            out *= j - k
    return out


def profile(points, slopes) -> "callable":
    """u |-> q(u) h(u) with q vanishing on ``points`` and derivative slopes[j] at j."""
    points = list(points)
    q_vals = [_q_prime(points, j) for j in points]
    h = newton_build(points, [_const(slopes[j]) / qp for j, qp in zip(points, q_vals)])

    def at(u: Poly) -> Poly:
        return vanishing_poly_at(points, u) * h(u)

    return at


def vanishing_poly_at(points, u: Poly) -> Poly:
    q = PLANE.one()
    for j in points:
        q = q * (u - j)
    return q


def matched_fields(solutions: dict):
    """The four fields V, Z, V', W' whose linear parts at each j realise ``solutions[j]``.

    Z is produced through the bracket identity, not written down directly.
    """
    points = sorted(solutions)
    a = profile(points, {j: sol.a for j, sol in solutions.items()})
    b = profile(points, {j: sol.b for j, sol in solutions.items()})
    cf = profile(points, {j: sol.c for j, sol in solutions.items()})
    df = profile(points, {j: sol.d for j, sol in solutions.items()})
    bz = b(z)
    V = VectorField(PLANE, {"w": a(z)})
    Z = (lie_bracket(VectorField(PLANE, {"w": bz}), VectorField(PLANE, {"z": w}))
         + VectorField(PLANE, {"w": ring_derive(bz, "z") * w}))
    c_arg = z - w * r5 / 5
    d_arg = z - w * r3 / 3
    Vp = VectorField(PLANE, {"z": cf(c_arg), "w": cf(c_arg) * r5})
    Wp = VectorField(PLANE, {"z": df(d_arg), "w": df(d_arg) * r3})
    return V, Z, Vp, Wp


def random_vanishing_field(rng: random.Random, points=range(-2, 3), degree: int = 2,
                           bound: int = 5) -> VectorField:
    """q(z) A + w B with random integer polynomials A, B of the given degree."""
    q = vanishing_poly(points)

    def rand_poly():
        out = PLANE.zero()
        for i in range(degree + 1):
            for k in range(degree + 1 - i):
                coef = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
                out = out + PLANE.const(coef) * z ** i * w ** k
        return out

    return VectorField(PLANE, {"z": q * rand_poly() + w * rand_poly(),
                               "w": q * rand_poly() + w * rand_poly()})


def order_two_step(xi: VectorField, points=range(-2, 3), perturb=None):
    """Subtract the matched fields from xi; returns (remainder, {j: order}).

    ``perturb`` names a point j whose prescribed slope a_j is nudged (negative control).
    """
    points = list(points)
    sols = {j: spanning_matrix_solve(linear_part_at(xi, j)) for j in points}
    if perturb is not None:
        sol = sols[perturb]
        sols[perturb] = SpanningSolution(sol.a + Fraction(1, 1000), sol.b, sol.c, sol.d)
    V, Z, Vp, Wp = matched_fields(sols)
    rest = xi - V - Z - Vp - Wp
    return rest, {j: order_vanishing(rest, j) for j in points}


def density_certificates(seed: int = 0, order_samples: int = 3, solve_samples: int = 20,
                         perturb=None):
    """Everything the verify-density suite reports."""
    out = []
    out += sl2_bracket_relations_check()
    out += dani_field_checks()
    out += spectral_field_checks()
    out += z_identity_checks()
    out.append(kk_sweep())
    out += spanning_det_certificate()
    rng = random.Random(seed)
    bad = None
    for _ in range(solve_samples):
        target = LinearPart(*(random_radical_const(rng) for _ in range(4)))
        sol = spanning_matrix_solve(target)
        if not all(r.is_zero() for r in spanning_residual(target, sol)):
            bad = target
            break
    out.append(Certificate(f"spanning solve round-trips {solve_samples} random targets",
                           bad is None, detail="" if bad is None else repr(bad)))
    worst = []
    for i in range(order_samples):
        _, orders = order_two_step(random_vanishing_field(rng), perturb=perturb)
        worst.append(min(orders.values()))
    out.append(Certificate(f"order-2 vanishing after matching ({order_samples} random fields)",
                           all(o >= 2 for o in worst), data={"orders": worst}))
    return out


def random_radical_const(rng: random.Random, bound: int = 6) -> Poly:
    def q():
        return GaussianRational(Fraction(rng.randint(-bound, bound), rng.randint(1, 4)),
                                Fraction(rng.randint(-bound, bound), rng.randint(1, 4)))
    return PLANE.const(q()) + PLANE.const(q()) * r3 + PLANE.const(q()) * r5 + PLANE.const(q()) * r3 * r5
