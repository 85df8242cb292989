"""Finite quotients: SL2/{+-I} and the Danielewski surface modulo an involution.

A left-multiplication shear descends to SL2/E once its time function is
E-invariant. Starting from any interpolant f~ we use the average
f(M) = (1/#E) sum_e f~(M e); prescribing f~ at every representative of an
orbit (or at one, when the kernel coordinate cannot tell them apart) makes
the average hit the required values.

The same recipe works for iota(x, y, z) = (-x, -y, 1 - z) on z^2 - z = xy,
which commutes with the phi and psi flows.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .danielewski import (DANI_RING, DaniShear, DanielewskiPoint, build_dani_construction,
                          check_dani_row, dani_fields, dani_point)
from .fields import Certificate
from .flows import ShearFunction, apply_program, sl2_coords
from .interpolation import newton_build
from .matrix import Mat2, mat_mul, random_sl2
from .report import CaseRecord, Report
from .scalar import EXACT, Backend
from .tame_sl2 import InjectionTable, build_sl2_construction, tame_point


class IncompleteOrbitError(KeyError):
    pass


class QuotientInapplicableError(ValueError):
    """Two orbits share a kernel coordinate value but need different shear values."""


@dataclass(frozen=True)
class FiniteRightAction:
    """A finite matrix group acting on SL2 by x |-> x e."""

    elements: tuple

    def __post_init__(self):
        els = list(self.elements)
        if not els:
            raise ValueError("empty group")
        one = els[0].a * 0 + 1
        ident = Mat2(one, one * 0, one * 0, one)
        if not any(_eq(e, ident) for e in els):
            raise ValueError("group must contain the identity")
        for e in els:
            if not any(_eq(e.inverse_sl2(), f) for f in els):
                raise ValueError(f"{e} has no inverse in the group")
            for f in els:
                if not any(_eq(mat_mul(e, f), g) for g in els):
                    raise ValueError("group is not closed under multiplication")

    @classmethod
    def plus_minus(cls, backend: Backend = EXACT):
        return cls((Mat2.identity(backend), -Mat2.identity(backend)))

    def orbit(self, m: Mat2):
        return [mat_mul(m, e) for e in self.elements]

    def __len__(self):
        return len(self.elements)


def _eq(x: Mat2, y: Mat2) -> bool:
    return all(p == q for p, q in zip(x.entries, y.entries))


def average_function(values: dict, E: FiniteRightAction) -> dict:
    """Average a table {point: value} over E-orbits. Points must be hashable Mat2."""
    out = {}
    for x in values:
        total = None
        for y in E.orbit(x):
            if y not in values:
                raise IncompleteOrbitError(f"orbit of {x} misses {y}")
            total = values[y] if total is None else total + values[y]
        out[x] = total / len(E)
    return out


class AveragedShear:
    """Time function p |-> mean of inner.value(T(p)) over the transforms T.

    Everything else (generator / flow, coordinate, table) is the inner shear's.
    """

    def __init__(self, inner, transforms, label: str = ""):
        self.inner = inner
        self.transforms = tuple(transforms)
        self.label = label

    def __getattr__(self, name):
        return getattr(self.inner, name)

    def value(self, p):
        vals = [self.inner.value(T(p)) for T in self.transforms]
        total = vals[0]
        for v in vals[1:]:
            total = total + v
        return total / len(vals)

    def table(self):
        return {**self.inner.table(), "averaged_over": self.label}


def _merge_nodes(pairs, backend: Backend, what: str):
    """Deduplicate (node, value) pairs; equal nodes must carry equal values."""
    nodes, values = [], []
    for u, v in pairs:
        hit = None
        for i, w in enumerate(nodes):
            if (u == w) if backend.exact else abs(u - w) <= backend.tol:
                hit = i
                break
        if hit is None:
            nodes.append(u)
            values.append(v)
        elif not backend.close(values[hit], v):
            raise QuotientInapplicableError(
                f"{what}: coordinate value {u} needed for values {values[hit]} and {v}")
    return nodes, values


# -- SL2 / {+-I} -------------------------------------------------------------------

def psl2_shear_builder(E: FiniteRightAction, mirror: bool = True):
    """Shear builder for build_sl2_construction that averages over E.

    With ``mirror=False`` only the representative itself gets a node; this is
    the negative control (the average then misses the target).
    """
    transforms = [(lambda m, e=e: mat_mul(m, e)) for e in E.elements]

    def build(gen, coordinate, nodes, values, backend, points=None):
        if points is None:
            raise ValueError("the quotient builder needs the data points")
        pairs = []
        for m, v in zip(points, values):
            images = E.orbit(m) if mirror else [m]
            for y in images:
                pairs.append((coordinate.evaluate(sl2_coords(y)), v))
        nodes, vals = _merge_nodes(pairs, backend, f"{gen.name}-shear in {coordinate!r}")
        tol = None if backend.exact else backend.tol
        inner = ShearFunction(gen, coordinate, newton_build(nodes, vals, tol=tol, leja=not backend.exact))
        return AveragedShear(inner, transforms, "right multiplication by {+-I}")

    return build


def descent_certificate(step, E: FiniteRightAction, samples, name: str) -> Certificate:
    """S(M e) == S(M) e for every sample M and every e (exact equality)."""
    for m in samples:
        image = step.apply(m)
        for e in E.elements:
            lhs = step.apply(mat_mul(m, e))
            rhs = mat_mul(image, e)
            if not _eq(lhs, rhs):
                return Certificate(name, False, detail=f"fails at M={m}, e={e}",
                                   data={"M": m, "e": e, "lhs": lhs, "rhs": rhs})
    return Certificate(name, True, data={"samples": len(samples)})


def verify_psl2_tame(table: InjectionTable, backend: Backend = EXACT, mirror: bool = True,
                     seed: int = 0, descent_samples: int = 4, post_build=None) -> Report:
    """``post_build(program)`` may replace the built program (negative controls)."""
    report = Report("verify-psl2", backend=backend, config={"mirror": mirror, "seed": seed})
    E = FiniteRightAction.plus_minus(backend)
    try:
        cons = build_sl2_construction(table, backend, shear_builder=psl2_shear_builder(E, mirror))
    except QuotientInapplicableError as exc:
        report.certify(Certificate("construction applicable", False, detail=str(exc)))
        return report
    prog = post_build(cons.program) if post_build else cons.program
    report.attachments["shears"] = prog.describe()
    if backend.exact:
        rng = random.Random(seed)
        samples = [random_sl2(rng, backend) for _ in range(descent_samples)]
        samples += [tame_point(n, backend) for n, _ in table][:descent_samples]
        for i, step in enumerate(prog.steps):
            report.certify(descent_certificate(step, E, samples, f"step {i + 1} commutes with -I"))
    for i, (n, ln) in enumerate(table):
        target_class = E.orbit(tame_point(ln, backend))
        finals = []
        ok = True
        for rep in E.orbit(tame_point(n, backend)):
            final, _ = apply_program(prog, rep)
            finals.append(final)
            if backend.exact:
                ok &= any(_eq(final, t) for t in target_class)
            else:
                ok &= min((final - t).max_abs() for t in target_class) <= backend.tol
        res = max(min((f - t).max_abs() for t in target_class) for f in finals)
        report.add(CaseRecord(i, {"n": n, "l": ln}, 0 if ok and backend.exact else res, ok,
                              extra={"finals": [str(f) for f in finals]}))
    return report


# -- Danielewski surface modulo iota ------------------------------------------------

def iota(p: DanielewskiPoint) -> DanielewskiPoint:
    return DanielewskiPoint(-p.x, -p.y, 1 - p.z)


_x, _y, _z = DANI_RING.gens()
IOTA_SUBS = {"x": -_x, "y": -_y, "z": 1 - _z}


def iota_equivariance_certificates():
    """d(iota) Y = Y o iota, i.e. -Y_i(p) = Y_i(iota p), for every descended field."""
    out = []
    for name, Y in dani_fields().items():
        bad = [v for v in ("x", "y", "z")
               if not (Y.component(v).substitute(IOTA_SUBS) + Y.component(v)).is_zero()]
        out.append(Certificate(f"{name} field is iota-equivariant", not bad,
                               detail=f"components {bad} differ" if bad else ""))
    return out


def involution_certificate(samples) -> Certificate:
    for p in samples:
        if iota(iota(p)) != p:
            return Certificate("iota o iota = id", False, detail=str(p))
        if iota(p).relation() != p.relation():
            return Certificate("iota preserves the surface", False, detail=str(p))
    return Certificate("iota o iota = id and iota preserves the surface", True)


def dani_shear_builder(mirror: bool = True):
    """Shear builder for build_dani_construction averaging over {id, iota}."""

    def build(flow, coordinate, nodes, values, backend, points=None):
        if points is None:
            raise ValueError("the quotient builder needs the data points")
        pairs = []
        for p, v in zip(points, values):
            for q in ((p, iota(p)) if mirror else (p,)):
                pairs.append((coordinate.evaluate(q.coords()), v))
        nodes, vals = _merge_nodes(pairs, backend, f"{flow}-shear in {coordinate!r}")
        tol = None if backend.exact else backend.tol
        inner = DaniShear(flow, coordinate, newton_build(nodes, vals, tol=tol, leja=not backend.exact))
        return AveragedShear(inner, (lambda p: p, iota), "iota")

    return build


def _random_dani_points(rng, count):
    pts = []
    for _ in range(count):
        x = rng.randint(-9, 9) or 1
        z = rng.randint(-9, 9)
        # y = (z^2 - z)/x keeps the point on the surface
        pts.append(DanielewskiPoint.of(x, Fraction(z * z - z, x), z))
    return pts


def collision_certificate(traces, backend: Backend) -> Certificate:
    """No trace point equals the iota-image of any trace point at the same step."""
    steps = len(traces[0]) if traces else 0
    for s in range(steps):
        layer = [tr[s] for tr in traces]
        images = [iota(p) for p in layer]
        for i, p in enumerate(layer):
            for j, q in enumerate(images):
                hit = (p == q) if backend.exact else p.distance(q) <= backend.tol
                if hit:
                    return Certificate("no orbit collisions", False,
                                       detail=f"step {s}: row {i} meets iota(row {j})",
                                       data={"step": s, "point": p, "image_of": j})
    return Certificate("no orbit collisions", True, data={"steps": steps, "rows": len(traces)})


def verify_dani_quotient_tame(table: InjectionTable, backend: Backend = EXACT,
                              mirror: bool = True, seed: int = 0, post_build=None) -> Report:
    report = Report("verify-dani-quotient", backend=backend, config={"mirror": mirror, "seed": seed})
    for cert in iota_equivariance_certificates():
        report.certify(cert)
    report.certify(involution_certificate(_random_dani_points(random.Random(seed), 8)))
    try:
        cons = build_dani_construction(table, backend, shear_builder=dani_shear_builder(mirror))
    except QuotientInapplicableError as exc:
        report.certify(Certificate("construction applicable", False, detail=str(exc)))
        return report
    prog = post_build(cons.program) if post_build else cons.program
    report.attachments["shears"] = prog.describe()
    traces = []
    for i, (n, ln) in enumerate(table):
        start = dani_point(n, backend)
        targets = [dani_point(ln, backend), iota(dani_point(ln, backend))]
        rec = check_dani_row(i, n, ln, prog, backend, start=start, targets=targets)
        mirror_rec = check_dani_row(i, n, ln, prog, backend, start=iota(start), targets=targets)
        traces.append(rec.trace)
        ok = rec.passed and mirror_rec.passed
        res = max(rec.residual_value(), mirror_rec.residual_value())
        report.add(CaseRecord(i, {"n": n, "l": ln}, 0 if ok and backend.exact else res, ok,
                              trace=rec.trace, extra={"from_representative": rec.passed,
                                                      "from_iota_image": mirror_rec.passed}))
    report.certify(collision_certificate(traces, backend))
    return report
