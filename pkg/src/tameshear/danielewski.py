"""The Danielewski surface z^2 - z - xy = 0 and its three-step tame construction.

The left multiplications of SL2(C) descend, through the invariants
z = ad, x = ab, y = cd, to the complete fields

    y d/dz + (2z - 1) d/dx      flow phi_t(x, y, z) = (x + t(2z-1) + t^2 y, y, z + t y)
    x d/dz + (2z - 1) d/dy      flow psi_t(x, y, z) = (x, y + t(2z-1) + t^2 x, z + t x)
    2x d/dx - 2y d/dy           flow (e^{2t} x, e^{-2t} y, z)

and (n, 0, 1) |-> (l(n), 0, 1) is realised as psi_1, then phi with time
f(y - 1), then psi with time g(x).
"""
from __future__ import annotations

from dataclasses import dataclass

from .fields import Certificate, VectorField
from .flows import AutomorphismProgram, apply_program
from .interpolation import newton_build
from .matrix import Mat2
from .report import CaseRecord, Report
from .ring import Poly, Ring
from .scalar import EXACT, Backend, BackendMismatchError, InexactError, is_exact, cexp, pick_root, quadratic_roots
from .tame_sl2 import ConstructionError, InjectionTable

DANI_RING = Ring(["x", "y", "z"])
_x, _y, _z = DANI_RING.gens()
RELATION = _z ** 2 - _z - _x * _y


class NotOnSurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class DanielewskiPoint:
    x: object
    y: object
    z: object

    @classmethod
    def of(cls, x, y, z, backend: Backend = EXACT, check: bool = True):
        p = cls(backend.coerce(x), backend.coerce(y), backend.coerce(z))
        if check and not backend.is_zero(p.relation()):
            raise NotOnSurfaceError(f"{p} does not satisfy z^2 - z - xy = 0")
        return p

    @property
    def exact(self) -> bool:
        flags = {is_exact(v) for v in (self.x, self.y, self.z)}
        if len(flags) != 1:
            raise BackendMismatchError("point mixes exact and floating coordinates")
        return flags.pop()

    def relation(self):
        return self.z * self.z - self.z - self.x * self.y

    def coords(self) -> dict:
        return {"x": self.x, "y": self.y, "z": self.z}

    def __sub__(self, other):
        return (self.x - other.x, self.y - other.y, self.z - other.z)

    def distance(self, other) -> float:
        return max(abs(complex(v)) for v in self - other)

    def __str__(self):
        return f"({self.x}, {self.y}, {self.z})"


def _time(t, p: DanielewskiPoint):
    if is_exact(t) != p.exact:
        raise BackendMismatchError("flow time and point use different backends")
    return t


def flow_phi(t, p: DanielewskiPoint) -> DanielewskiPoint:
    t = _time(t, p)
    return DanielewskiPoint(p.x + t * (2 * p.z - 1) + t * t * p.y, p.y, p.z + t * p.y)


def flow_psi(t, p: DanielewskiPoint) -> DanielewskiPoint:
    t = _time(t, p)
    return DanielewskiPoint(p.x, p.y + t * (2 * p.z - 1) + t * t * p.x, p.z + t * p.x)


def flow_scale(t, p: DanielewskiPoint) -> DanielewskiPoint:
    t = _time(t, p)
    if p.exact:
        if t != 0:
            raise InexactError("scaling flow with nonzero time is not exact")
        return p
    return DanielewskiPoint(cexp(2 * t) * p.x, cexp(-2 * t) * p.y, p.z)


FLOWS = {"phi": flow_phi, "psi": flow_psi, "scale": flow_scale}


def dani_fields():
    """The three complete fields, keyed like FLOWS."""
    return {
        "phi": VectorField(DANI_RING, {"z": _y, "x": 2 * _z - 1}),
        "psi": VectorField(DANI_RING, {"z": _x, "y": 2 * _z - 1}),
        "scale": VectorField(DANI_RING, {"x": 2 * _x, "y": -2 * _y}),
    }


# kernel coordinates each flow may be sheared by
_KERNEL_VARS = {"phi": {"y"}, "psi": {"x"}, "scale": set()}


@dataclass(frozen=True)
class DaniShear:
    flow: str
    coordinate: Poly
    poly: object

    def __post_init__(self):
        if not self.coordinate.variables_used() <= _KERNEL_VARS[self.flow]:
            raise ValueError(f"{self.coordinate!r} is not an invariant of the {self.flow} flow")

    def value(self, p: DanielewskiPoint):
        return self.poly(self.coordinate.evaluate(p.coords()))

    def table(self):
        return {"flow": self.flow, "coordinate": repr(self.coordinate), **self.poly.to_dict()}


@dataclass(frozen=True)
class DaniFlow:
    flow: str
    time: object

    def apply(self, p):
        return FLOWS[self.flow](self.time, p)

    def describe(self):
        return {"kind": "basic", "flow": self.flow, "time": str(self.time)}


@dataclass(frozen=True)
class DaniShearFlow:
    shear: object

    def apply(self, p):
        return FLOWS[self.shear.flow](self.shear.value(p), p)

    def describe(self):
        return {"kind": "shear", **self.shear.table()}


def solve_step_f(n: int, ln: int, backend: Backend = EXACT):
    """Root f of (n+1) f^2 + (2n+1) f + (n - l) = 0 by the fixed branch rule."""
    if n < 1 or ln < 1:
        raise ValueError("indices must be positive")
    co = backend.coerce
    return pick_root(quadratic_roots(co(n + 1), co(2 * n + 1), co(n - ln), backend))


def step_g_value(n: int, ln: int, f):
    return (1 - (n + 1) * (1 + f)) / ln


def dani_point(n, backend: Backend = EXACT) -> DanielewskiPoint:
    return DanielewskiPoint.of(n, 0, 1, backend)


def _plain_builder(flow, coordinate, nodes, values, backend, points=None):
    tol = None if backend.exact else backend.tol
    return DaniShear(flow, coordinate, newton_build(nodes, values, tol=tol, leja=not backend.exact))


@dataclass(frozen=True)
class DaniConstruction:
    table: InjectionTable
    program: AutomorphismProgram
    f_values: tuple
    g_values: tuple


def build_dani_construction(table: InjectionTable, backend: Backend = EXACT,
                            shear_builder=None) -> DaniConstruction:
    """Exact backend raises InexactError when some f(n) is irrational."""
    build = shear_builder or _plain_builder
    co = backend.coerce
    ns = [n for n, _ in table]
    ls = [ln for _, ln in table]
    fs = [solve_step_f(n, ln, backend) for n, ln in table]
    gs = [step_g_value(n, ln, f) for (n, ln), f in zip(table, fs)]
    one = co(1)
    pts = [flow_psi(one, dani_point(n, backend)) for n in ns]
    step1 = DaniFlow("psi", one)
    step2 = DaniShearFlow(build("phi", _y - 1, [co(n) for n in ns], fs, backend, points=pts))
    pts = [flow_phi(f, p) for f, p in zip(fs, pts)]
    step3 = DaniShearFlow(build("psi", _x, [co(ln) for ln in ls], gs, backend, points=pts))
    return DaniConstruction(table, AutomorphismProgram((step1, step2, step3)), tuple(fs), tuple(gs))


def build_dani_program(table: InjectionTable, backend: Backend = EXACT) -> AutomorphismProgram:
    return build_dani_construction(table, backend).program


def check_dani_row(index, n, ln, prog, backend: Backend, start=None, targets=None) -> CaseRecord:
    start = start or dani_point(n, backend)
    targets = targets or [dani_point(ln, backend)]
    final, trace = apply_program(prog, start)
    rel = [p.relation() for p in trace]
    res = min(final.distance(t) for t in targets)
    if backend.exact:
        ok = any(final == t for t in targets) and all(r == 0 for r in rel)
        res = 0 if ok else res
    else:
        ok = (res <= backend.tol and all(abs(r) <= backend.tol for r in rel)
              and min(abs(complex(final.y - t.y)) for t in targets) <= backend.tol)
    return CaseRecord(index, {"n": n, "l": ln}, res, ok, trace=trace,
                      extra={"max_relation_residual": max(abs(complex(r)) for r in rel),
                             "final": [final.x, final.y, final.z]})


def verify_dani_program(table: InjectionTable, prog, backend: Backend = EXACT) -> Report:
    report = Report("verify-dani", backend=backend)
    for i, (n, ln) in enumerate(table):
        report.add(check_dani_row(i, n, ln, prog, backend))
    return report


def field_annihilates_relation():
    """Each descended field applied to z^2 - z - xy must vanish identically."""
    out = []
    for name, Y in dani_fields().items():
        image = Y(RELATION)
        out.append(Certificate(f"{name} field annihilates z^2 - z - xy", image.is_zero(),
                               detail="" if image.is_zero() else repr(image)))
    return out


def sl2_to_dani(m: Mat2) -> DanielewskiPoint:
    """Invariant functions of the right C*-action: z = ad, x = ab, y = cd."""
    return DanielewskiPoint(m.a * m.b, m.c * m.d, m.a * m.d)
