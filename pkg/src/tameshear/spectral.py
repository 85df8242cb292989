"""Tame sets in the fibres of the spectral ball.

Omega_2 is the set of 2x2 matrices with spectrum in the unit disc; it fibres
over the symmetrised bidisc by pi = (tr, det). Conjugation by the unipotent
one-parameter groups preserves pi and is generated by the complete fields

    V = c d/da + (d - a) d/db - c d/dd     phi_V^t(M) = [[1,t],[0,1]] M [[1,-t],[0,1]]
    W = -b d/da + (a - d) d/dc + b d/dd    phi_W^t(M) = [[1,0],[t,1]] M [[1,0],[-t,1]]

On the fibre through [[lam, k], [0, mu]] the map k -> l(k) is realised by
phi_W^1, then phi_V with time f(tau - c), then phi_W with time g(b),
where tau = lam - mu.
"""
from __future__ import annotations

from dataclasses import dataclass

from .fields import Certificate, VectorField
from .flows import AutomorphismProgram, apply_program
from .interpolation import newton_build
from .matrix import Mat2, mat_mul
from .report import CaseRecord, Report
from .ring import Poly, Ring
from .scalar import EXACT, Backend, BackendMismatchError, is_exact, pick_root, quadratic_roots
from .tame_sl2 import ConstructionError, InjectionTable

SPECTRAL_RING = Ring(["a", "b", "c", "d"])
_a, _b, _c, _d = SPECTRAL_RING.gens()
TRACE = _a + _d
DET = _a * _d - _b * _c


def pi_map(m: Mat2):
    return m.a + m.d, m.a * m.d - m.b * m.c


def eigenvalues(m: Mat2):
    tr, det = pi_map(m)
    disc = complex(tr * tr - 4 * det) ** 0.5
    return (complex(tr) + disc) / 2, (complex(tr) - disc) / 2


def in_spectral_ball(m: Mat2) -> bool:
    return all(abs(e) < 1 for e in eigenvalues(m))


def _same(t, m: Mat2):
    if is_exact(t) != m.exact:
        raise BackendMismatchError("flow time and matrix use different backends")
    one = m.a * 0 + 1
    return t, one, one * 0


def conj_flow_V(t, m: Mat2) -> Mat2:
    t, one, zero = _same(t, m)
    return mat_mul(mat_mul(Mat2(one, t, zero, one), m), Mat2(one, -t, zero, one))


def conj_flow_W(t, m: Mat2) -> Mat2:
    t, one, zero = _same(t, m)
    return mat_mul(mat_mul(Mat2(one, zero, t, one), m), Mat2(one, zero, -t, one))


CONJ_FLOWS = {"V": conj_flow_V, "W": conj_flow_W}


def spectral_fields():
    return {
        "V": VectorField(SPECTRAL_RING, {"a": _c, "b": _d - _a, "d": -_c}),
        "W": VectorField(SPECTRAL_RING, {"a": -_b, "c": _a - _d, "d": _b}),
    }


def spectral_kernel_certificates():
    """Both conjugation fields kill the trace and the determinant."""
    out = []
    for name, Y in spectral_fields().items():
        for label, h in (("a + d", TRACE), ("ad - bc", DET)):
            image = Y(h)
            out.append(Certificate(f"spectral {name} annihilates {label}", image.is_zero(),
                                   detail="" if image.is_zero() else repr(image)))
    return out


def _admissible(flow: str, coordinate: Poly) -> bool:
    Y = spectral_fields()[flow]
    return Y(coordinate).is_zero()


@dataclass(frozen=True)
class SpectralShear:
    """Time function M |-> poly(offset + coordinate(M)) for a conjugation flow."""

    flow: str
    coordinate: Poly
    offset: object
    poly: object

    def __post_init__(self):
        if not _admissible(self.flow, self.coordinate):
            raise ValueError(f"{self.coordinate!r} is not in the kernel of the {self.flow} field")

    def argument(self, m: Mat2):
        return self.offset + self.coordinate.evaluate({"a": m.a, "b": m.b, "c": m.c, "d": m.d})

    def value(self, m: Mat2):
        return self.poly(self.argument(m))

    def table(self):
        return {"flow": self.flow, "coordinate": repr(self.coordinate),
                "offset": str(self.offset), **self.poly.to_dict()}


@dataclass(frozen=True)
class ConjFlow:
    flow: str
    time: object

    def apply(self, m):
        return CONJ_FLOWS[self.flow](self.time, m)

    def describe(self):
        return {"kind": "basic", "flow": self.flow, "time": str(self.time)}


@dataclass(frozen=True)
class ConjShearFlow:
    shear: SpectralShear

    def apply(self, m):
        return CONJ_FLOWS[self.shear.flow](self.shear.value(m), m)

    def describe(self):
        return {"kind": "shear", **self.shear.table()}


@dataclass(frozen=True)
class FiberTask:
    lam: object
    mu: object
    table: InjectionTable

    def __post_init__(self):
        for name, v in (("lambda", self.lam), ("mu", self.mu)):
            if not abs(complex(v)) < 1:
                raise ValueError(f"|{name}| must be < 1, got {v}")

    @property
    def tau(self):
        return self.lam - self.mu

    def coerced(self, backend: Backend):
        return backend.coerce(self.lam), backend.coerce(self.mu)


def solve_fiber_f(k: int, lk: int, tau, backend: Backend = EXACT):
    """Root of (k - tau) f^2 + (2k - tau) f + (k - l) = 0 (linear when tau = k)."""
    if k < 1 or lk < 1:
        raise ValueError("indices must be positive")
    co = backend.coerce
    tau = co(tau)
    qa, qb, qc = co(k) - tau, co(2 * k) - tau, co(k - lk)
    if qa == 0:
        if qb == 0:
            raise ConstructionError(f"no solution for k={k}, l={lk}, tau={tau}")
        f = -qc / qb
    else:
        f = pick_root(quadratic_roots(qa, qb, qc, backend))
    if backend.is_zero(1 + f):
        raise ConstructionError(f"f(k) = -1 at k={k}")
    return f


def fiber_point(k, lam, mu, backend: Backend = EXACT) -> Mat2:
    return Mat2.of([[lam, k], [0, mu]], backend)


def _plain_builder(flow, coordinate, offset, nodes, values, backend, points=None):
    tol = None if backend.exact else backend.tol
    return SpectralShear(flow, coordinate, offset,
                         newton_build(nodes, values, tol=tol, leja=not backend.exact))


@dataclass(frozen=True)
class FiberConstruction:
    task: FiberTask
    program: AutomorphismProgram
    f_values: tuple
    g_values: tuple


def build_fiber_construction(task: FiberTask, backend: Backend = EXACT,
                             shear_builder=None) -> FiberConstruction:
    build = shear_builder or _plain_builder
    co = backend.coerce
    lam, mu = task.coerced(backend)
    tau = lam - mu
    ks = [k for k, _ in task.table]
    ls = [lk for _, lk in task.table]
    fs = [solve_fiber_f(k, lk, tau, backend) for k, lk in task.table]
    gs = [-1 / (1 + f) for f in fs]
    one = co(1)
    step1 = ConjFlow("W", one)
    step2 = ConjShearFlow(build("V", -_c, tau, [co(k) for k in ks], fs, backend))
    step3 = ConjShearFlow(build("W", _b, co(0), [co(lk) for lk in ls], gs, backend))
    return FiberConstruction(task, AutomorphismProgram((step1, step2, step3)), tuple(fs), tuple(gs))


def build_fiber_program(task: FiberTask, backend: Backend = EXACT) -> AutomorphismProgram:
    return build_fiber_construction(task, backend).program


def middle_matrix(lam, mu, k, f) -> Mat2:
    """Closed form of phi_V^f(phi_W^1([[lam, k], [0, mu]]))."""
    tau = lam - mu
    return Mat2(lam - k + f * (tau - k), k + f * (2 * k - tau) + f * f * (k - tau),
                tau - k, mu + k - f * (tau - k))


def check_fiber_row(index, k, lk, lam, mu, prog, backend: Backend, drift_tol: float = 1e-12) -> CaseRecord:
    start = fiber_point(k, lam, mu, backend)
    target = fiber_point(lk, lam, mu, backend)
    final, trace = apply_program(prog, start)
    tr0, det0 = pi_map(start)
    drift = [max(abs(complex(x - tr0)), abs(complex(y - det0))) for x, y in map(pi_map, trace)]
    diff = final - target
    if backend.exact:
        ok = all(x == 0 for x in diff.entries) and all(pi_map(p) == (tr0, det0) for p in trace)
        res = 0 if ok else diff.max_abs()
    else:
        res = diff.max_abs()
        ok = res <= backend.tol and max(drift) <= drift_tol
    return CaseRecord(index, {"k": k, "l": lk}, res, ok, trace=trace,
                      extra={"max_pi_drift": max(drift)})


def verify_fiber_program(task: FiberTask, prog, backend: Backend = EXACT,
                         drift_tol: float = 1e-12) -> Report:
    report = Report("verify-spectral", backend=backend)
    lam, mu = task.coerced(backend)
    for i, (k, lk) in enumerate(task.table):
        report.add(check_fiber_row(i, k, lk, lam, mu, prog, backend, drift_tol))
    return report
