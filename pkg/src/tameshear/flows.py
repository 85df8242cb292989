"""Left-multiplication flows on SL2(C), their shears, and automorphism programs.

The three generators of sl2 acting by left multiplication are

    V = c d/da + d d/db           flow  [[1, t], [0, 1]] . M
    W = a d/dc + b d/db           flow  [[1, 0], [t, 1]] . M
    U = -a d/da - b d/db + c d/dc + d d/dd
                                  flow  diag(e^-t, e^t) . M

A shear f*Y with f in ker Y is complete, and since f is constant along the
flow lines of Y its time-1 map is the time-f(M) map of Y.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

from .fields import Certificate, VectorField
from .interpolation import NewtonPoly, newton_build
from .matrix import Mat2, mat_mul
from .ring import Poly, Ring
from .scalar import BackendMismatchError, GaussianRational, InexactError, cexp, is_exact

SL2_RING = Ring(["a", "b", "c", "d"])
_a, _b, _c, _d = SL2_RING.gens()


class Generator(enum.Enum):
    V = "V"
    W = "W"
    U = "U"


def sl2_field(gen: Generator) -> VectorField:
    if gen is Generator.V:
        return VectorField(SL2_RING, {"a": _c, "b": _d})
    if gen is Generator.W:
        return VectorField(SL2_RING, {"c": _a, "d": _b})
    return VectorField(SL2_RING, {"a": -_a, "b": -_b, "c": _c, "d": _d})


def kernel_admissible(gen: Generator, coordinate: Poly) -> bool:
    """Membership in the listed kernel subalgebras.

    V: C[c, d];  W: C[a, b];  U: C<ac, ad, bc, bd>, i.e. every monomial has
    equal degree in {a, b} and in {c, d}.
    """
    for exps in coordinate.terms:
        ea, eb, ec, ed = exps
        if gen is Generator.V and (ea or eb):
            return False
        if gen is Generator.W and (ec or ed):
            return False
        if gen is Generator.U and ea + eb != ec + ed:
            return False
    return True


def sl2_coords(m: Mat2) -> dict:
    return {"a": m.a, "b": m.b, "c": m.c, "d": m.d}


@dataclass(frozen=True)
class Shear:
    """A function u |-> poly(coordinate(point)) with coordinate a ring polynomial."""

    coordinate: Poly
    poly: NewtonPoly

    def value_at(self, coords: dict):
        return self.poly(self.coordinate.evaluate(coords))


@dataclass(frozen=True)
class ShearFunction:
    generator: Generator
    coordinate: Poly
    poly: NewtonPoly
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.coordinate.ring != SL2_RING:
            raise ValueError("shear coordinate must be a polynomial in a, b, c, d")
        if self.validate and not kernel_admissible(self.generator, self.coordinate):
            raise ValueError(
                f"coordinate {self.coordinate} is not in the kernel algebra of {self.generator.name}")

    def coordinate_value(self, m: Mat2):
        return self.coordinate.evaluate(sl2_coords(m))

    def value(self, m: Mat2):
        return self.poly(self.coordinate_value(m))

    def table(self):
        return {"generator": self.generator.name, "coordinate": repr(self.coordinate),
                **self.poly.to_dict()}


def _one(m: Mat2):
    return GaussianRational(1) if m.exact else m.a * 0 + 1


def _match(t, m: Mat2):
    if is_exact(t) != m.exact:
        raise BackendMismatchError("flow time and point use different backends")
    if m.exact:
        return GaussianRational._wrap(t)
    return t if hasattr(t, "context") or type(t) is complex else complex(t)


def flow_basic(gen: Generator, t, m: Mat2) -> Mat2:
    one, zero = _one(m), _one(m) * 0
    t = _match(t, m)
    if gen is Generator.V:
        return mat_mul(Mat2(one, t, zero, one), m)
    if gen is Generator.W:
        return mat_mul(Mat2(one, zero, t, one), m)
    if m.exact:
        if t != 0:
            raise InexactError("U-flow with nonzero time is not exact")
        return m
    return mat_mul(Mat2(cexp(-t), zero, zero, cexp(t)), m)


def flow_shear(shear: ShearFunction, m: Mat2) -> Mat2:
    return flow_basic(shear.generator, shear.value(m), m)


# -- program steps ---------------------------------------------------------------

@dataclass(frozen=True)
class BasicFlow:
    gen: Generator
    time: object

    def apply(self, m: Mat2) -> Mat2:
        return flow_basic(self.gen, self.time, m)

    def describe(self):
        return {"kind": "basic", "generator": self.gen.name, "time": str(self.time)}


@dataclass(frozen=True)
class ShearFlow:
    shear: ShearFunction

    def apply(self, m: Mat2) -> Mat2:
        return flow_shear(self.shear, m)

    def describe(self):
        return {"kind": "shear", **self.shear.table()}


@dataclass(frozen=True)
class ShearScaleFlow:
    """Time-1 map of h*U: M |-> diag(e^-h(M), e^h(M)) . M."""

    shear: ShearFunction

    def __post_init__(self):
        if self.shear.generator is not Generator.U:
            raise ValueError("ShearScaleFlow needs a U-shear")

    def apply(self, m: Mat2) -> Mat2:
        return flow_shear(self.shear, m)

    def describe(self):
        return {"kind": "shear-scale", **self.shear.table()}


@dataclass(frozen=True)
class ScaleByValue:
    """Exact stand-in for ShearScaleFlow: M |-> diag(1/mu(M), mu(M)) . M.

    Holomorphically this is the h*U shear with h = log(mu). Here mu is kept as
    its table of values on the kernel coordinate, so exact runs never pass
    through exp/log. Off the table, ``extension`` (default: the Newton
    interpolant of the table) supplies mu.
    """

    coordinate: Poly
    nodes: tuple
    values: tuple
    extension: object = None

    def __post_init__(self):
        if not kernel_admissible(Generator.U, self.coordinate):
            raise ValueError("scale coordinate is not in the kernel algebra of U")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("duplicate scale nodes")

    @property
    def generator(self):
        return Generator.U

    @cached_property
    def _lookup(self):
        return dict(zip(self.nodes, self.values))

    @cached_property
    def _extension(self):
        if self.extension is not None:
            return self.extension
        return ShearFunction(Generator.U, self.coordinate, newton_build(self.nodes, self.values))

    def mu(self, m: Mat2):
        u = self.coordinate.evaluate(sl2_coords(m))
        if u in self._lookup:
            return self._lookup[u]
        return self._extension.value(m)

    def apply(self, m: Mat2) -> Mat2:
        mu = self.mu(m)
        if mu == 0:
            raise ZeroDivisionError(f"scale value vanishes at {m}")
        zero = _one(m) * 0
        return mat_mul(Mat2(_one(m) / mu, zero, zero, mu), m)

    def describe(self):
        return {"kind": "scale-by-value", "realization": "shear of U by log(mu)",
                "generator": "U", "coordinate": repr(self.coordinate),
                "nodes": [str(x) for x in self.nodes], "values": [str(x) for x in self.values]}


@dataclass(frozen=True)
class AutomorphismProgram:
    steps: tuple = ()

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def apply(self, m: Mat2):
        return apply_program(self, m)

    def describe(self):
        return [s.describe() for s in self.steps]


def apply_program(prog, m: Mat2):
    """Apply steps left to right; the trace holds the start point and every image."""
    trace = [m]
    for step in prog.steps:
        m = step.apply(m)
        trace.append(m)
    return m, trace


def kernel_certify(shear: ShearFunction) -> Certificate:
    """Check symbolically that the generator field kills the shear coordinate."""
    Y = sl2_field(shear.generator)
    image = Y(shear.coordinate)
    name = f"ker {shear.generator.name} contains {shear.coordinate!r}"
    if image.is_zero():
        return Certificate(name, True)
    return Certificate(name, False, detail=f"{shear.generator.name}({shear.coordinate!r}) = {image!r}",
                       data={"witness": image})
