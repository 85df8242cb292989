"""Symbolic vector fields (derivations) over a :class:`~tameshear.ring.Ring`."""
from __future__ import annotations

from dataclasses import dataclass, field

from .ring import Poly, Ring, ring_derive


@dataclass(frozen=True)
class Certificate:
    name: str
    passed: bool
    detail: str = ""
    data: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {"name": self.name, "pass": self.passed, "detail": self.detail,
                "data": {k: str(v) for k, v in self.data.items()}}


class VectorField:
    """sum_i components[i] * d/d(var_i); missing components are zero."""

    __slots__ = ("ring", "components")

    def __init__(self, ring: Ring, components: dict):
        comps = {}
        for var, coef in components.items():
            if var not in ring.coordinates():
                raise KeyError(f"{var!r} is not a coordinate of {ring}")
            coef = coef if isinstance(coef, Poly) else ring.const(coef)
            if coef.ring != ring:
                raise ValueError("component lives in a different ring")
            if not coef.is_zero():
                comps[var] = coef
        self.ring = ring
        self.components = comps

    def __call__(self, f: Poly) -> Poly:
        """Apply the field as a derivation to ``f``."""
        if f.ring != self.ring:
            raise ValueError("ring signature mismatch")
        out = self.ring.zero()
        for var, coef in self.components.items():
            out = out + coef * ring_derive(f, var)
        return out

    def component(self, var: str) -> Poly:
        return self.components.get(var, self.ring.zero())

    def _check(self, other):
        if not isinstance(other, VectorField) or other.ring != self.ring:
            raise ValueError("vector fields over different rings")

    def __add__(self, other):
        self._check(other)
        keys = set(self.components) | set(other.components)
        return VectorField(self.ring, {k: self.component(k) + other.component(k) for k in keys})

    def __neg__(self):
        return VectorField(self.ring, {k: -v for k, v in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, f):
        """Multiply by a function (or scalar)."""
        return VectorField(self.ring, {k: v * f for k, v in self.components.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VectorField) or other.ring != self.ring:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(sorted(self.components)))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.components.values())

    def substitute(self, mapping, target: Ring | None = None) -> "VectorField":
        """Substitute into the coefficients only (components keep their names)."""
        target = target or self.ring
        return VectorField(target, {k: v.substitute(mapping, target)
                                    for k, v in self.components.items()})

    def __repr__(self):
        if not self.components:
            return "0"
        return " + ".join(f"({v})*d/d{k}" for k, v in sorted(self.components.items()))


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y] = X o Y - Y o X; component i is X(Y_i) - Y(X_i)."""
    X._check(Y)
    keys = set(X.components) | set(Y.components)
    return VectorField(X.ring, {k: X(Y.component(k)) - Y(X.component(k)) for k in keys})


def vector_field(ring: Ring, **components) -> VectorField:
    return VectorField(ring, components)
