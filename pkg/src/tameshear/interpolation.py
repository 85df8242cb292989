"""Finite Newton interpolation over exact or floating complex scalars."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .scalar import is_exact


class DuplicateNodeError(ValueError):
    pass


@dataclass(frozen=True)
class NewtonPoly:
    """p(u) = c0 + c1 (u - x0) + c2 (u - x0)(u - x1) + ..."""

    nodes: tuple
    coeffs: tuple

    def __call__(self, u):
        return poly_eval(self, u)

    @cached_property
    def node_index(self) -> dict:
        if not all(is_exact(x) for x in self.nodes):
            return {}
        return {x: i for i, x in enumerate(self.nodes)}

    @property
    def degree(self) -> int:
        return len(self.nodes) - 1

    def to_dict(self):
        return {"nodes": [_jsonable(x) for x in self.nodes],
                "coeffs": [_jsonable(x) for x in self.coeffs]}


def _jsonable(x):
    if is_exact(x):
        return str(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    # multiprecision values keep their digits as strings
    return [str(x.real), str(x.imag)]


def _check_distinct(nodes, tol):
    if tol is None or all(is_exact(x) for x in nodes):
        if len(set(nodes)) != len(nodes):
            seen = set()
            dup = next(x for x in nodes if x in seen or seen.add(x))
            raise DuplicateNodeError(f"duplicate interpolation node {dup}")
        return
    for i in range(len(nodes)):
        for j in range(i):
            if abs(nodes[i] - nodes[j]) <= 10 * tol:
                raise DuplicateNodeError(
                    f"nodes {nodes[j]} and {nodes[i]} closer than 10*tol")


def leja_order(nodes):
    """Index order that greedily maximises the product of distances (float stability)."""
    n = len(nodes)
    if n == 0:
        return []
    pts = [complex(x) for x in nodes]
    first = max(range(n), key=lambda i: abs(pts[i]))
    order = [first]
    prod = [abs(pts[i] - pts[first]) for i in range(n)]
    rest = set(range(n)) - {first}
    while rest:
        nxt = max(rest, key=lambda i: (prod[i], -i))
        order.append(nxt)
        rest.remove(nxt)
        for i in rest:
            prod[i] *= abs(pts[i] - pts[nxt])
    return order


def newton_build(nodes, values, tol: float | None = None, leja: bool = False) -> NewtonPoly:
    """Divided-difference coefficients through (nodes[i], values[i]).

    Exact inputs give exact node reproduction. ``tol`` switches the duplicate
    test to a separation of 10*tol for floating nodes; ``leja`` reorders the
    nodes before building, which only changes rounding.
    """
    nodes, values = list(nodes), list(values)
    if len(nodes) != len(values):
        raise ValueError("nodes and values differ in length")
    if not nodes:
        raise ValueError("empty interpolation table")
    _check_distinct(nodes, tol)
    if leja:
        order = leja_order(nodes)
        nodes = [nodes[i] for i in order]
        values = [values[i] for i in order]
    n = len(nodes)
    dd = list(values)
    coeffs = [dd[0]]
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - k])
        coeffs.append(dd[k])
    return NewtonPoly(tuple(nodes), tuple(coeffs))


def poly_eval(p: NewtonPoly, u):
    """Nested (Horner-style) evaluation of the Newton form.

    At the j-th node every term past the j-th carries the factor (u - x_j) = 0,
    so evaluation starts there.
    """
    top = len(p.coeffs) - 1
    if is_exact(u):
        top = min(top, p.node_index.get(u, top))
    acc = p.coeffs[top]
    for k in range(top - 1, -1, -1):
        acc = acc * (u - p.nodes[k]) + p.coeffs[k]
    return acc


def constant_poly(value) -> NewtonPoly:
    return NewtonPoly((0,), (value,))
