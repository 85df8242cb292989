"""Negative controls: nudge one interpolation value of a built program."""
from __future__ import annotations

import dataclasses

from .interpolation import newton_build
from .flows import AutomorphismProgram


def _rebuild(poly, node, delta, backend):
    values = [poly(x) for x in poly.nodes]
    if backend.exact:
        hits = [i for i, x in enumerate(poly.nodes) if x == node]
    else:
        hits = [i for i, x in enumerate(poly.nodes) if abs(x - node) <= backend.tol]
    if not hits:
        raise KeyError(f"node {node} is not an interpolation node")
    values[hits[0]] = values[hits[0]] + delta
    tol = None if backend.exact else backend.tol
    return newton_build(poly.nodes, values, tol=tol)


def _with_poly(shear, poly):
    inner = getattr(shear, "inner", None)
    if inner is not None:
        # averaged shears keep their transforms
        return type(shear)(dataclasses.replace(inner, poly=poly), shear.transforms, shear.label)
    return dataclasses.replace(shear, poly=poly)


def perturb_last_shear(prog: AutomorphismProgram, node, delta, backend) -> AutomorphismProgram:
    """Copy of ``prog`` whose final shear takes value v + delta at ``node``."""
    steps = list(prog.steps)
    last = steps[-1]
    shear = last.shear
    poly = _rebuild(shear.poly, backend.coerce(node), delta, backend)
    steps[-1] = dataclasses.replace(last, shear=_with_poly(shear, poly))
    return AutomorphismProgram(tuple(steps))
