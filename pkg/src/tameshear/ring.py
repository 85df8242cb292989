"""Multivariate polynomials with exact coefficients.

A :class:`Ring` fixes an ordered tuple of indeterminates plus two optional
reductions that keep elements in a normal form:

* a trigonometric pair ``s ~ sin(p*base)``, ``c ~ cos(p*base)`` where ``p`` is
  an opaque constant symbol; the rewrite ``s**2 -> 1 - c**2`` keeps the
  exponent of ``s`` in {0, 1} and differentiation in ``base`` obeys
  ``ds = p*c``, ``dc = -p*s``;
* square-root symbols ``r`` with ``r**2 -> n`` (e.g. ``r5**2 -> 5``).

Elements (:class:`Poly`) are immutable; every arithmetic result is already in
normal form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .scalar import GaussianRational, ccos, csin, csqrt, float_like, is_exact


@dataclass(frozen=True)
class Trig:
    base: str
    sin: str = "s"
    cos: str = "c"
    freq: str = "p"


class Ring:
    def __init__(self, variables: Iterable[str], trig: Trig | None = None,
                 radicals: Mapping[str, int] | None = None):
        variables = tuple(variables)
        radicals = dict(radicals or {})
        extra = []
        if trig is not None:
            extra += [trig.sin, trig.cos, trig.freq]
        extra += list(radicals)
        for name in extra:
            if name not in variables:
                variables += (name,)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        if trig is not None and trig.base not in variables:
            raise ValueError(f"trig base {trig.base!r} is not a ring variable")
        self.variables = variables
        self.trig = trig
        self.radicals = radicals
        self.index = {v: i for i, v in enumerate(variables)}
        self.constants = frozenset(([trig.freq] if trig else []) + list(radicals))
        self._key = (variables, trig, tuple(sorted(radicals.items())))

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        parts = [repr(list(self.variables))]
        if self.trig:
            parts.append(f"trig={self.trig}")
        if self.radicals:
            parts.append(f"radicals={self.radicals}")
        return f"Ring({', '.join(parts)})"

    @property
    def nvars(self):
        return len(self.variables)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, x) -> "Poly":
        return Poly(self, {(0,) * self.nvars: x})

    def gen(self, name: str) -> "Poly":
        if name not in self.index:
            raise KeyError(f"{name!r} is not a variable of {self}")
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): 1})

    __call__ = gen

    def gens(self):
        return tuple(self.gen(v) for v in self.variables)

    def coordinates(self):
        """Variables that are neither trig generators nor constant symbols."""
        skip = set(self.constants)
        if self.trig:
            skip |= {self.trig.sin, self.trig.cos}
        return tuple(v for v in self.variables if v not in skip)


def _add_into(acc: dict, exps, coef):
    if coef == 0:
        return
    prev = acc.get(exps)
    if prev is None:
        acc[exps] = coef
    else:
        tot = prev + coef
        if tot == 0:
            del acc[exps]
        else:
            acc[exps] = tot


def _reduce_terms(ring: Ring, terms: Mapping) -> dict:
    out: dict = {}
    rad = [(ring.index[r], n) for r, n in ring.radicals.items()]
    si = ci = None
    if ring.trig is not None:
        si, ci = ring.index[ring.trig.sin], ring.index[ring.trig.cos]
    for exps, coef in terms.items():
        if coef == 0:
            continue
        e = list(exps)
        for i, n in rad:
            if e[i] >= 2:
                coef = coef * n ** (e[i] // 2)
                e[i] %= 2
        if si is not None and e[si] >= 2:
            m = e[si] // 2
            e[si] %= 2
            # s^(2m) = (1 - c^2)^m
            for k in range(m + 1):
                f = list(e)
                f[ci] += 2 * k
                _add_into(out, tuple(f), coef * (comb(m, k) * (-1) ** k))
        else:
            _add_into(out, tuple(e), coef)
    return out


class Poly:
    """Element of a :class:`Ring`; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping, normalize: bool = True):
        self.ring = ring
        if normalize:
            self.terms = _reduce_terms(ring, terms)
        else:
            self.terms = {k: v for k, v in terms.items() if v != 0}

    # -- construction helpers -------------------------------------------------
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(acc, k, v)
        return Poly(self.ring, acc, normalize=False)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {k: -v for k, v in self.terms.items()}, normalize=False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return self.ring.zero()
            return Poly(self.ring, {k: v * other for k, v in self.terms.items()},
                        normalize=False)
        other = self._lift(other)
        acc: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                _add_into(acc, tuple(a + b for a, b in zip(k1, k2)), v1 * v2)
        return Poly(self.ring, acc)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant():
                raise ValueError("division only by constant scalars")
            other = other.constant_term()
        return self * (Fraction(1) / other if isinstance(other, int) else 1 / other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomial")
        out, base = self.ring.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            other = self._lift(other)
        except ValueError:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.ring, frozenset(normal_form(self).terms.items())))

    def is_zero(self) -> bool:
        return not _reduce_terms(self.ring, self.terms)

    def __bool__(self):
        return not self.is_zero()

    # -- inspection -----------------------------------------------------------
    def is_constant(self) -> bool:
        return all(not any(k) for k in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def monomials(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def variables_used(self) -> set:
        used = set()
        for k in self.terms:
            used |= {self.ring.variables[i] for i, e in enumerate(k) if e}
        return used

    def degree(self, names: Iterable[str] | None = None) -> int:
        """Max total degree counted over ``names`` (default: all); -1 for zero."""
        idx = range(self.ring.nvars) if names is None else [self.ring.index[n] for n in names]
        return max((sum(k[i] for i in idx) for k in self.terms), default=-1)

    def coefficient(self, monomial: Mapping[str, int]) -> "Poly":
        """Coefficient of a monomial in the named variables, as a polynomial in the rest."""
        fixed = {self.ring.index[n]: e for n, e in monomial.items()}
        acc: dict = {}
        for k, v in self.terms.items():
            if all(k[i] == e for i, e in fixed.items()):
                kk = tuple(0 if i in fixed else e for i, e in enumerate(k))
                _add_into(acc, kk, v)
        return Poly(self.ring, acc, normalize=False)

    def truncate(self, names: Iterable[str], max_degree: int) -> "Poly":
        idx = [self.ring.index[n] for n in names]
        return Poly(self.ring, {k: v for k, v in self.terms.items()
                                if sum(k[i] for i in idx) <= max_degree}, normalize=False)

    # -- calculus / substitution ---------------------------------------------
    def derive(self, var: str) -> "Poly":
        return ring_derive(self, var)

    def evaluate(self, values: Mapping[str, object]):
        ring = self.ring
        vals = dict(values)
        sample = next((vals[v] for v in ring.variables if v in vals and not is_exact(vals[v])), 0j)
        used = self.variables_used()
        if ring.trig is not None:
            # p stands for 2*pi unless the caller says otherwise
            vals.setdefault(ring.trig.freq, float_like(2 * math.pi, sample))
        if ring.trig is not None and ({ring.trig.sin, ring.trig.cos} & used) and (
                ring.trig.sin not in vals or ring.trig.cos not in vals):
            t = ring.trig
            arg = float_like(vals[t.freq], sample) * float_like(vals[t.base], sample)
            vals.setdefault(t.sin, csin(arg))
            vals.setdefault(t.cos, ccos(arg))
        for r, n in ring.radicals.items():
            vals.setdefault(r, csqrt(float_like(n, sample)))
        floating = any(not is_exact(vals[v]) for v in ring.variables if v in vals)
        total = 0
        for k, coef in self.terms.items():
            term = float_like(coef, sample) if floating else coef
            for i, e in enumerate(k):
                if e:
                    term = term * vals[ring.variables[i]] ** e
            total = total + term
        return total

    def substitute(self, mapping: Mapping[str, "Poly"], target: Ring | None = None) -> "Poly":
        """Replace variables by polynomials of ``target`` (default: same ring)."""
        target = target or self.ring
        images = []
        for v in self.ring.variables:
            if v in mapping:
                img = mapping[v]
                images.append(img if isinstance(img, Poly) else target.const(img))
            else:
                images.append(target.gen(v))
        cache: dict = {}

        def power(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = images[i] ** e
            return cache[(i, e)]

        out = target.zero()
        for k, coef in self.terms.items():
            term = target.const(coef)
            for i, e in enumerate(k):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.monomials():
            mono = "*".join(
                self.ring.variables[i] + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(k) if e)
            if not mono:
                parts.append(f"{v}")
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"({v})*{mono}")
        return " + ".join(parts)


def ring_normal_form(e: Poly) -> Poly:
    return Poly(e.ring, _reduce_terms(e.ring, e.terms), normalize=False)


normal_form = ring_normal_form


def ring_derive(e: Poly, var: str) -> Poly:
    """Formal partial derivative; the trig chain rule applies for the base variable."""
    ring = e.ring
    if var not in ring.index:
        raise KeyError(f"unknown variable {var!r}")
    if var in ring.constants or (ring.trig and var in (ring.trig.sin, ring.trig.cos)):
        raise ValueError(f"{var!r} is not a coordinate; cannot differentiate by it")
    vi = ring.index[var]
    acc: dict = {}
    trig = ring.trig if (ring.trig and ring.trig.base == var) else None
    if trig:
        si, ci, pi = (ring.index[trig.sin], ring.index[trig.cos], ring.index[trig.freq])
    for k, coef in e.terms.items():
        if k[vi]:
            f = list(k)
            f[vi] -= 1
            _add_into(acc, tuple(f), coef * k[vi])
        if trig:
            if k[si]:
                f = list(k)
                f[si] -= 1
                f[ci] += 1
                f[pi] += 1
                _add_into(acc, tuple(f), coef * k[si])
            if k[ci]:
                f = list(k)
                f[ci] -= 1
                f[si] += 1
                f[pi] += 1
                _add_into(acc, tuple(f), -coef * k[ci])
    return Poly(ring, acc)


# -- exact arithmetic in Q(i)(sqrt n1, sqrt n2, ...) ------------------------------

def radical_conjugate(e: Poly, name: str) -> Poly:
    return e.substitute({name: -e.ring.gen(name)})


def radical_inverse(e: Poly) -> Poly:
    """Inverse of a nonzero constant of Q(i)(radicals), via Galois conjugates."""
    if not e.variables_used() <= set(e.ring.radicals):
        raise ValueError("radical_inverse needs a constant in the radical symbols only")
    num = e.ring.one()
    den = e
    for r in e.ring.radicals:
        conj = radical_conjugate(den, r)
        num = num * conj
        den = den * conj
    if not den.is_constant() or den.is_zero():
        raise ZeroDivisionError(f"cannot invert {e}")
    c = den.constant_term()
    return num * (GaussianRational(1) / c)


def to_complex(e: Poly, values: Mapping[str, object] | None = None) -> complex:
    return complex(e.evaluate(dict(values or {})))
