"""Scalar backends.

Two kinds of numbers flow through the constructions:

* :class:`GaussianRational` -- exact elements of Q(i). Arithmetic never rounds.
* floating complex numbers compared with a tolerance: plain Python ``complex``
  by default, or mpmath ``mpc`` when a backend asks for more working digits.

Mixing the two is an error rather than a silent promotion; conversions go
through :meth:`Backend.coerce` explicitly.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational

from mpmath.ctx_mp import MPContext

try:
    # C rationals; an order of magnitude faster than Fraction on big tables
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction


class BackendMismatchError(TypeError):
    """Raised when exact and floating scalars meet in one operation."""


class InexactError(ArithmeticError):
    """Raised when an exact computation would need an irrational value."""


def _frac(x):
    if type(x) is _Q:
        return x
    if isinstance(x, (int, Rational)):
        return _Q(x)
    raise BackendMismatchError(f"cannot use {type(x).__name__} in exact arithmetic")


class GaussianRational:
    """Exact complex number re + i*im with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def from_float(cls, x) -> "GaussianRational":
        """Exact conversion of a binary float / complex (no rounding)."""
        x = complex(x)
        return cls(_Q(x.real), _Q(x.imag))

    @staticmethod
    def _wrap(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return GaussianRational(other)
        if isinstance(other, bool):
            return GaussianRational(int(other))
        raise BackendMismatchError(
            f"mixed-backend arithmetic: GaussianRational and {type(other).__name__}")

    def __add__(self, other):
        o = other if type(other) is GaussianRational else self._wrap(other)
        return _raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = other if type(other) is GaussianRational else self._wrap(other)
        return _raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        o = other if type(other) is GaussianRational else self._wrap(other)
        if not self.im and not o.im:
            return _raw(self.re * o.re, _ZERO)
        return _raw(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = other if type(other) is GaussianRational else self._wrap(other)
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("GaussianRational division by zero")
            return _raw(self.re / o.re, self.im / o.re)
        n = o.re * o.re + o.im * o.im
        return _raw((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def __neg__(self):
        return _raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise InexactError("only integer powers are exact")
        if k < 0:
            return GaussianRational(1) / (self ** -k)
        out, base = GaussianRational(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        if not self.im:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


QI = GaussianRational
_raw = GaussianRational._raw
_ZERO = _Q(0)


def is_exact(x) -> bool:
    """True for Q(i) / rational scalars, False for complex, float and mpmath numbers."""
    return isinstance(x, (GaussianRational, int, Rational)) and not isinstance(x, float)


def rational_sqrt(q: Fraction) -> Fraction:
    """Exact square root of a nonnegative rational; InexactError otherwise."""
    q = Fraction(q)
    if q < 0:
        raise InexactError(f"{q} is negative")
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        raise InexactError(f"{q} is not a rational square")
    return Fraction(rn, rd)


def exact_sqrt(z) -> GaussianRational:
    """Principal square root in Q(i), if it exists."""
    z = GaussianRational._wrap(z)
    if not z.im:
        if z.re >= 0:
            return GaussianRational(rational_sqrt(z.re))
        return GaussianRational(0, rational_sqrt(-z.re))
    modulus = rational_sqrt(z.abs2())
    x = rational_sqrt((modulus + z.re) / 2)
    y = z.im / (2 * x)
    return GaussianRational(x, y)


def _mp_context(x):
    return getattr(x, "context", None)


def to_mp(x, ctx):
    """Convert exact or floating x into an mpc of context ``ctx``."""
    if isinstance(x, GaussianRational):
        return ctx.mpc(ctx.mpf(x.re.numerator) / x.re.denominator,
                       ctx.mpf(x.im.numerator) / x.im.denominator)
    if isinstance(x, Rational) and not isinstance(x, int):
        return ctx.mpc(ctx.mpf(x.numerator) / x.denominator)
    if _mp_context(x) is not None and _mp_context(x) is not ctx:
        return ctx.mpc(ctx.mpf(x.real), ctx.mpf(x.imag))
    return ctx.mpc(x)


def float_like(x, sample):
    """x converted to the floating type of ``sample`` (complex or mpc)."""
    ctx = _mp_context(sample)
    if ctx is None:
        return complex(x)
    return to_mp(x, ctx)


def _elementary(name):
    def fn(x):
        ctx = _mp_context(x)
        if ctx is None:
            return getattr(cmath, name)(x)
        return getattr(ctx, name)(x)
    fn.__name__ = "c" + name
    return fn


cexp = _elementary("exp")
clog = _elementary("log")
csqrt = _elementary("sqrt")
csin = _elementary("sin")
ccos = _elementary("cos")


class Backend:
    """Scalar policy for one verification run."""

    exact: bool
    tol: float
    name: str

    def coerce(self, x):
        raise NotImplementedError

    def sqrt(self, x):
        raise NotImplementedError

    def exp(self, x):
        raise NotImplementedError

    def log(self, x):
        raise NotImplementedError

    def residual(self, x) -> float:
        return float(abs(complex(x)))

    def is_zero(self, x) -> bool:
        raise NotImplementedError

    def close(self, x, y) -> bool:
        return self.is_zero(x - y)


class ExactBackend(Backend):
    exact = True
    tol = 0.0
    name = "exact"

    def coerce(self, x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (float, complex)):
            raise BackendMismatchError(
                "floating value given to the exact backend; use GaussianRational.from_float")
        return GaussianRational(x)

    def sqrt(self, x):
        return exact_sqrt(x)

    def exp(self, x):
        if x == 0:
            return GaussianRational(1)
        raise InexactError("exp of a nonzero value is not exact")

    def log(self, x):
        if x == 1:
            return GaussianRational(0)
        raise InexactError("log of a value other than 1 is not exact")

    def is_zero(self, x) -> bool:
        return x == 0

    def __repr__(self):
        return "ExactBackend()"


class FloatBackend(Backend):
    """Floating complex scalars with a comparison tolerance.

    ``dps=None`` means IEEE double (Python ``complex``). A positive ``dps``
    switches to mpmath numbers carrying that many decimal digits; the
    tolerance is unchanged, only the rounding of intermediate values shrinks.
    """

    exact = False
    name = "float"

    def __init__(self, tol: float = 1e-9, dps: int | None = None):
        if not tol > 0:
            raise ValueError("tol must be positive")
        self.tol = tol
        self.dps = dps
        self._ctx = None
        if dps is not None:
            if dps < 15:
                raise ValueError("dps below double precision makes no sense")
            self._ctx = MPContext()
            self._ctx.dps = dps

    def __getstate__(self):
        return {"tol": self.tol, "dps": self.dps}

    def __setstate__(self, state):
        self.__init__(state["tol"], state["dps"])

    def coerce(self, x):
        if self._ctx is None:
            return complex(x)
        return to_mp(x, self._ctx)

    def sqrt(self, x):
        return csqrt(self.coerce(x))

    def exp(self, x):
        return cexp(self.coerce(x))

    def log(self, x):
        return clog(self.coerce(x))

    def is_zero(self, x) -> bool:
        return abs(x) <= self.tol

    def __repr__(self):
        if self.dps is None:
            return f"FloatBackend(tol={self.tol!r})"
        return f"FloatBackend(tol={self.tol!r}, dps={self.dps})"


EXACT = ExactBackend()


def quadratic_roots(a, b, c, backend: Backend):
    """Both roots of a*x^2 + b*x + c (a != 0), via the cancellation-free form.

    When c == 0 the root 0 is returned exactly, without a square root.
    """
    if c == 0:
        return backend.coerce(0), -b / a
    disc = b * b - 4 * a * c
    root = backend.sqrt(disc)
    # pick the sign that avoids cancellation in b + root
    if not backend.exact:
        if (b.conjugate() * root).real < 0:
            root = -root
    else:
        br = b * root.conjugate()
        if br.re < 0:
            root = -root
    q = -(b + root) / 2
    if q == 0:
        # b == 0 and disc == 0
        return backend.coerce(0), backend.coerce(0)
    return q / a, c / q


def pick_root(roots):
    """Deterministic branch: smallest modulus, then larger real, then larger imag."""
    def key(r):
        if isinstance(r, GaussianRational):
            return (r.abs2(), -r.re, -r.im)
        r = complex(r)
        return (abs(r), -r.real, -r.imag)
    return min(roots, key=key)
