"""2x2 matrices over either scalar backend."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalar import Backend, BackendMismatchError, EXACT, is_exact


@dataclass(frozen=True)
class Mat2:
    """Row-major [[a, b], [c, d]]."""

    a: object
    b: object
    c: object
    d: object

    @classmethod
    def of(cls, rows, backend: Backend = EXACT) -> "Mat2":
        (a, b), (c, d) = rows
        co = backend.coerce
        return cls(co(a), co(b), co(c), co(d))

    @classmethod
    def identity(cls, backend: Backend = EXACT) -> "Mat2":
        return cls.of([[1, 0], [0, 1]], backend)

    @classmethod
    def diag(cls, x, y, backend: Backend = EXACT) -> "Mat2":
        return cls.of([[x, 0], [0, y]], backend)

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    @property
    def exact(self) -> bool:
        flags = {is_exact(x) for x in self.entries}
        if len(flags) != 1:
            raise BackendMismatchError("matrix mixes exact and floating entries")
        return flags.pop()

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return mat_mul(self, other)

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def det(self):
        return mat_det(self)

    def trace(self):
        return self.a + self.d

    def inverse_sl2(self) -> "Mat2":
        """Inverse assuming det = 1."""
        return Mat2(self.d, -self.b, -self.c, self.a)

    def max_abs(self) -> float:
        return max(abs(complex(x)) for x in self.entries)

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def mat_mul(lhs: Mat2, rhs: Mat2) -> Mat2:
    if lhs.exact != rhs.exact:
        raise BackendMismatchError("cannot multiply exact and floating matrices")
    return Mat2(lhs.a * rhs.a + lhs.b * rhs.c,
                lhs.a * rhs.b + lhs.b * rhs.d,
                lhs.c * rhs.a + lhs.d * rhs.c,
                lhs.c * rhs.b + lhs.d * rhs.d)


def mat_det(m: Mat2):
    return m.a * m.d - m.b * m.c


class NotSL2Error(ValueError):
    pass


def check_sl2(m: Mat2, backend: Backend = EXACT) -> Mat2:
    """Return ``m`` unchanged if det(m) = 1 (exactly, or within backend tolerance)."""
    if not backend.is_zero(mat_det(m) - 1):
        raise NotSL2Error(f"det {mat_det(m)} != 1 for {m}")
    return m


def residual(m: Mat2, target: Mat2) -> float:
    """Max-abs entrywise distance."""
    return (m - target).max_abs()


def random_sl2(rng, backend: Backend = EXACT, factors: int = 4, bound: int = 3) -> Mat2:
    """Product of random elementary unipotents with rational parameters (det = 1 exactly)."""
    m = Mat2.identity(backend)
    for i in range(factors):
        t = Fraction(rng.randint(-bound * 4, bound * 4), rng.randint(1, 4))
        step = [[1, t], [0, 1]] if i % 2 == 0 else [[1, 0], [t, 1]]
        if not backend.exact:
            step = [[float(x) for x in row] for row in step]
        m = mat_mul(Mat2.of(step, backend), m)
    return m
