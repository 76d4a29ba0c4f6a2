"""Exact coefficient arithmetic.

Field objects (``GF``, ``QQ``, ``QQi``, ``GFi``) expose a small uniform
interface used by the chain-level engines. Elements are plain Python values
where possible (ints mod p, ``Fraction``) so that hot loops stay cheap; the
value classes ``PrimeField`` and ``GaussianRational`` are the public,
self-describing element types.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

BigRational = Fraction


class ConfigurationError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def check_odd_prime(p: int) -> int:
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise ConfigurationError(f"p must be an odd prime, got {p!r}")
    return p


@dataclass(frozen=True)
class PrimeField:
    """An element of F_p."""

    value: int
    p: int

    def __post_init__(self):
        check_odd_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeField):
            if other.p != self.p:
                raise ConfigurationError("mixed characteristics")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else PrimeField(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else PrimeField(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else PrimeField(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else PrimeField(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeField(-self.value, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * field_inverse(PrimeField(o, self.p))

    def __pow__(self, n: int):
        if n < 0:
            return field_inverse(self) ** (-n)
        return PrimeField(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        return o is not NotImplemented and o == self.value

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def field_inverse(a: PrimeField) -> PrimeField:
    if a.value == 0:
        raise ZeroDivisionError(f"0 has no inverse in F_{a.p}")
    return PrimeField(pow(a.value, -1, a.p), a.p)


@dataclass(frozen=True)
class GaussianRational:
    """re + im*i with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def _c(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(Fraction(x), Fraction(0))
        raise TypeError(type(x))

    def __add__(self, o):
        o = self._c(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._c(o)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("0 has no inverse in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * self._c(o).inverse()

    def __rtruediv__(self, o):
        return self._c(o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = GaussianRational(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, o):
        try:
            o = self._c(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


I = GaussianRational(0, 1)


def rational_json(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# Field objects. Every engine takes one of these and never inspects element types.

class Field:
    name = "field"
    characteristic = 0

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def is_zero(self, a) -> bool:
        return not a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n: int):
        out = self.one()
        for _ in range(n):
            out = self.mul(out, a)
        return out


class GF(Field):
    """F_p with elements stored as ints in [0, p)."""

    def __init__(self, p: int):
        self.p = check_odd_prime(p)
        self.characteristic = p
        self.name = f"F_{p}"

    def __call__(self, x):
        if isinstance(x, PrimeField):
            return x.value % self.p
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def is_zero(self, a):
        return a % self.p == 0

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

    def power(self, a, n):
        return pow(a, n, self.p)

    def element(self, a) -> PrimeField:
        return PrimeField(self(a), self.p)

    def to_json(self, a):
        return int(a) % self.p

    def frobenius(self, a):
        return pow(a, self.p, self.p)


class QQ(Field):
    name = "Q"

    def __call__(self, x):
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, QQ)

    def __hash__(self):
        return hash("QQ")

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in Q")
        return 1 / Fraction(a)

    def to_json(self, a):
        return rational_json(a)


class QQi(Field):
    name = "Q(i)"

    def __call__(self, x):
        return GaussianRational._c(x) if not isinstance(x, GaussianRational) else x

    def __eq__(self, other):
        return isinstance(other, QQi)

    def __hash__(self):
        return hash("QQi")

    def inv(self, a):
        return a.inverse()

    def to_json(self, a):
        return {"re": rational_json(a.re), "im": rational_json(a.im)}


class GFi(Field):
    """F_p[i]/(i^2+1) for p = 3 mod 4, which is the field with p^2 elements.

    Elements are pairs (a, b) meaning a + b*i.
    """

    def __init__(self, p: int):
        self.p = check_odd_prime(p)
        if p % 4 != 3:
            raise ConfigurationError("x^2+1 splits mod p when p = 1 mod 4; use GF(p) with sqrt_minus_one")
        self.characteristic = p
        self.name = f"F_{p}(i)"

    def __call__(self, x):
        if isinstance(x, tuple):
            return (x[0] % self.p, x[1] % self.p)
        if isinstance(x, GaussianRational):
            g = GF(self.p)
            return (g(x.re), g(x.im))
        return (GF(self.p)(x), 0)

    def __eq__(self, other):
        return isinstance(other, GFi) and other.p == self.p

    def __hash__(self):
        return hash(("GFi", self.p))

    def is_zero(self, a):
        return a[0] % self.p == 0 and a[1] % self.p == 0

    def add(self, a, b):
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def sub(self, a, b):
        return ((a[0] - b[0]) % self.p, (a[1] - b[1]) % self.p)

    def neg(self, a):
        return ((-a[0]) % self.p, (-a[1]) % self.p)

    def mul(self, a, b):
        return ((a[0] * b[0] - a[1] * b[1]) % self.p, (a[0] * b[1] + a[1] * b[0]) % self.p)

    def inv(self, a):
        n = (a[0] * a[0] + a[1] * a[1]) % self.p
        if n == 0:
            raise ZeroDivisionError("0 has no inverse")
        ni = pow(n, -1, self.p)
        return ((a[0] * ni) % self.p, (-a[1] * ni) % self.p)

    def power(self, a, n):
        out, base = (1, 0), a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def frobenius(self, a):
        return self.power(a, self.p)

    def to_json(self, a):
        return {"re": a[0] % self.p, "im": a[1] % self.p}


def sqrt_minus_one(p: int):
    """A square root of -1 in F_p, or None when p = 3 mod 4."""
    for x in range(1, p):
        if (x * x + 1) % p == 0:
            return x
    return None


def reduce_gaussian(a: GaussianRational, p: int):
    """Image of a Gaussian rational in characteristic p.

    Returns an int mod p when p = 1 mod 4 (i goes to the smallest square root
    of -1), otherwise an element of ``GFi(p)``.
    """
    g = GF(p)
    r = sqrt_minus_one(p)
    if r is None:
        return GFi(p)(a)
    return g.add(g(a.re), g.mul(r, g(a.im)))


def frobenius(a, p: int | None = None):
    """a -> a^p.

    Accepts ``PrimeField`` values, ``TruncatedPolynomial`` values, or a raw
    element together with an explicit characteristic.
    """
    if isinstance(a, PrimeField):
        return a ** a.p
    if isinstance(a, TruncatedPolynomial):
        return a ** a.field.p
    if p is None:
        raise ConfigurationError("frobenius needs the characteristic for raw values")
    return pow(int(a), p, p)


@dataclass(frozen=True)
class TruncatedPolynomial:
    """Element of F_p[z]/z^M, coefficients listed from z^0 upward."""

    coeffs: tuple
    field: GF
    M: int

    @staticmethod
    def make(coeffs: Sequence[int], p: int, M: int) -> "TruncatedPolynomial":
        f = GF(p)
        c = [f(x) for x in coeffs[:M]] + [0] * max(0, M - len(coeffs))
        return TruncatedPolynomial(tuple(c), f, M)

    def __add__(self, o):
        return TruncatedPolynomial(tuple(self.field.add(a, b) for a, b in zip(self.coeffs, o.coeffs)), self.field, self.M)

    def __mul__(self, o):
        f, M = self.field, self.M
        out = [0] * M
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs[: M - i]):
                    if b:
                        out[i + j] = (out[i + j] + a * b) % f.p
        return TruncatedPolynomial(tuple(out), f, M)

    def __pow__(self, n: int):
        out = TruncatedPolynomial.make([1], self.field.p, self.M)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, o):
        return isinstance(o, TruncatedPolynomial) and self.coeffs == o.coeffs and self.M == o.M


class TruncatedSeries:
    """Power series in t modulo t^(T+1). ``t`` is even."""

    __slots__ = ("field", "T", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence[Any], T: int = 6):
        self.field = field
        self.T = T
        c = [field(x) for x in coeffs[: T + 1]]
        self.coeffs = tuple(c + [field.zero()] * (T + 1 - len(c)))

    def _check(self, o: "TruncatedSeries"):
        if o.T != self.T:
            raise ConfigurationError(f"truncation orders differ: {self.T} vs {o.T}")
        if o.field != self.field:
            raise ConfigurationError("scalar kinds differ")

    def __add__(self, o):
        self._check(o)
        f = self.field
        return TruncatedSeries(f, [f.add(a, b) for a, b in zip(self.coeffs, o.coeffs)], self.T)

    def __sub__(self, o):
        self._check(o)
        f = self.field
        return TruncatedSeries(f, [f.sub(a, b) for a, b in zip(self.coeffs, o.coeffs)], self.T)

    def __neg__(self):
        return TruncatedSeries(self.field, [self.field.neg(a) for a in self.coeffs], self.T)

    def __mul__(self, o):
        if not isinstance(o, TruncatedSeries):
            return self.scale(o)
        self._check(o)
        f, T = self.field, self.T
        out = [f.zero()] * (T + 1)
        for i, a in enumerate(self.coeffs):
            if f.is_zero(a):
                continue
            for j in range(T + 1 - i):
                b = o.coeffs[j]
                if not f.is_zero(b):
                    out[i + j] = f.add(out[i + j], f.mul(a, b))
        return TruncatedSeries(f, out, T)

    def scale(self, c):
        f = self.field
        c = f(c)
        return TruncatedSeries(f, [f.mul(c, a) for a in self.coeffs], self.T)

    def __eq__(self, o):
        return isinstance(o, TruncatedSeries) and o.T == self.T and all(
            self.field.is_zero(self.field.sub(a, b)) for a, b in zip(self.coeffs, o.coeffs))

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)}, T={self.T})"

    def to_json(self):
        return [self.field.to_json(a) for a in self.coeffs]


class ThetaSeries:
    """even + theta*odd over scalars, with theta^2 = 0."""

    __slots__ = ("even", "theta")

    def __init__(self, even: TruncatedSeries, theta: TruncatedSeries | None = None):
        if theta is None:
            theta = TruncatedSeries(even.field, [], even.T)
        even._check(theta)
        self.even = even
        self.theta = theta

    @staticmethod
    def theta_unit(field: Field, T: int = 6) -> "ThetaSeries":
        return ThetaSeries(TruncatedSeries(field, [], T), TruncatedSeries(field, [1], T))

    def __add__(self, o):
        return ThetaSeries(self.even + o.even, self.theta + o.theta)

    def __sub__(self, o):
        return ThetaSeries(self.even - o.even, self.theta - o.theta)

    def __mul__(self, o):
        # scalar coefficients are even, so theta commutes with them
        return ThetaSeries(self.even * o.even, self.even * o.theta + self.theta * o.even)

    def __eq__(self, o):
        return isinstance(o, ThetaSeries) and self.even == o.even and self.theta == o.theta

    def __repr__(self):
        return f"ThetaSeries(even={list(self.even.coeffs)}, theta={list(self.theta.coeffs)})"

    def to_json(self):
        return {"even": self.even.to_json(), "theta": self.theta.to_json()}


def series_multiply(x: ThetaSeries, y: ThetaSeries) -> ThetaSeries:
    return x * y
