"""Exact coefficient fields and q-combinatorics.

Three field kinds are supported:

* ``RationalField``            -- Q, backed by ``gmpy2.mpq``;
* ``CyclotomicField(n)``       -- Q(zeta_n) as Q[z]/(Phi_n);
* ``RationalFunctionField()``  -- Q(q), reduced fractions of polynomials in q.

Scalars are immutable and hashable.  Every scalar knows its field and mixed
arithmetic with plain ``int`` / ``Fraction`` / ``mpq`` is coerced into it.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from gmpy2 import mpq, mpz

from . import _poly
from ._parse import parse_expression
from .errors import BoundExceeded, DomainError, FieldMismatch, ParseError

INFINITY = math.inf
DEFAULT_ORDER_BOUND = 512

_ZERO = mpq(0)
_ONE = mpq(1)


def _to_mpq(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, (int, type(_ZERO))):
        return mpq(x)
    raise TypeError(f"cannot convert {x!r} to a rational")


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n (lowest degree first).

    Computed by dividing x^n - 1 by Phi_d for every proper divisor d.
    """
    if n < 1:
        raise DomainError("cyclotomic index must be positive")
    p = tuple([mpq(-1)] + [_ZERO] * (n - 1) + [_ONE])
    for d in _divisors(n)[:-1]:
        quo, rem = _poly.divmod_(p, tuple(mpq(c) for c in cyclotomic_polynomial(d)))
        if rem:
            raise ArithmeticError(f"Phi_{d} does not divide x^{n}-1")
        p = quo
    return tuple(int(c) for c in p)


def _qmul(p: tuple, r: tuple) -> tuple:
    """Product of polynomials with mpq coefficients.

    Long products go through Kronecker substitution: clear denominators, pack
    the integer coefficients into one big integer with signed digits,
    multiply once, unpack.
    """
    if not p or not r:
        return ()
    if len(p) == 1 or len(r) == 1:
        if len(p) != 1:
            p, r = r, p
        c = p[0]
        if c == 1:
            return tuple(r)
        if c == -1:
            return tuple(-x for x in r)
        return tuple(c * x for x in r)
    if len(p) * len(r) < 64:
        return _poly.mul(p, r)
    dp = math.lcm(*(int(c.denominator) for c in p))
    dr = math.lcm(*(int(c.denominator) for c in r))
    ip = [mpz(c * dp) for c in p]
    ir = [mpz(c * dr) for c in r]
    bound = max(abs(c) for c in ip) * max(abs(c) for c in ir) * min(len(ip), len(ir))
    bits = int(bound).bit_length() + 2
    x = _pack(ip, bits) * _pack(ir, bits)
    out = _unpack(x, bits, len(p) + len(r) - 1)
    scale = mpq(1, dp * dr)
    return _poly.trim([c * scale for c in out])


def _pack(coeffs: list, bits: int) -> mpz:
    x = mpz(0)
    for c in reversed(coeffs):
        x = (x << bits) + c
    return x


def _unpack(x: mpz, bits: int, n: int) -> list:
    mask = (mpz(1) << bits) - 1
    half = mpz(1) << (bits - 1)
    full = mpz(1) << bits
    out = []
    for _ in range(n):
        d = x & mask
        if d >= half:
            d -= full
        out.append(mpq(d))
        x = (x - d) >> bits
    return out


def _format_poly(coeffs: tuple, var: str, low: int = 0) -> str:
    """Render sum(coeffs[i] * var^(i+low)), highest power first."""
    parts: list[str] = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        e = i + low
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class Field:
    """Common interface of the coefficient fields."""

    kind: str = "abstract"
    symbol: str | None = None

    @property
    def zero(self) -> "Scalar":
        return self(0)

    @property
    def one(self) -> "Scalar":
        return self(1)

    def gen(self) -> "Scalar":
        raise DomainError(f"{self} has no distinguished generator")

    def key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __call__(self, value) -> "Scalar":
        raise NotImplementedError

    def parse(self, text: str) -> "Scalar":
        def name(s: str):
            if self.symbol is not None and (s == self.symbol or (s == "zeta" and self.symbol == "z")):
                return self.gen()
            raise ParseError(f"unknown symbol {s!r} for field {self}")

        value = parse_expression(str(text), self, name)
        return self(value)

    def to_json(self) -> dict:
        return {"kind": self.kind}


class Scalar:
    """Base class; subclasses implement the ``_``-prefixed primitives."""

    __slots__ = ("field",)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction, type(_ZERO))):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._add(o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._add(o._neg())

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o._add(self._neg())

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._mul(o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._mul(o.inverse())

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o._mul(self.inverse())

    def __neg__(self):
        return self._neg()

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result._mul(base)
            k >>= 1
            if k:
                base = base._mul(base)
        return result

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except FieldMismatch:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self._key() == o._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self._inv()

    def is_one(self) -> bool:
        return self == 1


# --- Q -------------------------------------------------------------------------


class RationalField(Field):
    kind = "Rational"

    def key(self) -> tuple:
        return ("Q",)

    def __call__(self, value) -> "RationalScalar":
        if isinstance(value, RationalScalar):
            return value
        if isinstance(value, Scalar):
            raise FieldMismatch(f"cannot coerce {value.field} into Q")
        if isinstance(value, str):
            return self.parse(value)
        return RationalScalar(self, _to_mpq(value))

    def __repr__(self) -> str:
        return "Q"


class RationalScalar(Scalar):
    __slots__ = ("value",)

    def __init__(self, field: RationalField, value: mpq):
        self.field = field
        self.value = value

    def _add(self, o):
        return RationalScalar(self.field, self.value + o.value)

    def _mul(self, o):
        return RationalScalar(self.field, self.value * o.value)

    def _neg(self):
        return RationalScalar(self.field, -self.value)

    def _inv(self):
        return RationalScalar(self.field, 1 / self.value)

    def _key(self):
        return self.value

    def __hash__(self) -> int:
        return hash(self.value)

    def is_zero(self) -> bool:
        return not self.value

    def __str__(self) -> str:
        return str(self.value)

    def to_fraction(self) -> Fraction:
        return Fraction(int(self.value.numerator), int(self.value.denominator))


# --- Q(zeta_n) -----------------------------------------------------------------


class CyclotomicField(Field):
    kind = "Cyclotomic"
    symbol = "z"

    def __init__(self, n: int):
        if n < 2:
            raise DomainError("cyclotomic field needs n >= 2")
        self.n = n
        self.phi = cyclotomic_polynomial(n)
        self.deg = len(self.phi) - 1

    def key(self) -> tuple:
        return ("cyclo", self.n)

    def _reduce(self, coeffs: list) -> tuple:
        d = self.deg
        if len(coeffs) > d:
            coeffs = list(coeffs)
            phi = self.phi
            for k in range(len(coeffs) - 1, d - 1, -1):
                c = coeffs[k]
                if c:
                    base = k - d
                    for i in range(d):
                        if phi[i]:
                            coeffs[base + i] -= c * phi[i]
            coeffs = coeffs[:d]
        return _poly.trim(coeffs)

    def __call__(self, value) -> "CyclotomicScalar":
        if isinstance(value, CyclotomicScalar):
            if value.field != self:
                raise FieldMismatch(f"cannot coerce {value.field} into {self}")
            return value
        if isinstance(value, Scalar):
            raise FieldMismatch(f"cannot coerce {value.field} into {self}")
        if isinstance(value, str):
            return self.parse(value)
        return CyclotomicScalar(self, _poly.trim((_to_mpq(value),)))

    def from_coeffs(self, coeffs: Iterable) -> "CyclotomicScalar":
        big = [_to_mpq(c) for c in coeffs]
        return CyclotomicScalar(self, self._reduce(big))

    def gen(self) -> "CyclotomicScalar":
        return self.from_coeffs([0, 1])

    def __repr__(self) -> str:
        return f"Q(zeta_{self.n})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "phi": list(self.phi)}


class CyclotomicScalar(Scalar):
    __slots__ = ("coeffs",)

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _add(self, o):
        return CyclotomicScalar(self.field, _poly.add(self.coeffs, o.coeffs))

    def _mul(self, o):
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return CyclotomicScalar(self.field, ())
        if len(a) == 1:
            return CyclotomicScalar(self.field, _poly.scale(b, a[0]))
        if len(b) == 1:
            return CyclotomicScalar(self.field, _poly.scale(a, b[0]))
        prod = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return CyclotomicScalar(self.field, self.field._reduce(prod))

    def _neg(self):
        return CyclotomicScalar(self.field, _poly.neg(self.coeffs))

    def _inv(self):
        phi = tuple(mpq(c) for c in self.field.phi)
        g, s, _ = _poly.xgcd(self.coeffs, phi)
        if g != (_ONE,):
            raise ZeroDivisionError("element is not invertible modulo Phi_n")
        return CyclotomicScalar(self.field, self.field._reduce(list(s)))

    def _key(self):
        return self.coeffs

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self) -> str:
        return _format_poly(self.coeffs, "z")


# --- Q(q) ----------------------------------------------------------------------


class RationalFunctionField(Field):
    kind = "RationalFunction"
    symbol = "q"

    def key(self) -> tuple:
        return ("Q(q)",)

    def __call__(self, value) -> "RationalFunctionScalar":
        if isinstance(value, RationalFunctionScalar):
            return value
        if isinstance(value, Scalar):
            raise FieldMismatch(f"cannot coerce {value.field} into Q(q)")
        if isinstance(value, str):
            return self.parse(value)
        c = _to_mpq(value)
        if not c:
            return RationalFunctionScalar(self, 0, (), (_ONE,))
        return RationalFunctionScalar(self, 0, (c,), (_ONE,))

    def gen(self) -> "RationalFunctionScalar":
        return RationalFunctionScalar(self, 1, (_ONE,), (_ONE,))

    def make(self, num: Iterable, den: Iterable = (1,)) -> "RationalFunctionScalar":
        return _canonical_rf(self, 0, _poly.trim([_to_mpq(c) for c in num]),
                             _poly.trim([_to_mpq(c) for c in den]))

    def __repr__(self) -> str:
        return "Q(q)"


def _canonical_rf(field, s: int, num: tuple, den: tuple) -> "RationalFunctionScalar":
    # value = q^s * num / den with num(0) != 0, den(0) != 0, den monic, gcd 1
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return RationalFunctionScalar(field, 0, (), (_ONE,))
    v = _poly.valuation(num)
    if v:
        num = num[v:]
        s += v
    w = _poly.valuation(den)
    if w:
        den = den[w:]
        s -= w
    if len(den) > 1 and len(num) > 1:
        g = _poly.gcd(num, den)
        if len(g) > 1:
            num = _poly.divmod_(num, g)[0]
            den = _poly.divmod_(den, g)[0]
    lead = den[-1]
    if lead != 1:
        num = tuple(c / lead for c in num)
        den = tuple(c / lead for c in den)
    return RationalFunctionScalar(field, s, num, den)


class RationalFunctionScalar(Scalar):
    __slots__ = ("shift", "num", "den")

    def __init__(self, field, shift: int, num: tuple, den: tuple):
        self.field = field
        self.shift = shift
        self.num = num
        self.den = den

    def _add(self, o):
        if not self.num:
            return o
        if not o.num:
            return self
        m = min(self.shift, o.shift)
        n1 = _poly.shift(self.num, self.shift - m)
        n2 = _poly.shift(o.num, o.shift - m)
        if self.den == o.den:
            return _canonical_rf(self.field, m, _poly.add(n1, n2), self.den)
        num = _poly.add(_qmul(n1, o.den), _qmul(n2, self.den))
        return _canonical_rf(self.field, m, num, _qmul(self.den, o.den))

    def _mul(self, o):
        if not self.num or not o.num:
            return RationalFunctionScalar(self.field, 0, (), (_ONE,))
        s = self.shift + o.shift
        if len(self.den) == 1 and len(o.den) == 1:
            return RationalFunctionScalar(self.field, s, _qmul(self.num, o.num), (_ONE,))
        return _canonical_rf(self.field, s, _qmul(self.num, o.num), _qmul(self.den, o.den))

    def _neg(self):
        return RationalFunctionScalar(self.field, self.shift, _poly.neg(self.num), self.den)

    def _inv(self):
        return _canonical_rf(self.field, -self.shift, self.den, self.num)

    def _key(self):
        return (self.shift, self.num, self.den)

    def __hash__(self) -> int:
        if self.shift == 0 and len(self.num) <= 1 and self.den == (_ONE,):
            return hash(self.num[0] if self.num else 0)
        return hash(self._key())

    def is_zero(self) -> bool:
        return not self.num

    def numerator(self) -> tuple:
        """Coefficients of the numerator polynomial (q^shift absorbed when shift >= 0)."""
        if self.shift >= 0:
            return _poly.shift(self.num, self.shift)
        return self.num

    def denominator(self) -> tuple:
        if self.shift < 0:
            return _poly.shift(self.den, -self.shift)
        return self.den

    def __str__(self) -> str:
        if not self.num:
            return "0"
        if self.den == (_ONE,):
            return _format_poly(self.num, "q", self.shift)
        num = _format_poly(self.numerator(), "q")
        den = _format_poly(self.denominator(), "q")
        return f"({num})/({den})"


QQ = RationalField()
QQ_q = RationalFunctionField()


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> CyclotomicField:
    return CyclotomicField(n)


# --- q-combinatorics -----------------------------------------------------------


def q_number(k: int, x: Scalar) -> Scalar:
    """[k]_x = 1 + x + ... + x^(k-1)."""
    if k < 1:
        raise DomainError("q-numbers are defined for positive k")
    total = x.field.zero
    power = x.field.one
    for _ in range(k):
        total = total + power
        power = power * x
    return total


def gauss_binomial(k: int, i: int, x: Scalar) -> Scalar:
    """Gaussian binomial (k choose i)_x via the q-Pascal recurrence.

    binom(k, i) = binom(k-1, i-1) + x^i * binom(k-1, i); no division, so the
    value is well defined at roots of unity.
    """
    if k < 0 or i < 0:
        raise DomainError("Gaussian binomials need nonnegative arguments")
    if i > k:
        raise DomainError(f"i = {i} exceeds k = {k}")
    one = x.field.one
    xpow = [one]
    for _ in range(k):
        xpow.append(xpow[-1] * x)
    row = [one]
    for n in range(1, k + 1):
        new = [one]
        for r in range(1, n):
            new.append(row[r - 1] + xpow[r] * row[r])
        new.append(one)
        row = new
    return row[i]


def order_of(x: Scalar, bound: int = DEFAULT_ORDER_BOUND):
    """Multiplicative order of x, or ``INFINITY``.

    In Q(zeta_n) every root of unity has order dividing lcm(2, n), so the
    search is exact; ``BoundExceeded`` is raised only if that order is larger
    than ``bound``.
    """
    if x.is_zero():
        raise DomainError("order of zero is undefined")
    field = x.field
    if isinstance(field, CyclotomicField):
        top = field.n * 2 // math.gcd(2, field.n)
        if x ** top != 1:
            return INFINITY
        for m in _divisors(top):
            if x ** m == 1:
                if m > bound:
                    raise BoundExceeded(f"order {m} exceeds bound {bound}")
                return m
    if x == 1:
        return 1
    if x == -1:
        return 2
    return INFINITY


def roots_of_unity(field: Field) -> list[Scalar]:
    """All roots of unity contained in ``field`` (deterministic order)."""
    if isinstance(field, CyclotomicField):
        top = field.n * 2 // math.gcd(2, field.n)
        z = field.gen() if field.n % 2 == 0 else -field.gen()
        # -z has order 2n for odd n, z has order n for even n; either way it
        # generates the full group of order lcm(2, n).
        out = []
        cur = field.one
        for _ in range(top):
            out.append(cur)
            cur = cur * z
        return out
    return [field.one, -field.one]


def roots_of_unity_of_order_dividing(field: Field, m: int) -> list[Scalar]:
    return [r for r in roots_of_unity(field) if r ** m == 1]


def make_field(kind: str, n: int | None = None) -> Field:
    if kind in ("Rational", "Q", "rational"):
        return QQ
    if kind in ("RationalFunction", "generic", "Q(q)"):
        return QQ_q
    if kind in ("Cyclotomic", "cyclo", "zeta"):
        if n is None:
            raise DomainError("cyclotomic field needs n")
        return cyclotomic_field(n)
    raise DomainError(f"unknown field kind {kind!r}")
