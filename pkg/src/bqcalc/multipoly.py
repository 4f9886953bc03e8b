"""Commutative polynomials over a coefficient field, for symbolic ansatz computations.

A :class:`PolyRing` quacks like a coefficient field for the PBW kernel: it
has ``zero``, ``one``, is callable for lifting, and its elements support the
ring operations.  Division only works by nonzero constants.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import DomainError
from .scalars import Field, Scalar


class PolyRing:
    kind = "PolyRing"
    symbol = None

    def __init__(self, base: Field, names: Sequence[str]):
        self.base = base
        self.names = tuple(names)
        self._index = {n: i for i, n in enumerate(self.names)}

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return Poly(self, {self._unit(): self.base.one})

    def _unit(self) -> tuple:
        return (0,) * len(self.names)

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring is not self:
                raise DomainError("polynomial from another ring")
            return value
        c = value if isinstance(value, Scalar) else self.base(value)
        return Poly(self, {self._unit(): c})

    def var(self, name: str) -> "Poly":
        e = [0] * len(self.names)
        e[self._index[name]] = 1
        return Poly(self, {tuple(e): self.base.one})

    def vars(self) -> list["Poly"]:
        return [self.var(n) for n in self.names]

    def key(self) -> tuple:
        return ("PolyRing", self.base.key(), self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRing) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"{self.base}[{', '.join(self.names)}]"


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, Scalar]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}

    def _lift(self, other) -> "Poly":
        return self.ring(other)

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._lift(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def constant(self) -> Scalar | None:
        """The value if this is a constant polynomial, else None."""
        if not self.terms:
            return self.ring.base.zero
        if list(self.terms) == [self.ring._unit()]:
            return self.terms[self.ring._unit()]
        return None

    def __truediv__(self, other) -> "Poly":
        c = self._lift(other).constant()
        if c is None or not c:
            raise DomainError("polynomials can only be divided by nonzero constants")
        inv = 1 / c
        return Poly(self.ring, {m: v * inv for m, v in self.terms.items()})

    def __rtruediv__(self, other) -> "Poly":
        return self._lift(other) / self

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            c = self.constant()
            if c is None or not c:
                raise DomainError("negative powers need a nonzero constant")
            return self.ring(1 / c) ** (-k)
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        try:
            other = self._lift(other)
        except (DomainError, TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def variables(self) -> set[str]:
        return {self.ring.names[i] for m in self.terms for i, e in enumerate(m) if e}

    def substitute(self, values: Mapping[str, object]) -> "Poly":
        """Replace variables by scalars or polynomials of the same ring."""
        ring = self.ring
        out = ring.zero
        for m, c in self.terms.items():
            acc = ring(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                name = ring.names[i]
                if name in values:
                    acc = acc * ring(values[name]) ** e
                else:
                    acc = acc * ring.var(name) ** e
            out = out + acc
        return out

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, m) if e)
            cs = str(c)
            if not mono:
                parts.append(cs if " " not in cs else f"({cs})")
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def lift_scalars(ring: PolyRing, values: Iterable) -> list[Poly]:
    return [ring(v) for v in values]
