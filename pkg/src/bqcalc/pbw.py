"""PBW normal-form arithmetic for B_q(f), the quantum plane and the quantum torus.

B_q(f) = k<u, v, w> / (uv - q vu, wu - q uw - f(v), wv - q^-1 vw - f(u)).

Elements are sparse dicts over PBW monomials ``(i, j, k)`` standing for
v^i u^j w^k.  Two independent multiplication routes exist:

* :meth:`AlgebraSpec.normal_form` rewrites words with the oriented rules
  ``uv -> q vu``, ``wu -> q uw + f(v)``, ``wv -> q^-1 vw + f(u)`` (plus the
  inverse rules on the torus);
* :meth:`AlgebraSpec.mul` uses the Ore-extension structure
  ``w x = sigma(x) w + delta(x)`` with memoised monomial products.

Termination of the rewriting: each step strictly lowers
(number of w, number of out-of-order letter pairs, total u/v length) in
lexicographic order.  ``uv -> vu`` removes one inversion and keeps the rest;
``wu -> uw`` removes an inversion and ``f(v)`` removes a w; inverse
cancellation shortens the word without adding inversions.
"""
from __future__ import annotations

import heapq
import random
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import _poly
from .errors import (DegreeCapExceeded, NotGraded, ParseError, SpecMismatch,
                     UsageError, VariantError)
from ._parse import parse_expression
from .free import FreeElement
from .scalars import Field, Scalar, order_of

DEFAULT_DEGREE_CAP = 64

B = "B"
TORUS = "torus"

_RANK = {"v": 0, "V": 0, "u": 1, "U": 1, "w": 2}
_INVERSE = {"v": "V", "V": "v", "u": "U", "U": "u"}


class AlgebraSpec:
    """Parameters of B_q(f) plus derived data.

    ``fcoeffs`` lists c_0..c_d of f(t) = sum c_j t^j (trailing zeros dropped).
    The coefficient ring may be one of the fields in :mod:`bqcalc.scalars` or
    a polynomial ring over one (used by the automorphism classifier).
    """

    def __init__(self, field: Field, q, fcoeffs: Sequence = (), degree_cap: int = DEFAULT_DEGREE_CAP):
        self.field = field
        self.q = field(q) if not isinstance(q, Scalar) or q.field != field else q
        if not self.q:
            raise UsageError("q must be nonzero")
        coeffs = [field(c) for c in fcoeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.fcoeffs: tuple = tuple(coeffs)
        self.qinv = 1 / self.q
        self.degree_cap = degree_cap
        self._qpow: dict[int, Scalar] = {0: field.one}
        self._delta_cache: dict[tuple[int, int], dict] = {}
        self._wmul_cache: dict[tuple[int, int, int], dict] = {}

    # --- derived data --------------------------------------------------------

    @property
    def d(self) -> int | None:
        """deg f, or None for f = 0."""
        return len(self.fcoeffs) - 1 if self.fcoeffs else None

    @property
    def support(self) -> list[int]:
        return [j for j, c in enumerate(self.fcoeffs) if c]

    @property
    def weights(self) -> tuple[int, int, int]:
        """(deg u, deg v, deg w)."""
        d = self.d
        if d is not None and d >= 2:
            return (1, 1, d - 1)
        return (1, 1, 1)

    @property
    def is_monomial(self) -> bool:
        return len(self.support) == 1

    @property
    def graded(self) -> bool:
        return not self.fcoeffs or (self.is_monomial and self.d >= 2)

    @property
    def ord_q(self):
        return order_of(self.q)

    def key(self) -> tuple:
        return (self.field.key(), self.q, self.fcoeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraSpec) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"B_q(f) over {self.field} with q = {self.q}, f = {self.f_string()}"

    def f_string(self, var: str = "t") -> str:
        if not self.fcoeffs:
            return "0"
        parts = []
        for j, c in enumerate(self.fcoeffs):
            if not c:
                continue
            mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
            if not mono:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def qpow(self, n: int) -> Scalar:
        val = self._qpow.get(n)
        if val is None:
            val = self.q ** n if n >= 0 else self.qinv ** (-n)
            self._qpow[n] = val
        return val

    def with_field(self, field: Field, lift=None) -> "AlgebraSpec":
        """Same algebra with coefficients lifted into ``field``."""
        lift = lift or field
        return AlgebraSpec(field, lift(self.q), [lift(c) for c in self.fcoeffs], self.degree_cap)

    # --- elements ------------------------------------------------------------

    def element(self, terms: Mapping | None = None, variant: str = B) -> "Element":
        return Element(self, terms or {}, variant)

    def one(self, variant: str = B) -> "Element":
        return Element(self, {(0, 0, 0): self.field.one}, variant)

    def zero(self, variant: str = B) -> "Element":
        return Element(self, {}, variant)

    def scalar(self, c, variant: str = B) -> "Element":
        return Element(self, {(0, 0, 0): self.field(c) if not isinstance(c, Scalar) else c}, variant)

    def monomial(self, i: int, j: int, k: int = 0, coeff=None, variant: str = B) -> "Element":
        c = self.field.one if coeff is None else coeff
        return Element(self, {(i, j, k): c}, variant)

    def u(self, variant: str = B) -> "Element":
        return self.monomial(0, 1, 0, variant=variant)

    def v(self, variant: str = B) -> "Element":
        return self.monomial(1, 0, 0, variant=variant)

    def w(self) -> "Element":
        return self.monomial(0, 0, 1)

    def generators(self) -> tuple["Element", "Element", "Element"]:
        return self.u(), self.v(), self.w()

    def f_of(self, x: "Element") -> "Element":
        """f(x) for an element x (Horner)."""
        acc = self.zero(x.variant)
        for c in reversed(self.fcoeffs):
            acc = acc * x + self.scalar(c, x.variant)
        return acc

    def f_of_v(self, variant: str = B) -> "Element":
        return Element(self, {(j, 0, 0): c for j, c in enumerate(self.fcoeffs)}, variant)

    def f_of_u(self, variant: str = B) -> "Element":
        return Element(self, {(0, j, 0): c for j, c in enumerate(self.fcoeffs)}, variant)

    # --- degree bookkeeping --------------------------------------------------

    def monomial_degree(self, mono: tuple[int, int, int]) -> int:
        wu, wv, ww = self.weights
        i, j, k = mono
        return i * wv + j * wu + k * ww

    def graded_basis(self, k: int) -> list[tuple[int, int, int]]:
        if not self.graded:
            raise NotGraded("graded_basis needs f = 0 or f = c t^d with d >= 2")
        return [m for m in self._monomials_up_to(k) if self.monomial_degree(m) == k]

    def filtered_basis(self, k: int) -> list[tuple[int, int, int]]:
        return self._monomials_up_to(k)

    def _monomials_up_to(self, k: int) -> list[tuple[int, int, int]]:
        wu, wv, ww = self.weights
        out = []
        for i in range(k // wv + 1):
            for j in range((k - i * wv) // wu + 1):
                for kk in range((k - i * wv - j * wu) // ww + 1):
                    out.append((i, j, kk))
        return sorted(out)

    def hilbert_coeffs(self, K: int) -> list[int]:
        if not self.graded or (self.fcoeffs and self.d < 2):
            raise NotGraded("Hilbert series needs a connected grading")
        return [len(self.graded_basis(k)) for k in range(K + 1)]

    # --- Ore data ------------------------------------------------------------

    def sigma_mono(self, i: int, j: int) -> Scalar:
        """sigma(v^i u^j) = q^(j - i) v^i u^j."""
        return self.qpow(j - i)

    def delta_mono(self, i: int, j: int) -> dict:
        """delta(v^i u^j) as a plane dict {(i, j): c}, by the twisted Leibniz rule."""
        key = (i, j)
        hit = self._delta_cache.get(key)
        if hit is not None:
            return hit
        if i == 0 and j == 0:
            out: dict = {}
        elif i > 0:
            # delta(v * rest) = sigma(v) delta(rest) + delta(v) rest,  delta(v) = f(u)
            rest = self.delta_mono(i - 1, j)
            out = {}
            qinv = self.qinv
            for (a, b), c in rest.items():
                _acc(out, (a + 1, b), qinv * c)
            for jj, c in enumerate(self.fcoeffs):
                if c:
                    # u^jj v^(i-1) u^j = q^(jj (i-1)) v^(i-1) u^(jj + j)
                    _acc(out, (i - 1, jj + j), c * self.qpow(jj * (i - 1)))
        else:
            # delta(u * rest) = sigma(u) delta(rest) + delta(u) rest,  delta(u) = f(v)
            rest = self.delta_mono(0, j - 1)
            out = {}
            for (a, b), c in rest.items():
                # q u v^a u^b = q^(1 + a) v^a u^(b + 1)
                _acc(out, (a, b + 1), self.qpow(1 + a) * c)
            for jj, c in enumerate(self.fcoeffs):
                if c:
                    _acc(out, (jj, j - 1), c)
        self._delta_cache[key] = out
        return out

    def _w_times_plane(self, k: int, a: int, b: int) -> dict:
        """Normal form of w^k v^a u^b as {(i, j, m): c}."""
        key = (k, a, b)
        hit = self._wmul_cache.get(key)
        if hit is not None:
            return hit
        if k == 0:
            out = {(a, b, 0): self.field.one}
        else:
            prev = self._w_times_plane(k - 1, a, b)
            out = {}
            for (i, j, m), c in prev.items():
                _acc(out, (i, j, m + 1), self.sigma_mono(i, j) * c)
                for (x, y), dc in self.delta_mono(i, j).items():
                    _acc(out, (x, y, m), dc * c)
        self._wmul_cache[key] = out
        return out

    def mul_monomials(self, m1: tuple, m2: tuple) -> dict:
        i1, j1, k1 = m1
        i2, j2, k2 = m2
        if k1 == 0:
            return {(i1 + i2, j1 + j2, k2): self.qpow(j1 * i2)}
        out: dict = {}
        for (i, j, k), c in self._w_times_plane(k1, i2, j2).items():
            _acc(out, (i1 + i, j1 + j, k + k2), self.qpow(j1 * i) * c)
        return out

    # --- word rewriting ------------------------------------------------------

    def normal_form(self, word: Iterable[str] | str, coeff=None, variant: str = B,
                    strategy: str = "leftmost", rng: random.Random | None = None) -> "Element":
        """Rewrite ``coeff * word`` to PBW normal form.

        Letters: ``u v w`` and, on the torus, ``U V`` for u^-1, v^-1.
        ``strategy`` picks the redex: ``leftmost``, ``rightmost`` or ``random``.
        """
        word = tuple(word)
        for a in word:
            if a not in _RANK:
                raise ParseError(f"unknown letter {a!r}")
            if variant == TORUS and a == "w":
                raise VariantError("w does not live on the quantum torus")
            if variant == B and a in "UV":
                raise VariantError("inverse letters need the torus variant")
        c0 = self.field.one if coeff is None else self.field(coeff) if not isinstance(coeff, Scalar) else coeff
        # Words are processed in decreasing termination measure, so every word
        # is rewritten once, after all contributions to it have been merged.
        pending: dict[tuple, Scalar] = {word: c0}
        heap = [(_measure(word), word)]
        done: dict[tuple, Scalar] = {}
        rng = rng or random.Random(0)
        if strategy not in ("leftmost", "rightmost", "random"):
            raise UsageError(f"unknown strategy {strategy!r}")
        while heap:
            _, w = heapq.heappop(heap)
            c = pending.pop(w, None)
            if c is None:
                continue
            redexes = [p for p in range(len(w) - 1) if (w[p], w[p + 1]) in _REDEX]
            if not redexes:
                _acc(done, w, c)
                continue
            if strategy == "leftmost":
                p = redexes[0]
            elif strategy == "rightmost":
                p = redexes[-1]
            else:
                p = rng.choice(redexes)
            for new_word, factor in self._rewrite(w[p], w[p + 1]):
                nw = w[:p] + new_word + w[p + 2:]
                if nw not in pending:
                    heapq.heappush(heap, (_measure(nw), nw))
                _acc(pending, nw, c * factor)
        terms: dict = {}
        for w, c in done.items():
            _acc(terms, _word_to_monomial(w), c)
        return Element(self, terms, variant)

    def _rewrite(self, a: str, b: str) -> list[tuple[tuple, Scalar]]:
        if _INVERSE.get(a) == b:
            return [((), self.field.one)]
        pair = a + b
        if pair == "uv":
            return [(("v", "u"), self.q)]
        if pair == "uV":
            return [(("V", "u"), self.qinv)]
        if pair == "Uv":
            return [(("v", "U"), self.qinv)]
        if pair == "UV":
            return [(("V", "U"), self.q)]
        if pair == "wu":
            return [(("u", "w"), self.q)] + [(("v",) * j, c) for j, c in enumerate(self.fcoeffs) if c]
        if pair == "wv":
            return [(("v", "w"), self.qinv)] + [(("u",) * j, c) for j, c in enumerate(self.fcoeffs) if c]
        raise AssertionError(f"no rule for {pair}")

    # --- misc ----------------------------------------------------------------

    def relations(self) -> tuple[FreeElement, FreeElement, FreeElement]:
        """The three defining relations as free-algebra elements."""
        F = self.field
        r1 = FreeElement(F, {("u", "v"): F.one, ("v", "u"): -self.q})
        fv = {("v",) * j: -c for j, c in enumerate(self.fcoeffs)}
        fu = {("u",) * j: -c for j, c in enumerate(self.fcoeffs)}
        r2 = FreeElement(F, {("w", "u"): F.one, ("u", "w"): -self.q}) + FreeElement(F, fv)
        r3 = FreeElement(F, {("w", "v"): F.one, ("v", "w"): -self.qinv}) + FreeElement(F, fu)
        return r1, r2, r3

    def evaluate_free(self, p: FreeElement, images: Mapping[str, "Element"] | None = None) -> "Element":
        """Image of a free-algebra element under letter -> element (default: the generators)."""
        if images is None:
            images = {"u": self.u(), "v": self.v(), "w": self.w()}
        target = next(iter(images.values())).algebra
        out = target.zero()
        for word, c in p.terms.items():
            acc = target.scalar(c)
            for a in word:
                acc = acc * images[a]
            out = out + acc
        return out

    def parse(self, text: str, variant: str = B) -> "Element":
        return parse_element(self, text, variant)


def _acc(d: dict, key, c) -> None:
    prev = d.get(key)
    if prev is None:
        if c:
            d[key] = c
        return
    new = prev + c
    if new:
        d[key] = new
    else:
        del d[key]


def _is_redex(a: str, b: str) -> bool:
    return _RANK[a] > _RANK[b] or _INVERSE.get(a) == b


_REDEX = frozenset((a, b) for a in _RANK for b in _RANK if _is_redex(a, b))


def _measure(w: tuple) -> tuple[int, int, int]:
    """Negated (w count, inversions, length): heap order pops the largest first."""
    inv = 0
    for p, a in enumerate(w):
        ra = _RANK[a]
        for b in w[p + 1:]:
            if ra > _RANK[b]:
                inv += 1
    return (-w.count("w"), -inv, -len(w))


def _word_to_monomial(w: tuple) -> tuple[int, int, int]:
    i = sum(1 if a == "v" else -1 if a == "V" else 0 for a in w)
    j = sum(1 if a == "u" else -1 if a == "U" else 0 for a in w)
    k = sum(1 for a in w if a == "w")
    return (i, j, k)


class Element:
    """Finite combination of PBW monomials v^i u^j w^k."""

    __slots__ = ("algebra", "terms", "variant")

    def __init__(self, algebra: AlgebraSpec, terms: Mapping, variant: str = B):
        self.algebra = algebra
        self.variant = variant
        clean = {}
        for m, c in terms.items():
            if c:
                clean[tuple(m)] = c
        if variant == TORUS and any(m[2] for m in clean):
            raise VariantError("torus elements cannot contain w")
        if variant == B and any(m[0] < 0 or m[1] < 0 for m in clean):
            raise VariantError("negative exponents need the torus variant")
        self.terms = clean

    # --- structure ------------------------------------------------------------

    def _check(self, other: "Element") -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise SpecMismatch("elements belong to different algebras")
        if other.variant != self.variant:
            raise SpecMismatch(f"cannot combine {self.variant} and {other.variant} elements")

    def _lift(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        return self.algebra.scalar(other, self.variant)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_plane(self) -> bool:
        return all(m[2] == 0 for m in self.terms)

    def coeff(self, mono: tuple) -> Scalar:
        return self.terms.get(tuple(mono), self.algebra.field.zero)

    def degree(self) -> int:
        """Filtered (weighted) degree; -1 for zero."""
        if not self.terms:
            return -1
        return max(self.algebra.monomial_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.algebra.monomial_degree(m) for m in self.terms}) <= 1

    def homogeneous_part(self, k: int) -> "Element":
        return Element(self.algebra, {m: c for m, c in self.terms.items()
                                      if self.algebra.monomial_degree(m) == k}, self.variant)

    # --- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "Element":
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return Element(self.algebra, out, self.variant)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element(self.algebra, {m: -c for m, c in self.terms.items()}, self.variant)

    def __sub__(self, other) -> "Element":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Element":
        return self._lift(other) - self

    def scale(self, c) -> "Element":
        if not c:
            return Element(self.algebra, {}, self.variant)
        return Element(self.algebra, {m: c * x for m, x in self.terms.items()}, self.variant)

    def __mul__(self, other) -> "Element":
        if not isinstance(other, Element):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other) -> "Element":
        return self.scale(other)

    def __truediv__(self, other) -> "Element":
        if isinstance(other, Element):
            if len(other.terms) == 1 and (0, 0, 0) in other.terms:
                return self.scale(1 / other.terms[(0, 0, 0)])
            raise UsageError("division by a non-scalar element")
        return self.scale(1 / other)

    def __pow__(self, k: int) -> "Element":
        if k < 0:
            if self.variant != TORUS or len(self.terms) != 1:
                raise UsageError("negative powers need a torus monomial")
            (m, c), = self.terms.items()
            inv = _torus_monomial_inverse(self.algebra, m, c)
            return inv ** (-k)
        out = self.algebra.one(self.variant)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.algebra == other.algebra and self.terms == other.terms
        if not self.terms:
            return not other
        return self.terms == {(0, 0, 0): self.algebra.field(other)}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # --- conversions ----------------------------------------------------------

    def to_torus(self) -> "Element":
        if not self.is_plane():
            raise VariantError("only plane elements embed in the torus")
        return Element(self.algebra, self.terms, TORUS)

    def sorted_terms(self) -> list[tuple[tuple, Scalar]]:
        return sorted(self.terms.items())

    def __str__(self) -> str:
        return format_element(self)

    __repr__ = __str__

    def to_json(self) -> list[dict]:
        return [{"i": i, "j": j, "k": k, "coeff": str(c)} for (i, j, k), c in self.sorted_terms()]


def _torus_monomial_inverse(alg: AlgebraSpec, m: tuple, c) -> Element:
    # (v^i u^j)^-1 = u^-j v^-i = q^(ij) v^-i u^-j
    i, j, _ = m
    return Element(alg, {(-i, -j, 0): alg.qpow(i * j) / c}, TORUS)


def mul(x: Element, y: Element) -> Element:
    x._check(y)
    alg = x.algebra
    if not x.terms or not y.terms:
        return Element(alg, {}, x.variant)
    cap = alg.degree_cap
    if x.variant == B and cap is not None and x.degree() + y.degree() > cap:
        raise DegreeCapExceeded(f"product degree {x.degree() + y.degree()} exceeds cap {cap}")
    # x y = sum over (v^i1 u^j1 w^k1) of c1 v^i1 u^j1 (w^k1 y); each w^k1 y is built once
    wy: dict[int, dict] = {}
    for k1 in sorted({m[2] for m in x.terms}):
        acc: dict = {}
        for (i2, j2, k2), c2 in y.terms.items():
            if k1 == 0:
                _acc(acc, (i2, j2, k2), c2)
                continue
            for (i, j, k), c in alg._w_times_plane(k1, i2, j2).items():
                _acc(acc, (i, j, k + k2), c * c2)
        wy[k1] = acc
    out: dict = {}
    for (i1, j1, k1), c1 in x.terms.items():
        for (i, j, k), c in wy[k1].items():
            # u^j1 v^i = q^(j1 i) v^i u^j1
            _acc(out, (i1 + i, j1 + j, k), c1 * alg.qpow(j1 * i) * c)
    return Element(alg, out, x.variant)


def commutator(x: Element, g: Element) -> Element:
    return x * g - g * x


def sigma_delta(x: Element) -> tuple[Element, Element]:
    """(sigma(x), delta(x)) for a plane element x."""
    if x.variant != B or not x.is_plane():
        raise VariantError("sigma_delta needs an element of the quantum plane")
    alg = x.algebra
    sig: dict = {}
    dl: dict = {}
    for (i, j, _), c in x.terms.items():
        _acc(sig, (i, j, 0), alg.sigma_mono(i, j) * c)
        for (a, b), dc in alg.delta_mono(i, j).items():
            _acc(dl, (a, b, 0), dc * c)
    return Element(alg, sig), Element(alg, dl)


# --- text formats -------------------------------------------------------------


def _scalar_str(c) -> str:
    s = str(c)
    if any(ch in s for ch in " +/") or (s.startswith("-") and any(ch in s[1:] for ch in "-+")):
        return f"({s})"
    if "-" in s[1:]:
        return f"({s})"
    return s


def format_element(x: Element) -> str:
    if not x.terms:
        return "0"
    parts = []
    for (i, j, k), c in sorted(x.terms.items(), key=lambda mc: (x.algebra.monomial_degree(mc[0]), mc[0])):
        factors = []
        for letter, e in (("v", i), ("u", j), ("w", k)):
            if e == 1:
                factors.append(letter)
            elif e:
                factors.append(f"{letter}^{e}")
        mono = "*".join(factors)
        cs = _scalar_str(c)
        if not mono:
            parts.append(cs)
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{cs}*{mono}")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def parse_element(alg: AlgebraSpec, text: str, variant: str = B) -> Element:
    field = alg.field

    def number(n: int):
        return alg.scalar(field(n), variant)

    def name(s: str):
        if s == "u":
            return alg.u(variant)
        if s == "v":
            return alg.v(variant)
        if s == "w":
            if variant == TORUS:
                raise VariantError("w does not live on the quantum torus")
            return alg.w()
        if field.symbol is not None and (s == field.symbol or (s == "zeta" and field.symbol == "z")):
            return alg.scalar(field.gen(), variant)
        raise ParseError(f"unknown symbol {s!r}")

    val = parse_expression(text, number, name)
    if not isinstance(val, Element):
        val = alg.scalar(val, variant)
    return val


def element_from_json(alg: AlgebraSpec, data: Sequence[Mapping], variant: str = B) -> Element:
    terms: dict = {}
    for entry in data:
        _acc(terms, (int(entry["i"]), int(entry["j"]), int(entry["k"])), alg.field.parse(entry["coeff"]))
    return Element(alg, terms, variant)


def random_element(alg: AlgebraSpec, rng: random.Random, max_degree: int, max_terms: int = 3,
                   coeff_range: int = 3) -> Element:
    basis = alg.filtered_basis(max_degree)
    terms: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        m = rng.choice(basis)
        c = rng.randint(-coeff_range, coeff_range) or 1
        _acc(terms, m, alg.field(c))
    return Element(alg, terms)


# --- soundness fuzzing --------------------------------------------------------------------


def confluence_fuzz(alg: AlgebraSpec, rng: random.Random, words: int = 500, max_len: int = 8) -> dict:
    """Rewrite random words with every strategy and compare with the Ore product.

    Returns counts and the first disagreeing word, if any.
    """
    gens = dict(zip("uvw", alg.generators()))
    failures = []
    for _ in range(words):
        word = tuple(rng.choice("uvw") for _ in range(rng.randint(0, max_len)))
        forms = [alg.normal_form(word, strategy=s, rng=random.Random(rng.random()))
                 for s in ("leftmost", "rightmost", "random")]
        prod = alg.one()
        for a in word:
            prod = prod * gens[a]
        if any(f != prod for f in forms):
            failures.append("".join(word) or "1")
    return {"words": words, "max_len": max_len, "failures": len(failures),
            "first_failure": failures[0] if failures else None}


def associativity_fuzz(alg: AlgebraSpec, rng: random.Random, triples: int = 200, max_degree: int = 5) -> dict:
    """Check (xy)z = x(yz) on random triples of filtered degree <= max_degree."""
    failures = []
    for _ in range(triples):
        x, y, z = (random_element(alg, rng, max_degree) for _ in range(3))
        if (x * y) * z != x * (y * z):
            failures.append((str(x), str(y), str(z)))
    return {"triples": triples, "max_degree": max_degree, "failures": len(failures),
            "first_failure": list(failures[0]) if failures else None}
