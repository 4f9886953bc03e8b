"""Trace series, Molien sums, homological determinants, reflections and the
quadratic Koszul dual."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import _poly, linalg
from .autos import (Automorphism, compose, compose_explicit, diagonalize, identity,
                    obstructed)
from .errors import (DegreeMismatch, HypothesisError, Inconclusive, NotAGroup, NotGraded,
                     ValidationFailure)
from .free import FreeElement
from .pbw import AlgebraSpec
from .potential import hdet_of_linear_map
from .scalars import Field, Scalar

DEFAULT_ORDER = 10
MAX_GROUP = 64


# --- series ---------------------------------------------------------------------------


def format_tpoly(coeffs: Sequence, var: str = "t") -> str:
    """Render a polynomial with field coefficients, lowest power first."""
    parts = []
    for e, c in enumerate(coeffs):
        if not c:
            continue
        cs = str(c)
        if " " in cs.strip():
            cs = f"({cs})"
        mono = "" if e == 0 else var if e == 1 else f"{var}^{e}"
        if not mono:
            parts.append(cs)
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{cs}*{mono}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def expand_rational(num: Sequence, den: Sequence, K: int, field: Field) -> list[Scalar]:
    """Coefficients of num/den up to t^K (den(0) != 0)."""
    d0 = den[0]
    if not d0:
        raise ZeroDivisionError("denominator vanishes at t = 0")
    inv0 = 1 / d0
    out: list[Scalar] = []
    for k in range(K + 1):
        acc = num[k] if k < len(num) else field.zero
        for i in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[i] * out[k - i]
        out.append(acc * inv0)
    return out


@dataclass
class TruncatedSeries:
    coeffs: list[Scalar]
    field: Field
    num: tuple | None = None
    den: tuple | None = None

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return self.den is not None

    def check_exact(self) -> bool:
        if not self.exact:
            return True
        return expand_rational(self.num, self.den, self.order, self.field) == list(self.coeffs)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        K = min(self.order, other.order)
        return TruncatedSeries([self.coeffs[i] + other.coeffs[i] for i in range(K + 1)], self.field)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries([x * c for x in self.coeffs], self.field)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        K = min(self.order, other.order)
        out = []
        for k in range(K + 1):
            acc = self.field.zero
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return TruncatedSeries(out, self.field)

    def substitute_neg(self) -> "TruncatedSeries":
        """f(t) -> f(-t)."""
        return TruncatedSeries([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)], self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return list(self.coeffs) == list(other.coeffs)
        return list(self.coeffs) == [self.field(x) for x in other]

    def to_json(self) -> dict:
        out = {"coeffs": [str(c) for c in self.coeffs], "order": self.order}
        if self.exact:
            out["numerator"] = format_tpoly(self.num, "t")
            out["denominator"] = format_tpoly(self.den, "t")
        return out

    def __str__(self) -> str:
        return ", ".join(str(c) for c in self.coeffs)


def _poly_from_factors(factors: Sequence[tuple], field: Field) -> tuple:
    out: tuple = (field.one,)
    for f in factors:
        out = _poly.mul(out, f)
    return out


# --- traces ---------------------------------------------------------------------------------


def _require_graded(phi: Automorphism) -> None:
    alg = phi.algebra
    if not alg.graded or (alg.fcoeffs and alg.d < 2):
        raise NotGraded("trace series need a connected grading (f = 0 or f = c t^d, d >= 2)")
    if not phi.is_graded():
        raise NotGraded("the automorphism does not preserve the grading")


def brute_trace(phi: Automorphism, K: int) -> list[Scalar]:
    """Diagonal sums of phi on graded_basis(k), k = 0..K."""
    _require_graded(phi)
    alg = phi.algebra
    out = []
    for k in range(K + 1):
        acc = alg.field.zero
        for m in alg.graded_basis(k):
            acc = acc + phi.apply(alg.monomial(*m)).coeff(m)
        out.append(acc)
    return out


def exact_trace_form(phi: Automorphism) -> tuple[tuple, tuple] | None:
    """(1, p) with Tr = 1/p for parametric diagonalisable maps without tau."""
    if not phi.parametric or phi.tau or (not phi.h.is_zero() and obstructed(phi)):
        return None
    alg = phi.algebra
    F = alg.field
    d = alg.d
    wu, wv, ww = alg.weights
    lam = phi.a ** (d - 1) / phi.xi
    fac = [
        tuple([F.one] + [F.zero] * (wu - 1) + [-phi.a]),
        tuple([F.one] + [F.zero] * (wv - 1) + [-(phi.xi * phi.a)]),
        tuple([F.one] + [F.zero] * (ww - 1) + [-lam]),
    ]
    return (F.one,), _poly_from_factors(fac, F)


def trace_series(phi: Automorphism, K: int = DEFAULT_ORDER) -> TruncatedSeries:
    coeffs = brute_trace(phi, K)
    form = exact_trace_form(phi)
    s = TruncatedSeries(coeffs, phi.algebra.field)
    if form is not None:
        s.num, s.den = form
        if not s.check_exact():
            raise ValidationFailure("closed trace form disagrees with the matrix traces")
    return s


def hilbert_series(alg: AlgebraSpec, K: int = DEFAULT_ORDER) -> TruncatedSeries:
    return TruncatedSeries([alg.field(n) for n in alg.hilbert_coeffs(K)], alg.field)


def hilbert_report(alg: AlgebraSpec, K: int = 12) -> dict:
    """Enumerated dimensions against the identity trace and two closed forms.

    For f = t^d the weights (1, 1, d-1) give (1-t)^-2 (1-t^(d-1))^-1; the
    variant with (1-t^d) is also tested and reported, not assumed.
    """
    F = alg.field
    dims = alg.hilbert_coeffs(K)
    ident = trace_series(identity(alg), K) if alg.d is not None else None
    one = F.one
    if alg.d is None:
        w_exp = 1
    else:
        w_exp = alg.weights[2]
    lin = (one, -one)

    def closed(e: int) -> list[int]:
        den = _poly.mul(_poly.mul(lin, lin), tuple([one] + [F.zero] * (e - 1) + [-one]))
        return [int(str(c)) for c in expand_rational((one,), den, K, F)]

    weight_form = closed(w_exp)
    out = {
        "K": K,
        "dims": dims,
        "identity_trace_agrees": ident is None or [int(str(c)) for c in ident.coeffs] == dims,
        "weight_form": f"(1-t)^-2 (1-t^{w_exp})^-1",
        "weight_form_agrees": weight_form == dims,
    }
    if alg.d is not None and alg.d != w_exp:
        alt = closed(alg.d)
        out["degree_d_form"] = f"(1-t)^-2 (1-t^{alg.d})^-1"
        out["degree_d_form_agrees"] = alt == dims
        out["flag"] = ("the closed form with exponent d disagrees with the enumeration; "
                       "the weights deg w = d-1 give exponent d-1") if alt != dims else None
    return out


# --- groups ----------------------------------------------------------------------------------


@dataclass
class GroupSpec:
    elements: list[Automorphism]
    table: list[list[int]] = dc_field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements)


def _index_of(elems: Sequence[Automorphism], phi: Automorphism) -> int:
    for i, e in enumerate(elems):
        if e.same_map(phi):
            return i
    return -1


def _compose_any(a: Automorphism, b: Automorphism) -> Automorphism:
    return compose(a, b) if a.parametric and b.parametric else compose_explicit(a, b)


def make_group(elements: Sequence[Automorphism], bound: int = MAX_GROUP) -> GroupSpec:
    """Check closure, identity and inverses through the full multiplication table."""
    elems = list(elements)
    if not elems:
        raise NotAGroup("empty set")
    if len(elems) > bound:
        raise NotAGroup(f"more than {bound} elements")
    for i, e in enumerate(elems):
        if _index_of(elems[:i], e) >= 0:
            raise NotAGroup("repeated element")
    alg = elems[0].algebra
    id_idx = _index_of(elems, Automorphism(alg, alg.generators(), validate=False))
    if id_idx < 0:
        raise NotAGroup("identity missing")
    table = []
    for a in elems:
        row = []
        for b in elems:
            k = _index_of(elems, _compose_any(a, b))
            if k < 0:
                raise NotAGroup(f"not closed: {a.describe()} o {b.describe()}")
            row.append(k)
        table.append(row)
    for row in table:
        if id_idx not in row:
            raise NotAGroup("an element has no inverse")
    return GroupSpec(elems, table)


def generate_group(generators: Sequence[Automorphism], bound: int = MAX_GROUP) -> GroupSpec:
    alg = generators[0].algebra
    elems = [identity(alg)]
    frontier = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = _compose_any(g, x)
                if _index_of(elems, y) < 0:
                    elems.append(y)
                    nxt.append(y)
                    if len(elems) > bound:
                        raise NotAGroup(f"generated group exceeds {bound} elements")
        frontier = nxt
    return make_group(elems, bound)


def molien(H: GroupSpec, K: int = DEFAULT_ORDER) -> TruncatedSeries:
    F = H.elements[0].algebra.field
    total = None
    for g in H.elements:
        s = TruncatedSeries(brute_trace(g, K), F)
        total = s if total is None else total + s
    return total.scale(1 / F(len(H)))


def fixed_dims(H: GroupSpec, K: int = DEFAULT_ORDER) -> list[int]:
    """dim of the joint fixed space in each degree, by exact kernels."""
    alg = H.elements[0].algebra
    one = alg.field.one
    out = []
    for k in range(K + 1):
        basis = alg.graded_basis(k)
        columns = []
        for m in basis:
            x = alg.monomial(*m)
            col = {}
            for gi, g in enumerate(H.elements):
                for mm, c in (g.apply(x) - x).terms.items():
                    col[(gi, mm)] = c
            columns.append(col)
        out.append(len(linalg.nullspace(columns, one)))
    return out


# --- hdet -------------------------------------------------------------------------------------


def hdet_from_rational(num: Sequence, den: Sequence) -> Scalar:
    """hdet from Tr = num/den ~ -hdet^-1 t^-(deg den - deg num) at t = infinity."""
    return -(den[-1] / num[-1])


def hdet_laurent(phi: Automorphism) -> Scalar:
    """hdet = -lc(p) for Tr = 1/p; uses the diagonalised generators when h != 0."""
    form = exact_trace_form(phi)
    if form is None:
        raise HypothesisError("needs a parametric diagonalisable map without tau")
    if not phi.h.is_zero():
        diagonalize(phi)
    num, den = form
    d = phi.algebra.d
    if _poly.degree(den) != d + 1:
        raise DegreeMismatch(f"trace denominator has degree {_poly.degree(den)}, expected {d + 1}")
    return hdet_from_rational(num, den)


def hdet_potential(phi: Automorphism) -> Scalar:
    """hdet via the action on the potential; needs images linear in the generators."""
    alg = phi.algebra
    F = alg.field
    images = {}
    for name, img in zip("uvw", phi.images):
        terms = {}
        for (i, j, k), c in img.terms.items():
            if i + j + k != 1:
                raise HypothesisError("potential route needs images linear in u, v, w")
            terms[("v",) if i else ("u",) if j else ("w",)] = c
        images[name] = FreeElement(F, terms)
    return hdet_of_linear_map(alg, images)


# --- rational reconstruction and reflections ---------------------------------------------------


def berlekamp_massey(seq: Sequence[Scalar], field: Field) -> tuple:
    """Shortest connection polynomial C (C[0] = 1) with sum C[i] s[n-i] = 0."""
    zero, one = field.zero, field.one
    C, Bp = [one], [one]
    L, m, b = 0, 1, one
    for n in range(len(seq)):
        dlt = seq[n]
        for i in range(1, L + 1):
            dlt = dlt + C[i] * seq[n - i]
        if not dlt:
            m += 1
            continue
        coef = dlt / b
        T = list(C)
        need = len(Bp) + m
        if len(C) < need:
            C = C + [zero] * (need - len(C))
        for i, x in enumerate(Bp):
            C[i + m] = C[i + m] - coef * x
        if 2 * L <= n:
            L, Bp, b, m = n + 1 - L, T, dlt, 1
        else:
            m += 1
    C = C[:L + 1] + [zero] * max(0, L + 1 - len(C))
    return tuple(C), L


def reconstruct(series: TruncatedSeries, margin: int = 2) -> tuple[tuple, tuple]:
    """num/den from coefficients; Inconclusive unless the recurrence is over-determined."""
    F = series.field
    C, L = berlekamp_massey(series.coeffs, F)
    if 2 * L + margin > len(series.coeffs):
        raise Inconclusive(f"order {series.order} too low to certify a recurrence of length {L}")
    den = _poly.trim(C)
    num = _poly.trim(_poly.mul(series.coeffs, den)[:L])
    if not num:
        num = ()
    return num, den


def _reduce_fraction(num: tuple, den: tuple) -> tuple[tuple, tuple]:
    g = _poly.gcd(num, den)
    if len(g) > 1:
        num = _poly.divmod_(num, g)[0]
        den = _poly.divmod_(den, g)[0]
    return num, den


def multiplicity_at_one(p: Sequence, field: Field) -> int:
    one = field.one
    lin = (one, -one)
    m = 0
    p = _poly.trim(p)
    while p:
        quo, rem = _poly.divmod_(p, lin)
        if rem:
            break
        p = quo
        m += 1
    return m


def pole_order_at_one(series: TruncatedSeries) -> int:
    if series.exact:
        num, den = series.num, series.den
    else:
        num, den = reconstruct(series)
    num, den = _reduce_fraction(num, den)
    return multiplicity_at_one(den, series.field) - multiplicity_at_one(num, series.field)


@dataclass
class ReflectionReport:
    is_reflection: bool
    pole_order: int
    method: str
    numerator: str
    denominator: str
    # pole of order GKdim - 2 at t = 1 together with a factor 1 + t^2
    mystic: bool = False

    def to_json(self) -> dict:
        return dict(self.__dict__)


def reflection_report(phi: Automorphism, K: int = DEFAULT_ORDER) -> ReflectionReport:
    """Reflection iff the trace has a pole of order exactly 2 at t = 1.

    Exact forms are used when known; otherwise the truncated series is turned
    into a rational function by Berlekamp-Massey, which is accepted only when
    the recurrence is confirmed by at least two extra coefficients.
    """
    s = trace_series(phi, K)
    if s.exact:
        num, den, method = s.num, s.den, "exact form"
    else:
        num, den = reconstruct(s)
        method = f"recurrence fitted to {s.order + 1} coefficients"
    num, den = _reduce_fraction(num, den)
    F = phi.algebra.field
    order = multiplicity_at_one(den, F) - multiplicity_at_one(num, F)
    i2 = (F.one, F.zero, F.one)
    mystic = order == 1 and not _poly.divmod_(den, i2)[1] and bool(_poly.divmod_(num, i2)[1])
    return ReflectionReport(order == 2, order, method, format_tpoly(num, "t"), format_tpoly(den, "t"), mystic)


def is_reflection(phi: Automorphism, K: int = DEFAULT_ORDER) -> bool:
    return reflection_report(phi, K).is_reflection


def hdet_any(phi: Automorphism, K: int = DEFAULT_ORDER) -> tuple[Scalar, str]:
    """hdet by the Laurent route when possible, else from a reconstructed trace."""
    if exact_trace_form(phi) is not None:
        return hdet_laurent(phi), "laurent"
    num, den = _reduce_fraction(*reconstruct(trace_series(phi, K)))
    return hdet_from_rational(num, den), "laurent (reconstructed trace)"


@dataclass
class GroupReport:
    size: int
    hdets: list[Scalar]
    reflections: list[bool]
    regular_possible: bool
    gorenstein_certified: bool
    notes: list[str]

    def to_json(self) -> dict:
        return {"size": self.size, "hdets": [str(h) for h in self.hdets], "reflections": self.reflections,
                "regular_possible": self.regular_possible, "gorenstein_certified": self.gorenstein_certified,
                "notes": self.notes}


def group_report(H: GroupSpec, K: int = DEFAULT_ORDER) -> GroupReport:
    hdets, refl, notes = [], [], []
    for g in H.elements:
        h, how = hdet_any(g, K)
        hdets.append(h)
        refl.append((not g.is_identity()) and is_reflection(g, K))
        if g.parametric and not g.h.is_zero():
            notes.append(f"hdet of {g.describe()} read from the diagonalised generators u, v, w + h_hat")
    notes.append("regular_possible: a nontrivial reflection is necessary for a regular invariant ring")
    notes.append("gorenstein_certified: all hdet = 1 is sufficient for a Gorenstein invariant ring")
    return GroupReport(len(H), hdets, refl, any(refl), all(h == 1 for h in hdets), notes)


# --- Koszul dual at d = 2 --------------------------------------------------------------------------------

DUAL_BASIS = [(), ("u",), ("v",), ("w",), ("u", "u"), ("u", "v"), ("v", "v"), ("u", "u", "u")]


def koszul_relations(alg: AlgebraSpec) -> list[FreeElement]:
    F = alg.field
    q, qi = alg.q, alg.qinv
    W = lambda *pairs: FreeElement(F, {tuple(w): c for w, c in pairs})
    return [
        W(("uv", F.one), ("vu", qi)),
        W(("wu", F.one), ("uw", qi)),
        W(("wv", F.one), ("vw", q)),
        W(("wu", F.one), ("vv", F.one)),
        W(("wv", F.one), ("uu", F.one)),
        W(("ww", F.one)),
    ]


def _words(n: int) -> list[tuple]:
    out = [()]
    for _ in range(n):
        out = [w + (a,) for w in out for a in "uvw"]
    return out


@dataclass
class KoszulDual:
    algebra: AlgebraSpec
    ideal: dict[int, linalg.Echelon]
    basis: dict[int, list[tuple]]

    def dims(self) -> list[int]:
        return [len(self.basis[n]) for n in sorted(self.basis)]

    def reduce(self, p: FreeElement) -> dict:
        out = {}
        for k, piece in p.pieces().items():
            out.update(self.ideal[k].reduce(piece.terms) if k in self.ideal else piece.terms)
        return out

    def printed_basis_ok(self) -> bool:
        """The listed monomials are independent modulo the ideal and span each degree."""
        F = self.algebra.field
        for n in self.basis:
            words = [w for w in DUAL_BASIS if len(w) == n]
            reduced = [self.ideal[n].reduce({w: F.one}) for w in words] if n in self.ideal else [{w: F.one} for w in words]
            if linalg.rank(reduced) != len(words) or len(words) != len(self.basis[n]):
                return False
        return True

    def trace(self, phi: Automorphism, K: int = 6) -> TruncatedSeries:
        """Trace of the dual map on each degree of the dual algebra."""
        alg = self.algebra
        F = alg.field
        P = {}
        for name, img in zip("uvw", phi.images):
            for (i, j, k), c in img.terms.items():
                if i + j + k != 1:
                    raise HypothesisError("dual action needs linear images")
                src = "v" if i else "u" if j else "w"
                # phi(name) has coefficient c on src; the dual map sends src* to c name* + ...
                P[(src, name)] = c
        dual_img = {x: FreeElement(F, {(y,): c for (s, y), c in P.items() if s == x}) for x in "uvw"}
        coeffs = []
        for n in range(K + 1):
            basis = self.basis.get(n, [])
            acc = F.zero
            for wd in basis:
                img = FreeElement(F, {(): F.one})
                for letter in wd:
                    img = img * dual_img[letter]
                red = self.ideal[n].reduce(img.terms) if n in self.ideal else img.terms
                acc = acc + red.get(wd, F.zero)
            coeffs.append(acc)
        return TruncatedSeries(coeffs, F)


def koszul_dual_d2(alg: AlgebraSpec, max_len: int = 4) -> KoszulDual:
    """Quotient of the free algebra by the six quadratic dual relations, degree by degree."""
    if not (alg.is_monomial and alg.d == 2 and alg.fcoeffs[2] == 1):
        raise HypothesisError("the Koszul dual is implemented for f = t^2")
    rels = koszul_relations(alg)
    F = alg.field
    ideal: dict[int, linalg.Echelon] = {}
    basis: dict[int, list[tuple]] = {0: [()], 1: [("u",), ("v",), ("w",)]}
    # pivots avoid the listed monomials, so those survive as the quotient basis
    rank_key = {"u": 0, "v": 1, "w": 2}
    printed = set(DUAL_BASIS)
    key = lambda wd: (wd in printed, tuple(-rank_key[a] for a in wd))
    for n in range(2, max_len + 1):
        ech = linalg.Echelon(key=key)
        for r in rels:
            for a_len in range(n - 1):
                for left in _words(a_len):
                    for right in _words(n - 2 - a_len):
                        gen = FreeElement(F, {left: F.one}) * r * FreeElement(F, {right: F.one})
                        ech.add(gen.terms)
        ideal[n] = ech
        basis[n] = [wd for wd in sorted(_words(n), key=lambda wd: tuple(rank_key[a] for a in wd))
                    if wd not in ech.rows]
    return KoszulDual(alg, ideal, basis)


def hdet_koszul(dual: KoszulDual, phi: Automorphism) -> Scalar:
    """Top-degree (t^3) coefficient of the dual trace."""
    return dual.trace(phi, 3).coeffs[3]
