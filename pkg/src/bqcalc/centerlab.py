"""Closed-form commutation identities, central elements, center solving,
normality, one-dimensional modules and the standard isomorphisms."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from . import linalg
from .errors import (CentralityFailure, DenominatorVanishes, DomainError, HypothesisError,
                     RelationNotPreserved, UsageError)
from .pbw import B, TORUS, AlgebraSpec, Element, commutator, sigma_delta
from .scalars import INFINITY, Scalar, gauss_binomial, q_number

IDENTITY_NAMES = ("delta_u_pow", "delta_v_pow", "w_times_upow", "w_times_vpow",
                  "wpow_times_u", "wpow_times_v", "rewr")

DEFAULT_CENTER_DEGREE = 10


@dataclass
class IdentityReport:
    name: str
    k: int
    lhs: Element
    rhs: Element
    residual: Element
    # part of rhs beyond the leading skew term, where that is meaningful
    tail: Element | None = None

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()

    def to_json(self) -> dict:
        out = {"name": self.name, "k": self.k, "lhs": str(self.lhs), "rhs": str(self.rhs),
               "residual": str(self.residual), "passed": self.passed}
        if self.tail is not None:
            out["tail"] = str(self.tail)
        return out


def _plane_apply(x: Element, op: str, times: int) -> Element:
    for _ in range(times):
        s, d = sigma_delta(x)
        x = s if op == "sigma" else d
    return x


def closed_identity(alg: AlgebraSpec, name: str, k: int) -> IdentityReport:
    """Compare a closed commutation formula against kernel rewriting."""
    if k < 1:
        raise DomainError("k must be positive")
    q = alg.q
    u, v, w = alg.generators()
    one = alg.field.one
    tail = None
    if name == "delta_u_pow":
        lhs = alg.zero()
        for j, c in enumerate(alg.fcoeffs):
            lhs = lhs + (v ** j * u ** (k - 1)).scale(c * q_number(k, alg.qpow(j + 1)))
        rhs = sigma_delta(u ** k)[1]
    elif name == "delta_v_pow":
        lhs = alg.zero()
        for j, c in enumerate(alg.fcoeffs):
            lhs = lhs + (u ** j * v ** (k - 1)).scale(c * q_number(k, alg.qpow(-(j + 1))))
        rhs = sigma_delta(v ** k)[1]
    elif name == "w_times_upow":
        head = (u ** k * w).scale(alg.qpow(k))
        lhs = head
        for j, c in enumerate(alg.fcoeffs):
            lhs = lhs + (v ** j * u ** (k - 1)).scale(c * q_number(k, alg.qpow(j + 1)))
        rhs = w * u ** k
        tail = rhs - head
    elif name == "w_times_vpow":
        head = (v ** k * w).scale(alg.qpow(-k))
        lhs = head
        for j, c in enumerate(alg.fcoeffs):
            lhs = lhs + (u ** j * v ** (k - 1)).scale(c * q_number(k, alg.qpow(-(j + 1))))
        rhs = w * v ** k
        tail = rhs - head
    elif name in ("wpow_times_u", "wpow_times_v"):
        if not alg.is_monomial:
            raise HypothesisError(f"{name} needs f to be a monomial c*t^d")
        d = alg.d
        gen = u if name == "wpow_times_u" else v
        base = alg.qpow(d + 1) if name == "wpow_times_u" else alg.qpow(-(d + 1))
        lhs = alg.zero()
        for i in range(k + 1):
            term = _plane_apply(_plane_apply(gen, "delta", i), "sigma", k - i)
            lhs = lhs + (term * w ** (k - i)).scale(gauss_binomial(k, i, base))
        rhs = w ** k * gen
    elif name == "rewr":
        fv = alg.f_of_v()
        lhs = (u * w ** k).scale(alg.qpow(k))
        qw = w.scale(q)
        for i in range(k):
            lhs = lhs + w ** (k - 1 - i) * fv * qw ** i
        rhs = w ** k * u
    else:
        raise UsageError(f"unknown identity {name!r}; choose from {', '.join(IDENTITY_NAMES)}")
    return IdentityReport(name, k, lhs, rhs, lhs - rhs, tail)


def identity_applicable(alg: AlgebraSpec, name: str) -> bool:
    if name in ("wpow_times_u", "wpow_times_v"):
        return alg.is_monomial
    return True


# --- central elements -------------------------------------------------------------


def commutator_residuals(x: Element) -> tuple[Element, Element, Element]:
    alg = x.algebra
    return tuple(commutator(x, g) for g in alg.generators())


def is_central(x: Element) -> bool:
    return all(r.is_zero() for r in commutator_residuals(x))


def _alpha_beta(alg: AlgebraSpec) -> tuple[dict, dict]:
    q = alg.q
    alpha, beta = {}, {}
    for j in alg.support:
        da = alg.qpow(-j) - q
        db = alg.qinv - alg.qpow(j)
        if not da or not db:
            raise DenominatorVanishes(j)
        alpha[j] = 1 / da
        beta[j] = 1 / db
    return alpha, beta


def omega(alg: AlgebraSpec, verify: bool = True) -> Element:
    """uvw + sum beta_j c_j u^(j+1) - q sum alpha_j c_j v^(j+1), checked central."""
    alpha, beta = _alpha_beta(alg)
    u, v, w = alg.generators()
    out = u * v * w
    for j in alg.support:
        c = alg.fcoeffs[j]
        out = out + (u ** (j + 1)).scale(beta[j] * c) - (v ** (j + 1)).scale(alg.q * alpha[j] * c)
    if verify and not is_central(out):
        raise CentralityFailure("Omega failed the commutator test")
    return out


def gamma(alg: AlgebraSpec) -> Element:
    """The torus element whose inner derivation recovers delta."""
    alpha, beta = _alpha_beta(alg)
    u, v = alg.u(TORUS), alg.v(TORUS)
    a_part = alg.zero(TORUS)
    b_part = alg.zero(TORUS)
    for j in alg.support:
        c = alg.fcoeffs[j]
        a_part = a_part + (v ** j).scale(alpha[j] * c)
        b_part = b_part + (u ** j).scale(beta[j] * c)
    return u ** -1 * a_part - v ** -1 * b_part


def check_inner(alg: AlgebraSpec) -> tuple[Element, Element]:
    """(gamma u - q u gamma - f(v), gamma v - q^-1 v gamma - f(u)) in the torus."""
    g = gamma(alg)
    u, v = alg.u(TORUS), alg.v(TORUS)
    r1 = g * u - (u * g).scale(alg.q) - alg.f_of_v(TORUS)
    r2 = g * v - (v * g).scale(alg.qinv) - alg.f_of_u(TORUS)
    return r1, r2


SPECIAL_CASES = ("uv", "wpwr", "q1", "n4")


def special_central(alg: AlgebraSpec, case: str, verify: bool = True) -> dict[str, Element]:
    """Distinguished central elements, keyed by a short label."""
    n = alg.ord_q
    u, v, w = alg.generators()
    if case == "uv":
        if n == INFINITY or n < 2:
            raise HypothesisError("uv case needs q a root of unity of order n >= 2")
        bad = [j for j in alg.support if (j + 1) % n == 0]
        if bad:
            raise HypothesisError(f"order {n} divides j+1 for j = {bad[0]}")
        out = {f"u^{n}": u ** n, f"v^{n}": v ** n}
    elif case == "wpwr":
        if n == INFINITY or n < 2:
            raise HypothesisError("wpwr case needs q a root of unity of order n >= 2")
        bad = [j for j in alg.support if j % n]
        if bad:
            raise HypothesisError(f"order {n} does not divide j = {bad[0]}")
        out = {f"w^{n}": w ** n, "f(u)": alg.f_of_u(), "f(v)": alg.f_of_v()}
    elif case == "q1":
        if alg.q != 1:
            raise HypothesisError("q1 case needs q = 1")
        # delta = f(v) d/du + f(u) d/dv kills F(u) - F(v) for F' = f; the product
        # form u f(u) - v f(v) agrees with it only when f is a monomial
        anti = alg.zero()
        for j, c in enumerate(alg.fcoeffs):
            anti = anti + (u ** (j + 1) - v ** (j + 1)).scale(c / (j + 1))
        out = {"u f(u) - v f(v)": u * alg.f_of_u() - v * alg.f_of_v(), "F(u) - F(v)": anti}
    elif case == "n4":
        if n != 4 or not (alg.is_monomial and alg.d == 2 and alg.fcoeffs[2] == 1):
            raise HypothesisError("n4 case needs ord(q) = 4 and f = t^2")
        out = {"w^4 + 2(1-q) Omega w": w ** 4 + (omega(alg) * w).scale(2 * (1 - alg.q))}
    else:
        raise UsageError(f"unknown case {case!r}; choose from {', '.join(SPECIAL_CASES)}")
    if verify:
        for label, x in out.items():
            if not is_central(x):
                raise CentralityFailure(f"{label} is not central")
    return out


def center_basis(alg: AlgebraSpec, K: int = DEFAULT_CENTER_DEGREE) -> list[Element]:
    """Basis of the central elements in filtered degree <= K, in echelon form.

    Graded algebras are solved one degree at a time (the center is graded);
    otherwise the whole filtered piece is solved at once.  Pivots are the
    lexicographically smallest monomials.
    """
    if alg.degree_cap is not None and K > alg.degree_cap:
        raise UsageError(f"K = {K} exceeds the degree cap {alg.degree_cap}")
    if alg.graded:
        blocks = [alg.graded_basis(k) for k in range(K + 1)]
    else:
        blocks = [alg.filtered_basis(K)]
    gens = alg.generators()
    one = alg.field.one
    out: list[Element] = []
    for monos in blocks:
        if not monos:
            continue
        columns = []
        for m in monos:
            x = alg.monomial(*m)
            col = {}
            for idx, g in enumerate(gens):
                for mm, c in commutator(x, g).terms.items():
                    col[(idx, mm)] = c
            columns.append(col)
        kernel = linalg.nullspace(columns, one)
        vecs = [{monos[i]: c for i, c in vec.items()} for vec in kernel]
        for row in linalg.echelon_basis(vecs):
            out.append(alg.element(row))
    return out


def in_span(x: Element, basis: Sequence[Element]) -> bool:
    alg = x.algebra
    sol = linalg.solve([b.terms for b in basis], x.terms, alg.field.zero)
    return sol is not None


# --- normality ------------------------------------------------------------------------


@dataclass
class NormalReport:
    normal: bool
    central: bool
    images: dict[str, Element] = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"normal": self.normal, "central": self.central,
                "images": {k: str(v) for k, v in self.images.items()}}


def is_normal(x: Element, slack: int = 2) -> NormalReport:
    """Solve x g = Y_g x for each generator g with Y_g in a bounded filtered piece."""
    if x.is_zero():
        raise DomainError("normality test needs x != 0")
    alg = x.algebra
    images: dict[str, Element] = {}
    normal = True
    for name, g in zip("uvw", alg.generators()):
        target = x * g
        bound = max(target.degree() - x.degree(), 0) + slack
        monos = alg.filtered_basis(bound)
        columns = [(alg.monomial(*m) * x).terms for m in monos]
        sol = linalg.solve(columns, target.terms, alg.field.zero)
        if sol is None:
            normal = False
            break
        images[name] = alg.element({monos[i]: c for i, c in sol.items()})
    central = normal and all(images[n] == g for n, g in zip("uvw", alg.generators()))
    return NormalReport(normal, central, images if normal else {})


# --- one-dimensional modules --------------------------------------------------------------


@dataclass(frozen=True)
class ModulePoint:
    """Scalar actions of u, v, w on a one-dimensional module; None marks a free parameter."""
    lu: Scalar | None
    lv: Scalar | None
    lw: Scalar | None

    def free(self) -> list[str]:
        return [n for n, x in zip(("lu", "lv", "lw"), (self.lu, self.lv, self.lw)) if x is None]

    def specialize(self, value) -> "ModulePoint":
        return ModulePoint(*(value if x is None else x for x in (self.lu, self.lv, self.lw)))

    def to_json(self) -> dict:
        return {k: (None if x is None else str(x))
                for k, x in (("lu", self.lu), ("lv", self.lv), ("lw", self.lw))}


def _f_at(alg: AlgebraSpec, x: Scalar) -> Scalar:
    acc = alg.field.zero
    for c in reversed(alg.fcoeffs):
        acc = acc * x + c
    return acc


def module_residuals(alg: AlgebraSpec, p: ModulePoint) -> tuple[Scalar, Scalar, Scalar]:
    """Values of the three relations acting on a one-dimensional module."""
    if p.free():
        raise DomainError("specialize free parameters first")
    q = alg.q
    r1 = p.lu * p.lv - q * p.lv * p.lu
    r2 = p.lw * p.lu - q * p.lu * p.lw - _f_at(alg, p.lv)
    r3 = p.lw * p.lv - alg.qinv * p.lv * p.lw - _f_at(alg, p.lu)
    return r1, r2, r3


def one_dim_modules(alg: AlgebraSpec, roots: Sequence = ()) -> list[ModulePoint]:
    """All one-dimensional modules by case analysis.

    Nonzero roots of f must be supplied in ``roots`` (they are verified); the
    root 0 is detected from f(0).  Free parameters are returned as None.
    """
    F = alg.field
    zero = F.zero
    nz_roots = []
    for r in roots:
        r = F(r) if not isinstance(r, Scalar) else r
        if _f_at(alg, r):
            raise DomainError(f"{r} is not a root of f")
        if r and r not in nz_roots:
            nz_roots.append(r)
    c0 = alg.fcoeffs[0] if alg.fcoeffs else zero
    f_zero = not alg.fcoeffs
    out: list[ModulePoint] = []
    if alg.q == 1:
        if f_zero:
            return [ModulePoint(None, None, None)]
        pts = ([zero] if not c0 else []) + nz_roots
        for a in pts:
            for b in pts:
                out.append(ModulePoint(a, b, None))
        return out
    if f_zero:
        # lu lv = 0 and nothing else constrains lw
        return [ModulePoint(zero, None, None), ModulePoint(None, zero, None)]
    if not c0:
        out.append(ModulePoint(zero, zero, None))
    for a in nz_roots:
        out.append(ModulePoint(zero, a, c0 / ((1 - alg.qinv) * a)))
        out.append(ModulePoint(a, zero, c0 / ((1 - alg.q) * a)))
    return out


def verify_family(alg: AlgebraSpec, p: ModulePoint, samples: Sequence = (0, 1, 2)) -> bool:
    """Check a (possibly parametric) point; parametric ones at several sample values."""
    if not p.free():
        return not any(module_residuals(alg, p))
    for s in samples:
        if any(module_residuals(alg, p.specialize(alg.field(s)))):
            return False
    return True


def witness_monomial_case(alg: AlgebraSpec, eta) -> dict:
    """Test the proposed module u = 0, v = eta, w = eta^(d-1) for f = t^d."""
    if not alg.is_monomial or alg.d is None or alg.d < 1:
        raise HypothesisError("this witness concerns f = t^d with d >= 1")
    F = alg.field
    eta = F(eta) if not isinstance(eta, Scalar) else eta
    p = ModulePoint(F.zero, eta, eta ** (alg.d - 1))
    res = module_residuals(alg, p)
    return {"point": p, "residuals": res, "valid": not any(res)}


# --- isomorphisms ---------------------------------------------------------------------------


@dataclass
class IsoMap:
    kind: str
    source: AlgebraSpec
    target: AlgebraSpec
    images: tuple[Element, Element, Element]
    residuals: tuple[Element, Element, Element]
    linear_det: Scalar

    def to_json(self) -> dict:
        return {"kind": self.kind, "source": repr(self.source), "target": repr(self.target),
                "images": {n: str(x) for n, x in zip("uvw", self.images)},
                "residuals": [str(r) for r in self.residuals], "linear_det": str(self.linear_det)}


def relation_residuals(src: AlgebraSpec, images: Sequence[Element]) -> tuple[Element, Element, Element]:
    """Images of the defining relations of ``src`` under u, v, w -> images."""
    iu, iv, iw = images
    tgt = iu.algebra

    def f_img(x: Element) -> Element:
        acc = tgt.zero()
        for c in reversed(src.fcoeffs):
            acc = acc * x + tgt.scalar(c)
        return acc

    r1 = iu * iv - (iv * iu).scale(src.q)
    r2 = iw * iu - (iu * iw).scale(src.q) - f_img(iv)
    r3 = iw * iv - (iv * iw).scale(src.qinv) - f_img(iu)
    return r1, r2, r3


def linear_part_det(images: Sequence[Element]) -> Scalar:
    """Determinant of the degree-one coefficient matrix of (u, v, w) images."""
    alg = images[0].algebra
    cols = [(0, 1, 0), (1, 0, 0), (0, 0, 1)]
    M = [[img.coeff(c) for c in cols] for img in images]
    (a, b, c), (d, e, f), (g, h, i) = M
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def iso_map(alg: AlgebraSpec, kind: str, alpha=None) -> IsoMap:
    F = alg.field
    if kind == "swap_qinv":
        tgt = AlgebraSpec(F, alg.qinv, alg.fcoeffs, alg.degree_cap)
        images = (tgt.v(), tgt.u(), tgt.w())
    elif kind == "rescale_monic":
        if not alg.fcoeffs:
            raise HypothesisError("f = 0 has no leading coefficient")
        c = alg.fcoeffs[-1]
        tgt = AlgebraSpec(F, alg.q, [x / c for x in alg.fcoeffs], alg.degree_cap)
        images = (tgt.u(), tgt.v(), tgt.w().scale(c))
    elif kind == "shift_q1":
        if alg.q != 1:
            raise HypothesisError("shift_q1 needs q = 1")
        a = F(alpha if alpha is not None else 0) if not isinstance(alpha, Scalar) else alpha
        tgt = AlgebraSpec(F, alg.q, _shift_poly(alg.fcoeffs, -a, F), alg.degree_cap)
        images = (tgt.u() - tgt.scalar(a), tgt.v() - tgt.scalar(a), tgt.w())
    else:
        raise UsageError(f"unknown isomorphism {kind!r}")
    res = relation_residuals(alg, images)
    if any(not r.is_zero() for r in res):
        raise RelationNotPreserved(f"{kind}: relation image {next(r for r in res if r)} != 0")
    det = linear_part_det(images)
    if not det:
        raise RelationNotPreserved(f"{kind}: linear part is singular")
    return IsoMap(kind, alg, tgt, images, res, det)


def _shift_poly(coeffs: Sequence[Scalar], s: Scalar, F) -> list[Scalar]:
    """Coefficients of g(t) = f(t + s)."""
    out: list[Scalar] = []
    for c in reversed(coeffs):
        # out = out * (t + s) + c
        new = [F.zero] * (len(out) + 1)
        for i, x in enumerate(out):
            new[i + 1] = new[i + 1] + x
            new[i] = new[i] + x * s
        new[0] = new[0] + c
        out = new
    return out
