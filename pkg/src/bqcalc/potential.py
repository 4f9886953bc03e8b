"""Superpotential calculus in the free algebra k<u, v, w>.

The potential is

    (uvw + vwu + wuv) - q (vuw + uwv + wvu) + q F(u) - F(v),   F' = f.

With the first-letter-deletion derivative used here, the cubic block only
reproduces the relations because it is written out over its whole rotation
orbit.  The F-terms must be treated the same way: u^(j+1) has j+1 rotations,
each contributing c_j/(j+1) u^(j+1), so the expanded potential carries
q c_j u^(j+1) and -c_j v^(j+1).  ``superpotential()`` returns this expanded
form; ``superpotential(expanded=False)`` returns the orbit-representative
form with coefficients c_j/(j+1).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import HypothesisError, NotHomogeneous, NotProportional
from .free import FreeElement
from .pbw import AlgebraSpec, Element
from .scalars import Scalar

GENERATORS = ("u", "v", "w")


def superpotential(alg: AlgebraSpec, expanded: bool = True) -> FreeElement:
    F = alg.field
    q = alg.q
    terms: dict[tuple, Scalar] = {}
    for word in ("uvw", "vwu", "wuv"):
        terms[tuple(word)] = F.one
    for word in ("vuw", "uwv", "wvu"):
        terms[tuple(word)] = -q
    out = FreeElement(F, terms)
    for j, c in enumerate(alg.fcoeffs):
        if not c:
            continue
        coeff = c if expanded else c / F(j + 1)
        out = out + FreeElement.power(F, "u", j + 1, q * coeff) - FreeElement.power(F, "v", j + 1, coeff)
    return out


def rotate(p: FreeElement, sign=None) -> FreeElement:
    """Apply a_1...a_N -> s a_N a_1...a_(N-1) with s = (-1)^(N+1) unless given."""
    out: dict[tuple, Scalar] = {}
    for word, c in p.terms.items():
        n = len(word)
        s = sign if sign is not None else (1 if n % 2 == 1 else -1)
        new = word[-1:] + word[:-1] if word else word
        out[new] = out.get(new, p.field.zero) + c * s
    return FreeElement(p.field, out)


def is_cyclic(p: FreeElement, signed: bool = True) -> bool:
    """Whether a homogeneous p is fixed by the (signed) rotation."""
    lengths = p.lengths()
    if len(lengths) > 1:
        raise NotHomogeneous(f"word lengths {lengths}; test each homogeneous piece separately")
    return rotate(p, None if signed else 1) == p


def piece_report(p: FreeElement) -> list[dict]:
    """Signed and unsigned cyclicity of each homogeneous piece."""
    out = []
    for n, piece in p.pieces().items():
        out.append({"length": n, "signed": is_cyclic(piece), "unsigned": is_cyclic(piece, signed=False)})
    return out


def cyclic_derivative(p: FreeElement, b: str) -> FreeElement:
    """First-letter deletion: words starting with b lose that letter, others vanish."""
    out = {word[1:]: c for word, c in p.terms.items() if word and word[0] == b}
    return FreeElement(p.field, out)


def to_algebra(alg: AlgebraSpec, p: FreeElement) -> Element:
    out = alg.zero()
    for word, c in p.terms.items():
        out = out + alg.normal_form(word, c)
    return out


def relations_check(alg: AlgebraSpec) -> dict[str, Element]:
    """Normal forms of the three cyclic derivatives of the potential (all should vanish)."""
    pot = superpotential(alg)
    return {b: to_algebra(alg, cyclic_derivative(pot, b)) for b in GENERATORS}


def derivatives_match_relations(alg: AlgebraSpec) -> dict[str, bool]:
    """Compare the derivatives with the defining relations word-for-word in the free algebra."""
    pot = superpotential(alg)
    r1, r2, r3 = alg.relations()
    du = cyclic_derivative(pot, "u")
    return {
        "w": cyclic_derivative(pot, "w") == r1,
        "v": cyclic_derivative(pot, "v") == r2,
        "u": du * (-alg.qinv) == r3,
    }


@dataclass
class RelationMatrix:
    algebra: AlgebraSpec
    entries: list[list[Element]]

    def row_products(self) -> list[Element]:
        """x^T M, a row of three entries."""
        x = self.algebra.generators()
        return [sum((x[i] * self.entries[i][j] for i in range(3)), self.algebra.zero()) for j in range(3)]

    def column_products(self) -> list[Element]:
        """M x, a column of three entries."""
        x = self.algebra.generators()
        return [sum((self.entries[i][j] * x[j] for j in range(3)), self.algebra.zero()) for i in range(3)]

    def to_json(self) -> dict:
        return {"M": [[str(e) for e in row] for row in self.entries]}


def resolution_matrix(alg: AlgebraSpec) -> RelationMatrix:
    if not alg.is_monomial or alg.d < 2 or alg.fcoeffs[-1] != 1:
        raise HypothesisError("the resolution matrix needs f = t^d with d >= 2")
    d = alg.d
    u, v, w = alg.generators()
    q = alg.q
    M = [
        [(u ** (d - 1)).scale(q), w.scale(-q), v],
        [w, -(v ** (d - 1)), u.scale(-q)],
        [v.scale(-q), u, alg.zero()],
    ]
    return RelationMatrix(alg, M)


def verify_complex(alg: AlgebraSpec) -> dict:
    M = resolution_matrix(alg)
    rows = M.row_products()
    cols = M.column_products()
    return {
        "row_products": [str(e) for e in rows],
        "column_products": [str(e) for e in cols],
        "row_ok": all(e.is_zero() for e in rows),
        "column_ok": all(e.is_zero() for e in cols),
        "ok": all(e.is_zero() for e in rows + cols),
    }


def substitute_linear(p: FreeElement, images: Mapping[str, FreeElement]) -> FreeElement:
    return p.substitute(images)


def proportionality(p: FreeElement, image: FreeElement) -> Scalar:
    """The scalar c with image = c p, or NotProportional."""
    if not p.terms:
        raise NotProportional("zero potential")
    word, c0 = next(iter(sorted(p.terms.items())))
    ratio = image.terms.get(word, p.field.zero) / c0
    if image != p * ratio:
        raise NotProportional("image is not a scalar multiple of the potential")
    return ratio


def hdet_via_potential(alg: AlgebraSpec, a, xi) -> Scalar:
    """Scalar by which u -> a u, v -> xi a v, w -> xi^-1 a^(d-1) w multiplies the potential."""
    if not alg.is_monomial or alg.d < 2:
        raise HypothesisError("the potential route needs f = c t^d with d >= 2")
    F = alg.field
    a = F(a) if not isinstance(a, Scalar) else a
    xi = F(xi) if not isinstance(xi, Scalar) else xi
    d = alg.d
    images = {
        "u": FreeElement.word(F, "u", a),
        "v": FreeElement.word(F, "v", xi * a),
        "w": FreeElement.word(F, "w", a ** (d - 1) / xi),
    }
    return hdet_of_linear_map(alg, images)


def hdet_of_linear_map(alg: AlgebraSpec, images: Mapping[str, FreeElement]) -> Scalar:
    pot = superpotential(alg)
    return proportionality(pot, pot.substitute(images))


def element_to_free(x: Element) -> FreeElement:
    """PBW element v^i u^j w^k -> the free word v..vu..uw..w."""
    out: dict[tuple, Scalar] = {}
    for (i, j, k), c in x.terms.items():
        if i < 0 or j < 0:
            raise NotProportional("torus elements have no free-algebra lift")
        out[("v",) * i + ("u",) * j + ("w",) * k] = c
    return FreeElement(x.algebra.field, out)
