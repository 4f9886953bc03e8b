import pytest
import sympy as sp

from bqcalc import autos, invtheory
from bqcalc.cli import build_algebra
from bqcalc.errors import Inconclusive, NotAGroup
from bqcalc.pbw import AlgebraSpec
from bqcalc.scalars import QQ, cyclotomic_field

T = sp.Symbol("t")


def _series(expr, K):
    s = sp.series(expr, T, 0, K + 1).removeO()
    return [int(s.coeff(T, k)) for k in range(K + 1)]


def test_identity_trace_is_hilbert_series():
    A = build_algebra("generic", "0,0,1")
    assert invtheory.trace_series(autos.identity(A), 4) == [1, 3, 6, 10, 15]


@pytest.mark.parametrize("d,a", [(2, -1), (3, -1), (4, 1), (3, 2)])
def test_trace_closed_form_against_sympy(d, a):
    A = AlgebraSpec(QQ, 2, [0] * d + [1])
    phi = autos.make_phi(A, a, 1)
    want = _series(1 / ((1 - a * T) * (1 - a * T) * (1 - a ** (d - 1) * T ** (d - 1))), 8)
    s = invtheory.trace_series(phi, 8)
    assert s.exact and s == want


def test_tau_trace_counts_fixed_monomials():
    # tau sends v^i u^j w^k to (-1)^(ij) v^j u^i w^k; only i = j contributes (-1)^i
    A = build_algebra("-1", "0,0,1")
    s = invtheory.trace_series(autos.make_tau(A), 6)
    want = [sum((-1) ** i for i in range(k // 2 + 1)) for k in range(7)]
    assert s == want
    assert s == _series(1 / ((1 - T) * (1 + T ** 2)), 6)


def test_molien_small_group():
    A = build_algebra("generic", "0,0,1")
    H = invtheory.make_group([autos.identity(A), autos.make_phi(A, -1, 1)])
    m = invtheory.molien(H, 6)
    want = _series((1 / (1 - T) ** 3 + 1 / (1 + T) ** 3) / 2, 6)
    assert m == want == [1, 0, 6, 0, 15, 0, 28]
    assert invtheory.fixed_dims(H, 6) == want


def test_molien_cyclic_group_d3():
    F = cyclotomic_field(4)
    A = AlgebraSpec(F, 2, [0, 0, 0, 1])
    H = invtheory.generate_group([autos.make_phi(A, 1, F.gen())])
    assert len(H) == 4
    assert invtheory.molien(H, 6) == invtheory.fixed_dims(H, 6)


def test_make_group_rejects_non_groups():
    A = build_algebra("zeta:3", "0,0,1")
    z = A.field.gen()
    with pytest.raises(NotAGroup):
        invtheory.make_group([autos.identity(A), autos.make_phi(A, z, 1)])


def test_hdet_routes_agree():
    A = build_algebra("zeta:3", "0,0,1")
    z = A.field.gen()
    dual = invtheory.koszul_dual_d2(A)
    for a in (z, -z, -1):
        for xi in (1, z, z * z):
            phi = autos.make_phi(A, a, xi)
            expect = a ** 3
            assert invtheory.hdet_laurent(phi) == expect
            assert invtheory.hdet_potential(phi) == expect
            assert invtheory.hdet_koszul(dual, phi) == expect
    assert invtheory.hdet_laurent(autos.identity(A)) == 1


def test_hdet_with_h():
    F = cyclotomic_field(4)
    A = AlgebraSpec(F, -1, [0, 0, 0, 1])
    i = F.gen()
    phi = autos.make_phi(A, i, i, A.u() * A.v())
    assert invtheory.hdet_laurent(phi) == i ** 4


def test_reflections():
    A = build_algebra("zeta:5", "0,0,1")
    z = A.field.gen()
    assert not invtheory.is_reflection(autos.make_phi(A, z, 1))
    ident = invtheory.reflection_report(autos.identity(A))
    assert not ident.is_reflection and ident.pole_order == 3
    assert invtheory.is_reflection(autos.make_tau(build_algebra("1", "0,0,1")), 12)


def test_tau_at_minus_one_has_a_simple_pole():
    rep = invtheory.reflection_report(autos.make_tau(build_algebra("-1", "0,0,1")), 12)
    assert rep.pole_order == 1 and not rep.is_reflection
    assert rep.mystic


def test_reconstruct_needs_enough_terms():
    A = build_algebra("-1", "0,0,1")
    s = invtheory.trace_series(autos.make_tau(A), 3)
    with pytest.raises(Inconclusive):
        invtheory.reconstruct(s)


def test_group_report():
    A = build_algebra("zeta:3", "0,0,1")
    z = A.field.gen()
    H = invtheory.generate_group([autos.make_phi(A, z, 1)])
    rep = invtheory.group_report(H)
    assert rep.size == 3 and not rep.regular_possible and rep.gorenstein_certified
    triv = invtheory.group_report(invtheory.make_group([autos.identity(A)]))
    assert triv.hdets == [1] and not triv.regular_possible


def test_koszul_dual():
    A = build_algebra("zeta:3", "0,0,1")
    dual = invtheory.koszul_dual_d2(A)
    assert dual.dims() == [1, 3, 3, 1, 0]
    assert dual.printed_basis_ok()
    z = A.field.gen()
    a = -z
    assert dual.trace(autos.make_phi(A, a, z), 5) == [1, 0, 0, a ** 3, 0, 0]
    # xi = 1 is diagonal too, and the dual trace is (1 + a t)^3
    assert dual.trace(autos.make_phi(A, a, 1), 4) == [1, 3 * a, 3 * a ** 2, a ** 3, 0]


@pytest.mark.parametrize("a,xi", [(1, 1), ("z", "z"), (-1, "z^2")])
def test_koszul_product_identity(a, xi):
    A = build_algebra("zeta:3", "0,0,1")
    F = A.field
    phi = autos.make_phi(A, F.parse(str(a)), F.parse(str(xi)))
    dual = invtheory.koszul_dual_d2(A)
    prod = invtheory.trace_series(phi, 10) * dual.trace(phi, 10).substitute_neg()
    assert prod == [1] + [0] * 10


def test_hilbert_report_flags_exponent():
    rep = invtheory.hilbert_report(build_algebra("generic", "0,0,0,1"), 12)
    assert rep["identity_trace_agrees"] and rep["weight_form_agrees"]
    assert not rep["degree_d_form_agrees"] and rep["flag"]
