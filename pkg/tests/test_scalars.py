import random
from fractions import Fraction

import pytest
import sympy as sp

from bqcalc.errors import BoundExceeded, DomainError, FieldMismatch
from bqcalc.scalars import (INFINITY, QQ, QQ_q, cyclotomic_field, cyclotomic_polynomial,
                            gauss_binomial, order_of, q_number, roots_of_unity)

T = sp.Symbol("t")


def _sym_poly(coeffs):
    return sum(sp.Rational(int(c.numerator), int(c.denominator)) * T ** i
               for i, c in enumerate(coeffs)) if coeffs else sp.Integer(0)


def _rand_coeffs(rng, n):
    return [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8, 9, 12, 15])
def test_cyclotomic_polynomial_matches_sympy(n):
    ours = sp.Poly(list(reversed(cyclotomic_polynomial(n))), T)
    assert ours == sp.Poly(sp.cyclotomic_poly(n, T), T)


@pytest.mark.parametrize("n", [3, 5, 7, 12])
def test_cyclotomic_arithmetic_against_sympy(n):
    F = cyclotomic_field(n)
    mod = sp.cyclotomic_poly(n, T)
    rng = random.Random(n)
    for _ in range(40):
        a = _rand_coeffs(rng, F.deg + 2)
        b = _rand_coeffs(rng, F.deg + 1)
        x, y = F.from_coeffs(a), F.from_coeffs(b)
        want = sp.rem(sp.expand(_sym_poly(a) * _sym_poly(b)), mod, T)
        assert sp.expand(_sym_poly((x * y).coeffs) - want) == 0
        want_sum = sp.rem(_sym_poly(a) + _sym_poly(b), mod, T)
        assert sp.expand(_sym_poly((x + y).coeffs) - want_sum) == 0
        if not y.is_zero():
            inv = 1 / y
            assert sp.rem(sp.expand(_sym_poly(inv.coeffs) * _sym_poly(y.coeffs)), mod, T) == 1


def test_rational_function_field_against_sympy():
    rng = random.Random(7)
    q = QQ_q.gen()
    Q = sp.Symbol("q")
    for _ in range(40):
        na, da = _rand_coeffs(rng, 3), _rand_coeffs(rng, 2)
        nb, db = _rand_coeffs(rng, 2), _rand_coeffs(rng, 3)
        if not any(da) or not any(db) or not any(nb):
            continue
        x = QQ_q.make(na, da)
        y = QQ_q.make(nb, db)
        sx = _sym_poly(na).subs(T, Q) / _sym_poly(da).subs(T, Q)
        sy = _sym_poly(nb).subs(T, Q) / _sym_poly(db).subs(T, Q)
        for ours, theirs in ((x * y, sx * sy), (x + y, sx + sy), (x - y, sx - sy), (x / y, sx / sy)):
            got = _sym_poly(ours.numerator()).subs(T, Q) / _sym_poly(ours.denominator()).subs(T, Q)
            assert sp.simplify(got - theirs) == 0
    assert (q * q - 1) / (q - 1) == q + 1


def test_q_numbers():
    q = QQ_q.gen()
    assert q_number(3, q) == 1 + q + q * q
    assert q_number(1, q) == 1
    z4 = cyclotomic_field(4).gen()
    assert q_number(4, z4) == 0
    assert q_number(3, z4) != 0
    with pytest.raises(DomainError):
        q_number(0, q)


def test_q_number_vanishes_exactly_at_multiples_of_order():
    for n in (3, 5, 6):
        z = cyclotomic_field(n).gen()
        for k in range(1, 3 * n):
            assert (q_number(k, z) == 0) == (k % n == 0)


def test_gauss_binomial_against_factorial_formula():
    q = QQ_q.gen()
    Q = sp.Symbol("q")

    def qfact(m):
        out = sp.Integer(1)
        for i in range(1, m + 1):
            out *= (1 - Q ** i) / (1 - Q)
        return out

    for k in range(0, 7):
        for i in range(0, k + 1):
            ours = gauss_binomial(k, i, q)
            got = _sym_poly(ours.numerator()).subs(T, Q) / _sym_poly(ours.denominator()).subs(T, Q)
            assert sp.simplify(got - qfact(k) / (qfact(i) * qfact(k - i))) == 0
    assert gauss_binomial(2, 1, q) == 1 + q


def test_gauss_binomial_at_minus_one():
    x = QQ(-1)
    # binom(4,2) at -1: specialise the generic value
    assert gauss_binomial(4, 2, x) == 2
    assert gauss_binomial(5, 0, x) == 1
    with pytest.raises(DomainError):
        gauss_binomial(2, 3, x)


def test_order_of():
    assert order_of(QQ(-1)) == 2
    assert order_of(QQ(2)) == INFINITY
    assert order_of(cyclotomic_field(5).gen()) == 5
    assert order_of(-cyclotomic_field(5).gen()) == 10
    assert order_of(QQ_q.gen()) == INFINITY
    with pytest.raises(DomainError):
        order_of(QQ(0))
    with pytest.raises(BoundExceeded):
        order_of(cyclotomic_field(30).gen(), bound=10)


def test_roots_of_unity_are_distinct_and_complete():
    for n in (3, 4, 5, 12):
        F = cyclotomic_field(n)
        roots = roots_of_unity(F)
        assert len(roots) == len(set(roots)) == (n if n % 2 == 0 else 2 * n)
        assert all(order_of(r) <= len(roots) for r in roots)


def test_parse_and_field_mismatch():
    F = cyclotomic_field(3)
    z = F.gen()
    assert F.parse("z^2 + z + 1") == 0
    assert F.parse("zeta^3") == 1
    assert QQ_q.parse("(q^2-1)/(q-1)") == QQ_q.gen() + 1
    with pytest.raises(FieldMismatch):
        z + cyclotomic_field(5).gen()
