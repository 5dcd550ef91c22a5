from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qwhittaker import QPoly, QRational, TorusPolynomial, build_root_system, prefactor, q_limit
from qwhittaker.errors import NotDominant, PoleAtZero
from qwhittaker.exactpoly import gaussian_binomial, is_w_invariant, q_pochhammer

q = sympy.symbols("q")


def to_sympy(r: QRational):
    num = sum(c * q**k for k, c in enumerate(r.num.coeffs))
    den = sum(c * q**k for k, c in enumerate(r.den.coeffs))
    return num / den


def test_pochhammer_examples():
    assert q_pochhammer(0) == QPoly([1])
    assert q_pochhammer(2) == QPoly([1, -1, -1, 1])


def test_gaussian_binomial_examples():
    assert gaussian_binomial(2, 1) == QPoly([1, 1])
    assert gaussian_binomial(4, 2) == QPoly([1, 1, 2, 1, 1])
    assert gaussian_binomial(3, 5).is_zero()


@pytest.mark.parametrize("m", range(8))
def test_gaussian_binomial_at_one_is_binomial(m):
    from math import comb

    for j in range(m + 1):
        assert gaussian_binomial(m, j)(1) == comb(m, j)


def test_prefactor_examples():
    A2 = build_root_system("A2")
    assert prefactor(A2, (1, 1)) == QPoly([1, -2, 1])
    assert prefactor(A2, (0, 0)) == QPoly([1])
    with pytest.raises(NotDominant):
        prefactor(A2, (1, -1))


def test_qrational_canonical_form():
    # (1 - q^2) / (1 - q) = 1 + q
    r = QRational(QPoly([1, 0, -1]), QPoly([1, -1]))
    assert r.is_polynomial()
    assert r.as_poly() == QPoly([1, 1])
    s = QRational(QPoly([2]), QPoly([-4]))
    assert s.den.lc() > 0 and s == QRational(-1, 2)


def test_pole_at_zero():
    with pytest.raises(PoleAtZero):
        QRational(QPoly([1]), QPoly([0, 1])).at_zero()
    assert QRational(QPoly([3, 1]), QPoly([2, 5])).at_zero() == Fraction(3, 2)


polys = st.lists(st.integers(-4, 4), min_size=1, max_size=4).map(QPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
rationals = st.builds(QRational, polys, nonzero_polys)


@settings(max_examples=80, deadline=None)
@given(rationals, rationals)
def test_field_ops_against_sympy(a, b):
    assert sympy.simplify(to_sympy(a + b) - (to_sympy(a) + to_sympy(b))) == 0
    assert sympy.simplify(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert a - a == QRational(0)
    if not b.is_zero():
        assert (a / b) * b == a


@settings(max_examples=50, deadline=None)
@given(st.lists(rationals, max_size=6))
def test_sum_matches_fold(items):
    acc = QRational(0)
    for x in items:
        acc = acc + x
    assert QRational.sum(items) == acc


def test_torus_arithmetic_and_json_roundtrip():
    z = TorusPolynomial.monomial((1,))
    zi = TorusPolynomial.monomial((-1,))
    f = (z + zi) ** 2
    assert f == TorusPolynomial({(2,): 1, (0,): 2, (-2,): 1}, rank=1)
    g = f.scale(QRational(QPoly([1]), QPoly([1, -1])))
    assert TorusPolynomial.from_json(g.to_json()) == g
    obj = f.to_json_obj()
    assert [e["weight"] for e in obj] == sorted(e["weight"] for e in obj)
    assert obj[0]["den"] == [1]


def test_q_limit_and_invariance():
    A1 = build_root_system("A1")
    f = TorusPolynomial({(2,): 1, (0,): QPoly([1, 1]), (-2,): 1}, rank=1)
    assert q_limit(f) == TorusPolynomial({(2,): 1, (0,): 1, (-2,): 1}, rank=1)
    assert is_w_invariant(A1, f)
    assert not is_w_invariant(A1, TorusPolynomial.monomial((1,)))
    assert f.dimension() == QRational(QPoly([3, 1]))


@pytest.mark.parametrize("lam", [(0, 0), (1, 0), (2, 1), (3, 3)])
def test_prefactor_degree(lam):
    A2 = build_root_system("A2")
    assert prefactor(A2, lam).degree == sum(a * (a + 1) // 2 for a in lam)


def test_weyl_action_respects_products_and_words():
    from qwhittaker import weyl_act_torus

    A2 = build_root_system("A2")
    f = TorusPolynomial({(1, 0): QPoly([1, 2]), (0, -1): 3}, rank=2)
    g = TorusPolynomial({(2, -1): 1, (0, 0): QPoly([0, 1])}, rank=2)
    for word in [(1,), (2, 1), (1, 2, 1)]:
        assert weyl_act_torus(A2, word, f * g) == weyl_act_torus(A2, word, f) * weyl_act_torus(A2, word, g)
    assert weyl_act_torus(A2, (1, 2), f) == weyl_act_torus(A2, (1,), weyl_act_torus(A2, (2,), f))
    assert weyl_act_torus(A2, (1, 2, 1), f) == weyl_act_torus(A2, (2, 1, 2), f)
