import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import freudenthal, sympy_demazure, weyl_dimension
from qwhittaker import (
    IrreducibleDecomposition,
    QPoly,
    QRational,
    TorusPolynomial,
    build_root_system,
    decompose,
    finite_demazure_op,
    positivity_check,
    weyl_character,
)
from qwhittaker.errors import NonTermination, NotWInvariant

CASES = [
    ("A1", (3,)),
    ("A2", (1, 1)),
    ("A2", (2, 1)),
    ("A3", (1, 0, 1)),
    ("A3", (0, 2, 0)),
    ("D4", (0, 1, 0, 0)),
    ("D4", (1, 0, 0, 1)),
]


@pytest.mark.parametrize("label,lam", CASES)
def test_character_matches_freudenthal(label, lam):
    rs = build_root_system(label)
    chi = weyl_character(rs, lam)
    assert chi == TorusPolynomial(freudenthal(rs, lam), rank=rs.rank)
    assert chi.dimension() == QRational(weyl_dimension(rs, lam))


def test_small_characters():
    A1, A2 = build_root_system("A1"), build_root_system("A2")
    assert weyl_character(A1, (1,)) == TorusPolynomial({(1,): 1, (-1,): 1}, rank=1)
    assert weyl_character(A2, (1, 0)).support() == sorted([(1, 0), (-1, 1), (0, -1)])


def random_laurent(rs, rng, size=5, spread=2):
    terms = {}
    for _ in range(size):
        w = tuple(rng.randint(-spread, spread) for _ in range(rs.rank))
        terms[w] = terms.get(w, 0) + rng.choice([-2, -1, 1, 2, 3])
    return TorusPolynomial({w: c for w, c in terms.items() if c}, rank=rs.rank)


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "D4"])
def test_finite_demazure_matches_sympy_cancellation(label):
    rs = build_root_system(label)
    rng = random.Random(7)
    for _ in range(5):
        f = random_laurent(rs, rng)
        for i in range(1, rs.rank + 1):
            assert finite_demazure_op(rs, i, f) == sympy_demazure(rs, i, f)


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "D4", "E6"])
def test_demazure_idempotent_100_random(label):
    rs = build_root_system(label)
    rng = random.Random(label)
    for _ in range(100):
        f = random_laurent(rs, rng, size=4)
        i = rng.randint(1, rs.rank)
        once = finite_demazure_op(rs, i, f)
        assert finite_demazure_op(rs, i, once) == once


@pytest.mark.parametrize("label", ["A1", "A2", "D4"])
def test_decompose_reconstruct_100_random(label):
    rs = build_root_system(label)
    rng = random.Random(label + "dec")
    for _ in range(100):
        coeffs = {}
        for _ in range(rng.randint(1, 3)):
            lam = tuple(rng.randint(0, 2 if rs.rank < 4 else 1) for _ in range(rs.rank))
            coeffs[lam] = QRational(QPoly([rng.randint(-3, 3) for _ in range(3)]))
        dec = IrreducibleDecomposition(rs.rank, coeffs)
        f = dec.reconstruct(rs)
        assert decompose(rs, f) == dec
        assert decompose(rs, f).reconstruct(rs) == f


def test_decompose_rejects_non_invariant():
    A2 = build_root_system("A2")
    with pytest.raises(NotWInvariant):
        decompose(A2, TorusPolynomial.monomial((1, 0)))


def test_decompose_iteration_bound(monkeypatch):
    import qwhittaker.charlib as cl

    A1 = build_root_system("A1")
    # a broken character table never clears the remainder
    monkeypatch.setattr(cl, "weyl_character", lambda rs, lam: TorusPolynomial.zero(1))
    with pytest.raises(NonTermination):
        cl.decompose(A1, TorusPolynomial({(1,): 1, (-1,): 1}, rank=1))


def test_positivity_and_json():
    A1 = build_root_system("A1")
    f = TorusPolynomial({(2,): 1, (0,): QPoly([1, 1]), (-2,): 1}, rank=1)
    dec = decompose(A1, f)
    assert dec == {(2,): QRational(1), (0,): QRational(QPoly([0, 1]))}
    assert positivity_check(dec)
    assert IrreducibleDecomposition.from_json_obj(dec.to_json_obj(), 1) == dec
    bad = IrreducibleDecomposition(1, {(0,): QRational(QPoly([1, -1]))})
    rep = positivity_check(bad)
    assert not rep and rep.violators[0]["reason"] == "negative coefficient"
    frac = IrreducibleDecomposition(1, {(0,): QRational(QPoly([1]), QPoly([1, -1]))})
    assert positivity_check(frac).violators[0]["reason"] == "not a polynomial in q"


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=2, max_size=2).map(tuple))
def test_weyl_character_w_invariant(lam):
    from qwhittaker.exactpoly import is_w_invariant

    A2 = build_root_system("A2")
    assert is_w_invariant(A2, weyl_character(A2, lam))


@pytest.mark.parametrize("label,lam", CASES)
def test_decompose_of_irreducible_is_itself(label, lam):
    rs = build_root_system(label)
    assert decompose(rs, weyl_character(rs, lam)) == {lam: QRational(1)}
