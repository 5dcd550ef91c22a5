import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwhittaker import build_root_system, simple_reflection, weyl_orbit
from qwhittaker.errors import UnsupportedType
from qwhittaker.rootsys import is_dominant

LABELS = ["A1", "A2", "A3", "A4", "D4", "D5", "E6", "E7", "E8"]


def test_cartan_examples():
    assert build_root_system("A1").cartan.tolist() == [[2]]
    assert build_root_system("A2").cartan.tolist() == [[2, -1], [-1, 2]]


@pytest.mark.parametrize("label", ["B2", "C3", "F4", "G2", "b2"])
def test_non_simply_laced_rejected(label):
    with pytest.raises(UnsupportedType):
        build_root_system(label)


@pytest.mark.parametrize("label", ["A0", "D3", "E5", "E9", "X4", "A"])
def test_bad_labels(label):
    with pytest.raises(UnsupportedType):
        build_root_system(label)


def test_label_parsing_is_case_insensitive():
    assert build_root_system("d4") is build_root_system("D4")
    assert build_root_system("e_6").label == "E6"


@pytest.mark.parametrize("label", LABELS)
def test_invariants(label):
    rs = build_root_system(label)
    C = rs.cartan
    n = rs.rank
    assert (C == C.T).all()
    assert (np.diag(C) == 2).all()
    off = C[~np.eye(n, dtype=bool)]
    assert set(off.tolist()) <= {0, -1}
    # <alpha_i, omega_j> = delta_ij: fundamental weights are unit vectors
    for j, w in enumerate(rs.fundamental_weights):
        assert [w[i] for i in range(n)] == [int(i == j) for i in range(n)]
    expected = {"A": n * (n + 1) // 2, "D": n * (n - 1)}.get(rs.family) or {6: 36, 7: 63, 8: 120}[n]
    assert len(rs.positive_roots) == expected
    assert len(rs.longest_word) == expected


def test_simple_reflection_examples(A1, A2):
    assert simple_reflection(A1, 1, (1,)) == (-1,)
    assert simple_reflection(A2, 1, (1, 0)) == (-1, 1)
    assert simple_reflection(A2, 2, (0, 0)) == (0, 0)
    with pytest.raises(IndexError):
        simple_reflection(A2, 3, (0, 0))
    with pytest.raises(IndexError):
        simple_reflection(A2, 0, (0, 0))


def test_reflection_matrix_brute_force(A2):
    # s_1 as an explicit matrix on fundamental coordinates, then s_1^2 = id
    M = np.array([simple_reflection(A2, 1, e) for e in [(1, 0), (0, 1)]]).T
    assert M.tolist() == [[-1, 0], [1, 1]]
    assert (M @ M == np.eye(2, dtype=int)).all()
    assert tuple(M @ np.array([1, 0])) == (-1, 1)


def test_orbit_examples(A1, A2):
    assert weyl_orbit(A1, (1,)) == {(1,), (-1,)}
    assert len(weyl_orbit(A2, (1, 0))) == 3
    assert len(weyl_orbit(A2, (1, 1))) == 6
    assert len(weyl_orbit(build_root_system("D4"), (1, 1, 1, 1))) == 192


weights = lambda n: st.lists(st.integers(-6, 6), min_size=n, max_size=n).map(tuple)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(LABELS[:6]), st.data())
def test_involution_and_braid(label, data):
    rs = build_root_system(label)
    w = data.draw(weights(rs.rank))
    for i in range(1, rs.rank + 1):
        assert rs.reflect(i, rs.reflect(i, w)) == w
    for i in range(1, rs.rank + 1):
        for j in range(i + 1, rs.rank + 1):
            if rs.cartan[i - 1, j - 1] == -1:
                assert rs.apply_word((i, j, i), w) == rs.apply_word((j, i, j), w)
            else:
                assert rs.apply_word((i, j), w) == rs.apply_word((j, i), w)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A1", "A2", "A3", "D4"]), st.data())
def test_orbit_has_one_dominant_element(label, data):
    rs = build_root_system(label)
    w = data.draw(st.lists(st.integers(-3, 3), min_size=rs.rank, max_size=rs.rank).map(tuple))
    orbit = weyl_orbit(rs, w)
    dom = [v for v in orbit if is_dominant(v)]
    assert len(dom) == 1
    assert dom[0] == rs.dominant_representative(w)
    assert rs.weyl_group_order % len(orbit) == 0


def test_longest_word_sends_rho_to_minus_rho(rs):
    assert rs.apply_word(rs.longest_word, rs.rho) == tuple(-x for x in rs.rho)


def test_dominance_and_height(A2):
    assert A2.leq((0, 0), (1, 1))
    assert not A2.leq((1, 0), (1, 1))
    assert A2.leq((0, 3), (2, 2))
    assert A2.height((2, 2)) == 8
    assert A2.root_lattice_coset((2, 0)) == 2
