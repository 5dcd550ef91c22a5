import pytest

from oracles import gt_hat_psi, gt_sl2
from qwhittaker import (
    QPoly,
    QRational,
    TorusPolynomial,
    WhittakerTable,
    affine_demazure_char,
    apply_lattice,
    build_root_system,
    eigencheck,
    global_weyl_char,
    hat_normalize,
    solve_whittaker,
    toda_hamiltonian_A,
)
from qwhittaker.errors import MissingEntry, NonTriangular, NotPolynomial, SingularCoefficient
from qwhittaker.qtoda import (
    calibrate_conventions,
    dominant_window,
    dual_operator,
    gl_box,
    table_from_characters,
)


def test_gl_boxes_sum_to_zero():
    rs = build_root_system("A3")
    boxes = [gl_box(rs, k) for k in range(1, 5)]
    assert boxes[0] == (1, 0, 0) and boxes[-1] == (0, 0, -1)
    assert tuple(map(sum, zip(*boxes))) == (0, 0, 0)


def test_sl2_coefficient_is_one_minus_q_power():
    op = toda_hamiltonian_A(2)
    t2 = op.terms[1]
    # x_1 at the point m reads q^m
    assert op.coefficient_at(t2, (0,)).is_zero()
    for m in range(1, 5):
        assert op.coefficient_at(t2, (m,)) == QRational(QPoly([1] + [0] * (m - 1) + [-1]))


def test_eigenvalue_symbol():
    assert toda_hamiltonian_A(3).eigenvalue() == TorusPolynomial({(0, 1): 1, (1, -1): 1, (-1, 0): 1}, rank=2)
    assert dual_operator(toda_hamiltonian_A(3)).eigen_symbol == (1, 0)


@pytest.mark.parametrize("N", [2, 3])
def test_calibration_has_unique_survivor(N):
    surv = calibrate_conventions(N)
    assert len(surv) == 1
    assert surv[0]["shift_direction"] == "lower" and surv[0]["coefficient_evaluation"] == "shifted"


def test_sl2_solution_matches_binomials():
    tab = hat_normalize(solve_whittaker(toda_hamiltonian_A(2), (8,)))
    for m in range(9):
        assert tab[(m,)] == gt_sl2(m)


def test_sl3_solution_matches_gelfand_tsetlin():
    A2 = build_root_system("A2")
    tab = hat_normalize(solve_whittaker(toda_hamiltonian_A(3), (2, 2)))
    for lam in tab.weights():
        assert tab[lam] == gt_hat_psi(A2, lam)


def test_elimination_order_does_not_matter():
    op = toda_hamiltonian_A(3)
    a = solve_whittaker(op, (2, 1))
    b = solve_whittaker(op, (2, 1), order="reversed")
    assert a.entries == b.entries
    with pytest.raises(ValueError):
        solve_whittaker(op, (1, 1), order="sideways")


def test_psi_equals_global_weyl_char():
    A2 = build_root_system("A2")
    tab = solve_whittaker(toda_hamiltonian_A(3), (2, 1))
    for lam in tab.weights():
        assert tab[lam] == global_weyl_char(A2, lam)


def test_sl4_reports_nontriangular():
    with pytest.raises(NonTriangular):
        solve_whittaker(toda_hamiltonian_A(4), (1, 0, 1))


def test_table_lookup_rules():
    tab = solve_whittaker(toda_hamiltonian_A(2), (2,))
    assert tab[(-1,)].is_zero()
    with pytest.raises(MissingEntry):
        tab[(5,)]
    assert WhittakerTable.from_json_obj(tab.to_json_obj()).entries == tab.entries


def test_window_is_height_ball():
    A2 = build_root_system("A2")
    w = dominant_window(A2, (1, 1))
    assert set(w) == {(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)}


def test_demazure_tables_pass_eigencheck():
    A2 = build_root_system("A2")
    op = toda_hamiltonian_A(3)
    tab = table_from_characters(A2, (2, 2), global_weyl_char)
    rep = eigencheck(op, tab)
    assert rep.passed and len(rep.interior()) > 0
    assert eigencheck(dual_operator(op), tab).passed


def test_perturbed_table_fails_eigencheck():
    A1 = build_root_system("A1")
    op = toda_hamiltonian_A(2)
    tab = table_from_characters(A1, (4,), global_weyl_char)
    tab.entries[(2,)] = tab.entries[(2,)] + TorusPolynomial.monomial((0,), QPoly([0, 1]))
    rep = eigencheck(op, tab)
    assert rep.failures() == [(1,), (2,), (3,)]


def test_eigencheck_residual_direct():
    A1 = build_root_system("A1")
    op = toda_hamiltonian_A(2)
    tab = table_from_characters(A1, (3,), global_weyl_char)
    assert apply_lattice(op, tab, (1,)) == op.eigenvalue() * tab[(1,)]


def test_base_evaluation_is_singular():
    op = toda_hamiltonian_A(2, direction="lower", evaluate="base")
    with pytest.raises(SingularCoefficient):
        solve_whittaker(op, (3,))


def test_not_polynomial_negative_control():
    A1 = build_root_system("A1")
    tab = table_from_characters(A1, (2,), global_weyl_char)
    tab.entries[(2,)] = tab.entries[(2,)].scale(QRational(QPoly([1]), QPoly([1, -1])))
    with pytest.raises(NotPolynomial) as ei:
        hat_normalize(tab)
    assert ei.value.weight == (2,)


def test_hat_normalize_matches_demazure():
    A1 = build_root_system("A1")
    tab = hat_normalize(solve_whittaker(toda_hamiltonian_A(2), (4,)))
    for lam in tab.weights():
        assert tab[lam] == affine_demazure_char(A1, lam)
