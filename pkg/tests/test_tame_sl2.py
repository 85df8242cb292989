import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import random_table
from tameshear.matrix import Mat2
from tameshear.perturb import perturb_last_shear
from tameshear.scalar import EXACT, FloatBackend, GaussianRational as G
from tameshear.tame_sl2 import (InjectionTable, InvalidTableError, build_sl2_construction,
                                build_sl2_program, choose_separating_theta, g_value, mu_value,
                                solve_f_value, verify_sl2_program)


def _mul(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


@given(st.integers(1, 10 ** 4), st.integers(1, 10 ** 4))
def test_ansatz_product(n, ln):
    # plain Fraction matrices as an independent check of the per-row scalars
    f = Fraction(n - ln, (n + 1) * ln - n * n - n - 1)
    mu = f * (n + 1) + 1
    g = -(n + 1) * mu
    prod = [[1, n], [0, 1]]
    for m in ([[1, 0], [n + 1, 1]], [[1, f], [0, 1]], [[1 / mu, 0], [0, mu]], [[1, 0], [g, 1]]):
        prod = _mul(m, prod)
    assert prod == [[1, ln], [0, 1]]
    assert solve_f_value(n, ln) == f
    assert g_value(n, mu_value(n, solve_f_value(n, ln))) == g


def test_frozen_scalars():
    # [DERIVED] from the Fraction product above
    assert (solve_f_value(1, 2), mu_value(1, G(-1)), g_value(1, G(-1))) == (-1, -1, 2)
    assert solve_f_value(2, 5) == Fraction(-3, 8)


def test_table_validation():
    with pytest.raises(InvalidTableError):
        InjectionTable(((1, 2), (2, 2)))
    with pytest.raises(InvalidTableError):
        InjectionTable(((1, 2), (1, 3)))
    with pytest.raises(InvalidTableError):
        InjectionTable(((0, 2),))
    with pytest.raises(InvalidTableError):
        InjectionTable(())


def test_separating_theta():
    assert choose_separating_theta([(1, 2), (2, 3)]) == 0
    assert choose_separating_theta([(1, 2), (2, 2)]) == 1
    with pytest.raises(ValueError):
        choose_separating_theta([(1, 2), (1, 2)])


def test_identity_and_swap():
    for table in (InjectionTable.identity(6), InjectionTable(((1, 2), (2, 1)))):
        rep = verify_sl2_program(table, build_sl2_program(table))
        assert rep.passed and rep.max_residual() == 0


def test_shear_tables_are_finite_polynomials():
    table = InjectionTable(((1, 5), (3, 2), (4, 9)))
    cons = build_sl2_construction(table)
    desc = cons.program.describe()
    assert [s["kind"] for s in desc] == ["shear", "shear", "scale-by-value", "shear"]
    assert desc[0]["nodes"] == ["0", "1"]
    assert len(desc[3]["nodes"]) == 3


@pytest.mark.parametrize("seed", range(5))
def test_float_backend_agrees(seed):
    table = random_table(random.Random(seed), 12, 500)
    hp = FloatBackend(1e-9, dps=40)
    assert verify_sl2_program(table, build_sl2_program(table, hp), hp).passed


def test_perturbation_breaks_one_row():
    table = InjectionTable(((1, 5), (3, 2), (4, 9)))
    prog = perturb_last_shear(build_sl2_program(table), 2, G(Fraction(1, 1000)), EXACT)
    rep = verify_sl2_program(table, prog)
    assert [c.passed for c in rep.cases] == [True, False, True]
