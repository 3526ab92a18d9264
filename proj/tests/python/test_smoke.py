from fractions import Fraction
from math import factorial

import pytest

import gpseries as gp


def test_dyson_methods_agree():
    for method in ("direct", "wilson", "egorychev"):
        lhs, rhs, equal = gp.dyson_verify([1, 1, 2], method)
        assert (lhs, rhs, equal) == (12, 12, True)


def test_geometric_series():
    s = gp.evaluate("1/(1-X)", ["X"], box="0..5")
    assert [t["coeff"] for t in s["terms"]] == ["1/1"] * 6
    assert s["box"] == {"lo": [0], "hi": [5]}


def test_constant_term():
    assert gp.constant_term("(1-X/Y)*(1-Y/X)", ["X", "Y"]) == 2


def test_lagrange_inversion():
    got = gp.represent("X", ["X*(1+X)"], "1..6", ["X"])
    assert [got[(i,)] for i in range(1, 7)] == [1, -1, 2, -5, 14, -42]
    assert gp.jacobi_coefficient("X", ["X+X^2"], [8], ["X"]) == -429


def test_parameter_determinants():
    for n in range(2, 6):
        assert gp.wilson_det(n) == factorial(n - 1) * (-1) ** (n - 1)
        assert gp.egorychev_det(n) == factorial(n) * (n - 1) // 2
        assert gp.cramer_identity_check(n)
    assert gp.lagrange_interpolation_check(3, "-2..2,-2..2,-2..2")


def test_cli_and_errors():
    assert gp.run("dyson", "--a", "1,1,1") == (0, "lhs=6 rhs=6 equal=true\n", "")
    code, out, err = gp.run("eval", "X^")
    assert code == 2 and out == "" and "ParseError" in err
    with pytest.raises(gp.GpsError, match="ZeroSeries"):
        gp.evaluate("1/0", ["X"])
    assert gp.coefficient("1/(1-2*X)", [3], ["X"], box="0..4", field="fp:5") == Fraction(3)
