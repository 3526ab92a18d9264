"""Exact generalized power series: Python front end to the C++ core."""

import json
from fractions import Fraction

from . import _core
from ._core import GpsError, cramer_identity_check, lagrange_interpolation_check

__all__ = [
    "GpsError",
    "run",
    "evaluate",
    "coefficient",
    "constant_term",
    "jacobi_coefficient",
    "represent",
    "dyson_verify",
    "wilson_det",
    "egorychev_det",
    "cramer_identity_check",
    "lagrange_interpolation_check",
]


def _scalar(text):
    return Fraction(text)


def run(*args):
    """Run the command line; returns (exit_code, stdout, stderr)."""
    return _core.run(list(args))


def evaluate(expr, vars, order="", box="", field="q", hdim=0):
    """Series as a dict in the JSON series schema."""
    return json.loads(_core.evaluate(expr, list(vars), order, box, field, hdim))


def coefficient(expr, at, vars, order="", box="", field="q"):
    return _scalar(_core.coefficient(expr, list(at), list(vars), order, box, field, 0))


def constant_term(expr, vars, order="", box="", field="q"):
    return coefficient(expr, [0] * len(vars), vars, order, box, field)


def jacobi_coefficient(expr, params, index, vars, order="", field="q"):
    return _scalar(_core.jacobi_coefficient(expr, list(params), list(index), list(vars), order, field))


def represent(expr, params, degrees, vars, order="", box="", field="q"):
    raw = _core.represent(expr, list(params), degrees, list(vars), order, box, field)
    return {k: _scalar(v) for k, v in raw.items()}


def dyson_verify(a, method="direct"):
    lhs, rhs, equal = _core.dyson_verify(list(a), method)
    return _scalar(lhs), _scalar(rhs), equal


def wilson_det(n):
    return int(_core.wilson_det(n))


def egorychev_det(n):
    return int(_core.egorychev_det(n))
