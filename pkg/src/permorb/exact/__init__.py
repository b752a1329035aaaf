"""Exact scalar and symbolic arithmetic kernel."""

from .poly import Poly, RatFunc, div_exact, poly_gcd, ratfunc_arith
from .parity import (
    Index,
    ParityExpr,
    SymInt,
    binom_ci,
    index_value,
    parity_eval,
    parity_shift,
    recip,
    rising,
    sign_pow,
    sym,
)

__all__ = [
    "Poly",
    "RatFunc",
    "div_exact",
    "poly_gcd",
    "ratfunc_arith",
    "Index",
    "ParityExpr",
    "SymInt",
    "binom_ci",
    "index_value",
    "parity_eval",
    "parity_shift",
    "recip",
    "rising",
    "sign_pow",
    "sym",
]
