"""Closed forms for the named coefficient families of the mode calculus.

Every function accepts concrete positive integers or, in exactly one
argument position, a symbolic index (``sym("m")``, possibly offset).  With
all-concrete arguments the result is a Fraction, or a rational function in
k and c_V for the families that carry those parameters.  With one symbolic
index the result is a two-branch ParityExpr over Q(k, c_V).

Factorial ratios with one symbolic index expand as finite rising products,
never as factorial objects; the second index of every ratio is concrete in
all supported call patterns.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Union

from .exact.parity import (
    Index,
    ParityExpr,
    SymInt,
    binom_ci,
    index_value,
    recip,
    rising,
    sign_pow,
    sym,
)
from .exact.poly import Poly, RatFunc

CoeffValue = Union[Fraction, RatFunc, ParityExpr]


def _symbol_of(*args: Index) -> str | None:
    names = {a.name for a in args if isinstance(a, SymInt)}
    if len(names) > 1:
        raise ValueError(f"at most one symbolic index is supported, got {sorted(names)}")
    return names.pop() if names else None


def _check_min(value: Index, bound: int, what: str = "index out of domain") -> None:
    if isinstance(value, int) and value < bound:
        raise ValueError(f"{what}: {value} < {bound}")


def _promote(value, symbol: str | None) -> CoeffValue:
    if symbol is not None and not isinstance(value, ParityExpr):
        return ParityExpr.broadcast(symbol, value)
    return value


def fact_ratio2(m: Index, n: Index):
    """(m+n-1)! / ((m-1)! (n-1)!) with at most one symbolic argument."""
    if isinstance(m, SymInt):
        return rising(m, _concrete(n)) / factorial(_concrete(n) - 1)
    if isinstance(n, SymInt):
        return rising(n, m) / factorial(m - 1)
    return Fraction(factorial(m + n - 1), factorial(m - 1) * factorial(n - 1))


def fact_ratio3(m: Index, n: Index, p: Index):
    """(m+n+p-1)! / ((m-1)! (n-1)! (p-1)!) with at most one symbolic argument."""
    if isinstance(m, SymInt):
        return rising(m, _concrete(n) + _concrete(p)) / (
            factorial(_concrete(n) - 1) * factorial(_concrete(p) - 1))
    if isinstance(n, SymInt):
        return fact_ratio3(n, m, p)
    if isinstance(p, SymInt):
        return fact_ratio3(p, m, n)
    return Fraction(factorial(m + n + p - 1),
                    factorial(m - 1) * factorial(n - 1) * factorial(p - 1))


def _concrete(x: Index) -> int:
    if isinstance(x, SymInt):
        raise TypeError("only one argument may be symbolic here")
    return x


def alpha(m: Index, n: Index, i: int) -> CoeffValue:
    """Expansion coefficient of the (-1)-product against a mode pair."""
    if i < 0:
        raise ValueError(f"index out of domain: i = {i} < 0")
    _check_min(m, 1)
    _check_min(n, 1)
    symbol = _symbol_of(m, n)
    value = (fact_ratio2(m, n)
             * binom_ci(_binom_arg(m, n, i), i)
             * sign_pow(n - 1) * recip(_add(n, i)))
    return _promote(value, symbol)


def _binom_arg(m: Index, n: Index, i: int) -> Index:
    """m + n - 1 + i as an Index, whichever of m, n is symbolic."""
    if isinstance(m, SymInt):
        return m + (_concrete(n) - 1 + i)
    if isinstance(n, SymInt):
        return n + (m - 1 + i)
    return m + n - 1 + i


def c_coeff(m: Index, n: Index, i: int) -> CoeffValue:
    """Symmetrized expansion coefficient: alpha(m,n;i) + alpha(n,m;i)."""
    return alpha(m, n, i) + alpha(n, m, i)


def h_weight1(m: Index, n: Index, p: Index) -> CoeffValue:
    """Scalar tying the triple-mode product of a norm-one weight-one vector
    to the single deep mode, for the squared-symmetrizer relation."""
    _check_min(m, 1)
    _check_min(n, 1)
    _check_min(p, 1)
    symbol = _symbol_of(m, n, p)
    value = fact_ratio3(m, n, p) * (
        sign_pow(n - 1) * recip(_add(n, p))
        + sign_pow(m - 1) * recip(_add(m, p))
        + sign_pow(_add(n, p)) * recip(n + 1)
        + sign_pow(_add(m, p)) * recip(m + 1)
    )
    return _promote(value, symbol)


def _add(a: Index, b: Index) -> Index:
    """a + b where at most one side is symbolic."""
    if isinstance(a, SymInt):
        return a + _concrete(b)
    if isinstance(b, SymInt):
        return b + a
    return a + b


def beta_gamma(p: Index, q: Index, r: Index) -> tuple[CoeffValue, CoeffValue]:
    """The pair of reduction scalars for triple deep modes on weight one."""
    _check_min(p, 2)
    _check_min(q, 2)
    _check_min(r, 2)
    symbol = _symbol_of(p, q, r)
    beta = Fraction(1, 4) * (
        sign_pow(p - 1) * recip(p) + sign_pow(q - 1) * recip(q)
    ) * (
        sign_pow(_add(p, q) - 1) * recip(_add(p, q)) + sign_pow(r - 1) * recip(r)
    )
    gamma = Fraction(-1, 2) * (
        sign_pow(p - 1) * recip(_add(p, r)) + sign_pow(q - 1) * recip(_add(q, r))
    )
    return _promote(beta, symbol), _promote(gamma, symbol)


_K = RatFunc(Poly.variable("k"))
_CV = RatFunc(Poly.variable("c_V"))


def F_const(m: Index, n: Index) -> CoeffValue:
    """Two-mode reduction constant on a weight-k vector; k stays symbolic."""
    _check_min(m, 2)
    _check_min(n, 2)
    symbol = _symbol_of(m, n)
    value = (-index_value(m) + index_value(n)
             + (index_value(_add(m, n)) - 2) * c_coeff(_shift(m, -1), _shift(n, -1), 0)
             - _K * c_coeff(_shift(m, -1), _shift(n, -1), 1))
    return _promote(value, symbol)


def _shift(x: Index, d: int) -> Index:
    return x + d


def shift_k(value: CoeffValue, q: int) -> CoeffValue:
    """Substitute k -> k + q in a coefficient value."""
    if isinstance(value, Fraction):
        return value
    return value.shift_var("k", q)


def g_const(m: Index, p: int, q: int) -> CoeffValue:
    """Deep-mode scalar in the triple Virasoro reduction (coefficient of the
    single deepest mode)."""
    if q < 3 or p < 3:
        raise ValueError(f"outside derivation domain: need p, q >= 3, got ({p}, {q})")
    symbol = _symbol_of(m)
    cm = lambda i: c_coeff(_shift(m, -1), p - 1, i)
    value = Fraction(1, 2) * shift_k(F_const(m, p), q) * F_const(_add(m, p), q)
    for i in range(2, q - 1):
        value = value - Fraction(1, 2) * cm(i) * (q + i - 1) * F_const(_add(m, p) + i - 1, q + 1 - i)
    value = value + (index_value(_add(m, p)) + q - 2) * cm(q) * (2 * q - 1)
    value = value - (2 * _K + Fraction(q * q - 1, 12) * _CV) * q * cm(q + 1)
    return _promote(value, symbol)


def h_vir(m: Index, p: int, q: int) -> CoeffValue:
    """Companion scalar multiplying the leftover double-mode term."""
    if q < 3 or p < 3:
        raise ValueError(f"outside derivation domain: need p, q >= 3, got ({p}, {q})")
    return _promote(-2 * (q - 1) * c_coeff(_shift(m, -1), p - 1, q - 1), _symbol_of(m))


def gamma_matrix(symbol: str = "m") -> tuple[tuple[ParityExpr, ParityExpr],
                                             tuple[ParityExpr, ParityExpr]]:
    """The 2x2 matrix of reduction-scalar differences for the mode pairs
    (6,3) and (5,4), entries symbolic in the deep index."""
    m = sym(symbol)
    g11 = g_const(m, 6, 3) - g_const(m, 3, 6) + 3 * F_const(m, 9)
    g12 = h_vir(m, 6, 3) - h_vir(m, 3, 6)
    g21 = g_const(m, 5, 4) - g_const(m, 4, 5) + F_const(m, 9)
    g22 = h_vir(m, 5, 4) - h_vir(m, 4, 5)
    return ((ParityExpr.of(g11, symbol), ParityExpr.of(g12, symbol)),
            (ParityExpr.of(g21, symbol), ParityExpr.of(g22, symbol)))


def pair_swap_scalar(m: int, p: int) -> Fraction:
    """p*c(m,2;p) - m*c(p,2;m): the swap defect that forces deep products
    with the conformal vector to vanish when m != p."""
    _check_min(m, 1)
    _check_min(p, 1)
    a = p * c_coeff(m, 2, p)
    b = m * c_coeff(p, 2, m)
    return a - b
