"""Parity-split expressions in one symbolic integer index.

Signs of the form (-1)**m with a free integer index m are represented by
two explicit branches: a rational function for even m and one for odd m.
This keeps the coefficient field an honest rational-function field, so
equality is decided by normalization instead of by simplifying an
adjoined root of unity.

The module also provides the small builder vocabulary used by every
closed-form coefficient family: a symbolic index with a concrete offset
(``SymInt``), rising factorials, binomials with concrete upper part, and
(-1)**index signs.  Each builder accepts either a plain integer or a
``SymInt`` and returns a Fraction, RatFunc or ParityExpr accordingly, so
coefficient formulas are written once and work in both concrete and
symbolic mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Union

from .poly import Poly, RatFunc

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class SymInt:
    """A symbolic integer index plus a concrete offset, e.g. m + 3."""

    name: str
    offset: int = 0

    def __add__(self, c: int) -> "SymInt":
        return SymInt(self.name, self.offset + c)

    __radd__ = __add__

    def __sub__(self, c: int) -> "SymInt":
        return SymInt(self.name, self.offset - c)

    def __neg__(self) -> "NegSymInt":
        raise TypeError("negated symbolic index is not supported")

    def __str__(self) -> str:
        if self.offset > 0:
            return f"{self.name}+{self.offset}"
        if self.offset < 0:
            return f"{self.name}{self.offset}"
        return self.name


def sym(name: str) -> SymInt:
    return SymInt(name)


Index = Union[int, SymInt]


class ParityExpr:
    """A value split into even/odd branches of one integer index."""

    __slots__ = ("symbol", "even", "odd")

    def __init__(self, symbol: str, even, odd):
        object.__setattr__(self, "symbol", symbol)
        object.__setattr__(self, "even", RatFunc.of(even))
        object.__setattr__(self, "odd", RatFunc.of(odd))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("ParityExpr is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def broadcast(symbol: str, value) -> "ParityExpr":
        """A parity expression whose branches agree."""
        rf = RatFunc.of(value)
        return ParityExpr(symbol, rf, rf)

    @staticmethod
    def of(x, symbol: str) -> "ParityExpr":
        if isinstance(x, ParityExpr):
            if x.symbol != symbol:
                raise ValueError(f"index mismatch: {x.symbol!r} vs {symbol!r}")
            return x
        return ParityExpr.broadcast(symbol, x)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.odd.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ------------------------------------------------------------

    def _pair(self, other) -> tuple["ParityExpr", "ParityExpr"]:
        return self, ParityExpr.of(other, self.symbol)

    def __neg__(self) -> "ParityExpr":
        return ParityExpr(self.symbol, -self.even, -self.odd)

    def __add__(self, other) -> "ParityExpr":
        a, b = self._pair(other)
        return ParityExpr(a.symbol, a.even + b.even, a.odd + b.odd)

    __radd__ = __add__

    def __sub__(self, other) -> "ParityExpr":
        a, b = self._pair(other)
        return ParityExpr(a.symbol, a.even - b.even, a.odd - b.odd)

    def __rsub__(self, other) -> "ParityExpr":
        a, b = self._pair(other)
        return ParityExpr(a.symbol, b.even - a.even, b.odd - a.odd)

    def __mul__(self, other) -> "ParityExpr":
        a, b = self._pair(other)
        return ParityExpr(a.symbol, a.even * b.even, a.odd * b.odd)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ParityExpr":
        a, b = self._pair(other)
        if b.even.is_zero() or b.odd.is_zero():
            raise ZeroDivisionError("zero divisor")
        return ParityExpr(a.symbol, a.even / b.even, a.odd / b.odd)

    def __rtruediv__(self, other) -> "ParityExpr":
        a, b = self._pair(other)
        return b / a

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly, RatFunc)):
            other = ParityExpr.broadcast(self.symbol, other)
        if not isinstance(other, ParityExpr):
            return NotImplemented
        return (self.symbol == other.symbol and self.even == other.even
                and self.odd == other.odd)

    def __hash__(self) -> int:
        return hash((self.symbol, self.even, self.odd))

    # -- index operations -----------------------------------------------------

    def shift(self, s: int) -> "ParityExpr":
        """The expression with index translated by s: result(n) = self(n + s)."""
        even = self.even.shift_var(self.symbol, s)
        odd = self.odd.shift_var(self.symbol, s)
        if s % 2:
            even, odd = odd, even
        return ParityExpr(self.symbol, even, odd)

    def eval_at(self, n: int) -> RatFunc:
        """Value of the matching branch at the integer n (k, c_V may remain)."""
        branch = self.even if n % 2 == 0 else self.odd
        return branch.subs({self.symbol: n})

    def shift_var(self, name: str, delta: Scalar) -> "ParityExpr":
        """Substitute ``name -> name + delta`` in both branches (e.g. k -> k+q)."""
        if name == self.symbol:
            raise ValueError("use shift() for the parity index")
        return ParityExpr(self.symbol,
                          self.even.shift_var(name, delta),
                          self.odd.shift_var(name, delta))

    def __str__(self) -> str:
        return f"[{self.symbol} even: {self.even} | odd: {self.odd}]"

    __repr__ = __str__


def parity_shift(e: ParityExpr, s: int) -> ParityExpr:
    return e.shift(s)


def parity_eval(e: ParityExpr, n: int) -> Fraction:
    """Exact rational value at n; the selected branch must be free of k, c_V."""
    r = e.eval_at(n)
    return r.constant_value()


# -- builder vocabulary -------------------------------------------------------


def index_value(x: Index):
    """x itself as a Fraction (concrete) or RatFunc (symbolic)."""
    if isinstance(x, SymInt):
        return RatFunc(Poly.variable(x.name) + x.offset)
    return Fraction(x)


def sign_pow(x: Index):
    """(-1)**x as a Fraction or a two-branch ParityExpr."""
    if isinstance(x, SymInt):
        s = Fraction(1 if x.offset % 2 == 0 else -1)
        return ParityExpr(x.name, s, -s)
    return Fraction(1 if x % 2 == 0 else -1)


def rising(x: Index, count: int):
    """x (x+1) ... (x+count-1), an exact product with concrete length."""
    if count < 0:
        raise ValueError("rising factorial needs count >= 0")
    if isinstance(x, SymInt):
        acc = RatFunc.constant(1)
        base = Poly.variable(x.name)
        for j in range(count):
            acc = acc * (base + (x.offset + j))
        return acc
    acc = Fraction(1)
    for j in range(count):
        acc *= x + j
    return acc


def binom_ci(x: Index, i: int):
    """binom(x, i) for concrete i >= 0: the degree-i polynomial in x."""
    if i < 0:
        raise ValueError("binomial lower index must be >= 0")
    if isinstance(x, SymInt):
        return rising(x - i + 1, i) / factorial(i)
    num = rising(x - i + 1, i)
    return Fraction(num, factorial(i))


def recip(x: Index):
    """1/x, exact; symbolic x yields a rational function."""
    if isinstance(x, SymInt):
        return 1 / index_value(x)
    if x == 0:
        raise ZeroDivisionError("zero divisor")
    return Fraction(1, x)


def concrete(x: Index) -> int:
    if isinstance(x, SymInt):
        raise TypeError(f"expected a concrete integer, got symbolic {x}")
    return x


def is_symbolic(x: Index) -> bool:
    return isinstance(x, SymInt)
