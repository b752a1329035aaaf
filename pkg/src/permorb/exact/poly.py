"""Exact sparse multivariate polynomials and rational functions over Q.

A polynomial is a mapping from exponent tuples to nonzero Fraction
coefficients, together with an ordered tuple of variable names.  All
arithmetic is exact; equal polynomials always have identical stored form
(no zero terms, canonical variable order), so ``==`` is decidable
structural equality.

Variable order is fixed globally: index symbols (``m``, ``p``, ``z``, ...)
come first alphabetically, then ``k``, then ``c_V``.  This keeps the
graded-lexicographic term order stable when values from different
construction paths meet.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Mapping, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]

# Trailing entries of the canonical variable order; everything else sorts
# alphabetically in front of them.
_TAIL_VARS = ("k", "c_V")


def _var_key(name: str) -> tuple[int, str]:
    try:
        return (1 + _TAIL_VARS.index(name), "")
    except ValueError:
        return (0, name)


def merge_vars(a: tuple[str, ...], b: tuple[str, ...]) -> tuple[str, ...]:
    """Union of two variable tuples in canonical order."""
    return tuple(sorted(set(a) | set(b), key=_var_key))


def _grlex_key(exp: Exponent) -> tuple:
    return (sum(exp), exp)


class Poly:
    """Immutable sparse polynomial over Q."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: tuple[str, ...], terms: Mapping[Exponent, Scalar]):
        clean: dict[Exponent, Fraction] = {}
        for exp, c in terms.items():
            c = Fraction(c)
            if c:
                clean[tuple(exp)] = c
        object.__setattr__(self, "vars", tuple(vars))
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Poly is immutable")

    # -- constructors --------------------------------------------------

    @staticmethod
    def constant(c: Scalar, vars: tuple[str, ...] = ()) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly(vars, {})
        return Poly(vars, {(0,) * len(vars): c})

    @staticmethod
    def variable(name: str) -> "Poly":
        return Poly((name,), {(1,): Fraction(1)})

    # -- structure -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if name not in self.vars or not self.terms:
            return 0
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def used_vars(self) -> tuple[str, ...]:
        """Variables with a nonzero exponent somewhere."""
        used = set()
        for exp in self.terms:
            for name, e in zip(self.vars, exp):
                if e:
                    used.add(name)
        return tuple(sorted(used, key=_var_key))

    def trim(self) -> "Poly":
        """Drop variables that never occur."""
        used = self.used_vars()
        if used == self.vars:
            return self
        return self.lift(used)

    def lift(self, vars: tuple[str, ...]) -> "Poly":
        """Re-express over the given variable tuple (must cover used vars)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {}
        for i, name in enumerate(self.vars):
            if name in vars:
                pos[i] = vars.index(name)
        n = len(vars)
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            new = [0] * n
            for i, e in enumerate(exp):
                if not e:
                    continue
                if i not in pos:
                    raise ValueError(
                        f"variable {self.vars[i]!r} cannot be dropped (exponent {e})"
                    )
                new[pos[i]] = e
            out[tuple(new)] = c
        return Poly(vars, out)

    def _aligned(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if self.vars == other.vars:
            return self, other
        vars = merge_vars(self.vars, other.vars)
        return self.lift(vars), other.lift(vars)

    # -- arithmetic ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __neg__(self) -> "Poly":
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "Poly":
        other = _coerce(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(a.vars, out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = _coerce(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = _coerce(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Poly":
        other = _coerce(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, Fraction(0)) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly(a.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == Fraction(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.trim(), other.trim()
        return a.vars == b.vars and a.terms == b.terms

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            t = self.trim()
            h = hash((t.vars, frozenset(t.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- evaluation and substitution ------------------------------------

    def subs(self, values: Mapping[str, Scalar]) -> "Poly":
        """Substitute numeric values for some variables."""
        keep = tuple(v for v in self.vars if v not in values)
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            coeff = c
            new = []
            for name, e in zip(self.vars, exp):
                if name in values:
                    if e:
                        coeff *= Fraction(values[name]) ** e
                else:
                    new.append(e)
            key = tuple(new)
            s = out.get(key, Fraction(0)) + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Poly(keep, out)

    def eval(self, values: Mapping[str, Scalar]) -> Fraction:
        p = self.subs(values)
        return p.constant_value()

    def shift_var(self, name: str, delta: Scalar) -> "Poly":
        """Substitute ``name -> name + delta`` (polynomial composition)."""
        if name not in self.vars or not self.terms:
            return self
        delta = Fraction(delta)
        if not delta:
            return self
        i = self.vars.index(name)
        x_plus = Poly(self.vars, {
            tuple(1 if j == i else 0 for j in range(len(self.vars))): Fraction(1),
            (0,) * len(self.vars): delta,
        })
        # Horner over descending powers of the shifted variable.
        by_deg: dict[int, dict[Exponent, Fraction]] = {}
        for exp, c in self.terms.items():
            d = exp[i]
            rest = tuple(0 if j == i else e for j, e in enumerate(exp))
            by_deg.setdefault(d, {})[rest] = c
        top = max(by_deg)
        acc = Poly(self.vars, by_deg.get(top, {}))
        for d in range(top - 1, -1, -1):
            acc = acc * x_plus + Poly(self.vars, by_deg.get(d, {}))
        return acc

    # -- leading data under grlex ---------------------------------------

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def leading_coeff(self) -> Fraction:
        return self.leading_term()[1]

    def coeff_of(self, name: str, power: int) -> "Poly":
        """Coefficient of ``name**power`` as a polynomial in the other vars."""
        if name not in self.vars:
            if power == 0:
                return self
            return Poly(self.vars, {})
        i = self.vars.index(name)
        rest = tuple(v for j, v in enumerate(self.vars) if j != i)
        out = {}
        for exp, c in self.terms.items():
            if exp[i] == power:
                out[tuple(e for j, e in enumerate(exp) if j != i)] = c
        return Poly(rest, out)

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        return Poly(self.vars, {e: c / lc for e, c in self.terms.items()})

    # -- display ---------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.vars, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    __repr__ = __str__


def _coerce(x, vars: tuple[str, ...]):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.constant(x, vars)
    return NotImplemented


# -- exact division and gcd ----------------------------------------------


def div_exact(f: Poly, g: Poly) -> Poly:
    """Exact polynomial division; raises ValueError when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return Poly(f.vars, {})
    if g.is_constant():
        c = g.constant_value()
        return Poly(f.vars, {e: v / c for e, v in f.terms.items()})
    f, g = f._aligned(g)
    rem = dict(f.terms)
    ge, gc = g.leading_term()
    out: dict[Exponent, Fraction] = {}
    while rem:
        e = max(rem, key=_grlex_key)
        c = rem[e]
        q = tuple(a - b for a, b in zip(e, ge))
        if any(x < 0 for x in q):
            raise ValueError("polynomial division is not exact")
        qc = c / gc
        out[q] = qc
        for eg, cg in g.terms.items():
            key = tuple(a + b for a, b in zip(q, eg))
            s = rem.get(key, Fraction(0)) - qc * cg
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return Poly(f.vars, out)


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    # gcd on Q normalised so dividing by it yields coprime integers
    num = _int_gcd(a.numerator, b.numerator)
    den = (a.denominator * b.denominator) // _int_gcd(a.denominator, b.denominator)
    return Fraction(num, den)


def _univar_gcd(f: Poly, g: Poly, name: str) -> Poly:
    """Monic Euclidean gcd of two univariate polynomials."""
    def coeffs(p: Poly) -> list[Fraction]:
        d = p.degree_in(name)
        i = p.vars.index(name) if name in p.vars else None
        out = [Fraction(0)] * (d + 1)
        for exp, c in p.terms.items():
            out[exp[i] if i is not None else 0] = c
        return out

    a, b = coeffs(f), coeffs(g)

    def deg(c):
        for i in range(len(c) - 1, -1, -1):
            if c[i]:
                return i
        return -1

    da, db = deg(a), deg(b)
    while db >= 0:
        # a mod b
        while da >= db:
            q = a[da] / b[db]
            for i in range(db + 1):
                a[da - db + i] -= q * b[i]
            a[da] = Fraction(0)
            da = deg(a)
        a, b = b, a
        da, db = deg(a), deg(b)
    if da < 0:
        return Poly((name,), {})
    lead = a[da]
    return Poly((name,), {(i,): c / lead for i, c in enumerate(a) if c})


def _to_univar(f: Poly, name: str) -> dict[int, Poly]:
    """View f as a univariate polynomial in ``name`` with Poly coefficients."""
    out: dict[int, Poly] = {}
    for d in range(f.degree_in(name) + 1):
        c = f.coeff_of(name, d)
        if not c.is_zero():
            out[d] = c
    return out


def _from_univar(coeffs: dict[int, Poly], name: str) -> Poly:
    acc = Poly((name,), {})
    x = Poly.variable(name)
    for d, c in coeffs.items():
        acc = acc + c * x ** d
    return acc


def _content(coeffs: Iterable[Poly]) -> Poly:
    it = iter(coeffs)
    g = next(it).trim()
    for c in it:
        g = poly_gcd(g, c)
        if g.is_constant() and g.constant_value() == 1:
            break
    return g


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over Q, via Euclid (univariate) or primitive PRS (multivariate)."""
    f, g = f.trim(), g.trim()
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return Poly.constant(1)
    uf, ug = f.used_vars(), g.used_vars()
    common = [v for v in uf if v in ug]
    if not common:
        return Poly.constant(1)
    if len(uf) == 1 and uf == ug:
        return _univar_gcd(f, g, uf[0])
    # primitive PRS in the first common variable
    x = common[0]
    cf = _to_univar(f, x)
    cg = _to_univar(g, x)
    cont_f = _content(cf.values())
    cont_g = _content(cg.values())
    cont = poly_gcd(cont_f, cont_g)
    pf = {d: div_exact(c, cont_f) for d, c in cf.items()}
    pg = {d: div_exact(c, cont_g) for d, c in cg.items()}

    def udeg(p: dict[int, Poly]) -> int:
        return max(p) if p else -1

    def prem(a: dict[int, Poly], b: dict[int, Poly]) -> dict[int, Poly]:
        # pseudo-remainder of a by b in (Q[rest])[x]
        a = dict(a)
        db = udeg(b)
        lb = b[db]
        while udeg(a) >= db and a:
            da = udeg(a)
            la = a[da]
            # a := lb * a - la * x^(da-db) * b
            new: dict[int, Poly] = {}
            for d, c in a.items():
                new[d] = c * lb
            for d, c in b.items():
                key = da - db + d
                val = new.get(key, Poly((), {})) - la * c
                if val.is_zero():
                    new.pop(key, None)
                else:
                    new[key] = val
            new.pop(da, None)
            a = {d: c for d, c in new.items() if not c.is_zero()}
        return a

    a, b = pf, pg
    if udeg(a) < udeg(b):
        a, b = b, a
    while b:
        r = prem(a, b)
        a = b
        if not r:
            b = {}
        else:
            c = _content(r.values())
            b = {d: div_exact(v, c) for d, v in r.items()}
    result = _from_univar(a, x) * cont
    return result.monic()


class RatFunc:
    """Rational function num/den over Q in named variables.

    Canonical form: gcd(num, den) is a unit, den's graded-lex leading
    coefficient is 1, and den == 1 whenever the value is polynomial.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, _normalized: bool = False):
        if den is None:
            den = Poly.constant(1)
        if den.is_zero():
            raise ZeroDivisionError("zero divisor")
        if not _normalized:
            num, den = self._normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
        num, den = num.trim(), den.trim()
        if num.is_zero():
            return Poly((), {}), Poly.constant(1)
        if den.is_constant():
            c = den.constant_value()
            return Poly(num.vars, {e: v / c for e, v in num.terms.items()}), Poly.constant(1)
        g = poly_gcd(num, den)
        if not (g.is_constant() and g.constant_value() == 1):
            num = div_exact(num, g)
            den = div_exact(den, g)
        lc = den.leading_coeff()
        if lc != 1:
            num = Poly(num.vars, {e: v / lc for e, v in num.terms.items()})
            den = den.monic()
        return num.trim(), den.trim()

    # -- constructors -----------------------------------------------------

    @staticmethod
    def constant(c: Scalar) -> "RatFunc":
        return RatFunc(Poly.constant(c))

    @staticmethod
    def variable(name: str) -> "RatFunc":
        return RatFunc(Poly.variable(name))

    @staticmethod
    def of(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return RatFunc(x)
        return RatFunc.constant(x)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == 1

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not constant: {self}")
        return self.num.constant_value()

    def used_vars(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.num.used_vars()) | set(self.den.used_vars()),
                            key=_var_key))

    # -- arithmetic ----------------------------------------------------------

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _normalized=True)

    def __add__(self, other) -> "RatFunc":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RatFunc":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("zero divisor")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc.of(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- substitution ---------------------------------------------------------

    def subs(self, values: Mapping[str, Scalar]) -> "RatFunc":
        den = self.den.subs(values)
        if den.is_zero():
            raise ZeroDivisionError("evaluation at pole")
        return RatFunc(self.num.subs(values), den)

    def eval(self, values: Mapping[str, Scalar]) -> Fraction:
        r = self.subs(values)
        if not r.is_constant():
            raise ValueError(f"free variables remain after substitution: {r}")
        return r.constant_value()

    def shift_var(self, name: str, delta: Scalar) -> "RatFunc":
        return RatFunc(self.num.shift_var(name, delta),
                       self.den.shift_var(name, delta))

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _coerce_rf(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction, Poly)):
        return RatFunc.of(x)
    return NotImplemented


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Named entry point for the four exact field operations."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
