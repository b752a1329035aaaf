"""Concrete desk-scale vertex algebra engines.

Two exact engines serve as the brute-force oracle for every abstract mode
identity: rank-r free boson Fock spaces over Q (scalars are gmpy2.mpq for
speed) and the Virasoro vacuum module over Q[c_V] with the central charge
kept symbolic.

Vectors are plain dicts mapping canonical monomial tuples to nonzero
scalars; the empty tuple is the vacuum.  Free boson monomials are tuples
of (depth, generator) pairs sorted ascending (mode descending, then
generator); Virasoro monomials are tuples of depths m1 >= ... >= mr >= 2.

n-th products are computed by structural recursion on the left factor:
the first generator mode is peeled off and re-expanded with the
associativity formula, with generator modes as the closed-form base case.
Results are memoized per engine, keyed by (left monomial, n, right
monomial), and every sum over expansion indices terminates by an exact
weight bound (the grading is nonnegative, so any product landing in
negative weight is zero).
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Union

from gmpy2 import mpq

from .exact.poly import Poly

Monomial = tuple
Vector = dict  # Monomial -> scalar

VACUUM: Monomial = ()


def binom_int(m: int, i: int) -> int:
    """binom(m, i) for any integer m and i >= 0, exact."""
    num = 1
    for j in range(i):
        num *= m - j
    return num // factorial(i)


@dataclass(frozen=True)
class VoaSpec:
    """Selects a concrete engine: free boson of a given rank, or Virasoro."""

    kind: str  # "heisenberg" | "virasoro"
    rank: int = 1

    def __post_init__(self):
        if self.kind not in ("heisenberg", "virasoro"):
            raise ValueError(f"unknown engine kind {self.kind!r}")
        if self.kind == "heisenberg" and self.rank < 1:
            raise ValueError("rank must be >= 1")

    def key(self) -> str:
        return f"{self.kind}-r{self.rank}" if self.kind == "heisenberg" else "virasoro"


@dataclass(frozen=True)
class ModeOp:
    """A single generator mode: a^gen_(n) for the free boson, or L_n."""

    gen: int  # generator index; ignored by the Virasoro engine
    n: int


# -- generic vector helpers ---------------------------------------------------


def vec_iadd(acc: Vector, vec: Vector, scale=1) -> Vector:
    """acc += scale * vec, pruning zeros."""
    if not scale:
        return acc
    get = acc.get
    if scale == 1:
        for mono, c in vec.items():
            s = get(mono, 0) + c
            if s:
                acc[mono] = s
            else:
                del acc[mono]
        return acc
    for mono, c in vec.items():
        s = get(mono, 0) + scale * c
        if s:
            acc[mono] = s
        else:
            del acc[mono]
    return acc


def vec_scale(vec: Vector, scale) -> Vector:
    if not scale:
        return {}
    return {m: scale * c for m, c in vec.items()}


def vec_sub(a: Vector, b: Vector) -> Vector:
    out = dict(a)
    return vec_iadd(out, b, -1)


def vec_eq(a: Vector, b: Vector) -> bool:
    return not vec_sub(a, b)


class _EngineBase:
    """Shared mode-peeling product recursion; subclasses supply the mode
    algebra of their generators."""

    gen_weight: int

    def __init__(self):
        self._product_memo: dict = {}

    # subclass interface -----------------------------------------------------

    def monomial_weight(self, mono: Monomial) -> int:
        raise NotImplementedError

    def peel(self, mono: Monomial) -> tuple[int, int, Monomial]:
        """Split off the leading generator mode: (gen, mode, rest)."""
        raise NotImplementedError

    def mode_apply_mono(self, gen: int, n: int, mono: Monomial) -> Vector:
        raise NotImplementedError

    def scalar(self, x) -> object:
        """Coerce an int or Fraction into the engine's scalar ring."""
        raise NotImplementedError

    # shared operations ---------------------------------------------------------

    def vacuum(self) -> Vector:
        return {VACUUM: self.scalar(1)}

    def weight(self, vec: Vector) -> int:
        """Weight of a homogeneous vector."""
        ws = {self.monomial_weight(m) for m in vec}
        if len(ws) != 1:
            raise ValueError(f"vector is not homogeneous: weights {sorted(ws)}")
        return ws.pop()

    def is_homogeneous(self, vec: Vector) -> bool:
        return len({self.monomial_weight(m) for m in vec}) <= 1

    def mode_apply(self, op: ModeOp, vec: Vector) -> Vector:
        out: Vector = {}
        for mono, c in vec.items():
            vec_iadd(out, self.mode_apply_mono(op.gen, op.n, mono), c)
        return out

    def mode_apply_vec(self, gen: int, n: int, vec: Vector, scale=1) -> Vector:
        out: Vector = {}
        for mono, c in vec.items():
            vec_iadd(out, self.mode_apply_mono(gen, n, mono), scale * c)
        return out

    def nth_product_mono(self, a: Monomial, n: int, b: Monomial) -> Vector:
        key = (a, n, b)
        memo = self._product_memo
        hit = memo.get(key)
        if hit is not None:
            return hit
        if a == VACUUM:
            out = {b: self.scalar(1)} if n == -1 else {}
            memo[key] = out
            return out
        gen, m, rest = self.peel(a)
        wt_rest = self.monomial_weight(rest)
        wt_b = self.monomial_weight(b)
        out: Vector = {}
        # sum over i of binom(m,i) (-1)^i  gen_(m-i) (rest_(n+i) b)
        for i in range(0, wt_rest + wt_b - n):
            sub = self.nth_product_mono(rest, n + i, b)
            if not sub:
                continue
            coeff = binom_int(m, i) * (1 if i % 2 == 0 else -1)
            if coeff:
                vec_iadd(out, self.mode_apply_vec(gen, m - i, sub), coeff)
        # minus (-1)^m sum over i of binom(m,i) (-1)^i  rest_(m+n-i) (gen_(i) b)
        sign_m = 1 if m % 2 == 0 else -1
        for i in range(0, self.gen_weight + wt_b):
            gv = self.mode_apply_mono(gen, i, b)
            if not gv:
                continue
            coeff = -sign_m * binom_int(m, i) * (1 if i % 2 == 0 else -1)
            if not coeff:
                continue
            for mono, c in gv.items():
                sub = self.nth_product_mono(rest, m + n - i, mono)
                if sub:
                    vec_iadd(out, sub, coeff * c)
        memo[key] = out
        return out

    def nth_product(self, u: Vector, v: Vector, n: int) -> Vector:
        memo = self._product_memo
        out: Vector = {}
        for ma, ca in u.items():
            for mb, cb in v.items():
                sub = memo.get((ma, n, mb))
                if sub is None:
                    sub = self.nth_product_mono(ma, n, mb)
                if sub:
                    vec_iadd(out, sub, ca * cb)
        return out

    def apply_modes(self, ops: list[ModeOp], vec: Vector) -> Vector:
        """Apply a list of modes right-to-left (closest to the vector last)."""
        for op in reversed(ops):
            vec = self.mode_apply(op, vec)
        return vec


class HeisenbergEngine(_EngineBase):
    """Rank-r free boson Fock space over Q.

    Monomial parts are (depth, generator) with depth >= 1; the bracket is
    [a^g_(s), a^h_(t)] = s delta_(s+t,0) delta_(g,h).
    """

    gen_weight = 1

    def __init__(self, rank: int = 1):
        super().__init__()
        self.rank = rank

    def scalar(self, x):
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        return mpq(x)

    def monomial_weight(self, mono: Monomial) -> int:
        return sum(d for d, _ in mono)

    def generator(self, gen: int = 0) -> Vector:
        if not 0 <= gen < self.rank:
            raise ValueError(f"generator index {gen} out of range for rank {self.rank}")
        return {((1, gen),): mpq(1)}

    def mode_monomial(self, parts) -> Vector:
        """Monomial a^{g1}_(-d1)...a^{gr}_(-dr) vacuum from (depth, gen) parts."""
        mono = tuple(sorted(parts))
        if any(d < 1 or not 0 <= g < self.rank for d, g in mono):
            raise ValueError(f"bad monomial parts {parts}")
        return {mono: mpq(1)}

    def conformal_vector(self) -> Vector:
        """omega = (1/2) sum_g a^g_(-1) a^g_(-1) vacuum; central charge = rank."""
        return {((1, g), (1, g)): mpq(1, 2) for g in range(self.rank)}

    def peel(self, mono: Monomial) -> tuple[int, int, Monomial]:
        (d, g) = mono[0]
        return g, -d, mono[1:]

    def mode_apply_mono(self, gen: int, n: int, mono: Monomial) -> Vector:
        if n == 0:
            return {}
        if n < 0:
            part = (-n, gen)
            lst = list(mono)
            bisect.insort(lst, part)
            return {tuple(lst): mpq(1)}
        part = (n, gen)
        count = mono.count(part)
        if not count:
            return {}
        lst = list(mono)
        lst.remove(part)
        return {tuple(lst): mpq(count * n)}


class VirasoroEngine(_EngineBase):
    """Virasoro vacuum module with symbolic central charge.

    Monomials are depth tuples (m1 >= ... >= mr >= 2); scalars live in
    Q[c_V].  The generator is omega with omega_(n+1) = L_n.
    """

    gen_weight = 2

    def __init__(self):
        super().__init__()
        self._apply_memo: dict = {}
        self._cv = Poly.variable("c_V")

    def scalar(self, x):
        return Fraction(x) if not isinstance(x, (Fraction, Poly)) else x

    def monomial_weight(self, mono: Monomial) -> int:
        return sum(mono)

    def conformal_vector(self) -> Vector:
        return {(2,): Fraction(1)}

    def mode_monomial(self, depths) -> Vector:
        mono = tuple(sorted(depths, reverse=True))
        if any(d < 2 for d in mono):
            raise ValueError(f"PBW depths must be >= 2, got {depths}")
        return {mono: Fraction(1)}

    def peel(self, mono: Monomial) -> tuple[int, int, Monomial]:
        m1 = mono[0]
        return 0, -m1 + 1, mono[1:]  # L_{-m1} = omega_(-m1+1)

    def mode_apply_mono(self, gen: int, n: int, mono: Monomial) -> Vector:
        # omega_(n) = L_{n-1}
        return self._apply_L(n - 1, mono)

    def _apply_L(self, s: int, mono: Monomial) -> Vector:
        key = (s, mono)
        hit = self._apply_memo.get(key)
        if hit is not None:
            return hit
        if not mono:
            out = {(-s,): Fraction(1)} if s <= -2 else {}
            self._apply_memo[key] = out
            return out
        m1, rest = mono[0], mono[1:]
        if s <= -2 and -s >= m1:
            out = {(-s,) + mono: Fraction(1)}
            self._apply_memo[key] = out
            return out
        # commute L_s through L_{-m1}
        out: Vector = {}
        inner = self._apply_L(s, rest)
        for sub, c in inner.items():
            vec_iadd(out, self._cons_L(m1, sub), c)
        vec_iadd(out, self._apply_L(s - m1, rest), s + m1)
        if s == m1:
            central = Fraction(s ** 3 - s, 12)
            if central:
                vec_iadd(out, {rest: self._cv * central})
        self._apply_memo[key] = out
        return out

    def _cons_L(self, m: int, mono: Monomial) -> Vector:
        """L_{-m} applied to a PBW monomial, restoring canonical order."""
        if not mono or m >= mono[0]:
            return {(m,) + mono: Fraction(1)}
        return self._apply_L(-m, mono)

    def normal_order(self, word, tail: Vector) -> Vector:
        """Apply L_{-m} for each depth in word, left to right, to tail."""
        out = tail
        for m in reversed(list(word)):
            acc: Vector = {}
            for mono, c in out.items():
                vec_iadd(acc, self._apply_L(-m, mono), c)
            out = acc
        return out


_ENGINES: dict[str, _EngineBase] = {}


def get_engine(spec: VoaSpec) -> _EngineBase:
    key = spec.key()
    eng = _ENGINES.get(key)
    if eng is None:
        eng = HeisenbergEngine(spec.rank) if spec.kind == "heisenberg" else VirasoroEngine()
        _ENGINES[key] = eng
    return eng


def virasoro_normal_order(word, tail: Vector | None = None) -> Vector:
    """Reorder a product of lowering Virasoro modes into the PBW basis."""
    eng = get_engine(VoaSpec("virasoro"))
    if tail is None:
        tail = eng.vacuum()
    return eng.normal_order(word, tail)


@lru_cache(maxsize=None)
def _alpha_frac(m: int, n: int, i: int) -> Fraction:
    from .coeffs import alpha

    return alpha(m, n, i)


def check_minus_one_expansion(eng: _EngineBase, a: Vector, b: Vector,
                              u: Vector, m: int, n: int) -> bool:
    """Exact check of the (-1)-product expansion of a double lowering mode.

    (a_(-m) b_(-n) vac)_(-1) u must equal a_(-m) b_(-n) u plus the
    alpha-weighted cross terms; the i sum truncates by weight.
    """
    if m < 1 or n < 1:
        raise ValueError("modes must be positive")
    bn_vac = eng.nth_product(b, eng.vacuum(), -n)
    w = eng.nth_product(a, bn_vac, -m)
    res = eng.nth_product(w, u, -1)

    vec_iadd(res, eng.nth_product(a, eng.nth_product(b, u, -n), -m), -1)
    wa = eng.weight(a)
    wb = eng.weight(b)
    wu = eng.weight(u) if u else 0
    i_max = max(wa + wu, wb + wu)
    for i in range(i_max):
        biu = eng.nth_product(b, u, i)
        if biu:
            coeff = eng.scalar(_alpha_frac(m, n, i))
            vec_iadd(res, eng.nth_product(a, biu, -m - n - i), -coeff)
        aiu = eng.nth_product(a, u, i)
        if aiu:
            coeff = eng.scalar(_alpha_frac(n, m, i))
            vec_iadd(res, eng.nth_product(b, aiu, -m - n - i), -coeff)
    return not res


def check_commutativity(eng: _EngineBase, a: Vector, b: Vector,
                        c: Vector, m: int, n: int) -> bool:
    """a_(m)(b_(n)c) - b_(n)(a_(m)c) == sum_i binom(m,i) (a_(i)b)_(m+n-i) c."""
    lhs = eng.nth_product(a, eng.nth_product(b, c, n), m)
    vec_iadd(lhs, eng.nth_product(b, eng.nth_product(a, c, m), n), -1)
    rhs: Vector = {}
    wa = eng.weight(a)
    wb = eng.weight(b)
    for i in range(wa + wb):
        aib = eng.nth_product(a, b, i)
        if aib:
            vec_iadd(rhs, eng.nth_product(aib, c, m + n - i), binom_int(m, i))
    return vec_eq(lhs, rhs)


def check_skew_symmetry(eng: _EngineBase, a: Vector, b: Vector, m: int) -> bool:
    """a_(m)b == sum_i (-1)^(m-1-i) (b_(m+i)a)_(-1-i) vac.

    Equivalently sum_i ((-1)^(m-1-i)/i!) L_(-1)^i (b_(m+i)a); the (-1-i)
    product of a vector with the vacuum already carries the 1/i!.
    """
    lhs = eng.nth_product(a, b, m)
    rhs: Vector = {}
    wa = eng.weight(a)
    wb = eng.weight(b)
    vac = eng.vacuum()
    for i in range(wa + wb - m):
        bma = eng.nth_product(b, a, m + i)
        if not bma:
            continue
        sign = 1 if (m - 1 - i) % 2 == 0 else -1
        vec_iadd(rhs, eng.nth_product(bma, vac, -1 - i), sign)
    return vec_eq(lhs, rhs)
