"""The S2 tensor-square orbifold of a concrete engine.

Vectors of the fixed-point subalgebra are stored through canonical
symmetrized monomials: a pair (A, B) with A <= B in tuple order stands for
A (x) B + B (x) A when A != B, and for A (x) A on the diagonal.  All
products are assembled from the base engine's memoized monomial products
via the tensor-factorwise expansion of modes.

The degree-two quotient machinery computes, weight by weight, the exact
reduced row-echelon basis of the span of all double-lowering products
inside the fixed-point subalgebra.  The spanning enumeration uses the
skew-symmetry reduction: products u_(-2)v with wt u > wt v are linear
combinations of v_(-2)u and translates of lower products, so unordered
pairs plus the full translate image of the previous weight span the same
subspace.  Membership tests then reduce against the echelon rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from gmpy2 import mpq

from .echelon import SparseRref
from .fock import (
    VACUUM,
    HeisenbergEngine,
    Monomial,
    ModeOp,
    Vector,
    VoaSpec,
    get_engine,
    vec_iadd,
)

SymMonomial = tuple  # (monoA, monoB) with monoA <= monoB
SymVector = dict  # SymMonomial -> scalar


def canon_pair(a: Monomial, b: Monomial) -> SymMonomial:
    return (a, b) if a <= b else (b, a)


@dataclass
class GradedSubspace:
    """Reduced echelon basis of one weight slice of the quotient target."""

    weight: int
    basis: list[SymMonomial]
    rref: SparseRref
    col_of: dict[SymMonomial, int] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.col_of:
            self.col_of = {rep: i for i, rep in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return self.rref.rank

    @property
    def ambient_dim(self) -> int:
        return len(self.basis)

    def coords(self, vec: SymVector) -> dict[int, object]:
        return {self.col_of[rep]: c for rep, c in vec.items()}

    def member(self, vec: SymVector) -> bool:
        return self.rref.contains(self.coords(vec))


@dataclass
class ProbeResult:
    """Span growth of the quotient images of x_(-n)y over increasing n."""

    voa: str
    x: str
    y: str
    cutoff: int
    window: int
    dims: list[tuple[int, int]]
    stabilized_at: Optional[int]
    verdict: str  # "stabilized-by-cutoff" | "still-growing"
    witnesses: list[int]

    def to_payload(self) -> dict:
        return {
            "voa": self.voa,
            "x": self.x,
            "y": self.y,
            "cutoff": self.cutoff,
            "window": self.window,
            "dims": [list(t) for t in self.dims],
            "stabilized_at": self.stabilized_at,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
        }


class Orbifold:
    """S2-fixed tensor square of a concrete engine, with quotient probes."""

    def __init__(self, spec: VoaSpec, slice_store=None):
        self.spec = spec
        self.base = get_engine(spec)
        self._slices: dict[int, GradedSubspace] = {}
        self._base_basis: dict[int, list[Monomial]] = {}
        self._store = slice_store  # optional on-disk cache, see cache.py

    # -- bases ----------------------------------------------------------------

    def base_basis(self, w: int) -> list[Monomial]:
        """Canonical monomial basis of the base engine at weight w."""
        cached = self._base_basis.get(w)
        if cached is not None:
            return cached
        if isinstance(self.base, HeisenbergEngine):
            monos = sorted(self._colored_partitions(w, self.base.rank))
        else:
            monos = sorted(self._pbw_partitions(w))
        self._base_basis[w] = monos
        return monos

    @staticmethod
    def _colored_partitions(w: int, rank: int) -> list[Monomial]:
        """All multisets of (depth, generator) parts with total depth w."""
        out: list[Monomial] = []

        def rec(remaining: int, max_part: tuple, acc: list):
            if remaining == 0:
                out.append(tuple(sorted(acc)))
                return
            for d in range(1, remaining + 1):
                for g in range(rank):
                    part = (d, g)
                    if part <= max_part:
                        acc.append(part)
                        rec(remaining - d, part, acc)
                        acc.pop()

        rec(w, (w + 1, 0), [])
        return out

    @staticmethod
    def _pbw_partitions(w: int) -> list[Monomial]:
        out: list[Monomial] = []

        def rec(remaining: int, max_part: int, acc: list):
            if remaining == 0:
                out.append(tuple(acc))
                return
            for d in range(min(remaining, max_part), 1, -1):
                acc.append(d)
                rec(remaining - d, d, acc)
                acc.pop()

        rec(w, w, [])
        return out

    def sym_basis(self, w: int) -> list[SymMonomial]:
        """Canonical symmetrized monomial basis at weight w."""
        reps: list[SymMonomial] = []
        for a in range(0, w // 2 + 1):
            left = self.base_basis(a)
            right = self.base_basis(w - a)
            if a < w - a:
                for A in left:
                    for B in right:
                        reps.append(canon_pair(A, B))
            else:
                for i, A in enumerate(left):
                    for B in left[i:]:
                        reps.append((A, B))
        return reps

    # -- symmetrized vector algebra ------------------------------------------

    def rep_vector(self, rep: SymMonomial) -> SymVector:
        return {rep: self.base.scalar(1)}

    def expand(self, vec: SymVector) -> dict:
        """Plain tensor expansion honoring the multiplicity convention."""
        out: dict = {}
        for (a, b), c in vec.items():
            out[(a, b)] = out.get((a, b), 0) + c
            if a != b:
                out[(b, a)] = out.get((b, a), 0) + c
        return {k: v for k, v in out.items() if v}

    def symmetrize(self, plain: dict) -> SymVector:
        out: SymVector = {}
        for (a, b), c in plain.items():
            if a > b:
                continue
            if a != b and plain.get((b, a)) != c:
                raise ValueError("vector is not S2-symmetric")
            if c:
                out[(a, b)] = c
        return out

    def weight_of(self, rep: SymMonomial) -> int:
        return self.base.monomial_weight(rep[0]) + self.base.monomial_weight(rep[1])

    def weight(self, vec: SymVector) -> int:
        ws = {self.weight_of(r) for r in vec}
        if len(ws) != 1:
            raise ValueError(f"vector is not homogeneous: weights {sorted(ws)}")
        return ws.pop()

    def eta(self, v: Vector) -> SymVector:
        """a |-> a (x) vac + vac (x) a, on the canonical representatives."""
        out: SymVector = {}
        for mono, c in v.items():
            if mono == VACUUM:
                rep = (VACUUM, VACUUM)
                s = out.get(rep, 0) + 2 * c
            else:
                rep = (VACUUM, mono)
                s = out.get(rep, 0) + c
            if s:
                out[rep] = s
            else:
                out.pop(rep, None)
        return out

    def phi2(self, a: Vector, b: Vector) -> SymVector:
        """(a, b) |-> a (x) b + b (x) a."""
        plain: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                c = ca * cb
                plain[(ma, mb)] = plain.get((ma, mb), 0) + c
                plain[(mb, ma)] = plain.get((mb, ma), 0) + c
        return self.symmetrize({k: v for k, v in plain.items() if v})

    def tensor_product_mono(self, A: tuple, n: int, B: tuple) -> dict:
        """(a1 (x) a2)_(n) (b1 (x) b2) as a plain tensor vector."""
        a1, a2 = A
        b1, b2 = B
        eng = self.base
        w1 = eng.monomial_weight(a1) + eng.monomial_weight(b1)
        w2 = eng.monomial_weight(a2) + eng.monomial_weight(b2)
        out: dict = {}
        for i in range(n - w2, w1):
            left = eng.nth_product_mono(a1, i, b1)
            if not left:
                continue
            right = eng.nth_product_mono(a2, n - 1 - i, b2)
            if not right:
                continue
            for m1, c1 in left.items():
                for m2, c2 in right.items():
                    key = (m1, m2)
                    s = out.get(key, 0) + c1 * c2
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return out

    def sym_nth_product(self, u: SymVector, v: SymVector, n: int) -> SymVector:
        pu = self.expand(u)
        pv = self.expand(v)
        plain: dict = {}
        for A, ca in pu.items():
            for B, cb in pv.items():
                prod = self.tensor_product_mono(A, n, B)
                if prod:
                    vec_iadd(plain, prod, ca * cb)
        return self.symmetrize(plain)

    def translate(self, vec: SymVector) -> SymVector:
        """The weight-raising translation operator on the tensor square."""
        plain: dict = {}
        for (a, b), c in self.expand(vec).items():
            for m1, c1 in self._translate_mono(a).items():
                key = (m1, b)
                plain[key] = plain.get(key, 0) + c * c1
            for m2, c2 in self._translate_mono(b).items():
                key = (a, m2)
                plain[key] = plain.get(key, 0) + c * c2
        return self.symmetrize({k: v for k, v in plain.items() if v})

    def _translate_mono(self, mono: Monomial) -> Vector:
        eng = self.base
        if isinstance(eng, HeisenbergEngine):
            out: Vector = {}
            for idx, (d, g) in enumerate(mono):
                lst = list(mono)
                lst[idx] = (d + 1, g)
                key = tuple(sorted(lst))
                s = out.get(key, 0) + d
                if s:
                    out[key] = mpq(s)
                else:
                    out.pop(key, None)
            return out
        return eng._apply_L(-1, mono)

    # -- degree-two quotient slices --------------------------------------------

    def _column_order(self, reps: list[SymMonomial]) -> list[SymMonomial]:
        # most parts first: aligns pivots with the contraction-free top term
        return sorted(reps, key=lambda r: (-(len(r[0]) + len(r[1])), r))

    def c2_generators(self, w: int):
        """Spanning vectors of the weight-w slice of the quotient kernel."""
        if w < 1:
            return
        for rep in self.sym_basis(w - 1):
            vec = self.translate(self.rep_vector(rep))
            if vec:
                yield vec
        for wu in range(1, (w - 1) // 2 + 1):
            wv = w - 1 - wu
            ubasis = self.sym_basis(wu)
            vbasis = self.sym_basis(wv) if wv != wu else ubasis
            for iu, urep in enumerate(ubasis):
                uvec = self.rep_vector(urep)
                vstart = iu if wv == wu else 0
                for vrep in vbasis[vstart:]:
                    vec = self.sym_nth_product(uvec, self.rep_vector(vrep), -2)
                    if vec:
                        yield vec

    def c2_slice(self, w: int) -> GradedSubspace:
        """Exact reduced echelon basis of the double-lowering span at weight w."""
        if not isinstance(self.base, HeisenbergEngine):
            raise NotImplementedError(
                "quotient slices need rational scalars; use a free boson engine")
        cached = self._slices.get(w)
        if cached is not None:
            return cached
        basis = self._column_order(self.sym_basis(w))
        slice_ = None
        if self._store is not None:
            slice_ = self._store.load(self.spec.key(), w, basis)
        if slice_ is None:
            slice_ = GradedSubspace(weight=w, basis=basis, rref=SparseRref())
            col_of = slice_.col_of
            for vec in self.c2_generators(w):
                slice_.rref.insert({col_of[rep]: c for rep, c in vec.items()})
            if self._store is not None:
                self._store.save(self.spec.key(), w, basis, slice_.rref)
        self._slices[w] = slice_
        return slice_

    def in_c2(self, vec: SymVector) -> bool:
        """Exact membership of a homogeneous vector in the quotient kernel."""
        if not vec:
            return True
        w = self.weight(vec)
        return self.c2_slice(w).member(vec)

    # -- probes and identity checks ---------------------------------------------

    def d_probe(self, x: Vector, y: Vector, cutoff: int, window: int = 4,
                voa_label: str = "", x_label: str = "x", y_label: str = "y") -> ProbeResult:
        """Growth of the span of quotient images of x_(-n)y up to the weight cutoff.

        The probed vectors are homogeneous of pairwise distinct weights, so
        the span dimension is the count of nonzero quotient images; the
        verdict reports observed stabilization (a run of `window` zero
        increments at the tail), never a certificate.
        """
        eng = self.base
        wx = eng.weight(x)
        wy = eng.weight(y)
        n_max = cutoff - wx - wy + 1
        dims: list[tuple[int, int]] = []
        witnesses: list[int] = []
        count = 0
        tail_zeros = 0
        stabilized_at: Optional[int] = None
        for n in range(1, n_max + 1):
            v = eng.nth_product(x, y, -n)
            e = self.eta(v)
            grew = bool(e) and not self.in_c2(e)
            if grew:
                count += 1
                witnesses.append(n)
                tail_zeros = 0
                stabilized_at = wx + wy + n - 1
            else:
                tail_zeros += 1
            dims.append((n, count))
        verdict = "stabilized-by-cutoff" if n_max >= 1 and tail_zeros >= window \
            else "still-growing"
        if stabilized_at is None and verdict == "stabilized-by-cutoff":
            stabilized_at = wx + wy  # nothing ever grew
        return ProbeResult(
            voa=voa_label or self.spec.key(),
            x=x_label, y=y_label, cutoff=cutoff, window=window,
            dims=dims,
            stabilized_at=stabilized_at if verdict == "stabilized-by-cutoff" else None,
            verdict=verdict,
            witnesses=witnesses,
        )

    def check_shift_transfer(self, x: Vector, y: Vector, z: Vector, n: int) -> bool:
        """phi2(x_(-n)y, z) + phi2(y, x_(-n)z) lies in the quotient kernel, n >= 2."""
        if n < 2:
            raise ValueError("needs n >= 2")
        eng = self.base
        lhs = self.phi2(eng.nth_product(x, y, -n), z)
        rhs = self.phi2(y, eng.nth_product(x, z, -n))
        total: SymVector = dict(lhs)
        vec_iadd(total, rhs)
        return self.in_c2(total)

    def check_double_vacuum_reduce(self, x: Vector, y: Vector, m: int, n: int) -> bool:
        """eta(x_(-m) y_(-n) vac) collapses to the single-mode image modulo
        the kernel, with the binomial transfer coefficient."""
        from .fock import binom_int

        eng = self.base
        v = eng.nth_product(x, eng.nth_product(y, eng.vacuum(), -n), -m)
        lhs = self.eta(v)
        coeff = binom_int(m + n - 2, n - 1) * (1 if (n - 1) % 2 == 0 else -1)
        rhs = self.eta(eng.nth_product(x, y, -m - n + 1))
        total: SymVector = dict(lhs)
        vec_iadd(total, rhs, -eng.scalar(coeff))
        return self.in_c2(total)

    def check_symmetrizer_recursion(self, a: Vector, b: Vector) -> bool:
        """eta(a)_(-1) eta(b) == eta(a_(-1)b) + phi2(b, a), exactly."""
        eng = self.base
        lhs = self.sym_nth_product(self.eta(a), self.eta(b), -1)
        rhs: SymVector = dict(self.eta(eng.nth_product(a, b, -1)))
        vec_iadd(rhs, self.phi2(b, a))
        return not vec_iadd(dict(lhs), rhs, -1)

    def check_eta_product_closure(self, a: Vector, b: Vector, i: int) -> bool:
        """eta(a)_(i) eta(b) == eta(a_(i)b) for i >= 0, exactly."""
        if i < 0:
            raise ValueError("needs i >= 0")
        lhs = self.sym_nth_product(self.eta(a), self.eta(b), i)
        rhs = self.eta(self.base.nth_product(a, b, i))
        return not vec_iadd(dict(lhs), rhs, -1)

    def check_weight_one_product_identity(self, m: int, n: int, p: int) -> bool:
        """The squared-symmetrizer relation for the weight-one generator:
        eta(x_(-m)x_(-n)vac)_(-1) eta(x_(-p)x) minus twice the quadruple-mode
        image minus the closed-form scalar times the deep image lies in the
        quotient kernel."""
        from .coeffs import h_weight1

        if m < 2 or n < 2 or p < 1:
            raise ValueError("needs m, n >= 2 and p >= 1")
        eng = self.base
        if not (isinstance(eng, HeisenbergEngine) and eng.rank == 1):
            raise ValueError("defined for the rank-one free boson")
        x = eng.generator(0)
        xmn = eng.mode_monomial([(m, 0), (n, 0)])
        xpx = eng.mode_monomial([(p, 0), (1, 0)])
        lhs = self.sym_nth_product(self.eta(xmn), self.eta(xpx), -1)
        quad = self.eta(eng.mode_monomial([(m, 0), (n, 0), (p, 0), (1, 0)]))
        deep = self.eta(eng.mode_monomial([(m + n + p, 0), (1, 0)]))
        h = eng.scalar(h_weight1(m, n, p))
        total: SymVector = dict(lhs)
        vec_iadd(total, quad, -2)
        vec_iadd(total, deep, -h)
        return self.in_c2(total)


def c2_basis(spec: VoaSpec, w: int, slice_store=None) -> GradedSubspace:
    """Spec-level entry point for one quotient-kernel slice."""
    return Orbifold(spec, slice_store=slice_store).c2_slice(w)
