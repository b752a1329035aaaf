"""Reference polynomial tables for the determinant reproductions.

The two degree-16 polynomials are transcribed in their factored display
form and expanded by the exact kernel, so the expansion itself runs
through tested code.  Both have leading term (16/952560) k z^16.  The
small quartic with parity-split coefficients drives the weight-one
determinant check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact.parity import ParityExpr, sign_pow, sym
from .exact.poly import Poly, RatFunc

_SCALE = Fraction(1, 952560)

# Inner coefficient rows for the even-branch polynomial: (const, c_V, k, k^2)
# by ascending power of z.
_EVEN_CORE = [
    (56899584, -4403385, -14227920, -11282544),
    (145224576, -7909965, -64633644, -13107780),
    (126839664, -881615, -105966078, 11271078),
    (62454924, 6219675, -80059900, 18944100),
    (30624426, 5031670, -27016034, 3375918),
    (16640946, 1681120, -855556, -4950540),
    (6568506, 255010, 2371530, -3240846),
    (1578654, 9310, 837744, -876960),
    (219996, -1680, 139434, -123354),
    (16380, -140, 12940, -8820),
    (504, 0, 668, -252),
    (0, 0, 16, 0),
]

# Same layout for the odd-branch polynomial.  Every row is stored in the
# uniform "constant, c_V, k, k^2" orientation; the z^4 row in particular is
# kept in that orientation (its source display pulls a sign out front
# without flipping the inner terms, which two independent exact
# recomputations of the determinant show is a display slip).
_ODD_CORE = [
    (-5511240, 0, -67155480, 49737240),
    (-1306368, -1443330, -155914956, 114823548),
    (6621426, -2854845, -149973732, 111484800),
    (3700620, -2279410, -78378012, 60419016),
    (-1595916, -916090, -24431554, 20694870),
    (-2092860, -182980, -4652226, 4871790),
    (-800730, -12670, -512034, 830970),
    (-149688, 980, -21018, 100674),
    (-13860, 140, 2304, 7560),
    (-504, 0, 372, 252),
    (0, 0, 16, 0),
]


def _core_poly(rows, z: Poly, k: Poly, cv: Poly) -> Poly:
    acc = Poly.constant(0)
    zp = Poly.constant(1)
    for const, c_cv, c_k, c_k2 in rows:
        row = Poly.constant(const) + c_cv * cv + c_k * k + c_k2 * k * k
        acc = acc + row * zp
        zp = zp * z
    return acc


def reference_even(var: str = "z") -> Poly:
    """Expanded reference polynomial for the even branch of the determinant."""
    z = Poly.variable(var)
    k = Poly.variable("k")
    cv = Poly.variable("c_V")
    prefactor = (z - 1) * z * z * (z + 2) * (z + 5)
    return _SCALE * prefactor * _core_poly(_EVEN_CORE, z, k, cv)


def reference_odd(var: str = "z") -> Poly:
    """Expanded reference polynomial for the odd branch of the determinant."""
    z = Poly.variable(var)
    k = Poly.variable("k")
    cv = Poly.variable("c_V")
    prefactor = (z - 1) * (z - 1) * z * (z + 1) * (z + 5) * (z + 7)
    return _SCALE * prefactor * _core_poly(_ODD_CORE, z, k, cv)


def reference_small(var: str = "p") -> ParityExpr:
    """The quartic with parity-split coefficients for the weight-one check."""
    p = sym(var)
    x = RatFunc.variable(var)
    s = sign_pow(p + 1)  # (-1)**(p-1) as a two-branch sign
    return (630 * (1 + s) + (308 + 411 * s) * x + 7 * (16 + 9 * s) * x * x
            + 28 * x ** 3 + 2 * x ** 4)


@dataclass(frozen=True)
class ReferencePolynomials:
    """The transcribed reference data, expanded once."""

    f0: Poly
    f1: Poly
    f_small: ParityExpr

    @staticmethod
    def build(var: str = "z", small_var: str = "p") -> "ReferencePolynomials":
        return ReferencePolynomials(
            f0=reference_even(var),
            f1=reference_odd(var),
            f_small=reference_small(small_var),
        )
