"""Theta-power and symmetric-product integrals, and the rank-two identity on a plane conic.

Support on a conic (d' = 2)
---------------------------
D' is a smooth conic, so D' = P^1 and O_D'(1) = O_P1(2).  The fixed components
are C_k = Sym^m(P^1) = P^m with m = 2k + 5 for k in {-2, -1}.  On
P^1 x Sym^m(P^1) put G1 = O(k) and G0 = G1 (x) O_D'(d') (x) O(-W), where W is the
universal divisor.  The summand for C_k is

    s^{d'^2} c1(T_{2,k})^g e(p_*(G1^* G0) t) / ( e(p_*(G1^* G0(d')) t^2) e(R^1 p_*(G0^* G1) t^-1) )

integrated over C_k, with T_{2,k} = det Rp_*((G0 + G1 t^-1) (x) u) and
u = -d O + d' O_pt t.  Two features differ from a literal transcription.
The R^1 term is a moving part of the tangent space and so sits in the
denominator.  The point class enters with multiplicity d' because u must be
orthogonal to the class (2, 2g'-1) of the sheaves (here rank 2, degree -1 on
the conic), which is what makes T_{2,k} a well defined determinant.  With these
the two summands are 7/32 and 17/32, adding up to 3/4.

Universal divisor weights
-------------------------
The torus acts on P^1 by z -> t1 z, so the coordinate function z has weight
-s1.  A line bundle O(alpha [0] + beta [inf]) has sections z^j for
-alpha <= j <= beta and first cohomology z^j for beta < j < -alpha.  Its fiber at
0 is spanned by z^-alpha (weight alpha s1) and at infinity by z^beta (weight
-beta s1).  At the fixed divisor W = alpha [0] + beta [inf] of Sym^m, the bundles
p_*(M (x) O(-W)) are computed from these rules with the canonical equivariant
structure of the ideal sheaf of W.  The tangent space is H^0(O_W(W)).
Its weights {alpha s1, ..., s1, -s1, ..., -beta s1} are those of the fixed point
with index a = beta in the P^m model of :mod:`locint.toric`.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

from .charalg import Character, LocalizationError, char_rank
from .hilbfix import FixedPointTerm, localize_points
from .symcore import LinearForm, S as S_FORM, S1, ZERO_FORM
from .toric import make_surface


@dataclass(frozen=True)
class AbelContext:
    g: int
    m: int

    def __post_init__(self):
        if self.g < 0 or self.m < 0:
            raise ValueError("genus and degree must be nonnegative")


def theta_power(g: int) -> Fraction:
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return Fraction(math.factorial(g))


def plane_genus(d: int) -> int:
    return (d - 1) * (d - 2) // 2


def ttd_value(d: int) -> Fraction:
    if d < 1:
        raise ValueError("degree must be positive")
    g = plane_genus(d)
    return Fraction(d) ** g * theta_power(g)


def macdonald_integral(g: int, m: int, i: int) -> Fraction:
    """Integral of eta^(m-i) theta^i over Sym^m of a genus g curve."""
    if not (0 <= i <= min(g, m)):
        raise ValueError(f"i = {i} outside [0, min(g, m)]")
    return Fraction(math.factorial(g), math.factorial(g - i))


# ---------------------------------------------------------------------------
# equivariant line bundles on P^1 given by torus-invariant divisors


@dataclass(frozen=True)
class P1Divisor:
    """O(alpha [0] + beta [inf]) with its canonical linearization."""

    alpha: int
    beta: int

    def __add__(self, other: "P1Divisor") -> "P1Divisor":
        return P1Divisor(self.alpha + other.alpha, self.beta + other.beta)

    def __neg__(self) -> "P1Divisor":
        return P1Divisor(-self.alpha, -self.beta)

    @property
    def degree(self) -> int:
        return self.alpha + self.beta

    def h0(self) -> Character:
        return Character([S1 * (-j) for j in range(-self.alpha, self.beta + 1)])

    def h1(self) -> Character:
        return Character([S1 * (-j) for j in range(self.beta + 1, -self.alpha)])

    def chi(self) -> Character:
        return self.h0() - self.h1()

    def fiber_at_zero(self) -> LinearForm:
        return S1 * self.alpha

    def fiber_at_infinity(self) -> LinearForm:
        return S1 * (-self.beta)


def O_inf(e: int) -> P1Divisor:
    return P1Divisor(0, e)


def weight_sum(c: Character) -> LinearForm:
    total = ZERO_FORM
    for w, m in c.items():
        total = total + w * m
    return total


def _t(k: int) -> LinearForm:
    return S_FORM * k


def sym_tangent(alpha: int, beta: int) -> Character:
    W = P1Divisor(alpha, beta)
    return W.h0() - O_inf(0).h0()


def _check_ranges(dprime: int, k: int) -> int:
    if dprime != 2:
        raise NotImplementedError("general genus not implemented")
    lo = -(-(1 - 3 * dprime) // 2)  # ceil
    hi = -1  # g' - 1 with g' = 0
    if not (lo <= k <= hi):
        raise ValueError(f"k = {k} outside [{lo}, {hi}]")
    return 2 * k + 3 * dprime - 1


@dataclass(frozen=True)
class Rk2Data:
    """Characters entering one fixed point of C_k."""

    tangent: Character
    sections: Character  # p_*(G1^* G0) t
    sections_twisted: Character  # p_*(G1^* G0(d')) t^2
    obstruction: Character  # R^1 p_*(G0^* G1) t^-1
    c1_det: LinearForm


def rk2_fixed_data(dprime: int, k: int, alpha: int, point_lift: int = 1) -> Rk2Data:
    m = _check_ranges(dprime, k)
    beta = m - alpha
    if not 0 <= alpha <= m:
        raise ValueError("fixed point index out of range")
    d = 2 * dprime
    curve_deg = 2 * dprime  # O_D'(d') has degree 2 d' on the conic
    W = P1Divisor(alpha, beta)
    G1 = O_inf(k)
    G0 = G1 + O_inf(curve_deg) + (-W)
    A_div = (-G1) + G0
    B_div = A_div + O_inf(curve_deg)
    R_div = (-G0) + G1
    for div, label in ((A_div, "p_*(G1^*G0)"), (B_div, "p_*(G1^*G0(d'))")):
        if div.h1():
            raise LocalizationError(f"{label} is not locally free at W = ({alpha}, {beta})")
    if R_div.h0():
        raise LocalizationError(f"R^1 p_*(G0^*G1) is not locally free at W = ({alpha}, {beta})")

    # c1 of det Rp_*(G (x) u) with u = -d O + d' O_pt t^point_lift, point = [0]
    def c1_det(div: P1Divisor, shift: int) -> LinearForm:
        chi = div.chi()
        det = weight_sum(chi) + _t(shift) * char_rank(chi)
        at_point = div.fiber_at_zero() + _t(shift + point_lift)
        return det * (-d) + at_point * dprime

    c1 = c1_det(G0, 0) + c1_det(G1, -1)
    return Rk2Data(
        tangent=sym_tangent(alpha, beta),
        sections=A_div.h0().shift(_t(1)),
        sections_twisted=B_div.h0().shift(_t(2)),
        obstruction=R_div.h1().shift(_t(-1)),
        c1_det=c1,
    )


def _rk2_term(dprime: int, k: int, point_lift: int, alpha: int) -> FixedPointTerm:
    data = rk2_fixed_data(dprime, k, alpha, point_lift)
    g = plane_genus(2 * dprime)
    c1 = Character({data.c1_det: 1}) if not data.c1_det.is_zero() else Character()
    chern = ((c1, 1),) * g if g else ()
    return FixedPointTerm(
        chern=chern,
        euler=(
            (data.sections, 1),
            (data.sections_twisted, -1),
            (data.obstruction, -1),
            (data.tangent, -1),
        ),
        s_power=dprime * dprime,
    )


def rk2_ck_term(dprime: int = 2, k: int = -1, seed: int = 0, seed_count: int = 2,
                threads: int = 1, point_lift: int = 1) -> Fraction:
    m = _check_ranges(dprime, k)
    outcome = localize_points(
        list(range(m + 1)),
        functools.partial(_rk2_term, dprime, k, point_lift),
        seed,
        seed_count,
        threads,
    )
    if outcome.degree != 0:
        raise LocalizationError(f"C_k integrand has s-degree {outcome.degree}")
    return outcome.value


def rk2_lhs(dprime: int = 2) -> Fraction:
    d = 2 * dprime
    return Fraction(1, 2 ** (3 * dprime * (dprime + 1) // 2)) * ttd_value(d)


def rk2_check(dprime: int = 2, seed: int = 0, seed_count: int = 2, threads: int = 1) -> Dict:
    if dprime != 2:
        raise NotImplementedError("general genus not implemented")
    lo = -(-(1 - 3 * dprime) // 2)
    terms = [(k, rk2_ck_term(dprime, k, seed, seed_count, threads)) for k in range(lo, 0)]
    lhs = rk2_lhs(dprime)
    rhs = sum((v for _, v in terms), Fraction(0))
    return {"lhs": lhs, "rhs": rhs, "terms": terms, "pass": lhs == rhs}


def sym_model_tangent_matches(m: int) -> bool:
    """Universal-divisor tangent weights agree with the P^m model (index a = beta)."""
    model = make_surface(("sym_p1", m))
    for alpha in range(m + 1):
        beta = m - alpha
        if Character(list(model.fixed_points[beta].chart_weights)) != sym_tangent(alpha, beta):
            return False
    return True
