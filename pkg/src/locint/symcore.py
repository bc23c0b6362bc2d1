"""Exact arithmetic: rationals, linear forms in (s1, s2, s), truncated graded polynomials.

Rationals are the standard library's :class:`fractions.Fraction`, which already
keeps numerator and denominator reduced with a positive denominator.

Besides the graded polynomials there is a small truncated power series type in a
single auxiliary variable ``eps``.  The localization engine scales the surface
torus parameters as ``(s1, s2) = eps * (x, y)`` with ``s = 1`` and reads off the
``eps**0`` coefficient; see :mod:`locint.hilbfix`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Rational = Fraction

Exponent = Tuple[int, int, int]


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


def format_rational(q) -> str:
    """Serialise as ``"p/q"``, always with an explicit denominator."""
    q = as_rational(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class LinearForm:
    """``a*s1 + b*s2 + c*s`` with integer coefficients."""

    a: int = 0
    b: int = 0
    c: int = 0

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self) -> "LinearForm":
        return LinearForm(-self.a, -self.b, -self.c)

    def __mul__(self, k: int) -> "LinearForm":
        return LinearForm(k * self.a, k * self.b, k * self.c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def coefficients(self) -> Exponent:
        return (self.a, self.b, self.c)

    def evaluate(self, point: Sequence) -> Fraction:
        x, y, z = point
        return self.a * as_rational(x) + self.b * as_rational(y) + self.c * as_rational(z)

    def __str__(self) -> str:
        parts = []
        for coeff, name in ((self.a, "s1"), (self.b, "s2"), (self.c, "s")):
            if coeff == 0:
                continue
            mag = abs(coeff)
            body = name if mag == 1 else f"{mag}{name}"
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


ZERO_FORM = LinearForm()
S1 = LinearForm(1, 0, 0)
S2 = LinearForm(0, 1, 0)
S = LinearForm(0, 0, 1)


class GradedPoly:
    """Sparse polynomial in s1, s2, s with rational coefficients, truncated by total degree."""

    __slots__ = ("terms", "cutoff")

    def __init__(self, terms: Mapping[Exponent, object] | None = None, cutoff: int = 0):
        if cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        clean: Dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            if sum(exp) > cutoff:
                continue
            q = as_rational(coeff)
            if q:
                clean[tuple(exp)] = clean.get(tuple(exp), Fraction(0)) + q
        self.terms: Dict[Exponent, Fraction] = {e: c for e, c in clean.items() if c}
        self.cutoff = cutoff

    @classmethod
    def constant(cls, value, cutoff: int = 0) -> "GradedPoly":
        return cls({(0, 0, 0): value}, cutoff)

    @classmethod
    def from_form(cls, form: LinearForm, cutoff: int = 1, constant=0) -> "GradedPoly":
        terms = {(0, 0, 0): constant, (1, 0, 0): form.a, (0, 1, 0): form.b, (0, 0, 1): form.c}
        return cls(terms, cutoff)

    def constant_term(self) -> Fraction:
        return self.terms.get((0, 0, 0), Fraction(0))

    def degree_part(self, k: int) -> "GradedPoly":
        return GradedPoly({e: c for e, c in self.terms.items() if sum(e) == k}, max(k, 0))

    def truncate(self, cutoff: int) -> "GradedPoly":
        return GradedPoly(self.terms, cutoff)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        cut = min(self.cutoff, other.cutoff)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return GradedPoly(out, cut)

    def __neg__(self) -> "GradedPoly":
        return GradedPoly({e: -c for e, c in self.terms.items()}, self.cutoff)

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        return self + (-other)

    def __repr__(self) -> str:
        if not self.terms:
            return f"GradedPoly(0, cutoff={self.cutoff})"
        pieces = []
        for (e1, e2, e3), c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            mono = "*".join(
                name if p == 1 else f"{name}^{p}"
                for name, p in (("s1", e1), ("s2", e2), ("s", e3))
                if p
            )
            pieces.append(f"{c}" + (f"*{mono}" if mono else ""))
        return f"GradedPoly({' + '.join(pieces)}, cutoff={self.cutoff})"


def poly_mul(a: GradedPoly, b: GradedPoly, cutoff: int) -> GradedPoly:
    out: Dict[Exponent, Fraction] = {}
    for (a1, a2, a3), ca in a.terms.items():
        da = a1 + a2 + a3
        if da > cutoff:
            continue
        for (b1, b2, b3), cb in b.terms.items():
            if da + b1 + b2 + b3 > cutoff:
                continue
            key = (a1 + b1, a2 + b2, a3 + b3)
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return GradedPoly(out, cutoff)


def poly_inverse(a: GradedPoly, cutoff: int) -> GradedPoly:
    """Inverse power series up to total degree ``cutoff``.

    Writing a = c0 (1 + r) with r of positive order, the inverse is
    c0^{-1} * sum_{i <= cutoff} (-r)^i.
    """
    c0 = a.constant_term()
    if c0 == 0:
        raise ZeroDivisionError("non-invertible series")
    r = GradedPoly({e: -c / c0 for e, c in a.terms.items() if e != (0, 0, 0)}, cutoff)
    total = GradedPoly.constant(1, cutoff)
    power = GradedPoly.constant(1, cutoff)
    for _ in range(cutoff):
        power = poly_mul(power, r, cutoff)
        if power.is_zero():
            break
        total = total + power
    return GradedPoly({e: c / c0 for e, c in total.terms.items()}, cutoff)


def poly_eval(a: GradedPoly, assignment: Sequence) -> Fraction:
    x, y, z = (as_rational(v) for v in assignment)
    total = Fraction(0)
    for (e1, e2, e3), c in a.terms.items():
        total += c * x**e1 * y**e2 * z**e3
    return total


def poly_eval_scaled(a: GradedPoly, x, y) -> Dict[int, Fraction]:
    """Substitute s1 = eps*x, s2 = eps*y, s = 1 and group by the power of eps."""
    x, y = as_rational(x), as_rational(y)
    out: Dict[int, Fraction] = {}
    for (e1, e2, _e3), c in a.terms.items():
        k = e1 + e2
        out[k] = out.get(k, Fraction(0)) + c * x**e1 * y**e2
    return {k: v for k, v in out.items() if v}


class EpsSeries:
    """Truncated Laurent series ``sum_i coeffs[i] * eps**(val + i)``.

    Coefficients are known for exponents strictly below ``val + len(coeffs)``.
    """

    __slots__ = ("val", "coeffs")

    def __init__(self, val: int, coeffs: Iterable):
        self.val = val
        self.coeffs = [as_rational(c) for c in coeffs]

    @property
    def order(self) -> int:
        return self.val + len(self.coeffs)

    @classmethod
    def from_poly(cls, poly: Mapping[int, Fraction], order: int) -> "EpsSeries":
        return cls(0, [poly.get(i, Fraction(0)) for i in range(max(order, 0))])

    def coefficient(self, k: int) -> Fraction:
        if k >= self.order:
            raise ValueError(f"coefficient of eps^{k} beyond truncation order {self.order}")
        if k < self.val:
            return Fraction(0)
        return self.coeffs[k - self.val]

    def __mul__(self, other: "EpsSeries") -> "EpsSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            acc = Fraction(0)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc += a[i] * b[k - i]
            out.append(acc)
        return EpsSeries(self.val + other.val, out)

    def scale(self, q) -> "EpsSeries":
        q = as_rational(q)
        return EpsSeries(self.val, [q * c for c in self.coeffs])


def linear_unit_power(c, beta, power: int, length: int) -> EpsSeries:
    """Series of ``(c + beta*eps)**power`` to ``length`` terms, for c != 0."""
    c, beta = as_rational(c), as_rational(beta)
    if c == 0:
        raise ZeroDivisionError("linear_unit_power needs a nonzero constant term")
    r = beta / c
    out = []
    coeff = Fraction(1)
    for i in range(length):
        out.append(coeff)
        coeff = coeff * (power - i) / (i + 1) * r
    lead = c**power
    return EpsSeries(0, [lead * v for v in out])
