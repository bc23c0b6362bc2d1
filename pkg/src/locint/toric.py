"""Fixed-point models of P^2, P^1 x P^1 and Sym^m P^1 = P^m, with equivariant line bundles.

Weight convention
-----------------
Every model is a product of projective spaces.  The torus acts on points by
scaling homogeneous coordinates: on P^2, ``[x0 : x1 : x2] -> [x0 : t1 x1 : t2 x2]``,
so the coordinate weights are ``(0, s1, s2)``; on each P^1 factor of P^1 x P^1
they are ``(0, s1)`` and ``(0, s2)``; on P^m they are ``(0, s1, 2 s1, ..., m s1)``.

At the fixed point where ``x_i`` does not vanish the tangent weights (the
"chart weights") are ``u_j - u_i`` for ``j != i``.  With this action a section
monomial ``x^alpha`` of O(d) spans a line of weight ``-sum alpha_j u_j`` and the
fiber of O(d) at that fixed point has weight ``-d u_i``.  Only with this sign
pairing do fiber weights, tangent weights and section characters satisfy the
holomorphic Lefschetz formula
``chi(L) = sum_p e^{fiber_p} / prod_w (1 - e^{-w})``; the tests check it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Sequence, Tuple

from .charalg import Character
from .symcore import LinearForm, S1, S2, ZERO_FORM


@dataclass(frozen=True)
class FixedPoint:
    label: str
    chart_weights: Tuple[LinearForm, ...]
    # index of the nonvanishing coordinate in each projective factor
    coords: Tuple[int, ...]


@dataclass(frozen=True)
class ToricSurfaceModel:
    name: str
    fixed_points: Tuple[FixedPoint, ...]
    # coordinate weights of each projective factor
    factors: Tuple[Tuple[LinearForm, ...], ...] = field(repr=False)

    @property
    def euler_number(self) -> int:
        return len(self.fixed_points)

    @property
    def dimension(self) -> int:
        return sum(len(f) - 1 for f in self.factors)

    def index(self, label: str) -> int:
        for i, p in enumerate(self.fixed_points):
            if p.label == label:
                return i
        raise KeyError(label)


def _product_model(name: str, factors: Sequence[Sequence[LinearForm]]) -> ToricSurfaceModel:
    factors = tuple(tuple(f) for f in factors)
    points = []
    for coords in itertools.product(*(range(len(f)) for f in factors)):
        tangent = []
        for f, i in zip(factors, coords):
            tangent.extend(f[j] - f[i] for j in range(len(f)) if j != i)
        label = "".join(str(i) for i in coords)
        points.append(FixedPoint(label, tuple(tangent), tuple(coords)))
    return ToricSurfaceModel(name, tuple(points), factors)


_SYM = re.compile(r"^sym_p1\((\d+)\)$")


def make_surface(name) -> ToricSurfaceModel:
    """``"p2"``, ``"p1xp1"``, or ``"sym_p1(m)"`` (also ``("sym_p1", m)``)."""
    if isinstance(name, tuple) and len(name) == 2 and name[0] == "sym_p1":
        m = int(name[1])
        if m < 0:
            raise ValueError("sym_p1 needs m >= 0")
        return _product_model(f"sym_p1({m})", [[S1 * j for j in range(m + 1)]])
    if name == "p2":
        return _product_model("p2", [[ZERO_FORM, S1, S2]])
    if name == "p1xp1":
        return _product_model("p1xp1", [[ZERO_FORM, S1], [ZERO_FORM, S2]])
    match = _SYM.match(str(name))
    if match:
        return make_surface(("sym_p1", int(match.group(1))))
    raise ValueError(f"unknown surface {name!r}")


@dataclass(frozen=True)
class EquivLineBundle:
    degree_data: Tuple[int, ...]
    fiber_weights: Tuple[LinearForm, ...]
    linearization_offset: LinearForm = ZERO_FORM

    def fiber(self, point_index: int) -> LinearForm:
        return self.fiber_weights[point_index]


def _degrees(S: ToricSurfaceModel, degrees) -> Tuple[int, ...]:
    if isinstance(degrees, int):
        degrees = (degrees,)
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != len(S.factors):
        raise ValueError(f"{S.name} needs {len(S.factors)} degree(s), got {degrees}")
    return degrees


def line_bundle(S: ToricSurfaceModel, degrees, offset: LinearForm = ZERO_FORM) -> EquivLineBundle:
    degs = _degrees(S, degrees)
    fibers = []
    for p in S.fixed_points:
        w = offset
        for f, i, d in zip(S.factors, p.coords, degs):
            w = w - f[i] * d
        fibers.append(w)
    return EquivLineBundle(degs, tuple(fibers), offset)


def tensor(S: ToricSurfaceModel, *bundles: EquivLineBundle) -> EquivLineBundle:
    degs = tuple(sum(col) for col in zip(*(b.degree_data for b in bundles)))
    off = ZERO_FORM
    for b in bundles:
        off = off + b.linearization_offset
    return line_bundle(S, degs, off)


def dual_bundle(S: ToricSurfaceModel, L: EquivLineBundle) -> EquivLineBundle:
    return line_bundle(S, tuple(-d for d in L.degree_data), -L.linearization_offset)


def canonical_bundle(S: ToricSurfaceModel) -> EquivLineBundle:
    """K_S with its natural linearization (fiber = minus the sum of tangent weights)."""
    off = ZERO_FORM
    for f in S.factors:
        for u in f:
            off = off - u
    return line_bundle(S, tuple(-len(f) for f in S.factors), off)


def _factor_sections(coords: Sequence[LinearForm], d: int) -> Character:
    weights = {}
    for alpha in _compositions(d, len(coords)):
        w = ZERO_FORM
        for a, u in zip(alpha, coords):
            w = w - u * a
        weights[w] = weights.get(w, 0) + 1
    return Character(weights)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def section_monomials(S: ToricSurfaceModel, L: EquivLineBundle):
    """Yield ``(weight, local exponents per fixed point)`` for each monomial section of L.

    Local exponents are listed in the order of the chart weights of that point.
    """
    if any(d < 0 for d in L.degree_data):
        return
    per_factor = [list(_compositions(d, len(f))) for f, d in zip(S.factors, L.degree_data)]
    for choice in itertools.product(*per_factor):
        w = L.linearization_offset
        for f, alpha in zip(S.factors, choice):
            for a, u in zip(alpha, f):
                w = w - u * a
        local = []
        for p in S.fixed_points:
            exps = []
            for alpha, i in zip(choice, p.coords):
                exps.extend(alpha[j] for j in range(len(alpha)) if j != i)
            local.append(tuple(exps))
        yield w, tuple(local)


def h0_character(S: ToricSurfaceModel, L: EquivLineBundle) -> Character:
    if any(d < 0 for d in L.degree_data):
        raise ValueError("higher cohomology present; use chi_character")
    out = Character({L.linearization_offset: 1})
    for f, d in zip(S.factors, L.degree_data):
        out = out * _factor_sections(f, d)
    return out


def _factor_chi(coords: Sequence[LinearForm], d: int) -> Character:
    r = len(coords) - 1
    if d >= 0:
        return _factor_sections(coords, d)
    if d >= -r:
        return Character()
    # Serre duality: H^r(O(d)) = H^0(K (x) O(-d))^dual, K = O(-r-1) twisted by -(sum of u_j)
    twist = ZERO_FORM
    for u in coords:
        twist = twist - u
    top = _factor_sections(coords, -d - r - 1).shift(twist)
    dual = Character({-w: m for w, m in top.items()})
    return dual if r % 2 == 0 else -dual


def chi_character(S: ToricSurfaceModel, L: EquivLineBundle) -> Character:
    """Equivariant Euler characteristic of L, factor by factor (Kunneth)."""
    out = Character({L.linearization_offset: 1})
    for f, d in zip(S.factors, L.degree_data):
        out = out * _factor_chi(f, d)
    return out


__all__ = [
    "EquivLineBundle",
    "FixedPoint",
    "ToricSurfaceModel",
    "canonical_bundle",
    "chi_character",
    "dual_bundle",
    "h0_character",
    "line_bundle",
    "make_surface",
    "section_monomials",
    "tensor",
]
