import random
from fractions import Fraction

import pytest
import sympy

from locint.charalg import Character, char_rank
from locint.symcore import LinearForm
from locint.toric import (
    canonical_bundle,
    chi_character,
    h0_character,
    line_bundle,
    make_surface,
    tensor,
)

s1, s2 = LinearForm(1, 0, 0), LinearForm(0, 1, 0)
t1, t2 = sympy.symbols("t1 t2")


def mono(w: LinearForm):
    assert w.c == 0
    return t1**w.a * t2**w.b


def lefschetz(S, L):
    """sum_p e^{fiber} / prod (1 - e^{-w}) as a rational function in t1, t2."""
    total = 0
    for i, p in enumerate(S.fixed_points):
        term = mono(L.fiber(i))
        for w in p.chart_weights:
            term = term / (1 - 1 / mono(w))
        total += term
    return sympy.cancel(sympy.together(total))


def as_laurent(c: Character):
    return sum(m * mono(w) for w, m in c.items())


def test_fixed_point_counts():
    assert make_surface("p2").euler_number == 3
    assert make_surface("p1xp1").euler_number == 4
    P3 = make_surface("sym_p1(3)")
    assert P3.euler_number == 4
    assert all(len(p.chart_weights) == 3 for p in P3.fixed_points)


def test_chart_weights():
    P2 = make_surface("p2")
    assert [p.chart_weights for p in P2.fixed_points] == [(s1, s2), (-s1, s2 - s1), (-s2, s1 - s2)]
    Q = make_surface("p1xp1")
    assert {p.chart_weights for p in Q.fixed_points} == {(a * s1, b * s2) for a in (1, -1) for b in (1, -1)}


def test_sym_model_weights():
    for m in range(5):
        model = make_surface(("sym_p1", m))
        for a, p in enumerate(model.fixed_points):
            assert sorted(p.chart_weights) == sorted(s1 * (j - a) for j in range(m + 1) if j != a)


def test_unknown_surface():
    with pytest.raises(ValueError):
        make_surface("p3xp3")


def test_h0_examples(P2, Q):
    # sections x0, x1, x2 span lines of weight 0, -s1, -s2 (see module docstring)
    assert h0_character(P2, line_bundle(P2, 1)) == Character([LinearForm(), -s1, -s2])
    assert h0_character(P2, line_bundle(P2, 0)) == Character([LinearForm()])
    assert char_rank(h0_character(Q, line_bundle(Q, (1, 0)))) == 2
    with pytest.raises(ValueError, match="higher cohomology"):
        h0_character(P2, line_bundle(P2, -1))


def test_h0_ranks(P2, Q):
    for d in range(7):
        assert char_rank(h0_character(P2, line_bundle(P2, d))) == (d + 1) * (d + 2) // 2
    for a in range(4):
        for b in range(4):
            assert char_rank(h0_character(Q, line_bundle(Q, (a, b)))) == (a + 1) * (b + 1)


def test_linearization_covariance(P2, Q):
    delta = LinearForm(2, -1, 3)
    for S, degs in ((P2, 3), (Q, (2, 1))):
        plain = h0_character(S, line_bundle(S, degs))
        shifted = h0_character(S, line_bundle(S, degs, delta))
        assert shifted == plain.shift(delta)
        L = line_bundle(S, degs, delta)
        assert all(L.fiber(i) - line_bundle(S, degs).fiber(i) == delta for i in range(S.euler_number))


@pytest.mark.parametrize(
    "name,degs",
    [("p2", d) for d in range(0, 4)] + [("p1xp1", ab) for ab in [(0, 0), (1, 0), (2, 2), (3, 1)]],
)
def test_molien_consistency_of_sections(name, degs):
    S = make_surface(name)
    L = line_bundle(S, degs)
    rational = lefschetz(S, L)
    assert sympy.expand(rational - as_laurent(h0_character(S, L))) == 0
    rng = random.Random(5)
    for _ in range(3):
        u = Fraction(rng.randint(2, 50), rng.randint(1, 9))
        subs = {t1: u, t2: u**2 + 1}
        assert rational.subs(subs) == as_laurent(h0_character(S, L)).subs(subs)


@pytest.mark.parametrize(
    "name,degs",
    [("p2", d) for d in (-1, -2, -3, -4, -6)] + [("p1xp1", ab) for ab in [(-1, 3), (-2, -2), (2, -2), (-3, -4)]],
)
def test_chi_character_against_lefschetz(name, degs):
    S = make_surface(name)
    L = line_bundle(S, degs, LinearForm(1, 2, 0))
    assert sympy.expand(lefschetz(S, L) - as_laurent(chi_character(S, L))) == 0


def test_chi_examples(P2):
    assert chi_character(P2, line_bundle(P2, -1)) == Character()
    c = chi_character(P2, line_bundle(P2, -3))
    assert char_rank(c) == 1 and len(c) == 1
    for d in range(4):
        L = line_bundle(P2, d)
        assert chi_character(P2, L) == h0_character(P2, L)


def test_canonical_bundle_fibers(P2, Q):
    for S in (P2, Q):
        K = canonical_bundle(S)
        for i, p in enumerate(S.fixed_points):
            assert K.fiber(i) == -(p.chart_weights[0] + p.chart_weights[1])


def test_tensor_adds_degrees_and_offsets(Q):
    A = line_bundle(Q, (1, 2), LinearForm(1, 0, 0))
    B = line_bundle(Q, (0, -1), LinearForm(0, 0, 1))
    T = tensor(Q, A, B)
    assert T.degree_data == (1, 1) and T.linearization_offset == LinearForm(1, 0, 1)
