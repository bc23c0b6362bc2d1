"""Virtual torus characters and the Chern and Euler data extracted from them."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from .symcore import (
    GradedPoly,
    LinearForm,
    ZERO_FORM,
    as_rational,
    poly_inverse,
    poly_mul,
)


class LocalizationError(ArithmeticError):
    """A fixed-point formula cannot be evaluated as requested."""


class DegenerateSpecialization(LocalizationError):
    """The numeric assignment kills a weight; draw a fresh seed."""


class Character:
    """Finite map LinearForm -> nonzero integer multiplicity (a virtual representation)."""

    __slots__ = ("_weights",)

    def __init__(self, weights: Mapping[LinearForm, int] | Iterable[LinearForm] | None = None):
        acc: Dict[LinearForm, int] = {}
        if weights is None:
            pass
        elif isinstance(weights, Mapping):
            for w, m in weights.items():
                acc[w] = acc.get(w, 0) + int(m)
        else:
            for w in weights:
                acc[w] = acc.get(w, 0) + 1
        self._weights = {w: m for w, m in acc.items() if m}

    @classmethod
    def from_exponents(cls, monomials: Mapping[Tuple[int, int, int], int]) -> "Character":
        """Build from Laurent monomials t1^a t2^b t^c given by exponent triples."""
        return cls({LinearForm(*e): m for e, m in monomials.items()})

    @property
    def weights(self) -> Dict[LinearForm, int]:
        return dict(self._weights)

    def items(self) -> Iterator[Tuple[LinearForm, int]]:
        return iter(sorted(self._weights.items()))

    def multiplicity(self, w: LinearForm) -> int:
        return self._weights.get(w, 0)

    def __len__(self) -> int:
        return len(self._weights)

    def __bool__(self) -> bool:
        return bool(self._weights)

    def __eq__(self, other) -> bool:
        if isinstance(other, Character):
            return self._weights == other._weights
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._weights.items()))

    def __add__(self, other: "Character") -> "Character":
        acc = dict(self._weights)
        for w, m in other._weights.items():
            acc[w] = acc.get(w, 0) + m
        return Character(acc)

    def __neg__(self) -> "Character":
        return Character({w: -m for w, m in self._weights.items()})

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def __mul__(self, other: "Character") -> "Character":
        """Tensor product of representations."""
        acc: Dict[LinearForm, int] = {}
        for w1, m1 in self._weights.items():
            for w2, m2 in other._weights.items():
                w = w1 + w2
                acc[w] = acc.get(w, 0) + m1 * m2
        return Character(acc)

    def scale(self, k: int) -> "Character":
        return Character({w: k * m for w, m in self._weights.items()})

    def shift(self, form: LinearForm) -> "Character":
        """Tensor with the one-dimensional representation of weight ``form``."""
        return Character({w + form: m for w, m in self._weights.items()})

    def is_genuine(self) -> bool:
        return all(m > 0 for m in self._weights.values())

    def elements(self) -> Iterator[LinearForm]:
        """Weights listed with multiplicity; only for genuine characters."""
        for w, m in self.items():
            if m < 0:
                raise ValueError("character is virtual")
            for _ in range(m):
                yield w

    def __repr__(self) -> str:
        if not self._weights:
            return "Character({})"
        body = ", ".join(f"{w}: {m}" for w, m in self.items())
        return "Character({" + body + "})"


def char_rank(c: Character) -> int:
    return sum(m for _, m in c.items())


def char_dual(c: Character) -> Character:
    return Character({-w: m for w, m in c.items()})


def chern_series(c: Character, cutoff: int) -> GradedPoly:
    total = GradedPoly.constant(1, cutoff)
    for w, m in c.items():
        factor = GradedPoly.from_form(w, cutoff, constant=1)
        if m < 0:
            factor = poly_inverse(factor, cutoff)
        for _ in range(abs(m)):
            total = poly_mul(total, factor, cutoff)
    return total


def chern_class(c: Character, k: int) -> GradedPoly:
    if k < 0:
        raise ValueError("Chern degree must be nonnegative")
    return chern_series(c, k).degree_part(k)


def euler_eval(c: Character, assignment: Sequence) -> Fraction:
    point = tuple(as_rational(v) for v in assignment)
    value = Fraction(1)
    for w, m in c.items():
        if w.is_zero():
            raise LocalizationError("non-isolated contribution: zero weight in Euler class")
        x = w.evaluate(point)
        if x == 0:
            raise DegenerateSpecialization(f"degenerate specialization at weight {w}, re-seed")
        value *= x**m
    return value


def moving_check(c: Character) -> None:
    """Every weight must involve s; otherwise the class is not invertible near eps = 0."""
    for w, _ in c.items():
        if w.c == 0:
            raise LocalizationError(f"fixed weight {w} in a normal-bundle character")


__all__ = [
    "Character",
    "DegenerateSpecialization",
    "LocalizationError",
    "ZERO_FORM",
    "char_dual",
    "char_rank",
    "chern_class",
    "chern_series",
    "euler_eval",
    "moving_check",
]
