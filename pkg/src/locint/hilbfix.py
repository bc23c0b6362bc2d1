"""Torus-fixed points of Hilb^n(S), their tangent and Ext characters, and the localization engine.

The engine
----------
Integrands are classes in the equivariant cohomology of the three-dimensional
torus with parameters (s1, s2, s).  To integrate them, substitute
``s1 = eps*x``, ``s2 = eps*y``, ``s = 1`` with random rationals (x, y), expand
each fixed-point contribution as a Laurent series in ``eps`` and add them up.
The sum is the restriction of a polynomial in (s1, s2, s) homogeneous of known
degree, so every negative power of eps must cancel and the eps^0 coefficient is
the answer.  For integrands involving only s1 and s2 this is ordinary numeric
Atiyah-Bott summation.  For classes that also involve s it extracts the
s-equivariant integral the surface torus was introduced to compute.  Cancellation
of the negative powers and agreement between seeds are both checked on every run.
"""

from __future__ import annotations

import functools
import itertools
import os
import random
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .charalg import (
    Character,
    DegenerateSpecialization,
    LocalizationError,
    char_dual,
    char_rank,
    chern_class,
)
from .symcore import (
    EpsSeries,
    LinearForm,
    as_rational,
    linear_unit_power,
    poly_eval_scaled,
)
from .toric import (
    EquivLineBundle,
    ToricSurfaceModel,
    canonical_bundle,
    chi_character,
    dual_bundle,
    section_monomials,
    tensor,
)

MAX_RESEEDS = 16


# ---------------------------------------------------------------------------
# partitions and fixed points


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def row(self, r: int) -> int:
        return self.parts[r] if 0 <= r < len(self.parts) else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > c) for c in range(self.parts[0])))

    def boxes(self) -> List[Tuple[int, int]]:
        """Boxes as (r, c): r counts steps along the first chart direction, c along the second."""
        return [(r, c) for r, p in enumerate(self.parts) for c in range(p)]

    def contains(self, r: int, c: int) -> bool:
        return r >= 0 and c >= 0 and c < self.row(r)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def partitions_of(n: int) -> List[Partition]:
    out: List[Partition] = []

    def rec(remaining, largest, acc):
        if remaining == 0:
            out.append(Partition(tuple(acc)))
            return
        for k in range(min(remaining, largest), 0, -1):
            acc.append(k)
            rec(remaining - k, k, acc)
            acc.pop()

    rec(n, n, [])
    return out


@dataclass(frozen=True, order=True)
class HilbFixedPoint:
    assignment: Tuple[Partition, ...]

    @property
    def n(self) -> int:
        return sum(p.size for p in self.assignment)

    def key(self) -> str:
        return ";".join(str(p) for p in self.assignment)


def gottsche_count(chi: int, n: int) -> int:
    """Coefficient of q^n in prod_k (1 - q^k)^(-chi)."""
    series = [1] + [0] * n
    for k in range(1, n + 1):
        for _ in range(chi):
            for i in range(k, n + 1):
                series[i] += series[i - k]
    return series[n]


def _enumerate(S: ToricSurfaceModel, n: int) -> List[HilbFixedPoint]:
    parts_by_size = {k: partitions_of(k) for k in range(n + 1)}
    out = []
    e = S.euler_number
    for sizes in itertools.product(range(n + 1), repeat=e):
        if sum(sizes) != n:
            continue
        for combo in itertools.product(*(parts_by_size[k] for k in sizes)):
            out.append(HilbFixedPoint(tuple(combo)))
    return out


def _record(S: ToricSurfaceModel, fp: HilbFixedPoint) -> str:
    return f"{S.name} {fp.n} {fp.key()}"


def _parse_record(S: ToricSurfaceModel, n: int, line: str) -> HilbFixedPoint:
    name, size, body = line.split(" ")
    if name != S.name or int(size) != n:
        raise ValueError("record for another surface or size")
    chunks = body.split(";")
    if len(chunks) != S.euler_number:
        raise ValueError("wrong number of charts")
    parts = []
    for chunk in chunks:
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ValueError("bad partition syntax")
        inner = chunk[1:-1]
        parts.append(Partition(tuple(int(x) for x in inner.split(",")) if inner else ()))
    fp = HilbFixedPoint(tuple(parts))
    if fp.n != n:
        raise ValueError("sizes do not add up")
    return fp


def _cache_path(cache_dir, S: ToricSurfaceModel, n: int) -> Path:
    return Path(cache_dir) / f"hilb_{S.name}_{n}.txt"


def _read_cache(path: Path, S: ToricSurfaceModel, n: int) -> Optional[List[HilbFixedPoint]]:
    try:
        lines = path.read_text().splitlines()
    except OSError:
        return None
    try:
        points = [_parse_record(S, n, line) for line in lines]
    except ValueError:
        return None
    if lines != sorted(set(lines)) or len(points) != gottsche_count(S.euler_number, n):
        return None
    return points


def _write_cache(path: Path, lines: Sequence[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write("\n".join(lines) + ("\n" if lines else ""))
    os.replace(tmp, path)


def hilb_fixed_points(S: ToricSurfaceModel, n: int, cache_dir=None) -> List[HilbFixedPoint]:
    """Fixed points of Hilb^n(S), sorted by their cache record.

    With ``cache_dir`` the list is read from (or written to) a text cache; a cache
    file that fails validation is discarded and regenerated.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if cache_dir is not None:
        path = _cache_path(cache_dir, S, n)
        cached = _read_cache(path, S, n)
        if cached is not None:
            return cached
    points = sorted(_enumerate(S, n), key=lambda fp: _record(S, fp))
    if cache_dir is not None:
        _write_cache(path, [_record(S, fp) for fp in points])
    return points


# ---------------------------------------------------------------------------
# characters


def _arm(nu: Partition, r: int, c: int) -> int:
    return nu.row(r) - c - 1


def _leg(nu_conj: Partition, r: int, c: int) -> int:
    return nu_conj.row(c) - r - 1


def local_ext_char(lam: Partition, mu: Partition, w1: LinearForm, w2: LinearForm) -> Character:
    """chi(O, O) - chi(I_lam, I_mu) on the chart with tangent weights (w1, w2)."""
    lam_c, mu_c = lam.conjugate(), mu.conjugate()
    weights: Dict[LinearForm, int] = {}

    def add(w):
        weights[w] = weights.get(w, 0) + 1

    for r, c in lam.boxes():
        add(w1 * (-_leg(mu_c, r, c)) + w2 * (_arm(lam, r, c) + 1))
    for r, c in mu.boxes():
        add(w1 * (_leg(lam_c, r, c) + 1) + w2 * (-_arm(mu, r, c)))
    return Character(weights)


def tangent_char(S: ToricSurfaceModel, fp: HilbFixedPoint) -> Character:
    out = Character()
    for p, lam in zip(S.fixed_points, fp.assignment):
        w1, w2 = p.chart_weights
        out = out + local_ext_char(lam, lam, w1, w2)
    return out


def pair_ext_char(
    S: ToricSurfaceModel, fp1: HilbFixedPoint, fp2: HilbFixedPoint, L: EquivLineBundle
) -> Character:
    """chi(I1, I2 (x) L) as a virtual character."""
    out = chi_character(S, L)
    for i, (p, lam, mu) in enumerate(zip(S.fixed_points, fp1.assignment, fp2.assignment)):
        w1, w2 = p.chart_weights
        out = out - local_ext_char(lam, mu, w1, w2).shift(L.fiber(i))
    return out


def _shift_maps_into(lam: Partition, mu: Partition, alpha: int, beta: int) -> bool:
    """Does multiplication by the monomial with exponents (alpha, beta) send I_lam into I_mu?"""
    for r, c in mu.boxes():
        if lam.contains(r - alpha, c - beta) or r - alpha < 0 or c - beta < 0:
            continue
        return False
    return True


def hom_char(
    S: ToricSurfaceModel, fp1: HilbFixedPoint, fp2: HilbFixedPoint, L: EquivLineBundle
) -> Character:
    """Hom(I1, I2 (x) L): sections sigma of L with sigma * I1 contained in I2 on every chart."""
    weights: Dict[LinearForm, int] = {}
    for w, local in section_monomials(S, L):
        ok = all(
            _shift_maps_into(lam, mu, *exps)
            for exps, lam, mu in zip(local, fp1.assignment, fp2.assignment)
        )
        if ok:
            weights[w] = weights.get(w, 0) + 1
    return Character(weights)


def ext2_char(
    S: ToricSurfaceModel, fp1: HilbFixedPoint, fp2: HilbFixedPoint, L: EquivLineBundle
) -> Character:
    """Ext^2(I1, I2 (x) L), dual to Hom(I2, I1 (x) K (x) L^-1)."""
    KL = tensor(S, canonical_bundle(S), dual_bundle(S, L))
    return char_dual(hom_char(S, fp2, fp1, KL))


def ext1_virtual(
    S: ToricSurfaceModel, fp1: HilbFixedPoint, fp2: HilbFixedPoint, L: EquivLineBundle
) -> Character:
    """Hom + Ext^2 - chi: the K-theoretic Ext^1 of a pair of ideal sheaves."""
    return hom_char(S, fp1, fp2, L) + ext2_char(S, fp1, fp2, L) - pair_ext_char(S, fp1, fp2, L)


def ext1_char(S: ToricSurfaceModel, fp: HilbFixedPoint, L: EquivLineBundle) -> Character:
    KL = tensor(S, canonical_bundle(S), dual_bundle(S, L))
    if any(d >= 0 for d in KL.degree_data):
        raise LocalizationError("Ext² obstruction present")
    out = hom_char(S, fp, fp, L) - pair_ext_char(S, fp, fp, L)
    if not out.is_genuine():
        raise LocalizationError(f"Ext¹ character has negative multiplicities at {fp.key()}")
    return out


# ---------------------------------------------------------------------------
# fixed-point terms and the engine


@dataclass(frozen=True)
class FixedPointTerm:
    """prefactor * s^s_power * prod c_k(chars) * prod e(char)^sign at one fixed point."""

    chern: Tuple[Tuple[Character, int], ...] = ()
    euler: Tuple[Tuple[Character, int], ...] = ()
    prefactor: Fraction = Fraction(1)
    s_power: int = 0

    def degree(self) -> int:
        return (
            sum(k for _, k in self.chern)
            + sum(sign * char_rank(c) for c, sign in self.euler)
            + self.s_power
        )


@dataclass
class LocalizationOutcome:
    value: Fraction
    seeds_used: List[Tuple[Fraction, Fraction]]
    per_seed_values: List[Fraction]
    fixed_point_count: int
    degree: int = 0

    def __post_init__(self):
        if any(v != self.value for v in self.per_seed_values):
            raise LocalizationError("non-constant localization sum")


def seed_stream(seed: int):
    """Deterministic stream of rational specializations (x, y) for (s1, s2)."""
    rng = random.Random(seed)
    while True:
        x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 997))
        y = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 997))
        yield (x, y)


def term_series(term: FixedPointTerm, x, y) -> Optional[EpsSeries]:
    """Laurent expansion of one contribution, up to and including eps^0.

    Returns None when the contribution starts at a positive power of eps.
    """
    x, y = as_rational(x), as_rational(y)
    const = as_rational(term.prefactor)
    val = 0
    units = []
    for char, sign in term.euler:
        for w, m in char.items():
            if w.is_zero():
                raise LocalizationError("non-isolated contribution: zero weight in Euler class")
            beta = w.a * x + w.b * y
            power = sign * m
            if w.c == 0:
                if beta == 0:
                    raise DegenerateSpecialization(f"weight {w} vanishes at ({x}, {y})")
                val += power
                const *= beta**power
            else:
                units.append((w.c, beta, power))
    if val > 0:
        return None
    length = 1 - val
    series = EpsSeries(val, [const] + [0] * (length - 1))
    for char, k in term.chern:
        poly = poly_eval_scaled(chern_class(char, k), x, y)
        series = series * EpsSeries.from_poly(poly, length)
    for c, beta, power in units:
        series = series * linear_unit_power(c, beta, power, length)
    return series


def _evaluate_point(term_fn: Callable, point, seeds):
    term = term_fn(point)
    results = []
    for x, y in seeds:
        try:
            results.append(term_series(term, x, y))
        except DegenerateSpecialization:
            results.append("degenerate")
    return term.degree(), results


def _sum_contributions(outputs, seed_index: int) -> Tuple[Fraction, Dict[int, Fraction]]:
    total: Dict[int, Fraction] = {}
    for _, results in outputs:
        series = results[seed_index]
        if series is None:
            continue
        for k in range(series.val, 1):
            total[k] = total.get(k, Fraction(0)) + series.coefficient(k)
    polar = {k: v for k, v in total.items() if k < 0 and v}
    return total.get(0, Fraction(0)), polar


def localize_points(
    points: Sequence,
    term_fn: Callable,
    seed: int = 0,
    seed_count: int = 2,
    threads: int = 1,
) -> LocalizationOutcome:
    """Sum ``term_fn(point)`` over ``points`` at ``seed_count`` specializations."""
    if seed_count < 1:
        raise ValueError("seed_count must be positive")
    stream = seed_stream(seed)
    seeds = [next(stream) for _ in range(seed_count)]
    for _attempt in range(MAX_RESEEDS + 1):
        job = functools.partial(_evaluate_point, term_fn, seeds=seeds)
        if threads > 1 and len(points) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                chunk = max(1, len(points) // (4 * threads))
                outputs = list(pool.map(job, points, chunksize=chunk))
        else:
            outputs = [job(p) for p in points]
        bad = {i for _, res in outputs for i, r in enumerate(res) if r == "degenerate"}
        if not bad:
            break
        seeds = [next(stream) if i in bad else s for i, s in enumerate(seeds)]
    else:
        raise LocalizationError("no admissible specialization after bounded re-seeding")

    degrees = {d for d, _ in outputs}
    if len(degrees) > 1:
        raise LocalizationError(f"integrand degree varies between fixed points: {sorted(degrees)}")
    values = []
    for i in range(len(seeds)):
        value, polar = _sum_contributions(outputs, i)
        if polar:
            raise LocalizationError(f"polar terms survive the fixed-point sum: {polar}")
        values.append(value)
    return LocalizationOutcome(
        value=values[0],
        seeds_used=list(seeds),
        per_seed_values=values,
        fixed_point_count=len(points),
        degree=degrees.pop() if degrees else 0,
    )


# ---------------------------------------------------------------------------
# integrands on a single Hilbert scheme


@dataclass(frozen=True)
class UnitIntegrand:
    def __call__(self, S, fp) -> FixedPointTerm:
        return FixedPointTerm()


@dataclass(frozen=True)
class TangentTopIntegrand:
    def __call__(self, S, fp) -> FixedPointTerm:
        return FixedPointTerm(chern=((tangent_char(S, fp), 2 * fp.n),))


@dataclass(frozen=True)
class ExtTopIntegrand:
    L: EquivLineBundle

    def __call__(self, S, fp) -> FixedPointTerm:
        return FixedPointTerm(chern=((ext1_char(S, fp, self.L), 2 * fp.n),))


def _hilb_term(S: ToricSurfaceModel, integrand, fp: HilbFixedPoint) -> FixedPointTerm:
    term = integrand(S, fp)
    return FixedPointTerm(
        chern=term.chern,
        euler=term.euler + ((tangent_char(S, fp), -1),),
        prefactor=term.prefactor,
        s_power=term.s_power,
    )


def localize(
    S: ToricSurfaceModel,
    n: int,
    integrand,
    seed: int = 0,
    seed_count: int = 2,
    threads: int = 1,
    cache_dir=None,
) -> LocalizationOutcome:
    """Integrate ``integrand(S, fp)`` over Hilb^n(S)."""
    points = hilb_fixed_points(S, n, cache_dir=cache_dir)
    return localize_points(
        points, functools.partial(_hilb_term, S, integrand), seed, seed_count, threads
    )


def co_degree(
    S: ToricSurfaceModel,
    L: EquivLineBundle,
    n: int,
    seed: int = 0,
    seed_count: int = 2,
    threads: int = 1,
    cache_dir=None,
) -> LocalizationOutcome:
    """Integral of c_2n(Ext^1(I, I (x) L)) over Hilb^n(S)."""
    return localize(S, n, ExtTopIntegrand(L), seed, seed_count, threads, cache_dir)


def integral_of_one(S: ToricSurfaceModel, n: int, seed: int = 0, seed_count: int = 2,
                    threads: int = 1, cache_dir=None) -> LocalizationOutcome:
    return localize(S, n, UnitIntegrand(), seed, seed_count, threads, cache_dir)


def chi_top_check(S: ToricSurfaceModel, n: int, seed: int = 0, seed_count: int = 2,
                  threads: int = 1, cache_dir=None) -> int:
    outcome = localize(S, n, TangentTopIntegrand(), seed, seed_count, threads, cache_dir)
    expected = gottsche_count(S.euler_number, n)
    if outcome.value != expected:
        raise LocalizationError(f"Euler number {outcome.value} differs from {expected}")
    return int(outcome.value)

