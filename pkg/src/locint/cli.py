"""Command-line driver.

Every run prints a human-readable line (or a few) and appends one JSON record to
the results file.  Exit status: 0 on success, 1 when an identity check fails, 2
on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import abelint, hilbfix, paperint
from .charalg import LocalizationError
from .symcore import format_rational
from .toric import line_bundle, make_surface

COMMANDS = ("ttd", "gottsche", "co-degree", "p1p1", "rk2", "weights", "vd", "selftest")
DEFAULT_OUT = "locint_results.jsonl"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    surface: Optional[str] = None
    degree_data: Optional[List[int]] = None
    n: Optional[int] = None
    d: Optional[int] = None
    dprime: Optional[int] = None
    seed: int = 0
    seed_count: int = 2
    threads: int = 1
    cache_dir: Optional[str] = None
    out: str = DEFAULT_OUT
    all_components: bool = False

    def __post_init__(self):
        if self.seed_count < 2:
            raise UsageError("--seed-count must be at least 2")
        if self.threads < 1:
            raise UsageError("--threads must be positive")
        if not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be an unsigned 64-bit integer")

    def params(self) -> Dict[str, Any]:
        keys = ("surface", "degree_data", "n", "d", "dprime", "seed", "seed_count", "all_components")
        return {k: getattr(self, k) for k in keys if getattr(self, k) not in (None, False)}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locint", description="Exact equivariant localization for sheaf-counting identities."
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--surface", choices=("p2", "p1xp1", "p3"))
    parser.add_argument("--L", dest="L", help="line bundle degrees, a or a,b")
    parser.add_argument("--n", type=int)
    parser.add_argument("--d", type=int)
    parser.add_argument("--dprime", type=int)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--seed-count", type=int, default=2)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--out", default=DEFAULT_OUT)
    parser.add_argument("--cache-dir")
    parser.add_argument(
        "--all-components",
        action="store_true",
        help="p1p1: include the twisted components I_Z(a,-a) in the left-hand side",
    )
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    parser = _parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:
        if exc.code == 0:
            raise
        raise UsageError("bad arguments") from None
    degree_data = None
    if ns.L is not None:
        try:
            degree_data = [int(x) for x in ns.L.split(",")]
        except ValueError:
            raise UsageError(f"--L expects integers separated by commas, got {ns.L!r}") from None
    return RunConfig(
        command=ns.command,
        surface=ns.surface,
        degree_data=degree_data,
        n=ns.n,
        d=ns.d,
        dprime=ns.dprime,
        seed=ns.seed,
        seed_count=ns.seed_count,
        threads=ns.threads,
        cache_dir=ns.cache_dir,
        out=ns.out,
        all_components=ns.all_components,
    )


def _need(cfg: RunConfig, *names: str) -> None:
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise UsageError(f"{cfg.command} needs " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _seeds(outcome) -> List[List[str]]:
    return [[format_rational(x), format_rational(y)] for x, y in outcome.seeds_used]


def _surface(cfg: RunConfig):
    if cfg.surface not in ("p2", "p1xp1"):
        raise UsageError(f"{cfg.command} needs --surface p2 or p1xp1")
    return make_surface(cfg.surface)


def _cmd_ttd(cfg: RunConfig) -> Dict[str, Any]:
    _need(cfg, "d")
    if cfg.d < 1:
        raise UsageError("--d must be positive")
    value = abelint.ttd_value(cfg.d)
    return {"lines": [format_rational(value)], "value": format_rational(value)}


def _cmd_gottsche(cfg: RunConfig) -> Dict[str, Any]:
    _need(cfg, "n")
    S = _surface(cfg)
    outcome = hilbfix.localize(S, cfg.n, hilbfix.TangentTopIntegrand(), cfg.seed, cfg.seed_count,
                               cfg.threads, cfg.cache_dir)
    expected = hilbfix.gottsche_count(S.euler_number, cfg.n)
    ok = outcome.value == expected
    return {
        "lines": [format_rational(outcome.value)],
        "value": format_rational(outcome.value),
        "seeds": _seeds(outcome),
        "fixed_point_count": outcome.fixed_point_count,
        "pass": ok,
    }


def _cmd_co_degree(cfg: RunConfig) -> Dict[str, Any]:
    _need(cfg, "n", "degree_data")
    S = _surface(cfg)
    try:
        L = line_bundle(S, tuple(cfg.degree_data))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    outcome = hilbfix.co_degree(S, L, cfg.n, cfg.seed, cfg.seed_count, cfg.threads, cfg.cache_dir)
    return {
        "lines": [format_rational(outcome.value)],
        "value": format_rational(outcome.value),
        "seeds": _seeds(outcome),
        "fixed_point_count": outcome.fixed_point_count,
    }


def _cmd_p1p1(cfg: RunConfig) -> Dict[str, Any]:
    _need(cfg, "n")
    if not 0 <= cfg.n <= 1:
        raise UsageError("unsupported: M^s fixed-locus data unavailable for n >= 2")
    report = paperint.p1p1_check(cfg.n, cfg.seed, cfg.seed_count, cfg.threads, cfg.cache_dir,
                                 twisted_components=cfg.all_components)
    lines = [f"lhs {format_rational(report.lhs)}"]
    lines += [f"  lhs[{label}] {format_rational(v)}" for label, v in report.lhs_terms]
    lines += [f"  rhs[{label}] {format_rational(v)}" for label, v in report.rhs_terms]
    lines.append(f"rhs {format_rational(report.rhs_total)}")
    lines.append("pass" if report.passed else "FAIL")
    return {
        "lines": lines,
        "value": format_rational(report.lhs),
        "rhs_terms": {label: format_rational(v) for label, v in report.rhs_terms},
        "lhs_terms": {label: format_rational(v) for label, v in report.lhs_terms},
        "rhs": format_rational(report.rhs_total),
        "pass": report.passed,
    }


def _cmd_rk2(cfg: RunConfig) -> Dict[str, Any]:
    dprime = 2 if cfg.dprime is None else cfg.dprime
    if dprime != 2:
        raise UsageError("general genus not implemented (only --dprime 2)")
    result = abelint.rk2_check(dprime, cfg.seed, cfg.seed_count, cfg.threads)
    lines = [f"lhs {format_rational(result['lhs'])}"]
    lines += [f"  C_{k} {format_rational(v)}" for k, v in result["terms"]]
    lines += [f"rhs {format_rational(result['rhs'])}", "pass" if result["pass"] else "FAIL"]
    return {
        "lines": lines,
        "value": format_rational(result["lhs"]),
        "rhs": format_rational(result["rhs"]),
        "rhs_terms": {str(k): format_rational(v) for k, v in result["terms"]},
        "pass": result["pass"],
    }


def _cmd_weights(cfg: RunConfig) -> Dict[str, Any]:
    if cfg.dprime is None:
        mono = paperint.weight_factor_p3()
    else:
        if cfg.dprime < 1:
            raise UsageError("--dprime must be positive")
        mono = paperint.weight_factor_p2(cfg.dprime)
    return {"lines": [str(mono)], "value": format_rational(mono.coefficient), "s_exponent": mono.exponent}


def _cmd_vd(cfg: RunConfig) -> Dict[str, Any]:
    _need(cfg, "d", "surface")
    if cfg.d < 1:
        raise UsageError("--d must be positive")
    if cfg.surface == "p2":
        inputs = paperint.plane_curve_inputs(cfg.d)
        settings = ("surface_fixed_det", "surface_fixed_divisor")
    elif cfg.surface == "p3":
        inputs = paperint.p3_surface_inputs(cfg.d)
        settings = ("threefold_fixed_det", "threefold_fixed_divisor")
    else:
        raise UsageError("vd needs --surface p2 or p3")
    values = {s: paperint.vd_calc(s, **inputs) for s in settings}
    return {
        "lines": [f"{s} {v}" for s, v in values.items()],
        "value": {s: format_rational(v) for s, v in values.items()},
    }


def _selftest_checks(cfg: RunConfig):
    P2, Q = make_surface("p2"), make_surface("p1xp1")
    kw = dict(seed=cfg.seed, seed_count=cfg.seed_count, threads=cfg.threads, cache_dir=cfg.cache_dir)
    yield "ttd d=3,4,5", [abelint.ttd_value(d) for d in (3, 4, 5)] == [3, 384, 11250000]
    for S in (P2, Q):
        for n in range(4):
            yield f"euler {S.name} n={n}", hilbfix.chi_top_check(S, n, **kw) == hilbfix.gottsche_count(
                S.euler_number, n
            )
        for n in range(1, 3):
            yield f"vanishing {S.name} n={n}", hilbfix.integral_of_one(S, n, **kw).value == 0
    L = line_bundle(Q, (2, 2))
    yield "co-degree n=1", hilbfix.co_degree(Q, L, 1, **kw).value == 20
    yield "quadric identity n=0", paperint.p1p1_check(0, **kw).passed
    yield "quadric identity n=1, all components", paperint.p1p1_check(
        1, twisted_components=True, **kw
    ).passed
    yield "rank-two identity d'=2", abelint.rk2_check(2, cfg.seed, cfg.seed_count, cfg.threads)["pass"]
    yield "weight factors", str(paperint.weight_factor_p2(2)) == "512/1 s^14" and str(
        paperint.weight_factor_p3()
    ) == "64/1 s^9"
    yield "vd P^2 d=3", paperint.vd_calc("surface_fixed_divisor", **paperint.plane_curve_inputs(3)) == 1


def _cmd_selftest(cfg: RunConfig) -> Dict[str, Any]:
    lines, results = [], {}
    for label, ok in _selftest_checks(cfg):
        results[label] = bool(ok)
        lines.append(f"{'ok  ' if ok else 'FAIL'} {label}")
    passed = all(results.values())
    return {"lines": lines, "value": f"{sum(results.values())}/{len(results)}", "checks": results,
            "pass": passed}


HANDLERS = {
    "ttd": _cmd_ttd,
    "gottsche": _cmd_gottsche,
    "co-degree": _cmd_co_degree,
    "p1p1": _cmd_p1p1,
    "rk2": _cmd_rk2,
    "weights": _cmd_weights,
    "vd": _cmd_vd,
    "selftest": _cmd_selftest,
}


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg = parse_config(argv)
        start = time.perf_counter()
        result = HANDLERS[cfg.command](cfg)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, ValueError, NotImplementedError) as exc:
        print(f"usage error: {exc}", file=stderr)
        print(_parser().format_usage(), file=stderr, end="")
        return 2
    except LocalizationError as exc:
        print(f"check failed: {exc}", file=stderr)
        return 1
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    for line in result.pop("lines"):
        print(line, file=stdout)
    record = {
        "command": cfg.command,
        "params": cfg.params(),
        "value": result.pop("value"),
        "seeds": result.pop("seeds", []),
        "fixed_point_count": result.pop("fixed_point_count", None),
    }
    if "pass" in result:
        record["pass"] = result.pop("pass")
    record.update(result)
    record["wall_time_ms"] = elapsed_ms
    out = Path(cfg.out)
    if out.parent and not out.parent.exists():
        out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("a") as fh:
        fh.write(json.dumps(record, sort_keys=False, ensure_ascii=False) + "\n")
    return 0 if record.get("pass", True) else 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
