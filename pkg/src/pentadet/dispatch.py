"""Method selection, verification campaigns and benchmarks behind the CLI."""
from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from . import decomposition, reduction, toeplitz
from .errors import PivotZero, ShapeError
from .model import (
    AnySpec, ImperfectSpec, PentaSpec, ToeplitzSpec, as_general, assemble_dense,
    format_scalar, shape_of, spec_to_dict, validate_shape,
)
from .oracle import LogDet, det_exact_dense, det_float_dense, log_product
from .poly import reference_pn

METHODS = ("auto", "dense", "reduce", "theorem1", "q3", "blocks", "toeplitz", "closed")
ScalarMode = Literal["rational", "float"]


class MethodUnavailable(ShapeError):
    """The forced method's hypothesis does not hold for this input."""


@dataclass
class DetResult:
    value: Fraction | LogDet
    method_used: str
    fallbacks_taken: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def to_dict(self, with_timings: bool = False) -> dict:
        if isinstance(self.value, LogDet):
            sign, logabs = self.value
            value = {"sign": sign, "log_abs": None if sign == 0 else logabs}
        else:
            value = format_scalar(self.value)
        out = {"value": value, "method_used": self.method_used, "fallbacks_taken": list(self.fallbacks_taken)}
        if with_timings:
            out["timings"] = dict(self.timings)
        return out


def _is_toeplitz(spec: AnySpec) -> bool:
    return isinstance(spec, (ToeplitzSpec, ImperfectSpec))


def _route(spec: AnySpec, method: str, scalar: ScalarMode, flip_sign: bool = False):
    """Evaluate one named route; raises MethodUnavailable or PivotZero."""
    exact = scalar == "rational"
    conv = (lambda x: x) if exact else float

    if method == "dense":
        g = as_general(spec)
        validate_shape(g)
        if exact:
            return det_exact_dense(assemble_dense(g))
        return det_float_dense(assemble_dense(g.map(float), zero=0.0))

    if method in ("toeplitz", "closed"):
        if not _is_toeplitz(spec):
            raise MethodUnavailable(f"method {method!r} needs a toeplitz or imperfect input")
        shape = shape_of(spec.n, spec.k)
        if method == "toeplitz":
            if isinstance(spec, ImperfectSpec):
                return toeplitz.det_imperfect(spec) if exact else toeplitz.slogdet_imperfect(spec)
            return toeplitz.det_toeplitz(spec) if exact else toeplitz.slogdet_toeplitz(spec)
        return _closed(spec.map(conv), shape, exact)

    g = as_general(spec)
    shape = validate_shape(g)
    if method == "blocks":
        if exact:
            bm = "recursion-if-toeplitz" if _is_toeplitz(spec) else "dense-exact"
            return decomposition.det_via_blocks(g, bm)
        return decomposition.slogdet_via_blocks(g.map(float))

    gs = g.map(conv)
    try:
        if method == "reduce":
            factors = reduction.iterate_diagonals(gs)
        elif method == "theorem1":
            factors = reduction.theorem1_factors(gs, flip_sign)
        elif method == "q3":
            factors = reduction.q3_factors(gs, flip_sign)
        else:
            raise ValueError(f"unknown method {method!r}")
    except ShapeError as exc:
        raise MethodUnavailable(str(exc)) from exc
    if exact:
        out = Fraction(1)
        for f in factors:
            out *= f
        return out
    return log_product(factors)


def _closed(spec, shape, exact: bool):
    q, p, k = shape.q, shape.p, spec.k
    if isinstance(spec, ImperfectSpec):
        if q != 3:
            raise MethodUnavailable("imperfect closed form needs q = 3")
        hi, lo = toeplitz.q3_imperfect_factors(spec.base.params, spec.alpha, spec.beta)
    elif not 3 <= q <= 8:
        raise MethodUnavailable(f"tabulated closed form covers q = 3..8, got q={q}")
    elif q == 3:
        hi, lo = toeplitz.q3_toeplitz_factors(spec.params)
    else:
        hi = reference_pn(q + 1).evaluate(*spec.params)
        lo = reference_pn(q).evaluate(*spec.params)
    if exact:
        return hi ** p * lo ** (k - p)
    return LogDet.of(hi) ** p * LogDet.of(lo) ** (k - p)


def auto_order(spec: AnySpec) -> list[str]:
    """Methods tried by ``auto``, in order."""
    if _is_toeplitz(spec):
        return ["toeplitz"]
    shape = validate_shape(spec)
    if shape.q == 2:
        return ["theorem1"]
    if shape.q == 3 and shape.p == 0:
        return ["q3"]
    return ["reduce", "blocks"]


def compute(spec: AnySpec, method: str = "auto", scalar: ScalarMode = "rational") -> DetResult:
    if scalar not in ("rational", "float"):
        raise ValueError(f"unknown scalar mode {scalar!r}")
    if scalar == "rational":
        spec = spec.map(Fraction)
    timings: dict[str, float] = {}
    if method != "auto":
        t0 = time.perf_counter()
        value = _route(spec, method, scalar)
        timings[method] = time.perf_counter() - t0
        return DetResult(value, method, [], timings)
    fallbacks = []
    candidates = auto_order(spec)
    for i, m in enumerate(candidates):
        t0 = time.perf_counter()
        try:
            value = _route(spec, m, scalar)
        except PivotZero as exc:
            timings[m] = time.perf_counter() - t0
            if i + 1 == len(candidates):
                raise
            fallbacks.append({"method": m, "reason": str(exc)})
            continue
        timings[m] = time.perf_counter() - t0
        return DetResult(value, m, fallbacks, timings)
    raise AssertionError("unreachable")


# -- verification campaign -------------------------------------------------------

def _random_spec(rng: random.Random, n_max: int) -> AnySpec:
    pairs = [(n, k) for n in range(2, n_max + 1) for k in range(1, n // 2 + 1)]
    n, k = rng.choice(pairs)

    def vec(m):
        return tuple(Fraction(rng.randint(-3, 3)) for _ in range(m))

    kind = rng.random()
    if kind < 0.6:
        return PentaSpec(n, k, vec(n + 1 - 2 * k), vec(n + 1 - k), vec(n + 1), vec(n + 1 - k), vec(n + 1 - 2 * k))
    base = ToeplitzSpec(n, k, *vec(5))
    if kind < 0.8:
        return base
    return ImperfectSpec(base, *vec(2))


def admissible_routes(spec: AnySpec) -> list[str]:
    shape = shape_of(spec.n, spec.k)
    routes = ["dense", "blocks"]
    if shape.q > 3 or (shape.q == 3 and shape.p > 0):
        routes.append("reduce")
    if shape.q == 2 or (shape.q == 3 and shape.p == 0):
        routes.append("theorem1")
    if shape.q == 3:
        routes.append("q3")
    if _is_toeplitz(spec):
        routes.append("toeplitz")
        if (isinstance(spec, ImperfectSpec) and shape.q == 3) or (
            isinstance(spec, ToeplitzSpec) and 3 <= shape.q <= 8
        ):
            routes.append("closed")
    return routes


def check_case(spec: AnySpec, flip_sign: bool = False) -> dict:
    """Run every admissible route; ``ok`` iff all exact values coincide."""
    values = {}
    skipped = []
    for m in admissible_routes(spec):
        try:
            values[m] = _route(spec, m, "rational", flip_sign)
        except PivotZero as exc:
            skipped.append({"method": m, "reason": str(exc)})
    ok = len(set(values.values())) == 1
    return {
        "ok": ok,
        "values": {m: format_scalar(v) for m, v in values.items()},
        "skipped": skipped,
    }


def _check_worker(args):
    spec, flip = args
    return check_case(spec, flip)


def run_verify(n_max: int, cases: int, seed: int, inject_bug: bool = False,
               workers: int | None = None) -> dict:
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    rng = random.Random(seed)
    specs = [_random_spec(rng, n_max) for _ in range(cases)]
    if workers is None:
        workers = int(os.environ.get("PENTADET_THREADS", "1") or 1)
    jobs = [(s, inject_bug) for s in specs]
    if workers > 1 and cases > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_worker, jobs, chunksize=8))
    else:
        results = [_check_worker(j) for j in jobs]

    route_counts: dict[str, int] = {}
    skipped = 0
    first_bad = None
    passed = 0
    for spec, res in zip(specs, results):
        for m in res["values"]:
            route_counts[m] = route_counts.get(m, 0) + 1
        skipped += len(res["skipped"])
        if res["ok"]:
            passed += 1
        elif first_bad is None:
            first_bad = {"spec": spec_to_dict(spec), "values": res["values"]}
    return {
        "n_max": n_max,
        "cases": cases,
        "seed": seed,
        "passed": passed,
        "failed": cases - passed,
        "route_evaluations": dict(sorted(route_counts.items())),
        "pivot_zero_skips": skipped,
        "first_counterexample": first_bad,
    }


# -- benchmark -------------------------------------------------------------------

def _timed(fn, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_bench(orders=(1000, 10000, 100000), dense_cap: int = 500, seed: int = 0) -> dict:
    """Wall times for float-mode Toeplitz routes; dense LU only up to ``dense_cap``."""
    rng = random.Random(seed)
    params = tuple(rng.uniform(-1, 1) for _ in range(5))
    rows = []
    for order in (dense_cap, *orders):
        n = order - 1
        row = {"order": order}
        for k in (1, 7):
            spec = ToeplitzSpec(n, k, *params)
            row[f"toeplitz_k{k}"] = _timed(lambda: toeplitz.slogdet_toeplitz(spec))
        if order <= dense_cap:
            g = as_general(ToeplitzSpec(n, 7, *params))
            mat = assemble_dense(g, zero=0.0)
            row["dense_k7"] = _timed(lambda: det_float_dense(mat), repeat=1)
            row["speedup_k7"] = row["dense_k7"] / row["toeplitz_k7"]
        rows.append(row)
    return {"params": list(params), "results": rows}
