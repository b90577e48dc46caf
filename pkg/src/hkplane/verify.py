"""Seeded randomized checks of the incidence, metric, ruler, separation,
parallel and angle properties of H_k.

Every sample draws from its own generator, seeded from (seed, suite, index),
so a sample can be replayed alone and the order of evaluation never matters.
A failing sample is recorded, not raised; suites always run to completion.
"""

from __future__ import annotations

import json
import math
import random
import time
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import angle as ang
from .geodesic import _ruler, contains, line_through, residual, ruler_inverse, segment_between
from .incidence import (
    SideLabel,
    are_parallel,
    ideal_endpoints,
    intersect,
    parallels_through,
    segment_crosses,
    side_of,
)
from .metric import QuadratureSpec, arc_length_oracle, classical_distance, distance, squeeze
from .model import (
    DEFAULT_EPS_ABS,
    DEFAULT_EPS_REL,
    Elliptic,
    HLine,
    Model,
    OnAxis,
    Point,
    Vertical,
    same_line,
    same_point,
)

# Tolerances each property is held to.
INCIDENCE_RESIDUAL = 1e-9   # relative to a^2
SYMMETRY_REL = 1e-12
TRIANGLE_SLACK = 1e-9
RULER_REL = 1e-10
ROUND_TRIP_ABS = 1e-9
ISOMETRY_REL = 1e-10
QUADRATURE_ABS = 1e-6
ENDPOINT_ABS = 1e-9
ANGLE_AGREEMENT = 1e-12
SAS_ABS = 1e-8

X_RANGE = 1e3
LOG_Y_RANGE = (-3.0, 3.0)
EXTREME_RATE = 0.01
SAS_EVERY = 10


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    samples: int = 1000
    k_values: tuple[float, ...] = (0.5, 1.0, 2.0)
    report_path: str | None = None
    eps_abs: float = DEFAULT_EPS_ABS
    eps_rel: float = DEFAULT_EPS_REL

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if not self.k_values:
            raise ValueError("k_values must not be empty")
        if any(not (k > 0 and math.isfinite(k)) for k in self.k_values):
            raise ValueError(f"every k must be a positive finite number: {self.k_values}")
        object.__setattr__(self, "k_values", tuple(float(k) for k in self.k_values))


@dataclass(frozen=True)
class CheckRecord:
    suite: str
    sample_index: int
    status: str
    inputs: dict
    observed: Any
    expected: Any

    def to_json(self) -> str:
        return json.dumps({
            "suite": self.suite,
            "sample_index": self.sample_index,
            "status": self.status,
            "inputs": self.inputs,
            "observed": self.observed,
            "expected": self.expected,
        })


@dataclass
class SuiteReport:
    suite_name: str
    passed: int = 0
    failed: int = 0
    counterexamples: list[CheckRecord] = field(default_factory=list)
    wall_time: float = 0.0
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def body(self) -> str:
        """Deterministic text form of the records (no timing)."""
        return "".join(r.to_json() + "\n" for r in self.records)

    def summary(self) -> str:
        return (f"{self.suite_name}: {self.passed} passed, {self.failed} failed "
                f"({self.wall_time:.2f}s)")


# ---- JSON-friendly encodings -------------------------------------------------

def enc_point(P: Point) -> list[float]:
    return [P.x, P.y]


def dec_point(v: Sequence[float]) -> Point:
    return Point(float(v[0]), float(v[1]))


def enc_line(L: HLine) -> list:
    return ["v", L.p] if isinstance(L, Vertical) else ["e", L.c, L.a]


def dec_line(v: Sequence) -> HLine:
    return Vertical(float(v[1])) if v[0] == "v" else Elliptic(float(v[1]), float(v[2]))


def _rel_err(u: float, v: float) -> float:
    scale = max(abs(u), abs(v))
    return 0.0 if scale == 0 else abs(u - v) / scale


# ---- samplers ----------------------------------------------------------------

def rand_point(rng: random.Random) -> Point:
    return Point(rng.uniform(-X_RANGE, X_RANGE), 10.0 ** rng.uniform(*LOG_Y_RANGE))


def rand_pair(rng: random.Random, m: Model) -> tuple[Point, Point]:
    """Two distinct points; about 1% are near-vertical pairs high above the axis."""
    if rng.random() < EXTREME_RATE:
        P = Point(rng.uniform(-X_RANGE, X_RANGE), 10.0 ** rng.uniform(0.0, 3.0))
        Q = Point(P.x + rng.uniform(-1e-6, 1e-6), 10.0 ** rng.uniform(0.0, 3.0))
    else:
        P, Q = rand_point(rng), rand_point(rng)
    if same_point(m, P, Q):
        return rand_pair(rng, m)
    return P, Q


def rand_line(rng: random.Random, m: Model) -> HLine:
    if rng.random() < 0.05:
        return Vertical(rng.uniform(-X_RANGE, X_RANGE))
    return line_through(m, *rand_pair(rng, m))


def rand_off_line(rng: random.Random, m: Model, L: HLine, tries: int = 64) -> Point | None:
    """A sampled point not on ``L``, or None if every try lands on it.

    The membership test is relative to a^2, so a line with a ~ 1e15 (from an
    extreme near-vertical pair) absorbs the whole sampling window.
    """
    for _ in range(tries):
        P = rand_point(rng)
        if not contains(m, L, P):
            return P
    return None


def rand_line_and_points(rng: random.Random, m: Model, count: int) -> tuple[HLine, list[Point]]:
    """A random line and ``count`` distinct points off it; redraws the line if needed."""
    while True:
        L = rand_line(rng, m)
        pts: list[Point] = []
        while len(pts) < count:
            P = rand_off_line(rng, m, L)
            if P is None:
                break
            if not any(same_point(m, P, Q) for Q in pts):
                pts.append(P)
        else:
            return L, pts


# ---- checks --------------------------------------------------------------------
# Each suite is a pair (draw, check).  draw(rng, m) returns JSON-ready inputs;
# check(m, inputs) returns (ok, observed, expected) and is what rerun() replays.

Check = Callable[[Model, dict], tuple[bool, Any, Any]]
Draw = Callable[[random.Random, Model, int], dict]


def _draw_incidence(rng, m, i):
    P, Q = rand_pair(rng, m)
    return {"P": enc_point(P), "Q": enc_point(Q)}


def _check_incidence(m, inp):
    P, Q = dec_point(inp["P"]), dec_point(inp["Q"])
    L = line_through(m, P, Q)
    if isinstance(L, Vertical):
        worst = max(abs(P.x - L.p), abs(Q.x - L.p))
        on_line = m.approx_eq(P.x, L.p) and m.approx_eq(Q.x, L.p)
        bound = None
    else:
        worst = max(abs(residual(m, L, P)), abs(residual(m, L, Q))) / (L.a * L.a)
        on_line = worst < INCIDENCE_RESIDUAL
        bound = INCIDENCE_RESIDUAL
    again = line_through(m, P, Q)
    swapped = line_through(m, Q, P)
    stable = again == L and swapped == L
    ok = on_line and stable and contains(m, L, P) and contains(m, L, Q)
    return ok, {"line": enc_line(L), "residual": worst, "deterministic": stable}, \
        {"residual_below": bound, "deterministic": True}


def _draw_metric(rng, m, i):
    P, Q = rand_pair(rng, m)
    return {"P": enc_point(P), "Q": enc_point(Q), "R": enc_point(rand_point(rng))}


def _check_metric(m, inp):
    P, Q, R = (dec_point(inp[n]) for n in "PQR")
    dpq, dqp = distance(m, P, Q), distance(m, Q, P)
    dqr, dpr = distance(m, Q, R), distance(m, P, R)
    dpp = distance(m, P, P)
    gap = dpr - (dpq + dqr)
    ok = (
        min(dpq, dqr, dpr) >= 0
        and dpp == 0.0
        and (dpq > 0) == (not same_point(m, P, Q))
        and _rel_err(dpq, dqp) <= SYMMETRY_REL
        and gap <= TRIANGLE_SLACK
    )
    return ok, {"d_PQ": dpq, "d_QP": dqp, "d_PP": dpp, "triangle_gap": gap}, \
        {"d_PP": 0.0, "symmetry_rel": SYMMETRY_REL, "triangle_gap_at_most": TRIANGLE_SLACK}


def _draw_ruler(rng, m, i):
    L = rand_line(rng, m)
    return {"L": enc_line(L), "t": rng.uniform(-20.0, 20.0),
            "t1": rng.uniform(-5.0, 5.0), "t2": rng.uniform(-5.0, 5.0)}


def _check_ruler(m, inp):
    L = dec_line(inp["L"])
    t, t1, t2 = inp["t"], inp["t1"], inp["t2"]
    back = _ruler(m, L, ruler_inverse(m, L, t))
    P, Q = ruler_inverse(m, L, t1), ruler_inverse(m, L, t2)
    dt = abs(_ruler(m, L, P) - _ruler(m, L, Q))
    d = distance(m, P, Q)
    apex = _ruler(m, L, ruler_inverse(m, L, 0.0))
    ok = (abs(back - t) < ROUND_TRIP_ABS and _rel_err(dt, d) <= RULER_REL
          and abs(apex) < ROUND_TRIP_ABS)
    return ok, {"round_trip_err": abs(back - t), "ruler_gap": dt, "distance": d,
                "residual": _rel_err(dt, d)}, \
        {"round_trip_below": ROUND_TRIP_ABS, "relative_below": RULER_REL}


def _draw_psa(rng, m, i):
    L, (A, B) = rand_line_and_points(rng, m, 2)
    # Pasch: a triangle, and a line through an interior point of AB missing all vertices
    while True:
        T = [rand_point(rng) for _ in range(3)]
        if any(same_point(m, T[i], T[j]) for i, j in ((0, 1), (1, 2), (0, 2))):
            continue
        if contains(m, line_through(m, T[0], T[1]), T[2]):
            continue
        s = rng.uniform(0.05, 0.95)
        seg = segment_between(m, T[0], T[1])
        D = ruler_inverse(m, seg.line, seg.t0 + s * (seg.t1 - seg.t0))
        E = rand_point(rng)
        if same_point(m, D, E):
            continue
        M = line_through(m, D, E)
        if any(contains(m, M, V) for V in T) or same_line(m, M, seg.line):
            continue
        # premise of Pasch: M meets side AB (near the axis this can be below resolution)
        if not segment_crosses(m, seg, M):
            continue
        break
    return {"L": enc_line(L), "A": enc_point(A), "B": enc_point(B),
            "triangle": [enc_point(V) for V in T], "cutter": enc_line(M)}


def _check_psa(m, inp):
    L = dec_line(inp["L"])
    A, B = dec_point(inp["A"]), dec_point(inp["B"])
    sa, sb = side_of(m, L, A), side_of(m, L, B)
    partition = SideLabel.ON_LINE not in (sa, sb)
    seg = segment_between(m, A, B)
    if sa == sb:
        inner = [side_of(m, L, ruler_inverse(m, seg.line, seg.t0 + s * (seg.t1 - seg.t0)))
                 for s in (0.1, 0.25, 0.5, 0.75, 0.9)]
        separation = all(lab == sa for lab in inner)
        sep_kind = "convexity"
    else:
        separation = segment_crosses(m, seg, L)
        sep_kind = "crossing"

    T = [dec_point(v) for v in inp["triangle"]]
    M = dec_line(inp["cutter"])
    sides = [segment_between(m, T[i], T[j]) for i, j in ((0, 1), (1, 2), (2, 0))]
    hits = [segment_crosses(m, S, M) for S in sides]
    pasch = hits[0] and (hits[1] or hits[2])
    ok = partition and separation and pasch
    return ok, {"sides": [sa.value, sb.value], sep_kind: separation, "pasch_hits": hits}, \
        {"partition": True, sep_kind: True, "pasch": "AB hit and (BC or CA) hit"}


def _draw_parallel(rng, m, i):
    L, (P,) = rand_line_and_points(rng, m, 1)
    return {"L": enc_line(L), "P": enc_point(P)}


def _endpoint_gap(e, f) -> float:
    if isinstance(e, OnAxis) and isinstance(f, OnAxis):
        return abs(e.x - f.x)
    return 0.0 if e is f else math.inf


def _check_parallel(m, inp):
    L, P = dec_line(inp["L"]), dec_point(inp["P"])
    lines = parallels_through(m, L, P)
    distinct = not same_line(m, *lines)
    per_line = []
    ok = distinct
    for N in lines:
        gaps = [_endpoint_gap(e, f) for e in ideal_endpoints(m, N) for f in ideal_endpoints(m, L)]
        shared = sum(g <= ENDPOINT_ABS for g in gaps)
        meets = intersect(m, N, L)
        good = (contains(m, N, P) and shared == 1 and meets is None
                and are_parallel(m, N, L))
        ok = ok and good
        per_line.append({"line": enc_line(N), "shared": shared, "min_gap": min(gaps),
                         "meets": None if meets is None else enc_point(meets)})
    return ok, {"distinct": distinct, "parallels": per_line}, \
        {"distinct": True, "shared": 1, "meets": None, "endpoint_gap_below": ENDPOINT_ABS}


def _draw_oracle(rng, m, i):
    L = rand_line(rng, m)
    t0 = rng.uniform(-10.0, 10.0)
    t1 = min(10.0, t0 + rng.uniform(0.0, 10.0))
    P, Q = rand_pair(rng, m)
    return {"L": enc_line(L), "t0": t0, "t1": t1, "P": enc_point(P), "Q": enc_point(Q)}


def _check_oracle(m, inp):
    L, t0, t1 = dec_line(inp["L"]), inp["t0"], inp["t1"]
    P, Q = dec_point(inp["P"]), dec_point(inp["Q"])
    length = arc_length_oracle(m, L, t0, t1, QuadratureSpec(tol=1e-8))
    A, B = ruler_inverse(m, L, t0), ruler_inverse(m, L, t1)
    closed = distance(m, A, B)
    d, dc = distance(m, P, Q), classical_distance(squeeze(m, P), squeeze(m, Q), tol=m)
    ok = (abs(length - (t1 - t0)) <= QUADRATURE_ABS and abs(length - closed) <= QUADRATURE_ABS
          and _rel_err(d, dc) <= ISOMETRY_REL)
    return ok, {"quadrature": length, "closed_form": closed, "distance": d, "classical": dc,
                "residual": abs(length - closed)}, \
        {"ruler_span": t1 - t0, "absolute_below": QUADRATURE_ABS, "isometry_rel": ISOMETRY_REL}


def line_with_tangent(m: Model, P: Point, dx: float, dy: float) -> HLine:
    """The h-line through ``P`` whose Euclidean tangent there is (dx, dy)."""
    if m.approx_eq(dx, 0.0):
        return Vertical(P.x)
    return Elliptic(P.x + m.k * m.k * P.y * dy / dx, math.hypot(m.k * m.k * P.y * dy / dx, m.k * P.y))


def shoot(m: Model, P: Point, dx: float, dy: float, s: float) -> Point:
    """Point at distance ``s`` from ``P`` along the h-line leaving in direction (dx, dy)."""
    L = line_with_tangent(m, P, dx, dy)
    forward = dy > 0 if isinstance(L, Vertical) else dx > 0
    return ruler_inverse(m, L, _ruler(m, L, P) + (s if forward else -s))


def _sas_triangle(m: Model, A: Point, phi: float, alpha: float, b: float, c: float):
    # pullback directions (cos, sin) become (cos, sin / k) in H_k
    B = shoot(m, A, math.cos(phi), math.sin(phi) / m.k, c)
    C = shoot(m, A, math.cos(phi + alpha), math.sin(phi + alpha) / m.k, b)
    return B, C


def _draw_angle(rng, m, i):
    while True:
        A, B, C = (Point(rng.uniform(-10, 10), 10.0 ** rng.uniform(-1, 1)) for _ in range(3))
        try:
            ang.triangle_angles(m, A, B, C)
        except ValueError:
            continue
        break
    inp = {"triangle": [enc_point(V) for V in (A, B, C)],
           "rays": [rng.uniform(-math.pi, math.pi), rng.uniform(-math.pi, math.pi)]}
    if i % SAS_EVERY == 0:
        inp["sas"] = {
            "b": rng.uniform(0.2, 3.0), "c": rng.uniform(0.2, 3.0),
            "alpha": rng.uniform(0.1, math.pi - 0.1),
            "placements": [[rng.uniform(-10, 10), 10.0 ** rng.uniform(-1, 1),
                            rng.uniform(-math.pi, math.pi)] for _ in range(2)],
        }
    return inp


def _check_angle(m, inp):
    A, B, C = (dec_point(v) for v in inp["triangle"])
    pull = ang.triangle_angles(m, A, B, C, ang.Measure.PULLBACK)
    eucl = ang.triangle_angles(m, A, B, C, ang.Measure.EUCLIDEAN)
    observed = {"pullback_sum": sum(pull), "euclidean_sum": sum(eucl)}
    expected = {"pullback_sum_below": math.pi}
    ok = sum(pull) < math.pi and all(0 < x < math.pi for x in pull)

    L = line_through(m, A, B)
    r = ang.tangent_ray(m, L, A)
    if isinstance(L, Elliptic):
        gx, gy = 2 * (A.x - L.c), 2 * m.k * m.k * A.y
        tangency = abs(r.dx * gx + r.dy * gy) / math.hypot(gx, gy)
        observed["tangency"] = tangency
        ok = ok and tangency <= ANGLE_AGREEMENT
    if m.k == 1.0:
        u, v = inp["rays"]
        r1, r2 = ang.make_ray(A, math.cos(u), math.sin(u)), ang.make_ray(A, math.cos(v), math.sin(v))
        gap = abs(ang.euclidean_angle(m, r1, r2) - ang.pullback_angle(m, r1, r2))
        observed["measure_gap"] = gap
        expected["measure_gap_below"] = ANGLE_AGREEMENT
        ok = ok and gap <= ANGLE_AGREEMENT

    if "sas" in inp:
        sas = inp["sas"]
        b, c, alpha = sas["b"], sas["c"], sas["alpha"]
        thirds = []
        for x, y, phi in sas["placements"]:
            P0 = Point(x, y)
            P1, P2 = _sas_triangle(m, P0, phi, alpha, b, c)
            thirds.append(distance(m, P1, P2))
        cosh_a = math.cosh(b) * math.cosh(c) - math.sinh(b) * math.sinh(c) * math.cos(alpha)
        law = math.acosh(cosh_a)
        observed["sas_third_sides"] = thirds
        expected["sas_third_side"] = law
        ok = ok and all(abs(t - law) <= SAS_ABS for t in thirds)
    return ok, observed, expected


@dataclass(frozen=True)
class Suite:
    name: str
    draw: Draw
    check: Check


SUITES: dict[str, Suite] = {s.name: s for s in (
    Suite("incidence", _draw_incidence, _check_incidence),
    Suite("metric", _draw_metric, _check_metric),
    Suite("ruler", _draw_ruler, _check_ruler),
    Suite("psa_pasch", _draw_psa, _check_psa),
    Suite("parallel", _draw_parallel, _check_parallel),
    Suite("oracle", _draw_oracle, _check_oracle),
    Suite("angle", _draw_angle, _check_angle),
)}


def sample_rng(seed: int, suite: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{suite}:{index}")


def sample_model(cfg: SuiteConfig, index: int) -> Model:
    return Model(cfg.k_values[index % len(cfg.k_values)], cfg.eps_abs, cfg.eps_rel)


def _evaluate(suite: Suite, m: Model, inputs: dict) -> tuple[bool, Any, Any]:
    try:
        return suite.check(m, inputs)
    except (ValueError, ArithmeticError) as exc:
        return False, f"{type(exc).__name__}: {exc}", "no exception"


def run_sample(suite: Suite, cfg: SuiteConfig, index: int) -> CheckRecord:
    m = sample_model(cfg, index)
    inputs = {"k": m.k, "eps_abs": m.eps_abs, "eps_rel": m.eps_rel}
    inputs.update(suite.draw(sample_rng(cfg.seed, suite.name, index), m, index))
    ok, observed, expected = _evaluate(suite, m, inputs)
    return CheckRecord(suite.name, index, "pass" if ok else "fail", inputs, observed, expected)


def rerun(record: CheckRecord | dict) -> CheckRecord:
    """Replay one recorded check from its inputs alone."""
    if isinstance(record, dict):
        record = CheckRecord(**record)
    inp = record.inputs
    m = Model(inp["k"], inp["eps_abs"], inp["eps_rel"])
    ok, observed, expected = _evaluate(SUITES[record.suite], m, inp)
    return CheckRecord(record.suite, record.sample_index, "pass" if ok else "fail",
                       inp, observed, expected)


def run_suite(name: str, cfg: SuiteConfig, indices: Iterable[int] | None = None) -> SuiteReport:
    suite = SUITES[name]
    start = time.perf_counter()
    records = [run_sample(suite, cfg, i) for i in (indices or range(cfg.samples))]
    records.sort(key=lambda r: r.sample_index)
    report = SuiteReport(name, records=records)
    for r in records:
        if r.status == "pass":
            report.passed += 1
        else:
            report.failed += 1
            report.counterexamples.append(r)
    report.wall_time = time.perf_counter() - start
    if cfg.report_path:
        write_report(cfg.report_path, [report])
    return report


def incidence_suite(cfg: SuiteConfig) -> SuiteReport:
    return run_suite("incidence", cfg)


def metric_suite(cfg: SuiteConfig) -> SuiteReport:
    return run_suite("metric", cfg)


def ruler_suite(cfg: SuiteConfig) -> SuiteReport:
    return run_suite("ruler", cfg)


def psa_pasch_suite(cfg: SuiteConfig) -> SuiteReport:
    return run_suite("psa_pasch", cfg)


def parallel_suite(cfg: SuiteConfig) -> SuiteReport:
    return run_suite("parallel", cfg)


def oracle_suite(cfg: SuiteConfig) -> SuiteReport:
    return run_suite("oracle", cfg)


def angle_suite(cfg: SuiteConfig) -> SuiteReport:
    return run_suite("angle", cfg)


def write_report(path: str | Path, reports: Sequence[SuiteReport]) -> Path:
    """Write one JSON record per check to ``path`` (JSON Lines)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rep in reports:
            fh.write(rep.body())
    return path


def read_report(path: str | Path) -> list[CheckRecord]:
    with open(path, encoding="utf-8") as fh:
        return [CheckRecord(**json.loads(line)) for line in fh if line.strip()]
