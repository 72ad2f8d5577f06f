"""Scenario orchestration: configuration, built-in experiments, reports.

A scenario bundles a self-map of projective space, a subscheme, a start
point and sampling parameters.  run_scenario computes the orbit, the
height columns, degree and arithmetic-degree estimates, a trend call for
the ratio h_Y/h, and a hypothesis check, and returns everything in one
report object that the renderers turn into CSV, JSON or a text summary.

Anything that makes the numbers less trustworthy (orbit truncation,
budget stops, degenerate estimates, failed cross-checks) lands in
report.flags; purely informational notes land in report.advisories.
"""

from __future__ import annotations

import json
import math
import random
import statistics
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from . import degrees, ffield, heights, polyparse, projgeom
from .degrees import AlphaEstimate, DegreeSequence, FiberCountReport
from .heights import HeightValue
from .projgeom import ProjPoint, RationalMap, SubschemeIdeal

CSV_HEADER = "n,bits,h,hY_arch,hY_gcd,hY_total,ratio"

# trend bands for the median of the tail ratios
TREND_LOW = 0.25
TREND_HIGH = 0.75


class ConfigError(ValueError):
    """Bad scenario configuration; message names the offending field."""


_REQUIRED_KEYS = ("arity", "map", "ideal", "start", "n_max")
_OPTIONAL_KEYS = ("primes", "targets_per_prime", "composition_cap", "metadata")


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario description.

    map is a semicolon-separated list of homogeneous components; ideal is
    a list of homogeneous generators cutting out the subscheme whose
    height is tracked along the orbit.
    """
    arity: int
    map: str
    ideal: Tuple[str, ...]
    start: Tuple[int, ...]
    n_max: int
    primes: Tuple[int, ...] = ()
    targets_per_prime: int = 0
    composition_cap: int = projgeom.DEFAULT_DEGREE_BUDGET
    metadata: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not isinstance(self.arity, int) or self.arity < 2:
            raise ConfigError("arity: need an integer >= 2")
        if not isinstance(self.map, str) or not self.map.strip():
            raise ConfigError("map: need a non-empty string of components")
        parts = [p for p in self.map.split(";")]
        if len(parts) != self.arity:
            raise ConfigError("map: expected %d ';'-separated components, got %d"
                              % (self.arity, len(parts)))
        if any(not p.strip() for p in parts):
            raise ConfigError("map: empty component")
        if not self.ideal:
            raise ConfigError("ideal: need at least one generator")
        if any(not isinstance(g, str) or not g.strip() for g in self.ideal):
            raise ConfigError("ideal: generators must be non-empty strings")
        if len(self.start) != self.arity:
            raise ConfigError("start: expected %d coordinates, got %d"
                              % (self.arity, len(self.start)))
        if any(not isinstance(c, int) for c in self.start):
            raise ConfigError("start: coordinates must be integers")
        if all(c == 0 for c in self.start):
            raise ConfigError("start: coordinates must not all be zero")
        if not isinstance(self.n_max, int) or self.n_max < 0:
            raise ConfigError("n_max: need an integer >= 0")
        if any(not isinstance(p, int) for p in self.primes):
            raise ConfigError("primes: entries must be integers")
        if not isinstance(self.targets_per_prime, int) or self.targets_per_prime < 0:
            raise ConfigError("targets_per_prime: need an integer >= 0")
        if not isinstance(self.composition_cap, int) or self.composition_cap < 1:
            raise ConfigError("composition_cap: need an integer >= 1")
        for k, v in self.metadata.items():
            if not isinstance(k, str) or not isinstance(v, str):
                raise ConfigError("metadata: keys and values must be strings")

    def to_dict(self) -> Dict[str, Any]:
        return {"arity": self.arity, "map": self.map, "ideal": list(self.ideal),
                "start": list(self.start), "n_max": self.n_max,
                "primes": list(self.primes),
                "targets_per_prime": self.targets_per_prime,
                "composition_cap": self.composition_cap,
                "metadata": dict(self.metadata)}


def config_from_dict(data: Mapping[str, Any]) -> ScenarioConfig:
    """Build a config from parsed JSON, rejecting unknown keys."""
    known = set(_REQUIRED_KEYS) | set(_OPTIONAL_KEYS)
    for key in data:
        if key not in known:
            raise ConfigError("unknown config key %r" % key)
    for key in _REQUIRED_KEYS:
        if key not in data:
            raise ConfigError("missing config key %r" % key)

    def as_int(key: str, value: Any) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError("%s: need an integer" % key)
        return value

    if not isinstance(data["map"], str):
        raise ConfigError("map: need a string")
    if not isinstance(data["ideal"], (list, tuple)):
        raise ConfigError("ideal: need a list of strings")
    if not isinstance(data["start"], (list, tuple)):
        raise ConfigError("start: need a list of integers")
    if not isinstance(data.get("primes", []), (list, tuple)):
        raise ConfigError("primes: need a list of integers")
    metadata = data.get("metadata", {})
    if not isinstance(metadata, Mapping):
        raise ConfigError("metadata: need an object with string values")
    return ScenarioConfig(
        arity=as_int("arity", data["arity"]),
        map=data["map"],
        ideal=tuple(data["ideal"]),
        start=tuple(as_int("start", c) for c in data["start"]),
        n_max=as_int("n_max", data["n_max"]),
        primes=tuple(as_int("primes", p) for p in data.get("primes", [])),
        targets_per_prime=as_int("targets_per_prime",
                                 data.get("targets_per_prime", 0)),
        composition_cap=as_int("composition_cap",
                               data.get("composition_cap",
                                        projgeom.DEFAULT_DEGREE_BUDGET)),
        metadata=dict(metadata))


def load_config_file(path: str) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError("config file %s: %s" % (path, exc)) from None
    if not isinstance(data, dict):
        raise ConfigError("config file %s: top level must be an object" % path)
    return config_from_dict(data)


# ---------------------------------------------------------------------------
# built-in scenarios

BUILTIN_NAMES = ("backnonfin", "a2", "bcz", "diag")


def builtin_scenario(name: str, a: int = 2, b: int = 3) -> ScenarioConfig:
    """Named ready-made configurations.

    backnonfin: a map whose subscheme sits badly for the gcd-height
    convergence statement; the ratio climbs toward 1 instead of dropping.
    a2: a map of the same first degree whose second component couples the
    coordinates; the gcd column stays at 1 and the ratio at 0.
    bcz / diag: the diagonal morphism (a*x : b*y : z) through (1:1:1),
    where the gcd column is literally log gcd(a^n - 1, b^n - 1).
    """
    if name == "backnonfin":
        return ScenarioConfig(
            arity=3,
            map="x0^2*x1; x1^3; x2^3",
            ideal=("x0", "x1"),
            start=(3, 2, 1),
            n_max=12,
            primes=(1009, 2003, 4001),
            targets_per_prime=20,
            composition_cap=729,
            metadata={"Y in X_f^back": "no", "orbit generic": "asserted"})
    if name == "a2":
        return ScenarioConfig(
            arity=3,
            map="x0^2*x1; x1^3 + x0^2*x1 + x0*x2^2; x2^3",
            ideal=("x0", "x1"),
            start=(2, 3, 1),
            n_max=10,
            primes=(1009, 2003, 4001),
            targets_per_prime=20,
            composition_cap=81,
            metadata={"Y in X_f^back": "yes", "orbit generic": "asserted"})
    if name in ("bcz", "diag"):
        if a < 2 or b < 2:
            raise ConfigError("diag: parameters a, b must be >= 2")
        return ScenarioConfig(
            arity=3,
            map="%d*x0; %d*x1; x2" % (a, b),
            ideal=("x0 - x2", "x1 - x2"),
            start=(1, 1, 1),
            n_max=40,
            primes=(1009,),
            targets_per_prime=8,
            composition_cap=81,
            metadata={"Y in X_f^back": "yes", "morphism": "yes",
                      "orbit generic": "asserted",
                      "closed_form": "diagonal", "a": str(a), "b": str(b)})
    raise ConfigError("unknown builtin scenario %r (choose from %s)"
                      % (name, ", ".join(BUILTIN_NAMES)))


# ---------------------------------------------------------------------------
# building the geometric objects from a config


def build_scenario(config: ScenarioConfig) -> Tuple[RationalMap, SubschemeIdeal, ProjPoint]:
    """Parse and validate the map, ideal and start point.

    Raises ConfigError with the offending field for anything wrong at the
    semantic level (inhomogeneous components, zero map, bad primes, ...).
    """
    comps = []
    for i, part in enumerate(config.map.split(";")):
        try:
            comps.append(polyparse.parse(part, config.arity))
        except polyparse.PolyParseError as exc:
            raise ConfigError("map[%d]: %s" % (i, exc)) from None
    try:
        f = projgeom.make_map(comps)
    except ValueError as exc:
        raise ConfigError("map: %s" % exc) from None

    gens = []
    for i, text in enumerate(config.ideal):
        try:
            gens.append(polyparse.parse(text, config.arity))
        except polyparse.PolyParseError as exc:
            raise ConfigError("ideal[%d]: %s" % (i, exc)) from None
    try:
        ideal = projgeom.make_ideal(gens)
    except ValueError as exc:
        raise ConfigError("ideal: %s" % exc) from None

    try:
        x0 = projgeom.make_point(config.start)
    except ValueError as exc:
        raise ConfigError("start: %s" % exc) from None

    for i, p in enumerate(config.primes):
        try:
            ffield.check_prime(p)
        except ValueError as exc:
            raise ConfigError("primes[%d]: %s" % (i, exc)) from None
    return f, ideal, x0


# ---------------------------------------------------------------------------
# report structures


@dataclass
class ReportRow:
    n: int
    bits: int
    h: float
    height: HeightValue
    ratio: Optional[float]


@dataclass
class TrendReport:
    usable: int
    window: Optional[Tuple[int, int]]  # first and last n in the tail window
    tail_count: int
    median_tail: Optional[float]
    verdict: str  # "ratio -> 0" | "ratio -> 1" | "inconclusive"
    ols_slope: Optional[float] = None
    ols_intercept: Optional[float] = None
    ols_points: int = 0


@dataclass
class HypothesisReport:
    alpha: Optional[float]
    d_top: Optional[float]
    back_contained: Optional[bool]
    is_morphism: bool
    orbit_generic: bool
    verdict: str


@dataclass
class ScenarioReport:
    name: str
    seed: int
    config: ScenarioConfig
    rows: List[ReportRow]
    indeterminate_at: Optional[int]
    periodic: bool
    period_start: Optional[int]
    degree_seq: Optional[DegreeSequence]
    d1: Optional[float]
    fiber: Optional[FiberCountReport]
    alpha: Optional[AlphaEstimate]
    trend: TrendReport
    hypotheses: HypothesisReport
    hyperbolicity: Optional[degrees.HyperbolicityReport]
    genericity: Optional[degrees.GenericityReport]
    closed_form_check: Optional[str]
    advisories: List[str] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# analysis helpers


def classify_trend(rows: Sequence[ReportRow]) -> TrendReport:
    """Call the limiting behavior of h_Y/h from the tail of the series.

    The call is the median of the last ceil(u/3) usable ratios (u of
    them in total): at most TREND_LOW means the ratio is heading to 0, at
    least TREND_HIGH means it is heading to 1.  A least-squares line of
    ratio against 1/log(h) over the same window is attached as a
    diagnostic; its extrapolated intercept is noisy and never decides.
    """
    usable = [(r.n, r.h, r.ratio) for r in rows if r.ratio is not None]
    if len(usable) < 4:
        return TrendReport(usable=len(usable), window=None, tail_count=0,
                           median_tail=None, verdict="inconclusive")
    k = math.ceil(len(usable) / 3)
    tail = usable[-k:]
    med = statistics.median(r for _, _, r in tail)
    if med <= TREND_LOW:
        verdict = "ratio -> 0"
    elif med >= TREND_HIGH:
        verdict = "ratio -> 1"
    else:
        verdict = "inconclusive"

    pts = [(1.0 / math.log(h), r) for _, h, r in tail if h > 1.0]
    slope = intercept = None
    if len(pts) >= 2:
        xs = [x for x, _ in pts]
        ys = [y for _, y in pts]
        xbar = sum(xs) / len(xs)
        ybar = sum(ys) / len(ys)
        den = sum((x - xbar) ** 2 for x in xs)
        if den > 0:
            slope = sum((x - xbar) * (y - ybar) for x, y in pts) / den
            intercept = ybar - slope * xbar
    return TrendReport(usable=len(usable), window=(tail[0][0], tail[-1][0]),
                       tail_count=len(tail), median_tail=med, verdict=verdict,
                       ols_slope=slope, ols_intercept=intercept,
                       ols_points=len(pts))


def hypothesis_verdict(alpha: Optional[float], d_top: Optional[float],
                       back_contained: Optional[bool], is_morphism: bool,
                       orbit_generic: bool) -> str:
    """Pure decision rule for the convergence-statement hypotheses.

    The numeric hypothesis is sqrt(d_top) < alpha; the geometric one is
    that the subscheme lies in the locus where the statement applies
    (automatic for morphisms); genericity of the orbit must be asserted
    by the caller.  Raising alpha never downgrades the verdict.
    """
    if alpha is None or d_top is None:
        return "insufficient data: alpha or topological degree missing"
    if alpha <= math.sqrt(d_top):
        return "hypothesis fails: alpha <= sqrt(d_top)"
    if back_contained or is_morphism:
        if orbit_generic:
            return "predicts ratio -> 0"
        return "hypotheses not fully met: orbit genericity unknown"
    if back_contained is False:
        return "not applicable: subscheme outside the admissible locus"
    return "insufficient data: containment unknown"


def check_hypotheses(config: ScenarioConfig, alpha: Optional[AlphaEstimate],
                     fiber: Optional[FiberCountReport]) -> HypothesisReport:
    meta = config.metadata
    back_raw = meta.get("Y in X_f^back")
    back: Optional[bool] = None
    if back_raw is not None:
        back = back_raw.strip().lower() == "yes"
    is_morphism = meta.get("morphism", "").strip().lower() == "yes"
    generic = meta.get("orbit generic", "").strip().lower() == "asserted"
    alpha_val = None
    if alpha is not None and not alpha.degenerate:
        alpha_val = alpha.ratio_tail
    d_top = None
    if fiber is not None and fiber.mode is not None and not fiber.degenerate:
        d_top = float(fiber.mode)
    verdict = hypothesis_verdict(alpha_val, d_top, back, is_morphism, generic)
    return HypothesisReport(alpha=alpha_val, d_top=d_top, back_contained=back,
                            is_morphism=is_morphism, orbit_generic=generic,
                            verdict=verdict)


def _closed_form_check(config: ScenarioConfig, rows: Sequence[ReportRow],
                       advisories: List[str], flags: List[str]) -> Optional[str]:
    """Row-by-row comparison against the diagonal-map closed form."""
    if config.metadata.get("closed_form") != "diagonal":
        return None
    try:
        a = int(config.metadata["a"])
        b = int(config.metadata["b"])
    except (KeyError, ValueError):
        flags.append("closed-form check requested but parameters a, b missing")
        return None
    if tuple(config.start) != (1, 1, 1):
        advisories.append("closed-form cross-check skipped: start is not (1:1:1)")
        return None
    if heights.multiplicatively_dependent(a, b):
        advisories.append("parameters a=%d, b=%d are multiplicatively dependent; "
                          "gcd growth is then driven by the common base" % (a, b))
    checked = 0
    for row in rows:
        if row.n == 0:
            continue
        expected = heights.bcz_closed_form(a, b, row.n)
        got = (row.h, row.height.total, row.ratio)
        want = (expected.h, expected.h_Y, expected.ratio)
        for g, w in zip(got, want):
            if g is None or w is None:
                continue
            if abs(g - w) > 1e-9 * max(1.0, abs(w)):
                flags.append("closed-form cross-check failed at n=%d" % row.n)
                return "failed at n=%d" % row.n
        checked += 1
    if checked == 0:
        return None
    return "verified %d rows against the diagonal-map closed form" % checked


# ---------------------------------------------------------------------------
# the driver


def run_scenario(config: ScenarioConfig, name: str = "custom",
                 seed: int = 0) -> ScenarioReport:
    """Compute everything a scenario asks for; never raises past config
    validation, reporting trouble through flags instead."""
    f, ideal, x0 = build_scenario(config)
    rng = random.Random(seed)
    advisories: List[str] = []
    flags: List[str] = []

    series = heights.height_ratio_series(f, ideal, x0, config.n_max)
    rows = []
    for (n, h, hv, ratio), pt in zip(series.rows, series.orbit_points):
        bits = max(c.bit_length() for c in pt.coords)
        rows.append(ReportRow(n=n, bits=bits, h=h, height=hv, ratio=ratio))
    if series.indeterminate_at is not None:
        flags.append("orbit entered the indeterminacy locus at n=%d; "
                     "series truncated" % series.indeterminate_at)
    if series.periodic:
        flags.append("orbit is periodic (returns to the point of n=%d); "
                     "series truncated" % series.period_start)

    # degree sequence, capped so reduced degrees stay within composition_cap
    deg = f.degree
    if deg <= 1:
        n_seq = 4
    else:
        n_seq = 1
        while deg ** (n_seq + 1) <= config.composition_cap:
            n_seq += 1
    degseq = degrees.degree_sequence(f, n_seq, budget=config.composition_cap)
    d1 = degrees.d1_estimate(degseq)
    if degseq.truncated:
        flags.append("degree sequence truncated by the composition budget")

    fiber = None
    if config.primes and config.targets_per_prime > 0:
        if config.arity == 3:
            fiber = degrees.topological_degree_ff(
                f, config.primes, config.targets_per_prime, rng=rng)
            if fiber.ambiguous:
                flags.append("fiber-count mode ambiguous: candidates %s"
                             % ", ".join(map(str, fiber.modes)))
            if fiber.degenerate:
                flags.append("fiber counting degenerate "
                             "(map may fail to be dominant)")
        else:
            advisories.append("fiber counting skipped: implemented for "
                              "3 coordinates only")

    alpha = None
    if len(rows) >= 4:
        alpha = degrees.arithmetic_degree_estimate([r.h for r in rows])
        if alpha.degenerate:
            flags.append("arithmetic-degree estimate degenerate")
    else:
        advisories.append("too few orbit points for an arithmetic-degree "
                          "estimate (need 4)")

    trend = classify_trend(rows)
    hypotheses = check_hypotheses(config, alpha, fiber)

    hyper = None
    if fiber is not None and fiber.mode is not None and alpha is not None:
        hyper = degrees.hyperbolicity_report(d1, float(fiber.mode),
                                             alpha.ratio_tail)
        if hyper.advisory:
            advisories.append(hyper.advisory)

    genericity = None
    if series.orbit_points:
        genericity = degrees.orbit_genericity_heuristic(series.orbit_points)
        if genericity.verdict == "possibly-contained":
            advisories.append("orbit segment may lie on a low-degree "
                              "hypersurface; genericity is doubtful")

    closed_form = _closed_form_check(config, rows, advisories, flags)

    return ScenarioReport(
        name=name, seed=seed, config=config, rows=rows,
        indeterminate_at=series.indeterminate_at, periodic=series.periodic,
        period_start=series.period_start, degree_seq=degseq, d1=d1,
        fiber=fiber, alpha=alpha, trend=trend, hypotheses=hypotheses,
        hyperbolicity=hyper, genericity=genericity,
        closed_form_check=closed_form, advisories=advisories, flags=flags)


# ---------------------------------------------------------------------------
# rendering


def _fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    return "%.12g" % value


def _row_cells(row: ReportRow) -> List[str]:
    hv = row.height
    if hv.infinite:
        arch = gcdp = total = ratio = ""
    else:
        arch, gcdp, total = _fmt(hv.arch_part), _fmt(hv.gcd_part), _fmt(hv.total)
        ratio = _fmt(row.ratio)
    return [str(row.n), str(row.bits), _fmt(row.h), arch, gcdp, total, ratio]


def render_csv(report: ScenarioReport) -> str:
    lines = [CSV_HEADER]
    for row in report.rows:
        lines.append(",".join(_row_cells(row)))
    return "\n".join(lines) + "\n"


def _summary_dict(report: ScenarioReport) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "orbit_points": len(report.rows),
        "indeterminate_at": report.indeterminate_at,
        "periodic": report.periodic,
        "period_start": report.period_start,
        "d1_estimate": report.d1,
        "degree_sequence": [list(e) for e in report.degree_seq.entries]
        if report.degree_seq else None,
        "degree_sequence_truncated": report.degree_seq.truncated
        if report.degree_seq else None,
        "trend": {
            "usable_ratios": report.trend.usable,
            "window": list(report.trend.window) if report.trend.window else None,
            "tail_count": report.trend.tail_count,
            "median_tail": report.trend.median_tail,
            "verdict": report.trend.verdict,
            "ols_slope": report.trend.ols_slope,
            "ols_intercept": report.trend.ols_intercept,
        },
        "hypothesis_check": {
            "alpha": report.hypotheses.alpha,
            "d_top": report.hypotheses.d_top,
            "back_contained": report.hypotheses.back_contained,
            "is_morphism": report.hypotheses.is_morphism,
            "orbit_generic": report.hypotheses.orbit_generic,
            "verdict": report.hypotheses.verdict,
        },
        "closed_form_check": report.closed_form_check,
        "advisories": list(report.advisories),
    }
    if report.alpha is not None:
        out["alpha"] = {"root_tail": report.alpha.root_tail,
                        "ratio_tail": report.alpha.ratio_tail,
                        "root_index": report.alpha.root_index,
                        "ratio_steps": list(report.alpha.ratio_steps),
                        "degenerate": report.alpha.degenerate}
        out["alpha_estimates"] = [
            [n, root, step] for n, root, step in
            degrees.alpha_estimate_rows([r.h for r in report.rows])]
    else:
        out["alpha"] = None
        out["alpha_estimates"] = []
    if report.fiber is not None:
        fb = report.fiber
        out["fiber"] = {
            "histogram": [[k, v] for k, v in sorted(fb.histogram.items())],
            "by_prime": {str(p): [[k, v] for k, v in sorted(h.items())]
                         for p, h in fb.by_prime.items()},
            "modes": fb.modes, "mode": fb.mode, "ambiguous": fb.ambiguous,
            "degenerate": fb.degenerate, "failed_samples": fb.failed_samples,
            "samples": fb.samples}
    else:
        out["fiber"] = None
    if report.hyperbolicity is not None:
        hy = report.hyperbolicity
        out["hyperbolicity"] = {"d1": hy.d1, "d2": hy.d2, "alpha": hy.alpha,
                                "hyperbolic": hy.hyperbolic,
                                "alpha_matches_d1": hy.alpha_matches_d1,
                                "advisory": hy.advisory}
    else:
        out["hyperbolicity"] = None
    if report.genericity is not None:
        out["genericity"] = {"verdict": report.genericity.verdict,
                             "detail": report.genericity.detail,
                             "by_degree": {str(k): v for k, v in
                                           sorted(report.genericity.by_degree.items())}}
    else:
        out["genericity"] = None
    return out


def _json_rows(report: ScenarioReport) -> List[Dict[str, Any]]:
    out = []
    for row in report.rows:
        hv = row.height
        inf = hv.infinite
        out.append({"n": row.n, "bits": row.bits, "h": row.h,
                    "hY_arch": None if inf else hv.arch_part,
                    "hY_gcd": None if inf else hv.gcd_part,
                    "hY_total": None if inf else hv.total,
                    "ratio": None if inf else row.ratio})
    return out


def render_json(report: ScenarioReport) -> str:
    payload = {"scenario": report.name,
               "seed": report.seed,
               "config": report.config.to_dict(),
               "rows": _json_rows(report),
               "summary": _summary_dict(report),
               "flags": list(report.flags)}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_summary(report: ScenarioReport) -> str:
    lines = ["scenario %s (seed=%d)" % (report.name, report.seed)]
    if report.rows:
        lines.append("orbit: %d points, n = %d..%d, final coordinate size %d bits"
                     % (len(report.rows), report.rows[0].n, report.rows[-1].n,
                        report.rows[-1].bits))
    else:
        lines.append("orbit: no points computed")
    if report.degree_seq is not None:
        degs = ", ".join(str(d) for _, d in report.degree_seq.entries)
        lines.append("degrees of iterates: %s%s -> d1 estimate %.6g"
                     % (degs, " (truncated)" if report.degree_seq.truncated else "",
                        report.d1))
    if report.fiber is not None:
        hist = ", ".join("%d:%d" % (k, v)
                         for k, v in sorted(report.fiber.histogram.items()))
        mode = report.fiber.mode if report.fiber.mode is not None \
            else "ambiguous %s" % report.fiber.modes
        lines.append("fiber counts over F_p: {%s} -> topological degree mode %s"
                     % (hist, mode))
    if report.alpha is not None:
        lines.append("arithmetic degree: root_tail=%.6g ratio_tail=%.6g"
                     % (report.alpha.root_tail, report.alpha.ratio_tail))
    t = report.trend
    if t.median_tail is not None:
        ols = ""
        if t.ols_intercept is not None:
            ols = " (diagnostic least squares: slope=%.4g intercept=%.4g)" \
                % (t.ols_slope, t.ols_intercept)
        lines.append("height-ratio trend: median of last %d usable ratios "
                     "(n=%d..%d) = %.6g -> %s%s"
                     % (t.tail_count, t.window[0], t.window[1],
                        t.median_tail, t.verdict, ols))
    else:
        lines.append("height-ratio trend: %s (%d usable ratios)"
                     % (t.verdict, t.usable))
    lines.append("hypothesis check: %s" % report.hypotheses.verdict)
    if report.hyperbolicity is not None:
        hy = report.hyperbolicity
        lines.append("hyperbolicity: d1=%.6g d2=%.6g -> %s"
                     % (hy.d1, hy.d2,
                        "1-cohomologically hyperbolic" if hy.hyperbolic
                        else "not 1-cohomologically hyperbolic"))
    if report.genericity is not None:
        lines.append("orbit genericity: %s (%s)"
                     % (report.genericity.verdict, report.genericity.detail))
    if report.closed_form_check:
        lines.append("closed form: %s" % report.closed_form_check)
    for adv in report.advisories:
        lines.append("advisory: %s" % adv)
    for flag in report.flags:
        lines.append("flag: %s" % flag)
    return "\n".join(lines) + "\n"
