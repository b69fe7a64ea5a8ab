"""Command-line front end: scenario files, reports, sweeps, validation.

Usage:

    pvstab classify|roots|modes|sweep|validate <scenario-file>
           [--out PATH] [--seed N] [--jobs N]

A scenario file is a flat key-value document with block headers:

    [state]            one or more equilibrium blocks (keys v2 v3 H2 H3
                       Hv2 Hv3 E1 eps sigma; eps defaults to 1e-2)
    [sweep]            optional, up to two axes: parameter in
                       {E1, angle_alpha, H_mag, Hv_mag, v2, v3, eps},
                       min, max, steps
    [analysis]         optional numerics overrides: tol_eq (relative
                       equality-band coefficient), n_dirs, delta, radius,
                       series_order, decay_p, cross_check, sample

Outputs are JSON lines (classify, modes, validate) or versioned CSV
(roots, sweep); identical scenarios produce byte-identical files.  Exit
codes: 0 success, 1 I/O or parse failure, 2 validation-gate failure,
3 internal numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import criterion, dispersion
from .criterion import Verdict, classify
from .dispersion import HalfDiskRegion, default_region, find_unstable_roots, \
    make_context, scan_directions
from .errors import (ContourTooCloseError, DegenerateSymbolError,
                     NonConvergentError, PvstabError, ScenarioParseError,
                     StateValidationError)
from .modes import build_mode, growth_table, residuals
from .oracle import eigen_fmin
from .state import EquilibriumState, WaveDirection, validate_state

SWEEP_PARAMETERS = ("E1", "angle_alpha", "H_mag", "Hv_mag", "v2", "v3", "eps")

_MODE_N = (1, 10, 100)
_MODE_T = (0.01, 0.1, 1.0)


@dataclass(frozen=True)
class SweepAxis:
    parameter: str
    min: float
    max: float
    steps: int

    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.steps)


@dataclass
class AnalysisOptions:
    tol_eq: float = 1e-9        # relative coefficient, scaled per state
    n_dirs: int = 32
    delta: float | None = None  # region overrides (absolute)
    radius: float | None = None
    series_order: int = 2
    decay_p: float = 3.0
    cross_check: bool = False
    sample: int = 200

    def tol_for(self, state: EquilibriumState) -> float:
        return criterion.default_tol_eq(state, coeff=self.tol_eq)

    def region_for(self, state: EquilibriumState) -> HalfDiskRegion | None:
        if self.delta is None and self.radius is None:
            return None
        base = default_region(state)
        return HalfDiskRegion(self.delta if self.delta is not None else base.delta,
                              self.radius if self.radius is not None else base.radius)


@dataclass(frozen=True)
class GridPoint:
    state: EquilibriumState
    coords: tuple[tuple[str, float], ...]  # swept (parameter, value) pairs


@dataclass
class Scenario:
    states: list[EquilibriumState]
    sweeps: list[SweepAxis] = field(default_factory=list)
    analysis: AnalysisOptions = field(default_factory=AnalysisOptions)
    warnings: list[str] = field(default_factory=list)

    def grid(self) -> list[GridPoint]:
        """States crossed with the sweep grid (identity when no sweep)."""
        points = []
        for st in self.states:
            stack = [(st, ())]
            for axis in self.sweeps:
                stack = [(apply_sweep_parameter(s, axis.parameter, float(v)),
                          coords + ((axis.parameter, float(v)),))
                         for s, coords in stack for v in axis.values()]
            points.extend(GridPoint(s, coords) for s, coords in stack)
        return points


def apply_sweep_parameter(state: EquilibriumState, name: str,
                          value: float) -> EquilibriumState:
    """Return a copy of ``state`` with one swept parameter replaced.

    ``H_mag``/``Hv_mag`` rescale the field keeping its direction (a zero
    field is given direction (1, 0)); ``angle_alpha`` rotates Hv' to the
    angle alpha measured from H', keeping |Hv'|.
    """
    if name == "E1":
        return dataclasses.replace(state, E1_hat=value)
    if name == "eps":
        return dataclasses.replace(state, eps=value)
    if name == "v2":
        return dataclasses.replace(state, v_hat_t=(value, state.v_hat_t[1]))
    if name == "v3":
        return dataclasses.replace(state, v_hat_t=(state.v_hat_t[0], value))
    if name == "H_mag":
        h = math.sqrt(state.H_sq)
        u = (state.H_hat_t[0] / h, state.H_hat_t[1] / h) if h > 0 else (1.0, 0.0)
        return dataclasses.replace(state, H_hat_t=(value * u[0], value * u[1]))
    if name == "Hv_mag":
        h = math.sqrt(state.Hv_sq)
        u = (state.Hv_hat_t[0] / h, state.Hv_hat_t[1] / h) if h > 0 else (1.0, 0.0)
        return dataclasses.replace(state, Hv_hat_t=(value * u[0], value * u[1]))
    if name == "angle_alpha":
        theta = math.atan2(state.H_hat_t[1], state.H_hat_t[0]) + value
        mag = math.sqrt(state.Hv_sq)
        return dataclasses.replace(
            state, Hv_hat_t=(mag * math.cos(theta), mag * math.sin(theta)))
    raise ScenarioParseError(f"unknown sweep parameter {name!r}")


# ---------------------------------------------------------------------------
# scenario parsing


_STATE_KEYS = set(EquilibriumState.RECORD_KEYS)
_SWEEP_KEYS = {"parameter", "min", "max", "steps"}
_ANALYSIS_KEYS = {"tol_eq", "n_dirs", "delta", "radius", "series_order",
                  "decay_p", "cross_check", "sample"}


def _parse_bool(text: str, line: int) -> bool:
    t = text.strip().lower()
    if t in ("true", "1", "yes", "on"):
        return True
    if t in ("false", "0", "no", "off"):
        return False
    raise ScenarioParseError(f"expected a boolean, got {text!r}", line)


def parse_scenario(path) -> Scenario:
    """Parse and validate a scenario file (see module docstring for format)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()

    state_blocks: list[tuple[int, dict]] = []
    sweep_blocks: list[tuple[int, dict]] = []
    analysis_block: dict = {}
    current: dict | None = None
    current_kind = ""

    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        if text.startswith("["):
            kind = text.strip("[]").strip().lower()
            if kind == "state":
                current = {}
                state_blocks.append((lineno, current))
            elif kind == "sweep":
                current = {}
                sweep_blocks.append((lineno, current))
            elif kind == "analysis":
                current = analysis_block
            else:
                raise ScenarioParseError(f"unknown block [{kind}]", lineno)
            current_kind = kind
            continue
        if "=" not in text:
            raise ScenarioParseError(f"expected 'key = value', got {text!r}", lineno)
        if current is None:
            raise ScenarioParseError("key outside of any [state]/[sweep]/[analysis] block",
                                     lineno)
        key, value = (part.strip() for part in text.split("=", 1))
        allowed = {"state": _STATE_KEYS, "sweep": _SWEEP_KEYS,
                   "analysis": _ANALYSIS_KEYS}[current_kind]
        if key not in allowed:
            raise ScenarioParseError(f"unknown key {key!r} in [{current_kind}] block",
                                     lineno)
        current[key] = (value, lineno)

    if not state_blocks:
        raise ScenarioParseError("scenario contains no [state] block")
    if len(sweep_blocks) > 2:
        raise ScenarioParseError("at most 2 swept axes are supported",
                                 sweep_blocks[2][0])

    def fnum(block, key, default, lineno):
        if key not in block:
            if default is None:
                raise ScenarioParseError(f"missing required key {key!r}", lineno)
            return default
        value, ln = block[key]
        try:
            return float(value)
        except ValueError:
            raise ScenarioParseError(f"bad number for {key!r}: {value!r}", ln) from None

    scenario_warnings = []
    states = []
    for lineno, block in state_blocks:
        record = {k: v for k, (v, _) in block.items()}
        try:
            st = EquilibriumState.from_record(record)
        except ValueError as err:
            raise ScenarioParseError(f"bad [state] block: {err}", lineno) from None
        try:
            st, warns = validate_state(st)
        except StateValidationError as err:
            raise ScenarioParseError(f"invalid [state] block: {err}", lineno) from None
        scenario_warnings.extend(f"state at line {lineno}: {w}" for w in warns)
        states.append(st)

    sweeps = []
    for lineno, block in sweep_blocks:
        if "parameter" not in block:
            raise ScenarioParseError("sweep block needs a 'parameter' key", lineno)
        pname, pln = block["parameter"]
        if pname not in SWEEP_PARAMETERS:
            raise ScenarioParseError(
                f"sweep parameter must be one of {SWEEP_PARAMETERS}, got {pname!r}", pln)
        if "steps" not in block:
            raise ScenarioParseError("sweep block needs a 'steps' key", lineno)
        steps_raw, sln = block["steps"]
        try:
            steps = int(steps_raw)
        except ValueError:
            raise ScenarioParseError(
                f"bad integer for 'steps': {steps_raw!r}", sln) from None
        if steps < 2:
            raise ScenarioParseError("sweep needs steps >= 2", lineno)
        sweeps.append(SweepAxis(parameter=pname,
                                min=fnum(block, "min", None, lineno),
                                max=fnum(block, "max", None, lineno),
                                steps=steps))

    analysis = AnalysisOptions()
    for key, (value, ln) in analysis_block.items():
        if key == "cross_check":
            analysis.cross_check = _parse_bool(value, ln)
        elif key in ("n_dirs", "series_order", "sample"):
            try:
                setattr(analysis, key, int(value))
            except ValueError:
                raise ScenarioParseError(f"bad integer for {key!r}: {value!r}", ln) from None
        else:
            try:
                setattr(analysis, key, float(value))
            except ValueError:
                raise ScenarioParseError(f"bad number for {key!r}: {value!r}", ln) from None

    return Scenario(states=states, sweeps=sweeps, analysis=analysis,
                    warnings=scenario_warnings)


# ---------------------------------------------------------------------------
# output helpers


class _Output:
    """Writes to a path or stdout ('-'); buffers so outputs are atomic-ish."""

    def __init__(self, path: str):
        self.path = path
        self.buffer = io.StringIO()

    def write(self, text: str):
        self.buffer.write(text)

    def line(self, text: str):
        self.buffer.write(text + "\n")

    def flush(self):
        data = self.buffer.getvalue()
        if self.path == "-":
            sys.stdout.write(data)
        else:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(data)


def _json_line(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False, separators=(", ", ": "))


def _state_params(state: EquilibriumState) -> dict:
    return {k: float(v) for k, v in
            zip(EquilibriumState.RECORD_KEYS,
                (*state.v_hat_t, *state.H_hat_t, *state.Hv_hat_t,
                 state.E1_hat, state.eps, state.sigma))}


def _map_jobs(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# commands


def cmd_classify(scenario: Scenario, out: _Output, jobs: int = 1) -> int:
    grid = scenario.grid()

    def one(item):
        index, point = item
        try:
            cls = classify(point.state, tol_eq=scenario.analysis.tol_for(point.state))
            _, warns = validate_state(point.state)
            rec = {"index": index, **dict(point.coords),
                   **_state_params(point.state), **cls.to_record(),
                   "warnings": warns}
        except PvstabError as err:
            rec = {"index": index, "error": str(err)}
        return rec

    records = _map_jobs(one, list(enumerate(grid)), jobs)
    for rec in records:
        out.line(_json_line(rec))
    failed = sum(1 for r in records if "error" in r)
    return 3 if records and failed == len(records) else 0


def cmd_roots(scenario: Scenario, out: _Output, jobs: int = 1) -> int:
    grid = scenario.grid()
    analysis = scenario.analysis

    def one(item):
        index, point = item
        region = analysis.region_for(point.state)
        summary = scan_directions(point.state, n_dirs=analysis.n_dirs,
                                  region=region, locate=True)
        rows = []
        for rec in summary.records:
            base = {
                "index": index,
                "omega2": rec.direction.omega2, "omega3": rec.direction.omega3,
                "winding": rec.count,
                "delta": rec.region.delta if rec.region else "",
                "R": rec.region.radius if rec.region else "",
                "contour_points": rec.contour_points or "",
                "error": rec.error or "",
            }
            if rec.report is not None and rec.report.roots:
                for root, res in zip(rec.report.roots, rec.report.residuals):
                    rows.append({**base, "re_s": root.real, "im_s": root.imag,
                                 "abs_L": res})
            else:
                rows.append({**base, "re_s": "", "im_s": "", "abs_L": ""})
        return rows

    columns = ["index", "omega2", "omega3", "winding", "re_s", "im_s",
               "abs_L", "delta", "R", "contour_points", "error"]
    out.line("# pvstab-csv v1")
    writer = csv.DictWriter(out.buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for rows in _map_jobs(one, list(enumerate(grid)), jobs):
        for row in rows:
            writer.writerow({k: _csv_cell(row[k]) for k in columns})
    return 0


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _expected_growth(state: EquilibriumState, cls):
    """Leading-order growth rate and the direction carrying it.

    Above the threshold the growing root sits at sqrt(margin) along the
    F-minimizer; on the critical set it opens at sqrt(eps) scale wherever
    the sign product is positive (any direction minimizes F in the
    degenerate constant-F case, so those states are searched over a fan).
    """
    if cls.margin > cls.tol_eq:
        return math.sqrt(cls.margin), cls.minimizer
    candidates = [cls.minimizer]
    if cls.degenerate:
        candidates += [WaveDirection.from_angle(math.pi * k / 32)
                       for k in range(32)]
    best, best_dir = 0.0, cls.minimizer
    for d in candidates:
        bundle = dispersion.make_context(state, d).bundle
        product = 2.0 * state.E1_hat * bundle.w_perp * bundle.v_dot
        if product > 0 and math.sqrt(product * state.eps) > best:
            best, best_dir = math.sqrt(product * state.eps), d
    return best, best_dir


def cmd_modes(scenario: Scenario, out: _Output, jobs: int = 1) -> int:
    analysis = scenario.analysis
    grid = scenario.grid()
    wrote_any = False
    for index, point in enumerate(grid):
        state = point.state
        cls = classify(state, tol_eq=analysis.tol_for(state))
        if not cls.verdict.is_unstable:
            continue
        expected, direction = _expected_growth(state, cls)
        if expected <= 0.0:
            continue
        region = analysis.region_for(state) or default_region(state)
        region = HalfDiskRegion(min(region.delta, 0.3 * expected), region.radius)
        ctx = make_context(state, direction)
        try:
            report = find_unstable_roots(ctx, region)
        except PvstabError as err:
            out.line(_json_line({"index": index, "error": str(err)}))
            continue
        if not report.roots:
            continue
        root = max(report.roots, key=lambda z: z.real)
        growth = growth_table(state, root, direction, _MODE_N, _MODE_T,
                              decay_p=analysis.decay_p)
        for n in _MODE_N:
            try:
                mode = build_mode(state, root, direction, n,
                                  decay_p=analysis.decay_p)
            except DegenerateSymbolError as err:
                out.line(_json_line({"index": index, "n": n, "error": str(err)}))
                continue
            res = residuals(mode, state)
            rec = {"index": index, **mode.to_record(),
                   "residuals": {
                       "interior_plasma": res.interior_plasma,
                       "interior_vacuum": res.interior_vacuum,
                       **{k: v for k, v in res.boundary_detail.items()},
                       "constraints": res.constraints,
                       "scale": res.scale},
                   "growth": [{"t": g.t, "initial_norm": g.initial_norm,
                               "ratio": g.ratio, "log_ratio": g.log_ratio}
                              for g in growth if g.n == n]}
            out.line(_json_line(rec))
            wrote_any = True
    if not wrote_any:
        out.line(_json_line({"note": "no unstable state/direction found; "
                                     "no modes to dump"}))
    return 0


def cmd_sweep(scenario: Scenario, out: _Output, jobs: int = 1) -> int:
    if not scenario.sweeps:
        raise ScenarioParseError("sweep command requires a [sweep] block")
    analysis = scenario.analysis
    grid = scenario.grid()
    coord_names = [ax.parameter for ax in scenario.sweeps]

    def one(item):
        index, point = item
        row = {"index": index}
        row.update({f"sweep_{k}": v for k, v in point.coords})
        row.update(_state_params(point.state))
        try:
            cls = classify(point.state, tol_eq=analysis.tol_for(point.state))
            row.update(cls.to_record())
            row["error"] = ""
            if analysis.cross_check:
                summary = scan_directions(point.state, n_dirs=analysis.n_dirs,
                                          region=analysis.region_for(point.state),
                                          locate=True)
                row["numeric_unstable"] = summary.numerically_unstable
                row["max_re_s"] = summary.max_re_s if summary.max_re_s is not None else ""
                verdict = Verdict(row["verdict"])
                if verdict is Verdict.VIOLENTLY_UNSTABLE:
                    row["agreement"] = summary.numerically_unstable
                elif verdict is Verdict.NEUTRALLY_STABLE:
                    row["agreement"] = not summary.numerically_unstable
                else:
                    row["agreement"] = True  # band: not decidable at fixed eps
            else:
                row["numeric_unstable"] = row["max_re_s"] = row["agreement"] = ""
        except PvstabError as err:
            for key in ("verdict", "margin", "f_min", "omega_star_2",
                        "omega_star_3", "G", "degenerate_flag",
                        "numeric_unstable", "max_re_s", "agreement"):
                row.setdefault(key, "")
            row["error"] = str(err)
        return row

    columns = (["index"] + [f"sweep_{k}" for k in coord_names]
               + list(EquilibriumState.RECORD_KEYS)
               + ["verdict", "margin", "f_min", "omega_star_2", "omega_star_3",
                  "G", "degenerate_flag", "numeric_unstable", "max_re_s",
                  "agreement", "error"])
    out.line("# pvstab-csv v1")
    writer = csv.DictWriter(out.buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in _map_jobs(one, list(enumerate(grid)), jobs):
        writer.writerow({k: _csv_cell(row.get(k, "")) for k in columns})
    return 0


def margin_band(state: EquilibriumState, tol_eq: float) -> float:
    """Half-width of the margin interval not decidable numerically at fixed eps.

    The classification criterion is asymptotic (valid for eps below a
    state-dependent ceiling), while the winding scan runs at the state's
    actual eps with a contour offset delta.  Near the critical set the
    finite-eps root shifts by O(eps * E1 * |Hv'| * (1 + |v'|)) in the squared
    growth rate, and roots with Re s <= delta are undetectable, so agreement
    can only be asserted outside the band below.
    """
    e1, hv, vm = abs(state.E1_hat), math.sqrt(state.Hv_sq), math.sqrt(state.v_sq)
    a = 2.0 * state.eps * e1 * hv * vm + (state.eps * e1 * hv) ** 2
    smax = e1 + vm
    b = (state.eps * smax) ** 2 * (state.Hv_sq + 0.5 * (smax ** 2 + state.H_sq))
    delta = default_region(state).delta
    return 10.0 * tol_eq + 2.5 * (a + b) + 9.0 * delta ** 2


def sample_validation_state(rng: np.random.Generator) -> EquilibriumState:
    """Random state straddling the stability boundary.

    Components uniform in [-2, 2], eps fixed at 1e-2, and E1 uniform in
    [0, 1.5*sqrt(F_min + 1)] so that both verdicts occur with comparable
    frequency.
    """
    v = rng.uniform(-2.0, 2.0, 2)
    H = rng.uniform(-2.0, 2.0, 2)
    Hv = rng.uniform(-2.0, 2.0, 2)
    st = EquilibriumState(v_hat_t=(float(v[0]), float(v[1])),
                          H_hat_t=(float(H[0]), float(H[1])),
                          Hv_hat_t=(float(Hv[0]), float(Hv[1])),
                          E1_hat=0.0, eps=1e-2)
    e1 = float(rng.uniform(0.0, 1.5 * math.sqrt(eigen_fmin(st) + 1.0)))
    return dataclasses.replace(st, E1_hat=e1)


def cmd_validate(scenario: Scenario, out: _Output, seed: int = 0,
                 jobs: int = 1) -> int:
    """Criterion-versus-numerics gate on random margin-filtered states.

    Draws states until ``analysis.sample`` of them fall outside the margin
    band, scans each for right-half-plane roots, and requires the winding
    verdict to agree with the closed-form verdict on every one.  Band states
    are counted but not judged; root-finder failures are excluded from the
    denominator and reported separately.
    """
    analysis = scenario.analysis
    rng = np.random.default_rng(seed)
    target = analysis.sample
    accepted: list[tuple[EquilibriumState, criterion.Classification]] = []
    n_band = 0
    max_attempts = 1000 * max(target, 1)
    attempts = 0
    while len(accepted) < target and attempts < max_attempts:
        attempts += 1
        st = sample_validation_state(rng)
        cls = classify(st, tol_eq=analysis.tol_for(st))
        if abs(cls.margin) <= margin_band(st, cls.tol_eq):
            n_band += 1
            continue
        accepted.append((st, cls))

    def one(item):
        index, (st, cls) = item
        rec = {"index": index, **_state_params(st),
               "verdict": cls.verdict.value, "margin": cls.margin,
               "band": margin_band(st, cls.tol_eq)}
        try:
            summary = scan_directions(st, n_dirs=analysis.n_dirs,
                                      region=analysis.region_for(st),
                                      locate=True)
            if summary.n_errors:
                errs = [r.error for r in summary.records if r.error]
                rec["error"] = f"{summary.n_errors} direction(s) failed: {errs[0]}"
            else:
                rec["numeric_unstable"] = summary.numerically_unstable
                rec["max_re_s"] = summary.max_re_s
                rec["agree"] = (cls.verdict.is_unstable == summary.numerically_unstable)
        except PvstabError as err:
            rec["error"] = str(err)
        return rec

    records = _map_jobs(one, list(enumerate(accepted)), jobs)
    n_failed = sum(1 for r in records if "error" in r)
    judged = [r for r in records if "agree" in r]
    n_disagree = sum(1 for r in records if r.get("agree") is False)
    agreement = 1.0 if not judged else 1.0 - n_disagree / len(judged)
    for rec in records:
        out.line(_json_line(rec))
    out.line(_json_line({"summary": {
        "sampled": attempts, "band": n_band, "checked": len(judged),
        "root_finder_failures": n_failed, "disagreements": n_disagree,
        "agreement": agreement, "seed": seed}}))
    return 0 if n_disagree == 0 and judged else (2 if n_disagree else 3)


# ---------------------------------------------------------------------------
# entry point


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pvstab",
        description="Stability analysis of planar plasma-vacuum interfaces "
                    "with a nonzero vacuum displacement current.")
    parser.add_argument("command",
                        choices=("classify", "roots", "modes", "sweep", "validate"))
    parser.add_argument("scenario", help="scenario file path")
    parser.add_argument("--out", default="-",
                        help="output path ('-' for stdout, the default)")
    parser.add_argument("--seed", type=int, default=0,
                        help="RNG seed for validate sampling")
    parser.add_argument("--jobs", type=int, default=1,
                        help="concurrent per-state workers")
    args = parser.parse_args(argv)

    try:
        scenario = parse_scenario(args.scenario)
    except (OSError, ScenarioParseError) as err:
        print(f"pvstab: {err}", file=sys.stderr)
        return 1

    for warning in scenario.warnings:
        print(f"pvstab: warning: {warning}", file=sys.stderr)

    out = _Output(args.out)
    try:
        if args.command == "classify":
            code = cmd_classify(scenario, out, jobs=args.jobs)
        elif args.command == "roots":
            code = cmd_roots(scenario, out, jobs=args.jobs)
        elif args.command == "modes":
            code = cmd_modes(scenario, out, jobs=args.jobs)
        elif args.command == "sweep":
            code = cmd_sweep(scenario, out, jobs=args.jobs)
        else:
            code = cmd_validate(scenario, out, seed=args.seed, jobs=args.jobs)
    except ScenarioParseError as err:
        print(f"pvstab: {err}", file=sys.stderr)
        return 1
    except (ContourTooCloseError, NonConvergentError, PvstabError) as err:
        print(f"pvstab: numerical failure: {err}", file=sys.stderr)
        return 3
    except OSError as err:
        print(f"pvstab: {err}", file=sys.stderr)
        return 1

    try:
        out.flush()
    except OSError as err:
        print(f"pvstab: {err}", file=sys.stderr)
        return 1
    return code
