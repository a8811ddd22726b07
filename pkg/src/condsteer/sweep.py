"""Parameter sweeps over state families and bisection for detection thresholds."""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np
from joblib import Parallel, delayed

from .errors import NumericalError, ValidationError
from .families import Family, get_family
from .tripartite import (
    Cut,
    ScanVerdict,
    conditional_steering_scan,
    default_grid,
    facet15_L2,
    genuine_steering_ghz_symmetric,
    ghz_distillable,
    mermin_L1,
    negativity,
    scan_settings,
)

MODES = ("fixed", "grid")


@dataclass(frozen=True)
class Axis:
    """Swept parameter ``name`` over ``start, start + step, ...`` up to ``stop`` inclusive."""

    name: str
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise ValidationError(f"step for {self.name!r} must be positive")
        if self.stop < self.start:
            raise ValidationError(f"empty range for {self.name!r}: stop < start")

    def values(self) -> np.ndarray:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return np.round(self.start + self.step * np.arange(n), 12)

    @classmethod
    def parse(cls, text: str, parse_number=float) -> "Axis":
        """``"p=0:1:0.001"`` -> Axis("p", 0, 1, 0.001)."""
        name, sep, rng = text.partition("=")
        parts = rng.split(":")
        if not sep or len(parts) != 3:
            raise ValidationError(f"expected name=start:stop:step, got {text!r}")
        return cls(name.strip(), *(parse_number(x) for x in parts))


@dataclass
class SweepSpec:
    family: str
    axes: Sequence[Axis]
    fixed: Mapping[str, float] = field(default_factory=dict)
    mode: str = "fixed"
    theta_steps: int = 40
    convention: str = "sqrt"
    out: str | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}")
        if not self.axes:
            raise ValidationError("a sweep needs at least one swept parameter")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names) or set(names) & set(self.fixed):
            raise ValidationError("a parameter is listed twice (swept and/or fixed)")


def evaluate_scan(family: Family, params: Mapping[str, float], mode: str, theta_steps: int = 40,
                  convention: str = "sqrt", state=None) -> ScanVerdict:
    rho = family.state(params, convention) if state is None else state
    if mode == "fixed":
        return scan_settings(rho, family.settings(params))
    if mode == "grid":
        return conditional_steering_scan(rho, default_grid(theta_steps))
    raise ValidationError(f"mode must be one of {MODES}")


def _value_columns(family: Family) -> list[str]:
    cols = ["s1", "s2", "M"] + [f"neg_{c.value}" for c in Cut]
    if family.name == "ghz-symmetric":
        cols += ["L1", "L2"]
    return cols


def _flag_columns(family: Family) -> list[str]:
    cols = ["valid", "s1_detects", "s2_detects", "chsh_nonlocal", "conditionally_steerable", "ghz_distillable"]
    if family.name == "ghz-symmetric":
        cols += ["mermin_violated", "facet15_violated", "genuine_steering"]
    return cols


def evaluate_point(family: Family, params: Mapping[str, float], mode: str = "fixed",
                   theta_steps: int = 40, convention: str = "sqrt") -> dict:
    """Every criterion value and flag for one parameter point.

    Points outside a family's valid region get ``valid = 0`` and NaN values.
    """
    values = dict.fromkeys(_value_columns(family), math.nan)
    flags = dict.fromkeys(_flag_columns(family), False)
    try:
        rho = family.state(params, convention)
    except ValidationError:
        return {**values, **flags}
    verdict = evaluate_scan(family, params, mode, theta_steps, convention, state=rho)
    values.update(s1=verdict.min_s1, s2=verdict.max_s2, M=verdict.max_M)
    for c in Cut:
        values[f"neg_{c.value}"] = negativity(rho, c)
    flags.update(
        valid=True,
        s1_detects=verdict.s1_detects,
        s2_detects=verdict.s2_detects,
        chsh_nonlocal=verdict.chsh_nonlocal,
        conditionally_steerable=verdict.conditionally_steerable,
        ghz_distillable=ghz_distillable(rho),
    )
    if family.name == "ghz-symmetric":
        p, q = params["p"], params["q"]
        values.update(L1=mermin_L1(p), L2=facet15_L2(p, q))
        flags.update(
            mermin_violated=values["L1"] > 2,
            facet15_violated=values["L2"] > 4,
            genuine_steering=genuine_steering_ghz_symmetric(p),
        )
    return {**values, **flags}


def run_sweep(spec: SweepSpec, n_jobs: int | None = None) -> list[dict]:
    """Rows in lexicographic grid order (first axis slowest)."""
    family = get_family(spec.family)
    names = [a.name for a in spec.axes]
    family.resolve({**spec.fixed, **dict.fromkeys(names, 0.0)})
    points = list(itertools.product(*(a.values() for a in spec.axes)))

    def one(point):
        params = {**spec.fixed, **dict(zip(names, map(float, point)))}
        return {**dict(zip(names, map(float, point))),
                **evaluate_point(family, params, spec.mode, spec.theta_steps, spec.convention)}

    if n_jobs in (None, 1):
        return [one(pt) for pt in points]
    return Parallel(n_jobs=n_jobs)(delayed(one)(pt) for pt in points)


def format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    return f"{float(v):.12g}"


def rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0])
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(row[k]) for k in header])
    return buf.getvalue()


def write_csv(rows: Sequence[dict], path: str) -> None:
    try:
        with open(path, "w", newline="") as fh:
            fh.write(rows_to_csv(rows))
    except OSError as exc:
        raise ValidationError(f"cannot write {path}: {exc}") from None


# -- thresholds ---------------------------------------------------------------

STEERING_PREDICATES = ("s1-detects", "s2-detects", "any-steering", "chsh-nonlocal")


def parse_predicate(text: str) -> tuple[str, Cut | None]:
    """``s1-detects`` etc., or ``negativity-positive:2|13`` / ``negativity-positive(2|13)``."""
    if text in STEERING_PREDICATES:
        return text, None
    if text.startswith("negativity-positive"):
        arg = text[len("negativity-positive"):].strip("():")
        return "negativity-positive", Cut.parse(arg)
    raise ValidationError(
        f"unknown predicate {text!r}; use one of {list(STEERING_PREDICATES)} or negativity-positive:<cut>"
    )


@dataclass
class ThresholdSpec:
    family: str
    noise_param: str
    lo: float
    hi: float
    predicate: str
    fixed: Mapping[str, float] = field(default_factory=dict)
    tol: float = 1e-4
    mode: str = "fixed"
    theta_steps: int = 40
    convention: str = "sqrt"
    prescan_step: float = 1e-3

    def __post_init__(self):
        if not self.hi > self.lo:
            raise ValidationError("bracket must satisfy lo < hi")
        if not self.tol > 0 or not self.prescan_step > 0:
            raise ValidationError("tol and prescan_step must be positive")
        if self.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}")
        if self.noise_param in self.fixed:
            raise ValidationError(f"{self.noise_param!r} is both bisected and fixed")
        parse_predicate(self.predicate)


@dataclass(frozen=True)
class ThresholdResult:
    threshold: float
    holds: str  # "above" or "below"
    interval: tuple[float, float]
    evaluations: int

    def as_dict(self) -> dict:
        return {"threshold": self.threshold, "holds": self.holds,
                "interval": list(self.interval), "evaluations": self.evaluations}


def make_predicate(spec: ThresholdSpec) -> Callable[[float], bool]:
    family = get_family(spec.family)
    kind, cut = parse_predicate(spec.predicate)

    def pred(x: float) -> bool:
        params = {**spec.fixed, spec.noise_param: float(x)}
        if kind == "negativity-positive":
            return negativity(family.state(params, spec.convention), cut) > 1e-10
        v = evaluate_scan(family, params, spec.mode, spec.theta_steps, spec.convention)
        return {
            "s1-detects": v.s1_detects,
            "s2-detects": v.s2_detects,
            "any-steering": v.conditionally_steerable,
            "chsh-nonlocal": v.chsh_nonlocal,
        }[kind]

    family.resolve({**spec.fixed, spec.noise_param: spec.lo})
    return pred


def bisect_threshold(pred: Callable[[float], bool], lo: float, hi: float, tol: float = 1e-4,
                     prescan_step: float = 1e-3) -> ThresholdResult:
    """Locate the single switch of a boolean predicate on ``[lo, hi]``.

    A pre-scan at ``prescan_step`` rejects brackets with no switch or more than
    one; the cell containing the switch is then bisected down to ``tol``. The
    returned threshold is the end of the final interval where the predicate holds.
    """
    n = max(2, int(math.ceil((hi - lo) / prescan_step - 1e-9)) + 1)
    xs = np.linspace(lo, hi, n)
    vals = [pred(float(x)) for x in xs]
    switches = [i for i in range(n - 1) if vals[i] != vals[i + 1]]
    if not switches:
        raise NumericalError(f"predicate is {vals[0]} at both ends of the bracket [{lo}, {hi}]")
    if len(switches) > 1:
        raise NumericalError("predicate not monotone in bracket")
    i = switches[0]
    a, b = float(xs[i]), float(xs[i + 1])
    holds_above = vals[-1]
    evaluations = n
    while b - a > tol:
        mid = 0.5 * (a + b)
        evaluations += 1
        if pred(mid) == holds_above:
            b = mid
        else:
            a = mid
    return ThresholdResult(b if holds_above else a, "above" if holds_above else "below", (a, b), evaluations)


def find_threshold(spec: ThresholdSpec) -> ThresholdResult:
    return bisect_threshold(make_predicate(spec), spec.lo, spec.hi, spec.tol, spec.prescan_step)
