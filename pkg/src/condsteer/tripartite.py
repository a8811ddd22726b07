"""Tripartite quantities: per-cut negativity, GHZ distillability, Mermin and facet-15
bounds for GHZ-symmetric states, and the conditional-steering scan."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import pi, sqrt
from typing import Iterable, Sequence

import numpy as np

from .conditioning import BlochDirection, ZERO_PROBABILITY, condition, projector
from .errors import NumericalError, ValidationError
from .qmat import DensityMatrix, partial_transpose, trace_norm
from .states import GhzSymmetricParams
from .steering import steering_report

PARTY_NAMES = ("A", "B", "C")

#: Negativity must exceed this to count as positive.
NEGATIVITY_TOL = 1e-10


class Cut(enum.Enum):
    """One-vs-rest bipartition; the value names the singleton party (1-based)."""

    A_BC = "1|23"
    B_AC = "2|13"
    C_AB = "3|12"

    @property
    def singleton(self) -> int:
        return int(self.value[0]) - 1

    @classmethod
    def parse(cls, cut) -> "Cut":
        if isinstance(cut, cls):
            return cut
        if isinstance(cut, (int, np.integer)):
            if 0 <= cut <= 2:
                return list(cls)[int(cut)]
            raise ValidationError("subsystem out of range")
        for c in cls:
            if cut in (c.value, c.name):
                return c
        raise ValidationError(f"unknown cut {cut!r}; expected one of 1|23, 2|13, 3|12")


def negativity(rho: DensityMatrix, cut) -> float:
    """``(||rho^{T_x}||_1 - 1) / (d - 1)`` with ``x`` the singleton side of ``cut``."""
    if rho.dims != (2, 2, 2):
        raise ValidationError(f"expected a three-qubit state, got dims {rho.dims}")
    cut = Cut.parse(cut)
    d = rho.dims[cut.singleton]
    return max(0.0, (trace_norm(partial_transpose(rho, cut.singleton)) - 1.0) / (d - 1))


def negativities(rho: DensityMatrix) -> dict[str, float]:
    return {c.value: negativity(rho, c) for c in Cut}


def ghz_distillable(rho: DensityMatrix) -> bool:
    """Negativity strictly positive across all three one-vs-rest cuts."""
    return all(negativity(rho, c) > NEGATIVITY_TOL for c in Cut)


def mermin_L1(p: float) -> float:
    return 8.0 * abs(p)


def facet15_L2(p: float, q: float) -> float:
    """Facet-15 bound for the GHZ-symmetric state (p, q).

    Falls back to ``-16 sqrt3 |q|`` where ``9p^2 - 12q^2`` vanishes.
    """
    params = GhzSymmetricParams(p, q)
    p, q = params.p, params.q
    second = -16.0 * sqrt(3.0) * abs(q)
    denom = 9 * p * p - 12 * q * q
    if abs(denom) <= 1e-12:
        return second
    first = 8.0 * (9 * abs(p) ** 3 - 8 * sqrt(3.0) * abs(q) ** 3) / denom
    return max(first, second)


def mermin_violated(p: float) -> bool:
    return mermin_L1(p) > 2


def facet15_violated(p: float, q: float) -> bool:
    return facet15_L2(p, q) > 4


def genuine_steering_ghz_symmetric(p: float) -> bool:
    return abs(p) > 0.25


# -- conditional steering scan ------------------------------------------------


@dataclass(frozen=True)
class MeasurementSetting:
    """``party`` measures along ``direction``; ``steerer`` tries to steer the third party.

    ``outcome=None`` means both outcomes, ``steerer=None`` both steering directions.
    """

    party: int
    direction: BlochDirection
    outcome: int | None = None
    steerer: int | None = None

    def __post_init__(self):
        if self.party not in (0, 1, 2):
            raise ValidationError("subsystem out of range")
        if self.outcome not in (None, 1, -1):
            raise ValidationError(f"outcome must be +1, -1 or None, got {self.outcome}")
        if self.steerer is not None and (self.steerer == self.party or self.steerer not in (0, 1, 2)):
            raise ValidationError("steerer must be one of the two unmeasured parties")


@dataclass(frozen=True)
class Witness:
    party: int
    direction: BlochDirection
    outcome: int
    steerer: int
    trusted: int
    criterion: str
    value: float

    def as_dict(self) -> dict:
        return {
            "measuring_party": PARTY_NAMES[self.party],
            "theta": self.direction.theta,
            "phi": self.direction.phi,
            "outcome": self.outcome,
            "steering": f"{PARTY_NAMES[self.steerer]}->{PARTY_NAMES[self.trusted]}",
            "criterion": self.criterion,
            "value": self.value,
        }


@dataclass
class ScanVerdict:
    """Outcome of a conditional-steering scan.

    Detection is one-sided: an empty witness list means nothing was detected,
    not that the state is unsteerable. ``min_s1``/``max_s2``/``max_M`` are the
    extremes over every evaluated conditional state (NaN if none was evaluated).
    """

    witnesses: list[Witness] = field(default_factory=list)
    clamp_flags: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    evaluated: int = 0
    min_s1: float = float("nan")
    max_s2: float = float("nan")
    max_M: float = float("nan")

    @property
    def conditionally_steerable(self) -> bool:
        return bool(self.witnesses)

    @property
    def s1_detects(self) -> bool:
        return any(w.criterion == "S1" for w in self.witnesses)

    @property
    def s2_detects(self) -> bool:
        return any(w.criterion == "S2" for w in self.witnesses)

    @property
    def chsh_nonlocal(self) -> bool:
        return self.max_M > 1

    def _update(self, s1: float, s2: float, M: float) -> None:
        self.evaluated += 1
        self.min_s1 = s1 if np.isnan(self.min_s1) else min(self.min_s1, s1)
        self.max_s2 = s2 if np.isnan(self.max_s2) else max(self.max_s2, s2)
        self.max_M = M if np.isnan(self.max_M) else max(self.max_M, M)


def default_grid(theta_steps: int = 40, phis: Sequence[float] = (0.0, pi / 4, pi / 2)) -> tuple[BlochDirection, ...]:
    """Directions ``theta = k pi / theta_steps`` (k = 0..theta_steps) for each ``phi``.

    Coincident axes (the poles) appear once.
    """
    if theta_steps < 1:
        raise ValidationError("theta_steps must be positive")
    seen = set()
    grid = []
    for phi in phis:
        for k in range(theta_steps + 1):
            d = BlochDirection(k * pi / theta_steps, float(phi))
            key = tuple(np.round(d.vector, 12) + 0.0)
            if key not in seen:
                seen.add(key)
                grid.append(d)
    return tuple(grid)


def settings_from_grid(grid: Iterable[BlochDirection], parties: Iterable[int] = (0, 1, 2)) -> list[MeasurementSetting]:
    grid = list(grid)
    if not grid:
        raise ValidationError("direction grid is empty")
    return [MeasurementSetting(party, d) for party in parties for d in grid]


def scan_settings(rho: DensityMatrix, settings: Iterable[MeasurementSetting], all_permutations: bool = False) -> ScanVerdict:
    """Evaluate S1, S2 and the CHSH value on every conditional state named by ``settings``."""
    verdict = ScanVerdict()
    for st in settings:
        remaining = tuple(i for i in range(3) if i != st.party)
        steerers = remaining if st.steerer is None else (st.steerer,)
        for outcome in (1, -1) if st.outcome is None else (st.outcome,):
            try:
                cond = condition(rho, st.party, projector(st.direction, outcome), outcome)
            except NumericalError:
                verdict.skipped.append(
                    f"{PARTY_NAMES[st.party]} theta={st.direction.theta:.6g} phi={st.direction.phi:.6g} "
                    f"outcome={outcome:+d}: probability < {ZERO_PROBABILITY:g}"
                )
                continue
            for steerer in steerers:
                trusted = remaining[1 - remaining.index(steerer)]
                rep = steering_report(cond.state, remaining.index(steerer), all_permutations)
                verdict._update(rep.s1, rep.s2, rep.horodecki_M)
                if rep.s2_clamped:
                    verdict.clamp_flags.append(
                        f"{PARTY_NAMES[st.party]} theta={st.direction.theta:.6g} phi={st.direction.phi:.6g} "
                        f"outcome={outcome:+d} {PARTY_NAMES[steerer]}->{PARTY_NAMES[trusted]}: S2 radicand clamped"
                    )
                for name, detected, value in (("S1", rep.s1_detects, rep.s1), ("S2", rep.s2_detects, rep.s2)):
                    if detected:
                        verdict.witnesses.append(
                            Witness(st.party, st.direction, outcome, steerer, trusted, name, float(value))
                        )
    return verdict


def conditional_steering_scan(
    rho: DensityMatrix,
    grid: Sequence[BlochDirection] | None = None,
    parties: Iterable[int] = (0, 1, 2),
    all_permutations: bool = False,
) -> ScanVerdict:
    """Scan every party, direction, outcome and steering direction for a witness."""
    if grid is None:
        grid = default_grid()
    return scan_settings(rho, settings_from_grid(grid, parties), all_permutations)
