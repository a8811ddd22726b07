"""Named state families with their parameters and fixed measurement settings.

Each family carries one fixed measurement setting, used by fixed mode; grid
mode ignores it and scans every direction instead.
"""
from __future__ import annotations

import ast
import math
import operator
from dataclasses import dataclass
from math import pi
from typing import Callable, Mapping

from .channels import amp_damp_all, depolarize
from .conditioning import BlochDirection
from .errors import ValidationError
from .qmat import DensityMatrix
from .states import biseparable, ghz_symmetric, noisy_ghz, psi_pure
from .tripartite import MeasurementSetting

ALICE, BOB, CHARLIE = 0, 1, 2
Z_AXIS = BlochDirection(0.0, 0.0)
X_AXIS = BlochDirection(pi / 2, 0.0)


@dataclass(frozen=True)
class Family:
    name: str
    state_params: tuple[str, ...]
    build: Callable[[Mapping[str, float], str], DensityMatrix]
    fixed_settings: Callable[[Mapping[str, float]], list[MeasurementSetting]]
    setting_params: Mapping[str, float]
    description: str

    @property
    def params(self) -> tuple[str, ...]:
        return self.state_params + tuple(self.setting_params)

    def resolve(self, params: Mapping[str, float]) -> dict[str, float]:
        """Check names, fill setting defaults; state parameters are required."""
        unknown = set(params) - set(self.params)
        if unknown:
            raise ValidationError(
                f"unknown parameter(s) {sorted(unknown)} for family {self.name!r}; "
                f"expected {list(self.params)}"
            )
        missing = [p for p in self.state_params if p not in params]
        if missing:
            raise ValidationError(f"family {self.name!r} needs parameter(s) {missing}")
        out = dict(self.setting_params)
        out.update({k: float(v) for k, v in params.items()})
        return out

    def state(self, params: Mapping[str, float], convention: str = "sqrt") -> DensityMatrix:
        return self.build(self.resolve(params), convention)

    def settings(self, params: Mapping[str, float]) -> list[MeasurementSetting]:
        return self.fixed_settings(self.resolve(params))


def _upsilon(p, conv):
    return depolarize(psi_pure(p["lam1"], p["lam2"], conv), p["alpha"])


def _psi_damped(p, conv):
    nu = p["nu"]
    if not 0.0 <= nu <= 1.0:
        raise ValidationError(f"nu must lie in [0, 1], got {nu}")
    return amp_damp_all(psi_pure(p["lam1"], p["lam2"], conv), 1.0 - nu)


FAMILIES: dict[str, Family] = {
    f.name: f
    for f in [
        Family(
            "noisy-ghz",
            ("p",),
            lambda p, conv: noisy_ghz(p["p"]),
            lambda p: [MeasurementSetting(ALICE, BlochDirection(p["theta"], p["phi"]), 1, BOB)],
            {"theta": pi / 2, "phi": 0.0},
            "p|GHZ+><GHZ+| + (1-p) I/8; fixed: Alice along (theta, phi), outcome +1, Bob->Charlie",
        ),
        Family(
            "ghz-symmetric",
            ("p", "q"),
            lambda p, conv: ghz_symmetric(p["p"], p["q"]),
            lambda p: [MeasurementSetting(ALICE, X_AXIS, 1, BOB)],
            {},
            "GHZ-symmetric (p, q); fixed: Alice equatorial x, outcome |+>, Bob->Charlie",
        ),
        Family(
            "psi",
            ("lam1", "lam2"),
            lambda p, conv: psi_pure(p["lam1"], p["lam2"], conv),
            lambda p: [MeasurementSetting(ALICE, Z_AXIS, -1, BOB)],
            {},
            "pure l0|000>+l1|101>+l2|110>; fixed: Alice sigma_z, outcome a_1, Bob->Charlie",
        ),
        Family(
            "upsilon",
            ("lam1", "lam2", "alpha"),
            _upsilon,
            lambda p: [MeasurementSetting(BOB, Z_AXIS, 1, ALICE)],
            {},
            "depolarized |psi>; fixed: Bob sigma_z, outcome b_0, Alice->Charlie",
        ),
        Family(
            "psi-damped",
            ("lam1", "lam2", "nu"),
            _psi_damped,
            lambda p: [MeasurementSetting(ALICE, Z_AXIS, -1, BOB)],
            {},
            "amplitude-damped |psi> with nu = 1 - gamma; fixed: Alice sigma_z, outcome a_1, Bob->Charlie",
        ),
        Family(
            "biseparable",
            ("p",),
            lambda p, conv: biseparable(p["p"]),
            lambda p: [MeasurementSetting(CHARLIE, Z_AXIS, -1, ALICE)],
            {},
            "p|Phi+>|+> + (1-p) I/8; fixed: Charlie sigma_z, outcome c_1, Alice->Bob",
        ),
    ]
}


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise ValidationError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv, ast.Pow: operator.pow}
_NAMES = {"pi": math.pi}
_FUNCS = {"sqrt": math.sqrt}


def parse_number(text: str) -> float:
    """Parse a float or a small arithmetic expression such as ``pi/2`` or ``1/sqrt(2)``."""
    try:
        return float(text)
    except ValueError:
        pass

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ValueError

    try:
        return float(ev(ast.parse(text.strip(), mode="eval")))
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError):
        raise ValidationError(f"cannot parse number {text!r}") from None


def parse_params(items) -> dict[str, float]:
    """``["p=0.6", "theta=pi/2"]`` -> ``{"p": 0.6, "theta": 1.5707...}``."""
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ValidationError(f"expected key=value, got {item!r}")
        out[key.strip()] = parse_number(value)
    return out
