"""Structured pass/fail records emitted by the numerical probes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np


def _plain(value: Any) -> Any:
    """Recursively convert numpy scalars/arrays into JSON-friendly values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


@dataclass(frozen=True)
class ProbeReport:
    """Outcome of one inequality or identity check.

    ``measured`` holds the quantities computed by the probe, ``bound`` the
    values they were compared against, and ``margin`` the smallest slack
    over the hard assertions (negative exactly when ``passed`` is False).
    """

    probe: str
    inputs: dict[str, Any]
    measured: dict[str, Any]
    bound: dict[str, Any]
    passed: bool
    margin: float

    def to_json_dict(self) -> dict[str, Any]:
        """Plain dictionary; ``passed`` serializes under the key ``"pass"``."""
        return {
            "probe": self.probe,
            "inputs": _plain(self.inputs),
            "measured": _plain(self.measured),
            "bound": _plain(self.bound),
            "pass": bool(self.passed),
            "margin": float(self.margin),
        }
