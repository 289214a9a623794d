"""JSON kernel descriptions -> SeriesKernel.

Schema:
    {"kind": "disc_diagonal" | "annulus_laurent",
     "coeff_rule": "1" | "n+1" | "(n+1)^s" | "custom-list",
     "s": <float, only for "(n+1)^s">,
     "coeffs": [<floats>, ...]        (only for "custom-list"),
     "n_max": <int, optional, default 200>,
     "r": <float, required for annulus_laurent>,
     "weight_b": <float, annulus power-law exponent, default 0>}
"""

from __future__ import annotations

import json
from typing import Union

import numpy as np

from . import annulus as an
from . import kernels as kc
from .errors import ConfigError

KINDS = ("disc_diagonal", "annulus_laurent")
RULES = ("1", "n+1", "(n+1)^s", "custom-list")


def _require(spec: dict, field: str, types):
    if field not in spec:
        raise ConfigError(f"missing field '{field}'")
    value = spec[field]
    if not isinstance(value, types):
        raise ConfigError(f"field '{field}' has wrong type: {type(value).__name__}")
    return value


def kernel_from_spec(spec: dict) -> kc.SeriesKernel:
    kind = _require(spec, "kind", str)
    if kind not in KINDS:
        raise ConfigError(f"field 'kind' must be one of {KINDS}, got '{kind}'")

    n_max = spec.get("n_max", kc.DEFAULT_N_MAX)
    if not isinstance(n_max, int) or n_max < 1:
        raise ConfigError(f"field 'n_max' must be a positive integer, got {n_max!r}")

    if kind == "annulus_laurent":
        r = _require(spec, "r", (int, float))
        if not 0.0 < r < 1.0:
            raise ConfigError(f"field 'r' must lie in (0, 1), got {r}")
        b = spec.get("weight_b", 0.0)
        if not isinstance(b, (int, float)):
            raise ConfigError(f"field 'weight_b' must be a number, got {b!r}")
        aspec = an.AnnulusSpec(r=float(r), N=n_max)
        return an.weighted_bergman_kernel(aspec, an.RadialWeight.power_law(float(b)))

    rule = _require(spec, "coeff_rule", str)
    if rule not in RULES:
        raise ConfigError(f"field 'coeff_rule' must be one of {RULES}, got '{rule}'")

    n = np.arange(n_max + 1, dtype=float)
    if rule == "1":
        coeffs = np.ones(n_max + 1)
    elif rule == "n+1":
        coeffs = n + 1.0
    elif rule == "(n+1)^s":
        s = _require(spec, "s", (int, float))
        coeffs = (n + 1.0) ** float(s)
    else:
        raw = _require(spec, "coeffs", list)
        if not raw:
            raise ConfigError("field 'coeffs' must be a non-empty list")
        try:
            coeffs = np.array([float(c) for c in raw])
        except (TypeError, ValueError):
            raise ConfigError("field 'coeffs' must contain only numbers")
        if (coeffs <= 0.0).any():
            raise ConfigError("field 'coeffs' must be strictly positive")
    return kc.SeriesKernel.disc(coeffs)


def load_kernel(source: Union[str, dict]) -> kc.SeriesKernel:
    """Load a kernel from a dict, a JSON string, or a path to a JSON file."""
    if isinstance(source, dict):
        return kernel_from_spec(source)
    text = source
    if not text.lstrip().startswith("{"):
        with open(source, "r") as fh:
            text = fh.read()
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}")
    if not isinstance(spec, dict):
        raise ConfigError("kernel spec must be a JSON object")
    return kernel_from_spec(spec)
