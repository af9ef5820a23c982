"""JSON wire formats for states, superpositions, configs, and reports.

Complex numbers are two-element arrays [re, im]; states are
{dim_a, dim_b, amplitudes} with the amplitudes row-major; all reals are
rendered with 17 significant digits so round trips are bit exact.
"""

from __future__ import annotations

import json
import math
import sys
from typing import Any

import numpy as np

from .core import BipartitePureState
from .ensembles import EnsembleConfig
from .errors import SchemaError
from .superposition import SuperpositionSpec


def format_float(x: float) -> str:
    """Render a real with 17 significant digits (exact float round trip)."""
    if math.isnan(x) or math.isinf(x):
        raise SchemaError(f"cannot serialize non-finite real {x!r}")
    return format(float(x), ".17g")


def _int_literal(v: int) -> str:
    try:
        return str(v)
    except ValueError:
        # CPython's digit guard rejects huge conversions; the normalization
        # table wants exact integers, so lift it just for this value.
        limit = sys.get_int_max_str_digits()
        sys.set_int_max_str_digits(0)
        try:
            return str(v)
        finally:
            sys.set_int_max_str_digits(limit)


def dumps(obj: Any) -> str:
    """Deterministic JSON text with controlled float formatting.

    Dict keys keep insertion order; floats always carry 17 significant
    digits so re-runs produce byte-identical files.
    """
    if obj is None or obj is True or obj is False:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return _int_literal(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        items = (f"{dumps(str(k))}: {dumps(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise SchemaError(f"cannot serialize object of type {type(obj).__name__}")


def complex_to_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SchemaError(message)


def pair_to_complex(obj: Any, where: str) -> complex:
    _require(
        isinstance(obj, (list, tuple)) and len(obj) == 2,
        f"{where}: complex values must be [re, im] pairs",
    )
    re, im = obj
    _require(
        isinstance(re, (int, float)) and not isinstance(re, bool)
        and isinstance(im, (int, float)) and not isinstance(im, bool),
        f"{where}: complex parts must be numbers",
    )
    return complex(float(re), float(im))


def state_to_json(state: BipartitePureState) -> dict:
    return {
        "dim_a": state.dim_a,
        "dim_b": state.dim_b,
        "amplitudes": [complex_to_pair(z) for z in state.amplitudes.reshape(-1)],
    }


def _expect_int(obj: Any, key: str, where: str) -> int:
    _require(isinstance(obj, dict), f"{where}: expected an object")
    _require(key in obj, f"{where}: missing field {key!r}")
    v = obj[key]
    _require(isinstance(v, int) and not isinstance(v, bool), f"{where}.{key}: expected an integer")
    return v


def state_from_json(obj: Any, where: str = "state") -> BipartitePureState:
    dim_a = _expect_int(obj, "dim_a", where)
    dim_b = _expect_int(obj, "dim_b", where)
    _require(dim_a >= 1 and dim_b >= 1, f"{where}: dimensions must be >= 1")
    amps = obj.get("amplitudes")
    _require(isinstance(amps, list), f"{where}: missing amplitudes array")
    _require(
        len(amps) == dim_a * dim_b,
        f"{where}: expected {dim_a * dim_b} amplitudes, got {len(amps)}",
    )
    flat = [pair_to_complex(a, f"{where}.amplitudes[{k}]") for k, a in enumerate(amps)]
    return BipartitePureState(np.array(flat, dtype=complex).reshape(dim_a, dim_b))


def spec_to_json(spec: SuperpositionSpec) -> dict:
    return {
        "coefficients": [complex_to_pair(a) for a in spec.coefficients],
        "components": [state_to_json(c) for c in spec.components],
    }


def spec_from_json(obj: Any) -> SuperpositionSpec:
    _require(isinstance(obj, dict), "spec: expected an object")
    coeffs = obj.get("coefficients")
    comps = obj.get("components")
    _require(isinstance(coeffs, list), "spec: missing coefficients array")
    _require(isinstance(comps, list), "spec: missing components array")
    alphas = [pair_to_complex(a, f"spec.coefficients[{k}]") for k, a in enumerate(coeffs)]
    states = [state_from_json(c, f"spec.components[{k}]") for k, c in enumerate(comps)]
    _require(len(alphas) == len(states), "spec: coefficient/component count mismatch")
    try:
        return SuperpositionSpec(
            coefficients=np.array(alphas, dtype=complex), components=tuple(states)
        )
    except Exception as exc:
        raise SchemaError(f"spec: {exc}") from exc


def config_to_json(config: EnsembleConfig) -> dict:
    out = {
        "n": config.n,
        "dim_a": config.dim_a,
        "dim_b": config.dim_b,
        "family": config.family,
        "seed": config.seed,
        "coefficient_mode": config.coefficient_mode,
        "block_a": config.block_a,
        "block_b": config.block_b,
    }
    if config.fixed_coefficients is not None:
        out["fixed_coefficients"] = [complex_to_pair(c) for c in config.fixed_coefficients]
    return out


def config_from_json(obj: Any) -> EnsembleConfig:
    _require(isinstance(obj, dict), "config: expected an object")
    n = _expect_int(obj, "n", "config")
    dim_a = _expect_int(obj, "dim_a", "config")
    dim_b = _expect_int(obj, "dim_b", "config")
    seed = _expect_int(obj, "seed", "config")
    family = obj.get("family")
    mode = obj.get("coefficient_mode")
    _require(isinstance(family, str), "config: family must be a string")
    _require(isinstance(mode, str), "config: coefficient_mode must be a string")
    block_a = _expect_int(obj, "block_a", "config") if "block_a" in obj else 1
    block_b = _expect_int(obj, "block_b", "config") if "block_b" in obj else 1
    fixed = None
    if obj.get("fixed_coefficients") is not None:
        raw = obj["fixed_coefficients"]
        _require(isinstance(raw, list), "config: fixed_coefficients must be an array")
        fixed = tuple(
            pair_to_complex(c, f"config.fixed_coefficients[{k}]") for k, c in enumerate(raw)
        )
    try:
        return EnsembleConfig(
            n=n,
            dim_a=dim_a,
            dim_b=dim_b,
            family=family,
            seed=seed,
            coefficient_mode=mode,
            block_a=block_a,
            block_b=block_b,
            fixed_coefficients=fixed,
        )
    except Exception as exc:
        raise SchemaError(f"config: {exc}") from exc


def loads(text: str, where: str = "input") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{where}: not valid JSON ({exc})") from exc
