"""File formats: signal CSV, transform JSON, reference specs, experiment
configs.

Floats are serialized with Python's shortest round-trip representation, so
parse(serialize(x)) recovers x bit for bit; infinities are written as the
strings "inf" / "-inf" because JSON has no literal for them.
"""

from __future__ import annotations

import json
import math
import os
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from .classify import DEFAULT_LDA_LAMBDA
from .errors import InvalidReferenceError, ParseError
from .genmodel import GenConfig
from .measures import GridDensity, ReferenceMeasure
from .transform import CdtResult, ScdtResult, TransformConfig

__all__ = [
    "read_signal_csv",
    "write_signal_csv",
    "read_transform_json",
    "write_transform_json",
    "parse_reference",
    "reference_to_dict",
    "reference_from_dict",
    "read_experiment_config",
    "ExperimentConfig",
    "seed_override_from_env",
]

#: Relative tolerance on uniform time spacing in signal files.
SPACING_RTOL = 1e-9

TRANSFORM_FILE_VERSION = 1


# --- float encoding ---------------------------------------------------------


def _encode_float(x: float) -> Union[float, str]:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def _decode_float(v: Any, what: str) -> float:
    if isinstance(v, str):
        if v == "inf":
            return math.inf
        if v == "-inf":
            return -math.inf
        raise ParseError(f"{what}: unrecognized value {v!r}")
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return float(v)
    raise ParseError(f"{what}: expected a number, got {v!r}")


def _decode_array(v: Any, what: str) -> np.ndarray:
    if not isinstance(v, list):
        raise ParseError(f"{what}: expected an array")
    return np.array([_decode_float(x, what) for x in v], dtype=float)


# --- signal CSV -------------------------------------------------------------


def write_signal_csv(path: Union[str, os.PathLike], density: GridDensity) -> None:
    """Write bin centers and density values as a two-column CSV."""
    centers = density.bin_centers()
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("t,value\n")
        for t, v in zip(centers, density.samples):
            fh.write(f"{float(t)!r},{float(v)!r}\n")


def read_signal_csv(path: Union[str, os.PathLike]) -> GridDensity:
    """Read a two-column ``t,value`` CSV with uniformly spaced, strictly
    increasing ``t`` (an optional header line is skipped); the samples are
    interpreted as a density on bins centered at the ``t`` values."""
    ts: List[float] = []
    vs: List[float] = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                parts = line.split(",")
                if len(parts) != 2:
                    raise ParseError(f"{path}:{lineno}: expected two comma-separated columns")
                try:
                    t, v = float(parts[0]), float(parts[1])
                except ValueError:
                    if lineno == 1:
                        continue  # header
                    raise ParseError(f"{path}:{lineno}: could not parse {line!r}") from None
                if not (math.isfinite(t) and math.isfinite(v)):
                    raise ParseError(f"{path}:{lineno}: non-finite entry")
                ts.append(t)
                vs.append(v)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if len(ts) < 2:
        raise ParseError(f"{path}: need at least two data rows")
    t = np.array(ts)
    dt = (t[-1] - t[0]) / (len(ts) - 1)
    if dt <= 0:
        raise ParseError(f"{path}: t column must be strictly increasing")
    if np.max(np.abs(np.diff(t) - dt)) > SPACING_RTOL * abs(dt):
        raise ParseError(f"{path}: t values are not uniformly spaced")
    return GridDensity(t[0] - dt / 2, t[-1] + dt / 2, np.array(vs))


# --- reference measures -----------------------------------------------------


def parse_reference(spec: str) -> ReferenceMeasure:
    """Parse a reference spec: ``uniform:a,b`` or ``pwl:x0,y0;x1,y1;...``
    (knots of the CDF, which must be strictly increasing with y0 = 0)."""
    try:
        kind, _, rest = spec.partition(":")
        if kind == "uniform":
            a_str, b_str = rest.split(",")
            return ReferenceMeasure.uniform(float(a_str), float(b_str))
        if kind == "pwl":
            knots = [tuple(float(f) for f in pair.split(",")) for pair in rest.split(";")]
            if any(len(k) != 2 for k in knots):
                raise ValueError("each knot needs exactly x,y")
            xs = np.array([k[0] for k in knots])
            ys = np.array([k[1] for k in knots])
            return ReferenceMeasure(xs, ys)
        raise ValueError(f"unknown reference kind {kind!r}")
    except InvalidReferenceError:
        raise
    except ValueError as exc:
        raise InvalidReferenceError(f"bad reference spec {spec!r}: {exc}") from exc


def reference_to_dict(ref: ReferenceMeasure) -> Dict[str, Any]:
    return {"type": "pwl", "x": [float(x) for x in ref.xs], "y": [float(y) for y in ref.ys]}


def reference_from_dict(obj: Any) -> ReferenceMeasure:
    if not isinstance(obj, dict) or obj.get("type") != "pwl":
        raise ParseError("reference: expected an object with type 'pwl'")
    xs = _decode_array(obj.get("x"), "reference.x")
    ys = _decode_array(obj.get("y"), "reference.y")
    return ReferenceMeasure(xs, ys)


# --- transform JSON ---------------------------------------------------------


def write_transform_json(
    path: Union[str, os.PathLike], t: ScdtResult, cfg: TransformConfig
) -> None:
    obj = {
        "quantiles": [float(q) for q in cfg.quantiles],
        "plus": _part_to_dict(t.plus),
        "minus": _part_to_dict(t.minus),
        "reference": reference_to_dict(cfg.reference),
        "version": TRANSFORM_FILE_VERSION,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def _part_to_dict(part: CdtResult) -> Dict[str, Any]:
    return {
        "samples": [_encode_float(s) for s in part.samples],
        "mass": float(part.mass),
    }


def _part_from_dict(obj: Any, n_quantiles: int, what: str) -> CdtResult:
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected an object")
    samples = _decode_array(obj.get("samples"), f"{what}.samples")
    if samples.size != n_quantiles:
        raise ParseError(
            f"{what}.samples has length {samples.size}, expected {n_quantiles}"
        )
    mass = _decode_float(obj.get("mass"), f"{what}.mass")
    try:
        return CdtResult(samples, mass)
    except ValueError as exc:
        raise ParseError(f"{what}: {exc}") from exc


def read_transform_json(
    path: Union[str, os.PathLike]
) -> Tuple[ScdtResult, TransformConfig]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected a JSON object")
    if obj.get("version") != TRANSFORM_FILE_VERSION:
        raise ParseError(f"{path}: unsupported version {obj.get('version')!r}")
    quantiles = _decode_array(obj.get("quantiles"), "quantiles")
    m = quantiles.size
    if m < 2:
        raise ParseError(f"{path}: need at least two quantile levels")
    expected = (np.arange(m) + 0.5) / m
    if np.max(np.abs(quantiles - expected)) > 1e-12:
        raise ParseError(f"{path}: quantile grid is not the midpoint grid")
    reference = reference_from_dict(obj.get("reference"))
    cfg = TransformConfig(reference=reference, n_quantiles=m)
    result = ScdtResult(
        _part_from_dict(obj.get("plus"), m, "plus"),
        _part_from_dict(obj.get("minus"), m, "minus"),
    )
    return result, cfg


# --- experiment configuration ----------------------------------------------


class ExperimentConfig:
    """A generation config plus the transform/classifier settings that ride
    along with it in experiment config files."""

    def __init__(
        self,
        gen: GenConfig,
        transform: TransformConfig,
        lda_lambda: float = DEFAULT_LDA_LAMBDA,
    ) -> None:
        self.gen = gen
        self.transform = transform
        self.lda_lambda = float(lda_lambda)


_GEN_KEYS = {
    "t0",
    "t1",
    "n_grid",
    "a_range",
    "b_range",
    "noise_sigma",
    "per_class",
    "seed",
}
_EXTRA_KEYS = {"n_quantiles", "reference", "lda_lambda"}


def read_experiment_config(path: Union[str, os.PathLike]) -> ExperimentConfig:
    """Read a JSON experiment config; every key is optional and defaults to
    the standard protocol.  Unknown keys are rejected."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected a JSON object")
    unknown = set(obj) - _GEN_KEYS - _EXTRA_KEYS
    if unknown:
        raise ParseError(f"{path}: unknown keys {sorted(unknown)}")
    gen_kwargs: Dict[str, Any] = {}
    for key in _GEN_KEYS & set(obj):
        value = obj[key]
        if key in ("a_range", "b_range"):
            arr = _decode_array(value, key)
            if arr.size != 2:
                raise ParseError(f"{path}: {key} must be a two-entry array")
            value = (float(arr[0]), float(arr[1]))
        elif key == "per_class":
            if isinstance(value, list):
                value = tuple(value)
        gen_kwargs[key] = value
    try:
        gen = GenConfig(**gen_kwargs)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    reference = (
        parse_reference(obj["reference"])
        if isinstance(obj.get("reference"), str)
        else reference_from_dict(obj["reference"])
        if "reference" in obj
        else ReferenceMeasure.uniform()
    )
    try:
        transform = TransformConfig(
            reference=reference, n_quantiles=int(obj.get("n_quantiles", 1024))
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    lda_lambda = _decode_float(obj.get("lda_lambda", DEFAULT_LDA_LAMBDA), "lda_lambda")
    return ExperimentConfig(gen, transform, lda_lambda)


def seed_override_from_env(env: Optional[Dict[str, str]] = None) -> Optional[int]:
    """The SCDT_SEED environment override, if set (empty string means unset)."""
    env = os.environ if env is None else env
    raw = env.get("SCDT_SEED", "")
    if raw == "":
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(f"SCDT_SEED must be an integer, got {raw!r}") from exc
