"""Curve files, surface spec files and report emission.

Curve text format: a header ``L=<length> n=<count>`` followed by ``n + 1``
lines ``s theta`` in fixed decimal. The JSON form is
``{"length": L, "theta_samples": [...]}``.

Surface spec: JSON ``{"family": name, "params": {...}, "n": N, "delta": d}``
or an embedded angle function ``{"angle": {"length": L, "theta_samples": [...]}}``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import re
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from .axisym import GeneratingCurve, validate_generating_curve
from .curve import AngleFunction, CurveError
from .families import DEFAULT_N, FAMILIES, make_family

DIGITS = 16
_HEADER = re.compile(r"^\s*L\s*=\s*(\S+)\s+n\s*=\s*(\d+)\s*$")


# -- curve files --------------------------------------------------------------


def format_curve(angle: AngleFunction) -> str:
    lines = [f"L={angle.length:.{DIGITS}f} n={angle.n}"]
    lines += [f"{s:.{DIGITS}f} {t:.{DIGITS}f}" for s, t in zip(angle.s, angle.theta)]
    return "\n".join(lines) + "\n"


def curve_json(angle: AngleFunction) -> dict[str, Any]:
    return {"length": angle.length, "theta_samples": [float(t) for t in angle.theta]}


def write_curve(path, angle: AngleFunction) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(curve_json(angle)) + "\n")
    else:
        path.write_text(format_curve(angle))


def _angle_from_json(obj: dict) -> AngleFunction:
    try:
        length = float(obj["length"])
        theta = np.asarray(obj["theta_samples"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise CurveError(f"curve JSON needs numeric 'length' and 'theta_samples': {exc}") from None
    return AngleFunction(length, theta)


def parse_curve(text: str) -> AngleFunction:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise CurveError(f"malformed curve JSON: {exc}") from None
        return _angle_from_json(obj)
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise CurveError("empty curve file")
    m = _HEADER.match(lines[0])
    if not m:
        raise CurveError(f"bad curve header {lines[0]!r}; expected 'L=<value> n=<count>'")
    length, n = float(m.group(1)), int(m.group(2))
    body = lines[1:]
    if len(body) != n + 1:
        raise CurveError(f"header announces n={n} but {len(body)} sample lines follow")
    try:
        data = np.array([[float(v) for v in ln.split()] for ln in body])
    except ValueError as exc:
        raise CurveError(f"non-numeric sample line: {exc}") from None
    if data.ndim != 2 or data.shape[1] != 2:
        raise CurveError("every sample line needs exactly two columns 's theta'")
    angle = AngleFunction.from_samples(data[:, 0], data[:, 1])
    if not math.isclose(angle.length, length, rel_tol=1e-9):
        raise CurveError(f"header length {length} differs from last sample {angle.length}")
    return AngleFunction(length, angle.theta)


def read_curve(path) -> AngleFunction:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CurveError(f"cannot read {path}: {exc.strerror}") from None
    return parse_curve(text)


# -- surface specs ------------------------------------------------------------


def surface_from_spec(spec: dict) -> GeneratingCurve:
    """Build a generating curve from a parsed spec document."""
    if not isinstance(spec, dict):
        raise CurveError("surface spec must be a JSON object")
    if "angle" in spec or "theta_samples" in spec:
        angle = _angle_from_json(spec.get("angle", spec))
        name = spec.get("name", "curve")
        return validate_generating_curve(angle, meta={"name": name})
    family = spec.get("family")
    if family not in FAMILIES:
        raise CurveError(f"spec needs 'family' in {sorted(FAMILIES)} or an embedded angle")
    params = dict(spec.get("params", {}))
    if not isinstance(params, dict):
        raise CurveError("'params' must be an object")
    if spec.get("delta") is not None:
        params.setdefault("delta", spec["delta"])
    n = spec.get("n", DEFAULT_N)
    if not isinstance(n, int) or n < 64:
        raise CurveError(f"n must be an integer >= 64, got {n!r}")
    try:
        return make_family(family, params, n)
    except TypeError as exc:
        raise CurveError(f"bad parameters for {family}: {exc}") from None


def load_spec(path) -> list[dict]:
    """A spec file holds one surface spec, a list of them or ``{"surfaces": [...]}``."""
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CurveError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CurveError(f"malformed spec file {path}: {exc}") from None
    if isinstance(obj, dict) and "surfaces" in obj:
        obj = obj["surfaces"]
    specs = obj if isinstance(obj, list) else [obj]
    if not specs or not all(isinstance(s, dict) for s in specs):
        raise CurveError(f"spec file {path} holds no surface objects")
    return specs


# -- reports ------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return str(int(v))
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def rows_to_csv(rows: Iterable[dict]) -> str:
    rows = list(rows)
    cols: list[str] = []
    for r in rows:
        cols += [k for k in r if k not in cols]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_cell(r.get(c, "")) for c in cols])
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return _jsonable(v.item())
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def write_outputs(out, rows: list[dict], summary: dict, stem: str = "report") -> list[str]:
    out = Path(out)
    os.makedirs(out, exist_ok=True)
    paths = [out / f"{stem}.csv", out / f"{stem}.json"]
    paths[0].write_text(rows_to_csv(rows))
    paths[1].write_text(dump_json(summary))
    return [str(p) for p in paths]
