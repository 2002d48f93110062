"""JSON run configurations (schema documented in docs/config_schema.md)."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .curve import GluePair, PointOnCurve, SpectralData
from .errors import BAError
from .omega import OneFormSpec
from .rational import Poly, ProjectivePoint, RationalFunction
from .verify import Grid

BUNDLED = ("s2", "h2")


class ConfigParseError(BAError, ValueError):
    """Malformed configuration file (CLI exit code 2)."""


@dataclass
class RunConfig:
    name: str
    data: SpectralData
    forms: OneFormSpec
    grid: Grid
    fd_grid: Grid | None = None
    reference: str | None = None
    output: dict = field(default_factory=dict)


def _complex(value, where: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, list) and len(value) == 2 and all(isinstance(x, (int, float)) for x in value):
        return complex(value[0], value[1])
    raise ConfigParseError(f"{where}: expected [re, im], got {value!r}")


def _point(obj, where: str) -> PointOnCurve:
    if not isinstance(obj, dict) or "component" not in obj or "point" not in obj:
        raise ConfigParseError(f"{where}: expected {{'component': int, 'point': [re, im] | 'inf'}}")
    comp = obj["component"]
    if not isinstance(comp, int) or comp < 0:
        raise ConfigParseError(f"{where}.component: expected a non-negative integer")
    p = obj["point"]
    if isinstance(p, str):
        if p.lower() != "inf":
            raise ConfigParseError(f"{where}.point: only 'inf' is accepted as a string")
        return PointOnCurve(comp, ProjectivePoint(None))
    return PointOnCurve(comp, ProjectivePoint(_complex(p, f"{where}.point")))


def _grid(obj, where: str, n: int) -> Grid:
    try:
        ranges = tuple((float(lo), float(hi)) for lo, hi in obj["ranges"])
        res = tuple(int(k) for k in obj["resolution"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigParseError(f"{where}: expected 'ranges' [[lo, hi], ...] and 'resolution' [int, ...]") from exc
    if len(ranges) != n or len(res) != n or any(k < 0 for k in res):
        raise ConfigParseError(f"{where}: need {n} ranges and {n} non-negative resolutions")
    return Grid(ranges, res)


def parse_config(raw: dict, name: str = "config") -> RunConfig:
    try:
        sd_raw = raw["spectral_data"]
        n = int(sd_raw["n"])
        sd = SpectralData(
            n=n,
            components=int(sd_raw["components"]),
            glue=tuple(
                GluePair(_point(a, f"glue[{i}][0]"), _point(b, f"glue[{i}][1]"))
                for i, (a, b) in enumerate(sd_raw["glue"])
            ),
            P=tuple(_point(p, f"P[{i}]") for i, p in enumerate(sd_raw["P"])),
            Q=tuple(_point(p, f"Q[{i}]") for i, p in enumerate(sd_raw["Q"])),
            r=_point(sd_raw["r"], "r"),
            r_zeros=tuple(_point(p, f"r_zeros[{i}]") for i, p in enumerate(sd_raw.get("r_zeros", []))),
            gamma=tuple(_point(p, f"gamma[{i}]") for i, p in enumerate(sd_raw.get("gamma", []))),
            h=float(sd_raw["h"]),
            curvature_target=int(sd_raw["curvature_target"]),
        )
        forms = OneFormSpec(
            tuple(
                RationalFunction(
                    Poly(tuple(_complex(c, f"omega[{i}].num") for c in f["num"])),
                    Poly(tuple(_complex(c, f"omega[{i}].den") for c in f["den"])),
                )
                for i, f in enumerate(raw["omega"])
            )
        )
        grid = _grid(raw["grid"], "grid", n)
        fd_grid = _grid(raw["fd_grid"], "fd_grid", n) if "fd_grid" in raw else None
    except ConfigParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigParseError(f"malformed configuration: {exc!r}") from exc
    reference = raw.get("reference")
    if reference is not None and reference not in BUNDLED:
        raise ConfigParseError(f"unknown reference {reference!r}; expected one of {BUNDLED}")
    return RunConfig(
        name=str(raw.get("name", name)),
        data=sd,
        forms=forms,
        grid=grid,
        fd_grid=fd_grid,
        reference=reference,
        output=dict(raw.get("output", {})),
    )


def read_config_text(source: str | Path) -> tuple[str, str]:
    """Text of a config file, or of a bundled config given by name."""
    source = str(source)
    if source in BUNDLED and not Path(source).exists():
        return source, resources.files("ba_orthocoords.configs").joinpath(f"{source}.json").read_text()
    try:
        return Path(source).stem, Path(source).read_text()
    except OSError as exc:
        raise ConfigParseError(f"cannot read {source}: {exc}") from exc


def load_config(source: str | Path) -> RunConfig:
    name, text = read_config_text(source)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"{source}: invalid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise ConfigParseError(f"{source}: top level must be an object")
    return parse_config(raw, name)


# ---------------------------------------------------------------------------
# serialization (used to write the bundled configs)
# ---------------------------------------------------------------------------


def _c(z: complex) -> list[float]:
    return [float(z.real) + 0.0, float(z.imag) + 0.0]  # + 0.0 drops negative zeros


def _p(p: PointOnCurve) -> dict:
    return {"component": p.component, "point": "inf" if p.is_infinite else _c(p.z)}


def _g(g: Grid) -> dict:
    return {"ranges": [list(r) for r in g.ranges], "resolution": list(g.resolution)}


def config_to_dict(cfg: RunConfig) -> dict:
    sd = cfg.data
    out = {
        "name": cfg.name,
        "spectral_data": {
            "n": sd.n,
            "components": sd.components,
            "glue": [[_p(g.first), _p(g.second)] for g in sd.glue],
            "P": [_p(p) for p in sd.P],
            "Q": [_p(q) for q in sd.Q],
            "r": _p(sd.r),
            "r_zeros": [_p(p) for p in sd.r_zeros],
            "gamma": [_p(p) for p in sd.gamma],
            "h": sd.h,
            "curvature_target": sd.curvature_target,
        },
        "omega": [
            {"num": [_c(c) for c in f.num.coeffs], "den": [_c(c) for c in f.den.coeffs]}
            for f in cfg.forms.forms
        ],
        "grid": _g(cfg.grid),
    }
    if cfg.fd_grid is not None:
        out["fd_grid"] = _g(cfg.fd_grid)
    if cfg.reference is not None:
        out["reference"] = cfg.reference
    if cfg.output:
        out["output"] = cfg.output
    return out


_NUMBER_LIST = re.compile(r"\[\s+([-+0-9.eE,\s]+?)\s+\]")


def dump_config(cfg: RunConfig) -> str:
    text = json.dumps(config_to_dict(cfg), indent=2)
    # keep [re, im] pairs and ranges on one line
    text = _NUMBER_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)
    return text + "\n"
