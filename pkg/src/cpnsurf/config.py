"""JSON model configuration shared by the command-line tools.

Complex numbers are written as ``[re, im]`` pairs.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

from .chain import HolomorphicCurve, polynomial_curve, veronese_curve

__all__ = ["ConfigError", "CurveSpec", "GridSpec", "SpectralSpec", "ModelConfig",
           "parse_config", "load_config", "dump_config"]


class ConfigError(ValueError):
    pass


def _cx(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(isinstance(t, (int, float)) for t in v):
        return complex(v[0], v[1])
    raise ConfigError(f"expected a number or an [re, im] pair, got {v!r}")


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


@dataclass(frozen=True)
class CurveSpec:
    kind: str = "veronese"
    coefficients: tuple = ()

    def build(self, n: int) -> HolomorphicCurve:
        if self.kind == "veronese":
            return veronese_curve(n)
        if len(self.coefficients) != n:
            raise ConfigError(f"polynomial curve needs {n} components, got {len(self.coefficients)}")
        return polynomial_curve([[c for c in comp] for comp in self.coefficients])

    def to_json(self) -> dict:
        d: dict[str, Any] = {"kind": self.kind}
        if self.kind == "polynomial":
            d["coefficients"] = [[_pair(c) for c in comp] for comp in self.coefficients]
        return d


@dataclass(frozen=True)
class GridSpec:
    center: complex = 0j
    radius: float = 2.0
    resolution: int = 64
    ranges: tuple | None = None  # ((xp0, xp1), (xm0, xm1)) for light-cone grids

    def to_json(self) -> dict:
        d: dict[str, Any] = {"center": _pair(self.center), "radius": self.radius, "resolution": self.resolution}
        if self.ranges is not None:
            d["ranges"] = [list(r) for r in self.ranges]
        return d


@dataclass(frozen=True)
class SpectralSpec:
    lam: complex = 0.5
    tau: float = 1.0
    kappa: float = 1.0
    c1: float = 1.0
    c2: float = 0.0
    c3: float = 0.0
    omega: float = 1.0

    def to_json(self) -> dict:
        d = asdict(self)
        d["lambda"] = _pair(d.pop("lam"))
        return d


@dataclass(frozen=True)
class ModelConfig:
    n: int = 3
    curve: CurveSpec = field(default_factory=CurveSpec)
    space: str = "euclidean"
    sheet: int | str = "all"
    grid: GridSpec = field(default_factory=GridSpec)
    spectral: SpectralSpec = field(default_factory=SpectralSpec)
    tolerance: float | None = None
    seed: int = 0
    samples: int = 20

    def sheets(self) -> list[int]:
        return list(range(self.n)) if self.sheet == "all" else [int(self.sheet)]

    def to_json(self) -> dict:
        return {"n": self.n, "curve": self.curve.to_json(), "space": self.space, "sheet": self.sheet,
                "grid": self.grid.to_json(), "spectral": self.spectral.to_json(),
                "tolerance": self.tolerance, "seed": self.seed, "samples": self.samples}


_KNOWN = {"n", "curve", "space", "sheet", "grid", "spectral", "tolerance", "seed", "samples"}


def parse_config(data: dict) -> ModelConfig:
    """Validate a decoded JSON document and build a :class:`ModelConfig`."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - _KNOWN
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    n = data.get("n", 3)
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ConfigError("n must be ≥ 2")
    if n > 12:
        raise ConfigError("n must be <= 12")

    c = data.get("curve", {"kind": "veronese"})
    if isinstance(c, str):
        c = {"kind": c}
    kind = c.get("kind", "veronese")
    if kind == "veronese":
        curve = CurveSpec("veronese")
    elif kind == "polynomial":
        comps = c.get("coefficients")
        if not isinstance(comps, list) or len(comps) != n:
            raise ConfigError(f"polynomial curve needs a list of {n} coefficient lists")
        curve = CurveSpec("polynomial", tuple(tuple(_cx(v) for v in comp) for comp in comps))
        if all(v == 0 for comp in curve.coefficients for v in comp):
            raise ConfigError("polynomial curve is identically zero")
    else:
        raise ConfigError(f"unknown curve kind {kind!r}")

    space = data.get("space", "euclidean")
    if space not in ("euclidean", "minkowski"):
        raise ConfigError(f"space must be 'euclidean' or 'minkowski', got {space!r}")

    sheet = data.get("sheet", "all")
    if sheet != "all":
        if not isinstance(sheet, int) or isinstance(sheet, bool) or not 0 <= sheet <= n - 1:
            raise ConfigError(f"sheet must be 'all' or an integer in [0, {n - 1}]")

    g = data.get("grid", {})
    res = g.get("resolution", 64)
    if not isinstance(res, int) or res < 2:
        raise ConfigError("grid resolution must be >= 2")
    radius = float(g.get("radius", 2.0))
    if not radius > 0:
        raise ConfigError("grid radius must be positive")
    ranges = g.get("ranges")
    if ranges is not None:
        if len(ranges) != 2 or any(len(r) != 2 or not r[1] > r[0] for r in ranges):
            raise ConfigError("grid ranges must be [[xp0, xp1], [xm0, xm1]] with increasing bounds")
        ranges = tuple(tuple(float(v) for v in r) for r in ranges)
    grid = GridSpec(_cx(g.get("center", 0.0)), radius, res, ranges)

    s = dict(data.get("spectral", {}))
    lam = _cx(s.pop("lambda", 0.5))
    unknown = set(s) - {"tau", "kappa", "c1", "c2", "c3", "omega"}
    if unknown:
        raise ConfigError(f"unknown spectral keys: {sorted(unknown)}")
    spectral = SpectralSpec(lam, **{k: float(v) for k, v in s.items()})
    if abs(lam - 1) < 1e-12 or abs(lam + 1) < 1e-12:
        raise ConfigError("lambda must not be +-1")
    if not spectral.tau > 0:
        raise ConfigError("tau must be positive")

    tol = data.get("tolerance")
    if tol is not None and not float(tol) > 0:
        raise ConfigError("tolerance must be positive")
    seed = data.get("seed", 0)
    samples = data.get("samples", 20)
    if not isinstance(seed, int) or not isinstance(samples, int) or samples < 1:
        raise ConfigError("seed must be an integer and samples a positive integer")
    return ModelConfig(n, curve, space, sheet, grid, spectral, None if tol is None else float(tol), seed, samples)


def load_config(path: str) -> ModelConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(data)


def dump_config(cfg: ModelConfig) -> str:
    return json.dumps(cfg.to_json(), indent=2, sort_keys=True) + "\n"
