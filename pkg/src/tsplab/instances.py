"""TSPLIB instance ingestion, distance matrices, and random instance generation.

Supported subset: EDGE_WEIGHT_TYPE in {EUC_2D, GEO, EXPLICIT} and, for
EXPLICIT, EDGE_WEIGHT_FORMAT in {FULL_MATRIX, LOWER_DIAG_ROW, UPPER_ROW}.
Anything else is rejected with UnsupportedFormat rather than misread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CountMismatch,
    MissingField,
    NegativeDistance,
    NoCoordinates,
    NonSymmetric,
    UnsupportedFormat,
)

ROUNDING_MODES = ("none", "tsplib_nint")

_SUPPORTED_TYPES = ("EUC_2D", "GEO", "EXPLICIT")
_SUPPORTED_FORMATS = ("FULL_MATRIX", "LOWER_DIAG_ROW", "UPPER_ROW")

# TSPLIB geographic convention constants.
_GEO_PI = 3.141592
_EARTH_RADIUS = 6378.388


@dataclass
class Instance:
    """One TSP problem: coordinates or an explicit matrix, never both."""

    name: str
    dimension: int
    kind: str  # EUC_2D | GEO | EXPLICIT
    coords: list[tuple[float, float]] | None = None
    matrix: list[list[float]] | None = None

    def __post_init__(self):
        if self.dimension < 2:
            raise ValueError(f"dimension must be >= 2, got {self.dimension}")
        if self.kind not in _SUPPORTED_TYPES:
            raise UnsupportedFormat(f"unsupported edge weight type: {self.kind}")
        if self.coords is not None and len(self.coords) != self.dimension:
            raise CountMismatch(
                f"{len(self.coords)} coordinates for dimension {self.dimension}"
            )


def _nint(x: float) -> float:
    # TSPLIB nint(): round half up.
    return math.floor(x + 0.5)


def parse_instance(text: str) -> Instance:
    """Parse a TSPLIB-format character stream into an Instance.

    Keyword order-insensitive; the EOF marker is optional. Unknown sections
    are skipped; unsupported weight types/formats raise UnsupportedFormat.
    """
    header: dict[str, str] = {}
    sections: dict[str, list[str]] = {}
    current_section = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line == "EOF":
            current_section = None
            continue
        key, sep, value = line.partition(":")
        key_token = key.strip()
        if sep and key_token.isupper() and " " not in key_token:
            header[key_token] = value.strip()
            current_section = None
            continue
        if line.endswith("_SECTION"):
            current_section = line
            sections.setdefault(line, [])
            continue
        if current_section is not None:
            sections[current_section].append(line)
        # Stray non-numeric junk outside sections is ignored.

    if "DIMENSION" not in header:
        raise MissingField("DIMENSION")
    try:
        dimension = int(header["DIMENSION"])
    except ValueError as exc:
        raise MissingField(f"DIMENSION not an integer: {header['DIMENSION']}") from exc

    if "EDGE_WEIGHT_TYPE" not in header:
        raise MissingField("EDGE_WEIGHT_TYPE")
    kind = header["EDGE_WEIGHT_TYPE"]
    if kind not in _SUPPORTED_TYPES:
        raise UnsupportedFormat(f"EDGE_WEIGHT_TYPE {kind} not supported")

    name = header.get("NAME", "unnamed")

    if kind in ("EUC_2D", "GEO"):
        lines = sections.get("NODE_COORD_SECTION")
        if not lines:
            raise MissingField("NODE_COORD_SECTION")
        if len(lines) != dimension:
            raise CountMismatch(
                f"{len(lines)} coordinate lines for dimension {dimension}"
            )
        coords = []
        for line in lines:
            parts = line.split()
            if len(parts) < 3:
                raise CountMismatch(f"coordinate line too short: {line!r}")
            coords.append((float(parts[1]), float(parts[2])))
        return Instance(name=name, dimension=dimension, kind=kind, coords=coords)

    fmt = header.get("EDGE_WEIGHT_FORMAT")
    if fmt is None:
        raise MissingField("EDGE_WEIGHT_FORMAT")
    if fmt not in _SUPPORTED_FORMATS:
        raise UnsupportedFormat(f"EDGE_WEIGHT_FORMAT {fmt} not supported")
    lines = sections.get("EDGE_WEIGHT_SECTION")
    if not lines:
        raise MissingField("EDGE_WEIGHT_SECTION")
    values = [float(tok) for line in lines for tok in line.split()]
    matrix = _weights_to_matrix(values, dimension, fmt)
    return Instance(name=name, dimension=dimension, kind="EXPLICIT", matrix=matrix)


def _weights_to_matrix(values: list[float], n: int, fmt: str) -> list[list[float]]:
    expected = {
        "FULL_MATRIX": n * n,
        "LOWER_DIAG_ROW": n * (n + 1) // 2,
        "UPPER_ROW": n * (n - 1) // 2,
    }[fmt]
    if len(values) != expected:
        raise CountMismatch(
            f"{len(values)} weights for {fmt} with dimension {n}, expected {expected}"
        )
    m = [[0.0] * n for _ in range(n)]
    it = iter(values)
    if fmt == "FULL_MATRIX":
        for i in range(n):
            for j in range(n):
                m[i][j] = next(it)
    elif fmt == "LOWER_DIAG_ROW":
        for i in range(n):
            for j in range(i + 1):
                v = next(it)
                m[i][j] = v
                m[j][i] = v
    else:  # UPPER_ROW
        for i in range(n):
            for j in range(i + 1, n):
                v = next(it)
                m[i][j] = v
                m[j][i] = v
    return m


def build_distance_matrix(inst: Instance, rounding: str = "none") -> np.ndarray:
    """Dense symmetric n-by-n distance matrix for an instance.

    rounding applies to EUC_2D only: "tsplib_nint" rounds each distance to
    the nearest integer; GEO always follows the TSPLIB geographic convention
    (which truncates); EXPLICIT copies the stored matrix.
    """
    if rounding not in ROUNDING_MODES:
        raise ValueError(f"rounding must be one of {ROUNDING_MODES}, got {rounding!r}")
    if inst.kind == "EXPLICIT":
        d = np.asarray(inst.matrix, dtype=float)
        if d.shape != (inst.dimension, inst.dimension):
            raise CountMismatch(f"matrix shape {d.shape} for dimension {inst.dimension}")
        if np.abs(d - d.T).max() > 1e-9:
            raise NonSymmetric("explicit matrix asymmetric beyond 1e-9")
        if (d < 0).any():
            raise NegativeDistance("explicit matrix has negative entries")
        np.fill_diagonal(d, 0.0)
        return d
    if inst.coords is None:
        raise NoCoordinates(f"instance {inst.name} has no coordinates")
    pts = np.asarray(inst.coords, dtype=float)
    if inst.kind == "EUC_2D":
        diff = pts[:, None, :] - pts[None, :, :]
        d = np.hypot(diff[..., 0], diff[..., 1])
        if rounding == "tsplib_nint":
            d = np.floor(d + 0.5)
        return d
    # GEO: degrees.minutes decoding, then great-circle distance, truncated.
    deg = np.floor(pts + 0.5)
    minutes = pts - deg
    rad = _GEO_PI * (deg + 5.0 * minutes / 3.0) / 180.0
    lat, lon = rad[:, 0], rad[:, 1]
    q1 = np.cos(lon[:, None] - lon[None, :])
    q2 = np.cos(lat[:, None] - lat[None, :])
    q3 = np.cos(lat[:, None] + lat[None, :])
    arg = np.clip(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3), -1.0, 1.0)
    d = np.floor(_EARTH_RADIUS * np.arccos(arg) + 1.0)
    np.fill_diagonal(d, 0.0)
    return d


def geo_distance(a: tuple[float, float], b: tuple[float, float]) -> float:
    """TSPLIB GEO distance between two (latitude, longitude) coordinate pairs."""
    lat1, lon1 = _geo_radians(a)
    lat2, lon2 = _geo_radians(b)
    q1 = math.cos(lon1 - lon2)
    q2 = math.cos(lat1 - lat2)
    q3 = math.cos(lat1 + lat2)
    arg = max(-1.0, min(1.0, 0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)))
    return float(int(_EARTH_RADIUS * math.acos(arg) + 1.0))


def _geo_radians(coord: tuple[float, float]) -> tuple[float, float]:
    out = []
    for x in coord:
        deg = _nint(x)
        minutes = x - deg
        out.append(_GEO_PI * (deg + 5.0 * minutes / 3.0) / 180.0)
    return out[0], out[1]


def generate_random_instance(
    n: int, seed: int, coord_range: tuple[float, float] = (0.0, 100.0)
) -> Instance:
    """n points uniform i.i.d. in coord_range squared; deterministic in seed."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    lo, hi = coord_range
    if lo > hi:
        raise ValueError(f"empty coordinate range: {coord_range}")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(lo, hi, size=(n, 2))
    coords = [(float(x), float(y)) for x, y in pts]
    return Instance(name=f"rnd{n}-s{seed}", dimension=n, kind="EUC_2D", coords=coords)


def render_instance(inst: Instance) -> str:
    """Write an instance back out in NODE_COORD_SECTION form."""
    if inst.coords is None:
        raise NoCoordinates("only coordinate instances can be rendered")
    lines = [
        f"NAME : {inst.name}",
        "TYPE : TSP",
        f"DIMENSION : {inst.dimension}",
        f"EDGE_WEIGHT_TYPE : {inst.kind}",
        "NODE_COORD_SECTION",
    ]
    for i, (x, y) in enumerate(inst.coords, start=1):
        lines.append(f"{i} {x!r} {y!r}")
    lines.append("EOF")
    return "\n".join(lines) + "\n"
