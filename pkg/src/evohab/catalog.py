"""Exoplanet catalog ingestion.

Reads comma-separated catalogs with a header row, maps catalog columns onto
planet fields through a :class:`ColumnMapping`, and converts records to the
Earth-unit parameters used by the habitability model.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path
from typing import Iterable

from .cdhs import PlanetParams

EARTH_SURFACE_TEMP_K = 288.0


class CatalogError(Exception):
    pass


class MalformedHeader(CatalogError):
    pass


class MissingField(CatalogError):
    def __init__(self, field_name: str):
        super().__init__(field_name)
        self.field = field_name


class NonPositiveValue(CatalogError):
    def __init__(self, field_name: str, value: float):
        super().__init__(f"{field_name}={value}")
        self.field = field_name
        self.value = value


@dataclass(frozen=True)
class ColumnMapping:
    """Catalog header name for each planet field; ``None`` means not read.

    The defaults match the PHL exoplanet catalog, where radius, density and
    escape velocity are already in Earth units and surface temperature is in
    Kelvin.
    """

    name: str = "P_NAME"
    radius: str | None = "P_RADIUS"
    density: str | None = "P_DENSITY"
    escape_velocity: str | None = "P_ESCAPE"
    surface_temp_kelvin: str | None = "P_TEMP_SURF"
    surface_temp_eu: str | None = None

    @classmethod
    def from_pairs(cls, pairs: Iterable[str], base: "ColumnMapping | None" = None) -> "ColumnMapping":
        """Build a mapping from ``field=HEADER`` strings; an empty header disables the field."""
        known = {f.name for f in fields(cls)}
        values = {f.name: getattr(base or cls(), f.name) for f in fields(cls)}
        for pair in pairs:
            key, sep, value = pair.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or key not in known:
                raise ValueError(f"bad column mapping {pair!r}; expected one of {sorted(known)} as key=HEADER")
            values[key] = value or None
        if not values["name"]:
            raise ValueError("the name column cannot be disabled")
        return cls(**values)

    @classmethod
    def from_file(cls, path: str | Path, base: "ColumnMapping | None" = None) -> "ColumnMapping":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        pairs = [ln for ln in (raw.strip() for raw in lines) if ln and not ln.startswith("#")]
        return cls.from_pairs(pairs, base)

    def columns(self) -> dict[str, str]:
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name)}


@dataclass(frozen=True)
class PlanetRecord:
    name: str
    radius_eu: float | None = None
    density_eu: float | None = None
    escape_velocity_eu: float | None = None
    surface_temp_kelvin: float | None = None
    surface_temp_eu: float | None = None

    def __post_init__(self):
        if not self.name.strip():
            raise ValueError("planet name must be non-empty")


@dataclass
class CatalogReport:
    loaded: int = 0
    skipped: list[tuple[int, str]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.loaded + len(self.skipped)


_RECORD_FIELDS = {
    "radius": "radius_eu",
    "density": "density_eu",
    "escape_velocity": "escape_velocity_eu",
    "surface_temp_kelvin": "surface_temp_kelvin",
    "surface_temp_eu": "surface_temp_eu",
}


def _parse_float(text: str) -> float | None:
    text = text.strip()
    if not text:
        return None
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(text)
    return value


def load_catalog(path: str | Path, mapping: ColumnMapping | None = None) -> tuple[list[PlanetRecord], CatalogReport]:
    """Parse a catalog CSV into records.

    Bad rows are skipped and listed in the report with their 1-based data row
    number; only a missing file or missing mapped header aborts.
    """
    mapping = mapping or ColumnMapping()
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(path)
    records, report = [], CatalogReport()
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [col for col in mapping.columns().values() if col not in header]
        if missing:
            raise MalformedHeader(f"{path}: missing column(s) {', '.join(missing)}")
        cols = mapping.columns()
        for row_no, row in enumerate(reader, start=1):
            name = (row.get(cols["name"]) or "").strip()
            if not name:
                report.skipped.append((row_no, "missing name"))
                continue
            values, bad = {}, None
            for key, attr in _RECORD_FIELDS.items():
                if key not in cols:
                    continue
                try:
                    values[attr] = _parse_float(row.get(cols[key]) or "")
                except ValueError:
                    bad = key.replace("_", " ")
                    break
            if bad:
                report.skipped.append((row_no, f"unparseable {bad}"))
                continue
            records.append(PlanetRecord(name, **values))
            report.loaded += 1
    return records, report


def bundled_catalog_path() -> Path:
    """Path of the seven-planet fixture shipped with the package."""
    return Path(str(resources.files("evohab") / "data" / "trappist.csv"))


def to_planet_params(record: PlanetRecord, earth_temp_k: float = EARTH_SURFACE_TEMP_K) -> PlanetParams:
    def need(value, label):
        if value is None:
            raise MissingField(label)
        if value <= 0:
            raise NonPositiveValue(label, value)
        return value

    radius = need(record.radius_eu, "radius")
    density = need(record.density_eu, "density")
    escape = need(record.escape_velocity_eu, "escape_velocity")
    if record.surface_temp_eu is not None:
        temp = need(record.surface_temp_eu, "surface_temp")
    elif record.surface_temp_kelvin is not None:
        temp = need(record.surface_temp_kelvin, "surface_temp") / earth_temp_k
    else:
        raise MissingField("surface_temp")
    return PlanetParams(radius, density, escape, temp)


def _normalise(name: str) -> str:
    return " ".join(name.split()).casefold()


def select_planets(records: list[PlanetRecord], names: list[str]) -> tuple[list[PlanetRecord], list[str]]:
    """Records matching ``names`` in query order, plus the names that matched nothing."""
    index: dict[str, PlanetRecord] = {}
    for rec in records:
        index.setdefault(_normalise(rec.name), rec)
    found, missing = [], []
    for name in names:
        rec = index.get(_normalise(name))
        if rec is None:
            missing.append(name)
        else:
            found.append(rec)
    return found, missing
