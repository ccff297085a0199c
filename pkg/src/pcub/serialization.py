"""JSON/CSV wire formats.

Laurent series travel as lists of {"j", "re", "im"}; elements as
{"d", "L", "components": [{"k", "ℓ", "series": [...]}]}.  The
component order key is the literal "ℓ" (ASCII "l" is accepted on
input).  CSV files start with the version comment line "# pcub-v1" and
format floats with their shortest round-trip representation.
"""

from __future__ import annotations

import csv
import io
import json

from .cubature import PseudoPositiveMeasure
from .errors import ConfigError
from .hardy import Annulus, ComponentFunction, HardyElement, LaurentSeries
from .quadrature import RadialMeasure

CSV_VERSION = "pcub-v1"

__all__ = [
    "CSV_VERSION",
    "series_to_json",
    "series_from_json",
    "element_to_json",
    "element_from_json",
    "measure_from_json",
    "measure_to_json",
    "annulus_from_json",
    "dump_json",
    "dump_csv",
]


def _ell_key(entry: dict):
    for key in ("ℓ", "l", "ell"):
        if key in entry:
            return entry[key]
    raise ConfigError(f"component entry missing order key: {sorted(entry)}")


def series_to_json(series: LaurentSeries) -> list[dict]:
    return [
        {"j": j, "re": series.coeffs[j].real, "im": series.coeffs[j].imag}
        for j in series.support
    ]


def series_from_json(data) -> LaurentSeries:
    try:
        return LaurentSeries(
            {int(e["j"]): complex(float(e["re"]), float(e.get("im", 0.0))) for e in data}
        )
    except (TypeError, KeyError, ValueError) as exc:
        raise ConfigError(f"malformed series entry: {exc}") from exc


def element_to_json(f: HardyElement) -> dict:
    return {
        "d": f.d,
        "L": f.L,
        "components": [
            {"k": k, "ℓ": ell, "series": series_to_json(comp.series)}
            for (k, ell), comp in f.items()
        ],
    }


def element_from_json(data: dict, d: int | None = None, L: float | None = None) -> HardyElement:
    try:
        d = int(data.get("d", d))
        L = float(data.get("L", L))
        comps = {}
        for entry in data.get("components", []):
            k = int(entry["k"])
            ell = int(_ell_key(entry))
            comps[(k, ell)] = ComponentFunction(
                k=k, d=d, series=series_from_json(entry["series"])
            )
        return HardyElement(d=d, L=L, components=comps)
    except (TypeError, KeyError, ValueError) as exc:
        raise ConfigError(f"malformed function element: {exc}") from exc


def measure_from_json(data: dict, d: int, ann: Annulus) -> PseudoPositiveMeasure:
    try:
        comps = {}
        for entry in data.get("components", []):
            k = int(entry["k"])
            ell = int(_ell_key(entry))
            atoms = tuple((float(t), float(w)) for t, w in entry.get("atoms", []))
            density = entry.get("density")
            comps[(k, ell)] = RadialMeasure(
                lo=ann.a,
                hi=ann.b,
                atoms=atoms,
                density=tuple(float(c) for c in density) if density else None,
            )
        return PseudoPositiveMeasure(d=d, annulus=ann, components=comps)
    except (TypeError, KeyError, ValueError) as exc:
        raise ConfigError(f"malformed measure: {exc}") from exc


def measure_to_json(mu: PseudoPositiveMeasure) -> dict:
    return {
        "components": [
            {
                "k": k,
                "ℓ": ell,
                "atoms": [[t, w] for t, w in comp.atoms],
                "density": list(comp.density) if comp.density else [],
            }
            for (k, ell), comp in mu.items()
        ]
    }


def annulus_from_json(data) -> Annulus:
    try:
        return Annulus(a=float(data["a"]), b=float(data["b"]))
    except (TypeError, KeyError, ValueError) as exc:
        raise ConfigError(f"malformed annulus: {exc}") from exc


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def dump_csv(header: list[str], rows, comments: list[str] = ()) -> str:
    """Render rows as pcub-v1 CSV; floats keep shortest round-trip form."""
    buf = io.StringIO()
    buf.write(f"# {CSV_VERSION}\n")
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()
