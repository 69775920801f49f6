"""
Band-structure and gap-table writers.

All text is UTF-8 with LF line endings, and floats are written with repr
precision so repeated runs produce identical files.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Union

from pcband.config import BandStructure, GapInterval, OutputRecord

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("csv", "json", "gnuplot")
CSV_COLUMNS = ["omega", "cos_kl", "kappa_L", "xi", "state", "band"]


def _clean(value: Any) -> Any:
    """NaN → None for JSON."""
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def band_structure_csv(bands: BandStructure) -> str:
    df = bands.to_dataframe()[CSV_COLUMNS]
    return df.to_csv(index=False, lineterminator="\n", na_rep="", float_format="%.17g")


def band_structure_json(bands: BandStructure) -> str:
    records = []
    for s in bands.samples:
        r = OutputRecord.from_sample(s)
        records.append(
            {
                "omega": r.omega_norm,
                "cos_kl": _clean(r.cos_kl),
                "kappa_L": r.kappa_L_reduced,
                "xi": r.xi,
                "state": r.state,
                "band": r.band_index,
            }
        )
    doc = {
        "pol": bands.pol.value,
        "pathway": bands.pathway.value,
        "samples": records,
        "gaps": gaps_records(bands.gaps),
    }
    return json.dumps(doc, indent=2) + "\n"


def band_structure_gnuplot(bands: BandStructure) -> str:
    """
    Two data blocks separated by two blank lines (gnuplot `index 0` / `index 1`).

    Block 0 holds the allowed samples (Ω, reduced κL, unfolded κL, band);
    block 1 holds one line per gap (Ω_lo, Ω_hi, max ξ) for shading.
    """
    lines: List[str] = [
        f"# pcband band structure, {bands.pol.value.upper()}, {bands.pathway.value} pathway",
        "# block 0: omega kappa_L kappa_L_unfolded band",
    ]
    unfolded = bands.unfolded_kappa_L()
    for s, k_unfolded in zip(bands.samples, unfolded):
        if math.isnan(s.kappa_L):
            continue
        lines.append(f"{s.omega_norm!r} {s.kappa_L!r} {float(k_unfolded)!r} {s.band_index}")
    lines += ["", "", "# block 1: omega_lo omega_hi max_xi"]
    for gap in bands.gaps:
        lines.append(f"{gap.omega_lo!r} {gap.omega_hi!r} {gap.max_xi!r}")
    return "\n".join(lines) + "\n"


def gaps_records(gaps: List[GapInterval]) -> List[Dict[str, Any]]:
    return [
        {
            "index": i,
            "omega_lo": g.omega_lo,
            "omega_hi": g.omega_hi,
            "width": g.width,
            "max_xi": g.max_xi,
            "parity": g.parity,
            "open_below": g.open_below,
            "open_above": g.open_above,
        }
        for i, g in enumerate(gaps)
    ]


def gaps_text(gaps: List[GapInterval]) -> str:
    """One line per gap: index, omega_lo, omega_hi, width, max_xi."""
    return "".join(
        f"{i} {g.omega_lo:.10f} {g.omega_hi:.10f} {g.width:.10f} {g.max_xi:.10f}\n"
        for i, g in enumerate(gaps)
    )


def gaps_json(gaps: List[GapInterval]) -> str:
    return json.dumps(gaps_records(gaps), indent=2) + "\n"


def render_band_structure(bands: BandStructure, fmt: str) -> str:
    if fmt == "csv":
        return band_structure_csv(bands)
    if fmt == "json":
        return band_structure_json(bands)
    if fmt == "gnuplot":
        return band_structure_gnuplot(bands)
    raise ValueError(f"Unknown output format: {fmt}. Valid options: {', '.join(OUTPUT_FORMATS)}")


def write_text(text: str, out: Optional[Union[str, Path]], stream: TextIO) -> None:
    """Write to a file (UTF-8, LF) or, without a path, to the given stream."""
    if out is None:
        stream.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    logger.info(f"Results exported to {out}")
