"""File formats: readings CSV/JSONL, spectra CSV, summary JSON.

Column layouts are a stable contract. Floats are serialized with repr so
files round-trip without loss and identical runs produce identical bytes;
missing inversions are written as empty fields, never as 0. All writers go
through a write-then-rename so output files appear atomically.
"""

from __future__ import annotations

import csv
import io
import json
import os
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .interrogator import Reading
from .scenario import SeriesRecord
from .spectrum import Spectrum

__all__ = [
    "READINGS_HEADER",
    "SPECTRUM_HEADER",
    "atomic_write_text",
    "readings_csv",
    "readings_jsonl",
    "parse_readings_csv",
    "write_spectrum_csv",
    "read_spectrum_csv",
    "reading_to_json",
    "summary_json",
]

READINGS_HEADER = (
    "timestamp_s",
    "truth_temp_c",
    "truth_strain_ue",
    "freq_hz",
    "amplitude_db",
    "snr_db",
    "temp_c",
    "strain_ue",
    "dropout",
)
SPECTRUM_HEADER = ("freq_hz", "s11_db")


def atomic_write_text(path: Path, text: str) -> None:
    """Write text to path via a temp file + rename in the same directory."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _fmt(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def _record_row(record: SeriesRecord) -> list[str]:
    r = record.reading
    return [
        _fmt(record.timestamp_s),
        _fmt(record.truth_temp_c),
        _fmt(record.truth_strain_ue),
        _fmt(r.freq_hz if r else None),
        _fmt(r.amplitude_db if r else None),
        _fmt(r.snr_db if r else None),
        _fmt(r.temp_c if r else None),
        _fmt(r.strain_ue if r else None),
        "1" if r is None else "0",
    ]


def readings_csv(records: Sequence[SeriesRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(READINGS_HEADER)
    for record in records:
        writer.writerow(_record_row(record))
    return buf.getvalue()


def readings_jsonl(records: Sequence[SeriesRecord]) -> str:
    lines = []
    for record in records:
        row = _record_row(record)
        obj = {
            key: (None if cell == "" else float(cell) if key != "dropout" else int(cell))
            for key, cell in zip(READINGS_HEADER, row)
        }
        lines.append(json.dumps(obj))
    return "\n".join(lines) + "\n"


def parse_readings_csv(text: str) -> list[dict]:
    """Parse a readings CSV back into dictionaries (floats / None / int dropout)."""
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    if header != READINGS_HEADER:
        raise ValueError(f"unexpected readings header: {header}")
    out = []
    for row in reader:
        obj = {}
        for key, cell in zip(READINGS_HEADER, row):
            if key == "dropout":
                obj[key] = int(cell)
            else:
                obj[key] = None if cell == "" else float(cell)
        out.append(obj)
    return out


def write_spectrum_csv(path: Path, spectrum: Spectrum) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SPECTRUM_HEADER)
    for f, s in zip(spectrum.freqs_hz, spectrum.s11_db):
        writer.writerow([repr(float(f)), repr(float(s))])
    atomic_write_text(Path(path), buf.getvalue())


def read_spectrum_csv(path: Path) -> Spectrum:
    """Load a spectrum CSV; raises ValueError on schema violations."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise ValueError("empty spectrum file") from None
        if header != SPECTRUM_HEADER:
            raise ValueError(f"unexpected spectrum header: {header}")
        freqs: list[float] = []
        s11: list[float] = []
        for row in reader:
            if len(row) != 2:
                raise ValueError(f"malformed spectrum row: {row}")
            freqs.append(float(row[0]))
            s11.append(float(row[1]))
    if not freqs:
        raise ValueError("spectrum file contains no data rows")
    return Spectrum(freqs_hz=np.asarray(freqs), s11_db=np.asarray(s11))


def reading_to_json(reading: Reading) -> str:
    return json.dumps(
        {
            "timestamp_s": reading.timestamp_s,
            "freq_hz": reading.freq_hz,
            "amplitude_db": reading.amplitude_db,
            "snr_db": reading.snr_db,
            "temp_c": reading.temp_c,
            "strain_ue": reading.strain_ue,
        }
    )


def summary_json(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=True) + "\n"
