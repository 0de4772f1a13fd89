"""Intensity-table ingestion and report/sweep emission.

Input CSV schema (UTF-8, comma separated, LF line endings)::

    prep,basis,i1,i2
    00,DA,0.848,0.152
    00,RL,0.853,0.147

``basis`` is one of ``DA`` (X), ``RL`` (Y) or ``HV`` (sanity check only);
``i1`` and ``i2`` are the two output-port intensities in arbitrary units.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable

from .errors import DuplicateRecord, MissingBasis, ParseError, UnknownBasis, UnknownLabel
from .geometry import (
    DISK_TOL_EXP,
    LABELS,
    PROB_TOL_EXP,
    PrepVector,
    PreparationQuad,
    ideal_quad,
    operational_distance,
    stokes_from_probs,
)
from .witnesses import (
    WitnessReport,
    marvian_noise_bound,
    parity_depol_condition,
    pusey_depol_bound,
)

HEADER = ["prep", "basis", "i1", "i2"]
BASES = ("DA", "RL", "HV")
SWEEP_COLUMNS = ["label", "a", "delta", "x", "y", "pusey_depol", "parity_depol", "marvian"]


@dataclass(frozen=True)
class IntensityRecord:
    prep_label: str
    basis: str
    i1: float
    i2: float

    @property
    def probs(self) -> tuple[float, float]:
        total = self.i1 + self.i2
        return self.i1 / total, self.i2 / total


def parse_intensities(source: str) -> list[IntensityRecord]:
    """Parse and validate the intensity CSV text."""
    reader = csv.reader(io.StringIO(source))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty input", line=1) from None
    if [h.strip() for h in header] != HEADER:
        raise ParseError(f"header must be {','.join(HEADER)!r}, got {','.join(header)!r}", line=1)
    records: list[IntensityRecord] = []
    seen: set[tuple[str, str]] = set()
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 4:
            raise ParseError(f"expected 4 fields, got {len(row)}", line=lineno)
        label, basis, s1, s2 = (cell.strip() for cell in row)
        if label not in LABELS:
            raise ParseError(f"unknown preparation label {label!r}", line=lineno)
        if basis not in BASES:
            raise UnknownBasis(f"unknown basis {basis!r}; expected one of {', '.join(BASES)}", line=lineno)
        try:
            i1, i2 = float(s1), float(s2)
        except ValueError:
            raise ParseError(f"intensities must be numbers, got {s1!r}, {s2!r}", line=lineno) from None
        if not (i1 >= 0 and i2 >= 0) or i1 + i2 <= 0 or i1 + i2 == float("inf"):
            raise ParseError("intensities must be finite, nonnegative and not both zero", line=lineno)
        if (label, basis) in seen:
            raise DuplicateRecord(f"duplicate record for preparation {label}, basis {basis}", line=lineno)
        seen.add((label, basis))
        records.append(IntensityRecord(label, basis, i1, i2))
    return records


def _index(records: Iterable[IntensityRecord]) -> dict[tuple[str, str], IntensityRecord]:
    return {(r.prep_label, r.basis): r for r in records}


def quad_from_records(records: Iterable[IntensityRecord], tol_prob: float = PROB_TOL_EXP,
                      tol_geom: float = DISK_TOL_EXP) -> PreparationQuad:
    """Normalise intensities and place each preparation in the disk."""
    idx = _index(records)
    vectors = {}
    for lab in LABELS:
        missing = [b for b in ("DA", "RL") if (lab, b) not in idx]
        if missing:
            raise MissingBasis(f"preparation {lab} lacks {' and '.join(missing)} data")
        p_d, p_a = idx[(lab, "DA")].probs
        p_r, p_l = idx[(lab, "RL")].probs
        vectors[lab] = stokes_from_probs(p_d, p_a, p_r, p_l, tol=tol_prob).check_disk(tol_geom)
    return PreparationQuad(*(vectors[lab] for lab in LABELS))


def s_z_from_records(records: Iterable[IntensityRecord]) -> dict[str, float]:
    """``pH - pV`` for every preparation that has an HV record."""
    out = {}
    for r in records:
        if r.basis == "HV":
            p_h, p_v = r.probs
            out[r.prep_label] = p_h - p_v
    return {lab: out[lab] for lab in LABELS if lab in out}


def records_from_quad(quad: PreparationQuad) -> list[IntensityRecord]:
    """Probability records ``((1 +/- x)/2, (1 +/- y)/2)`` reproducing ``quad``."""
    out = []
    for lab in LABELS:
        v = quad[lab]
        out.append(IntensityRecord(lab, "DA", (1 + v.x) / 2, (1 - v.x) / 2))
        out.append(IntensityRecord(lab, "RL", (1 + v.y) / 2, (1 - v.y) / 2))
    return out


def format_intensities(records: Iterable[IntensityRecord]) -> str:
    lines = [",".join(HEADER)]
    for r in records:
        lines.append(f"{r.prep_label},{r.basis},{_num(r.i1)},{_num(r.i2)}")
    return "\n".join(lines) + "\n"


def _num(v) -> str:
    return repr(float(v))


def sig6(v):
    """Round a real to 6 significant digits for serialisation."""
    if v is None:
        return None
    f = float(v)
    if f == 0:
        return 0.0
    return float(f"{f:.6g}")


def _vec(v: PrepVector) -> list[float]:
    return [sig6(v.x), sig6(v.y)]


def _exact(v) -> str | None:
    if v is None:
        return None
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    return repr(v)


def report_dict(report: WitnessReport, verdict=None, gap=None,
                half_parity=None, thresholds=None, tabulated=None, extras=None) -> dict:
    """Assemble the report in its documented, fixed field order."""
    w = report.weights
    quad = report.quad
    out = {
        "schema": "pmwitness.report/1",
        "mode": report.mode,
        "quad": {lab: _vec(quad[lab]) for lab in LABELS},
        "weights": {"p": sig6(w.p), "q": sig6(w.q), "c": _vec(w.c)},
        "delta": {lab: sig6(report.deltas[lab]) for lab in LABELS},
        "delta_max": sig6(report.delta),
        "pusey_raw": sig6(report.s_raw),
        "pusey_bound": sig6(report.s_bound),
        "marvian_bound": sig6(report.c_prep_bound),
        "parity_margin": sig6(report.parity_margin),
        "pusey_depol_bound": sig6(report.depol_pusey_bound),
        "parity_depol_margin": sig6(report.depol_parity_margin),
        "rows": {lab: {"d": sig6(r.delta), "S": sig6(r.s_bound), "C": sig6(r.c_bound)}
                 for lab, r in report.rows.items()},
        "verdicts": dict(report.verdicts),
    }
    if tabulated is not None:
        out["rows_tabulated"] = {lab: {"d": sig6(r.delta), "S": sig6(r.s_bound), "C": sig6(r.c_bound)}
                                 for lab, r in tabulated.items()}
    if thresholds is not None:
        t = thresholds.as_dict()
        out["thresholds"] = {k: {"root": sig6(v), "delta_max_below": report.delta <= v}
                             for k, v in t.items()}
    if verdict is not None:
        out["lp"] = lp_dict(verdict, gap, half_parity)
    if extras:
        out.update(extras)
    return out


def lp_dict(verdict, gap=None, half_parity=None) -> dict:
    out = {
        "nc_feasible": verdict.feasible,
        "min_parity_tv": sig6(verdict.min_parity_tv),
        "min_parity_tv_exact": _exact(verdict.min_parity_tv),
        "bodp_gap": sig6(gap),
        "bodp_gap_exact": _exact(gap),
        "weights_exact": {"p": _exact(verdict.weights.p), "q": _exact(verdict.weights.q)},
        "weights_mismatch": sig6(verdict.weights_mismatch),
        "certificate_verified": verdict.certificate_verified,
    }
    if half_parity is not None:
        tv, g = half_parity
        out["half_parity"] = {"min_tv": sig6(tv), "min_tv_exact": _exact(tv),
                              "bodp_gap": sig6(g), "bodp_gap_exact": _exact(g)}
    return out


def emit_report(report: WitnessReport, verdict=None, **kw) -> str:
    """JSON text of a witness report (and LP verdict, when given)."""
    return dumps(report_dict(report, verdict, **kw))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


@dataclass(frozen=True)
class SweepPoint:
    label: str
    a: float
    delta: float
    vector: PrepVector
    pusey_depol: bool
    parity_depol: bool
    marvian: bool


def sweep_point(label: str, a: float, vector: PrepVector) -> SweepPoint:
    """Classify one depolarized preparation with the depolarizing-noise bounds."""
    delta = float(operational_distance(vector, ideal_quad()[label]))

    def positive(fn):
        try:
            return fn(delta) > 0
        except Exception:
            return False

    return SweepPoint(
        label=label, a=a, delta=delta, vector=vector,
        pusey_depol=positive(pusey_depol_bound),
        parity_depol=positive(lambda d: parity_depol_condition(d)[1]),
        marvian=positive(marvian_noise_bound),
    )


def emit_sweep(points: Iterable[SweepPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for pt in points:
        writer.writerow([
            pt.label, f"{pt.a:.6g}", f"{pt.delta:.6g}", f"{float(pt.vector.x):.6g}",
            f"{float(pt.vector.y):.6g}", _flag(pt.pusey_depol), _flag(pt.parity_depol), _flag(pt.marvian),
        ])
    return buf.getvalue()


def _flag(b: bool) -> str:
    return "true" if b else "false"


def parse_sweep(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def fixture_text(name: str) -> str:
    """Text of a shipped fixture (``polarization.csv``, ``table1.expected.json``, ...)."""
    return resources.files("pmwitness").joinpath("data", name).read_text(encoding="utf-8")


def load_fixture_quad(name: str) -> PreparationQuad:
    return quad_from_records(parse_intensities(fixture_text(name)))


def load_expected(name: str) -> dict:
    return json.loads(fixture_text(name))


def check_label(label: str) -> str:
    if label not in LABELS:
        raise UnknownLabel(f"unknown preparation label {label!r}")
    return label
