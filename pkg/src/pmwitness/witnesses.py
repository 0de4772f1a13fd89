"""Noise-robust nonclassicality witnesses and their noise thresholds.

Three witnesses are evaluated against the noise parameter ``delta`` (the
operational distance of a preparation from its ideal counterpart):

* Pusey's inequality ``S <= 0`` and its lower bound in ``delta``;
* Marvian's inaccessible information ``C_prep`` and its lower bound;
* parity preservation, violated when the ``C_prep`` bound beats a second
  function of ``delta``.

Each has a tighter variant when the noise is known to be depolarizing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Callable

from .errors import BoundDomainError, InconsistentWeights, OutOfRange
from .geometry import (
    LABELS,
    EquivalenceWeights,
    PreparationQuad,
    equivalence_residual,
    ideal_quad,
    noise_deltas,
)

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

#: thresholds as stated for the five bounds (two or three decimals)
STATED_THRESHOLDS = {
    "pusey": 0.06,
    "marvian": 0.1,
    "parity": 0.007,
    "pusey_depol": 0.07,
    "parity_depol": 0.02,
}

#: sign-change brackets used by the threshold solver
THRESHOLD_BRACKETS = {
    "pusey": (0.06, 0.07),
    "marvian": (0.10, 0.11),
    "parity": (0.007, 0.008),
    "pusey_depol": (0.07, 0.075),
    "parity_depol": (0.02, 0.03),
}

#: decimals to which each solved root is truncated for comparison
THRESHOLD_DECIMALS = {"pusey": 2, "marvian": 1, "parity": 3, "pusey_depol": 2, "parity_depol": 2}

WEIGHT_TOL = 1e-9


def _check_delta(delta: float) -> None:
    if delta < 0:
        raise BoundDomainError(f"noise parameter must be nonnegative, got {delta}")


def pusey_raw(quad: PreparationQuad, w: EquivalenceWeights, tol: float = WEIGHT_TOL):
    """Pusey's expression ``S`` evaluated on measured coordinates; ``S > 0`` is a violation."""
    res = equivalence_residual(quad, w.p, w.q)
    if res > tol:
        raise InconsistentWeights(
            f"weights p={float(w.p):.6g}, q={float(w.q):.6g} leave residual {float(res):.3g} > {tol:g}"
        )
    p, q = w.p, w.q
    a, b, c, d = quad.p00, quad.p01, quad.p10, quad.p11
    return (p * (a.x + a.y + d.x + d.y)
            + q * (b.x - b.y + c.x - c.y)
            + (c.y - c.x - d.x - d.y) - 2)


def pusey_noise_bound(delta: float) -> float:
    _check_delta(delta)
    return 2 * SQRT2 - 2 - 16 * delta + 32 * SQRT2 * delta ** 2


def marvian_noise_bound(delta: float) -> float:
    _check_delta(delta)
    denom = SQRT2 - 4 * delta
    if denom <= 0:
        raise BoundDomainError(f"C_prep bound undefined for delta >= sqrt(2)/4 (got {delta})")
    return (denom - 1) / (4 * denom)


def distinguishability(d: float) -> float:
    """Success probability ``(1 + d)/2`` of telling two preparations apart."""
    if not 0 <= d <= 1:
        raise OutOfRange(f"distance {d} outside [0, 1]")
    return (1 + d) / 2


def parity_threshold_function(delta: float) -> float:
    """Right-hand side that the ``C_prep`` bound has to exceed (general noise)."""
    _check_delta(delta)
    denom = 1 - 2 * SQRT2 * delta
    if denom <= 0:
        raise BoundDomainError(f"parity condition undefined for delta >= 1/(2*sqrt(2)) (got {delta})")
    return (2 * (1 + 2 * SQRT3) * delta - 4 * SQRT2 * delta ** 2) / denom


def parity_depol_threshold_function(delta: float) -> float:
    """Right-hand side for depolarizing noise."""
    _check_delta(delta)
    denom = 1 - 2 * SQRT2 * delta
    if denom <= 0:
        raise BoundDomainError(f"parity condition undefined for delta >= 1/(2*sqrt(2)) (got {delta})")
    return delta + SQRT2 * delta / denom


def parity_condition(delta: float) -> tuple[bool, float]:
    """``(violated, margin)`` with margin = C_prep bound minus the parity threshold function."""
    margin = marvian_noise_bound(delta) - parity_threshold_function(delta)
    return margin > 0, margin


def pusey_depol_bound(delta: float) -> float:
    _check_delta(delta)
    denom = 1 - SQRT2 * delta
    if denom <= 0:
        raise BoundDomainError(f"depolarizing Pusey bound undefined for delta >= 1/sqrt(2) (got {delta})")
    return 2 * SQRT2 - 2 - 8 * delta + (8 * SQRT2 * delta ** 2 - 4 * delta) / denom


def parity_depol_condition(delta: float) -> tuple[bool, float]:
    margin = marvian_noise_bound(delta) - parity_depol_threshold_function(delta)
    return margin > 0, margin


def bisect(fn: Callable[[float], float], lo: float, hi: float, tol: float = 1e-9) -> float:
    """Root of ``fn`` in ``[lo, hi]``; the endpoints must straddle a sign change."""
    flo, fhi = fn(lo), fn(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Thresholds:
    pusey: float
    marvian: float
    parity: float
    pusey_depol: float
    parity_depol: float

    def as_dict(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in STATED_THRESHOLDS}

    def truncated(self) -> dict[str, float]:
        return {k: truncate(v, THRESHOLD_DECIMALS[k]) for k, v in self.as_dict().items()}


def truncate(x: float, decimals: int) -> float:
    f = 10 ** decimals
    return math.floor(x * f) / f


def solve_thresholds(tol: float = 1e-9) -> Thresholds:
    """Zero crossings of the five noise bounds, by bisection on fixed brackets."""
    fns = {
        "pusey": pusey_noise_bound,
        "marvian": marvian_noise_bound,
        "parity": lambda d: parity_condition(d)[1],
        "pusey_depol": pusey_depol_bound,
        "parity_depol": lambda d: parity_depol_condition(d)[1],
    }
    return Thresholds(**{k: bisect(fn, *THRESHOLD_BRACKETS[k], tol=tol) for k, fn in fns.items()})


@dataclass(frozen=True)
class RowValues:
    """One table row: distance to ideal and the two bounds evaluated there."""

    delta: float
    s_bound: float | None
    c_bound: float | None


def row_values(delta: float) -> RowValues:
    return RowValues(delta, _safe(pusey_noise_bound, delta), _safe(marvian_noise_bound, delta))


def _safe(fn, delta):
    try:
        return fn(delta)
    except BoundDomainError:
        return None


def _round_half_up(x: Decimal, digits: int) -> Decimal:
    return x.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_UP)


def tabulated_deltas(quad: PreparationQuad, digits: int = 3) -> dict[str, float]:
    """Distances as a three-decimal table would give them.

    Coordinates and the ideal ``1/sqrt(2)`` are both rounded to ``digits``
    decimals before differencing, and the half-max distance is rounded half-up
    to ``digits`` decimals.
    """
    ideal = ideal_quad()
    out = {}
    for lab in LABELS:
        v, w = quad[lab], ideal[lab]
        diffs = [abs(_round_half_up(Decimal(repr(float(a))), digits)
                     - _round_half_up(Decimal(repr(float(b))), digits))
                 for a, b in ((v.x, w.x), (v.y, w.y))]
        out[lab] = float(_round_half_up(max(diffs) / 2, digits))
    return out


def table_rows(quad: PreparationQuad, tabulated: bool = False) -> dict[str, RowValues]:
    """Per-preparation ``(d, S bound, C bound)`` rows.

    With ``tabulated=True`` the distances are first rounded the way a
    three-decimal results table is built; otherwise the exact distances are
    used.
    """
    deltas = tabulated_deltas(quad) if tabulated else {k: float(v) for k, v in noise_deltas(quad).items()}
    return {lab: row_values(deltas[lab]) for lab in LABELS}


@dataclass
class WitnessReport:
    mode: str
    quad: PreparationQuad
    weights: EquivalenceWeights
    deltas: dict[str, float]
    delta: float
    s_raw: float
    s_bound: float | None
    c_prep_bound: float | None
    parity_margin: float | None
    depol_pusey_bound: float | None = None
    depol_parity_margin: float | None = None
    rows: dict[str, RowValues] = field(default_factory=dict)
    verdicts: dict[str, bool] = field(default_factory=dict)

    @property
    def parity_violated(self) -> bool:
        return self.verdicts["parity"]


def build_report(quad: PreparationQuad, w: EquivalenceWeights, mode: str = "plain") -> WitnessReport:
    """Evaluate every witness for one dataset.

    ``delta`` is the largest per-preparation distance, since the bounds hold
    for sets whose every preparation is within ``delta`` of ideal.  In
    ``"depolarizing"`` mode the Pusey and parity verdicts use the
    depolarizing-noise bounds.
    """
    if mode not in ("plain", "depolarizing"):
        raise ValueError(f"unknown mode {mode!r}")
    deltas = {k: float(v) for k, v in noise_deltas(quad).items()}
    delta = max(deltas.values())
    s_raw = float(pusey_raw(quad, w))
    s_bound = _safe(pusey_noise_bound, delta)
    c_bound = _safe(marvian_noise_bound, delta)
    margin = _safe(lambda d: parity_condition(d)[1], delta)
    report = WitnessReport(
        mode=mode, quad=quad, weights=w, deltas=deltas, delta=delta, s_raw=s_raw,
        s_bound=s_bound, c_prep_bound=c_bound, parity_margin=margin,
        rows={lab: row_values(deltas[lab]) for lab in LABELS},
    )
    verdicts = {
        "pusey_raw": s_raw > 0,
        "marvian": c_bound is not None and c_bound > 0,
    }
    if mode == "depolarizing":
        report.depol_pusey_bound = _safe(pusey_depol_bound, delta)
        report.depol_parity_margin = _safe(lambda d: parity_depol_condition(d)[1], delta)
        verdicts["pusey"] = report.depol_pusey_bound is not None and report.depol_pusey_bound > 0
        verdicts["parity"] = report.depol_parity_margin is not None and report.depol_parity_margin > 0
    else:
        verdicts["pusey"] = s_bound is not None and s_bound > 0
        verdicts["parity"] = margin is not None and margin > 0
    report.verdicts = {k: verdicts[k] for k in ("pusey", "pusey_raw", "marvian", "parity")}
    return report
