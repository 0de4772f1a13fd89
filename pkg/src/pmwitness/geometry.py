"""Bloch-disk geometry of the four-preparation scenario.

Each preparation is summarised by the pair of outcome biases of the two
binary measurements X and Y::

    x = p(0|X) - p(1|X),    y = p(0|Y) - p(1|Y)

Coordinates may be floats or :class:`fractions.Fraction`; every operation in
this module is written so that rational inputs give exact rational outputs,
which is what the ontic LP relies on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Iterator, Union

from .errors import Degenerate, NoEquivalence, NonNormalized, OutOfRange, OutsideDisk

Number = Union[float, Fraction]

LABELS = ("00", "01", "10", "11")

#: normalisation tolerance for simulated probabilities
PROB_TOL_SIM = 1e-6
#: normalisation tolerance for ingested experimental probabilities
PROB_TOL_EXP = 5e-3
#: slack on x^2 + y^2 <= 1 for simulated data
DISK_TOL = 1e-9
#: slack for ingested experimental data; three-decimal Stokes pairs can sit
#: slightly outside the disk while still being valid outcome statistics
DISK_TOL_EXP = 0.05

INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class PrepVector:
    """Point ``(x, y)`` in the Bloch disk."""

    x: Number
    y: Number

    def __add__(self, other: "PrepVector") -> "PrepVector":
        return PrepVector(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "PrepVector") -> "PrepVector":
        return PrepVector(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "PrepVector":
        return PrepVector(-self.x, -self.y)

    def __mul__(self, s: Number) -> "PrepVector":
        return PrepVector(s * self.x, s * self.y)

    __rmul__ = __mul__

    def __iter__(self) -> Iterator[Number]:
        yield self.x
        yield self.y

    def norm_sq(self) -> Number:
        return self.x * self.x + self.y * self.y

    def in_disk(self, tol: float = DISK_TOL) -> bool:
        return self.norm_sq() <= 1 + tol

    def check_disk(self, tol: float = DISK_TOL) -> "PrepVector":
        if not self.in_disk(tol):
            raise OutsideDisk(
                f"vector ({float(self.x):.6g}, {float(self.y):.6g}) lies outside the unit disk"
            )
        return self


@dataclass(frozen=True)
class PreparationQuad:
    """The four preparations P00, P01, P10, P11."""

    p00: PrepVector
    p01: PrepVector
    p10: PrepVector
    p11: PrepVector

    def __getitem__(self, label: str) -> PrepVector:
        try:
            return getattr(self, "p" + label)
        except AttributeError:
            raise KeyError(label) from None

    def items(self):
        return [(lab, self[lab]) for lab in LABELS]

    def vectors(self) -> tuple[PrepVector, PrepVector, PrepVector, PrepVector]:
        return (self.p00, self.p01, self.p10, self.p11)

    def map(self, fn) -> "PreparationQuad":
        return PreparationQuad(*(fn(v) for v in self.vectors()))

    def scaled(self, factor: Number) -> "PreparationQuad":
        """Shrink (or stretch) every vector towards the origin by ``factor``."""
        return self.map(lambda v: v * factor)

    def check_disk(self, tol: float = DISK_TOL) -> "PreparationQuad":
        for v in self.vectors():
            v.check_disk(tol)
        return self

    @classmethod
    def from_mapping(cls, data) -> "PreparationQuad":
        return cls(*(PrepVector(*data[lab]) for lab in LABELS))


@dataclass(frozen=True)
class EquivalenceWeights:
    """Weights of the operational equivalence

    ``p*P00 + (1-p)*P11 = c = q*P01 + (1-q)*P10``.
    """

    p: Number
    q: Number
    c: PrepVector


@dataclass(frozen=True)
class ParityMixtures:
    plus: PrepVector
    minus: PrepVector


def stokes_from_probs(p_d: Number, p_a: Number, p_r: Number, p_l: Number,
                      tol: float = PROB_TOL_SIM) -> PrepVector:
    """Bloch-disk point from the two measured outcome pairs (D/A for X, R/L for Y)."""
    for name, val in (("pD", p_d), ("pA", p_a), ("pR", p_r), ("pL", p_l)):
        if not 0 <= val <= 1:
            raise OutOfRange(f"{name}={float(val):.6g} is not a probability")
    for name, total in (("pD+pA", p_d + p_a), ("pR+pL", p_r + p_l)):
        if abs(total - 1) > tol:
            raise NonNormalized(f"{name}={float(total):.6g} differs from 1 by more than {tol:g}")
    return PrepVector(p_d - p_a, p_r - p_l)


def probs_from_vector(v: PrepVector) -> tuple[Number, Number, Number, Number]:
    """Inverse of :func:`stokes_from_probs`: returns ``(pD, pA, pR, pL)``."""
    half = Fraction(1, 2) if isinstance(v.x, Fraction) and isinstance(v.y, Fraction) else 0.5
    return (half * (1 + v.x), half * (1 - v.x), half * (1 + v.y), half * (1 - v.y))


def operational_distance(a: PrepVector, b: PrepVector) -> Number:
    """Half the largest coordinate difference between two preparations."""
    m = max(abs(a.x - b.x), abs(a.y - b.y))
    return m / 2


def ideal_quad() -> PreparationQuad:
    r = INV_SQRT2
    return PreparationQuad(
        p00=PrepVector(r, r),
        p01=PrepVector(r, -r),
        p10=PrepVector(-r, r),
        p11=PrepVector(-r, -r),
    )


def ideal_vector(label: str) -> PrepVector:
    return ideal_quad()[label]


def noise_deltas(quad: PreparationQuad, ideal: PreparationQuad | None = None) -> dict[str, Number]:
    """Per-label distance to the ideal preparation."""
    ideal = ideal or ideal_quad()
    return {lab: operational_distance(quad[lab], ideal[lab]) for lab in LABELS}


def noise_delta(quad: PreparationQuad, ideal: PreparationQuad | None = None) -> Number:
    """Largest per-label distance to the ideal quad."""
    return max(noise_deltas(quad, ideal).values())


def equivalence_residual(quad: PreparationQuad, p: Number, q: Number) -> Number:
    """Infinity-norm mismatch between the even and odd mixtures at weights (p, q)."""
    even = quad.p00 * p + quad.p11 * (1 - p)
    odd = quad.p01 * q + quad.p10 * (1 - q)
    d = even - odd
    return max(abs(d.x), abs(d.y))


def _is_exact(*vals) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in vals)


def find_equivalence(quad: PreparationQuad, *, degenerate: str = "symmetric",
                     tol: float = 1e-12) -> EquivalenceWeights:
    """Solve ``p*P00 + (1-p)*P11 = q*P01 + (1-q)*P10`` for ``(p, q)``.

    The two segments [P00, P11] and [P01, P10] must cross; otherwise
    :class:`NoEquivalence` is raised.  When the lines through them coincide the
    solution is not unique and the pair closest (in L1) to ``(1/2, 1/2)`` is
    returned, unless ``degenerate="raise"``.
    """
    u = quad.p00 - quad.p11
    v = quad.p01 - quad.p10
    r = quad.p10 - quad.p11
    # p*u - q*v = r
    det = -u.x * v.y + v.x * u.y
    exact = _is_exact(u.x, u.y, v.x, v.y)
    scale = max(abs(u.x), abs(u.y), abs(v.x), abs(v.y), 1)
    singular = det == 0 if exact else abs(det) <= tol * scale * scale
    if not singular:
        p = (-r.x * v.y + v.x * r.y) / det
        q = (u.x * r.y - u.y * r.x) / det
        slack = 0 if exact else 1e-12
        if not (-slack <= p <= 1 + slack and -slack <= q <= 1 + slack):
            raise NoEquivalence(
                f"segments do not cross: p={float(p):.6g}, q={float(q):.6g} outside [0, 1]"
            )
        if not exact:
            p = min(max(p, 0.0), 1.0)
            q = min(max(q, 0.0), 1.0)
        return EquivalenceWeights(p, q, quad.p00 * p + quad.p11 * (1 - p))

    if degenerate == "raise":
        raise Degenerate("preparation segments are collinear; equivalence weights not unique")
    p, q = _degenerate_weights(quad, u, v, r, exact, tol)
    return EquivalenceWeights(p, q, quad.p00 * p + quad.p11 * (1 - p))


def _degenerate_weights(quad, u, v, r, exact, tol):
    half = Fraction(1, 2) if exact else 0.5
    one = Fraction(1) if exact else 1.0
    zero = 0 * half
    # candidate set: the feasible (p, q) on a line; optimum at p=1/2, q=1/2 or a box edge
    cands = []
    grid = (zero, half, one)
    for p in grid:
        cands.extend(_solve_q(u, v, r, p, exact, tol))
    for q in grid:
        cands.extend(_solve_p(u, v, r, q, exact, tol))
    feasible = []
    for p, q in cands:
        if zero <= p <= one and zero <= q <= one:
            res = equivalence_residual(quad, p, q)
            if (res == 0) if exact else (res <= 1e-9):
                feasible.append((abs(p - half) + abs(q - half), p, q))
    if not feasible:
        raise NoEquivalence("collinear preparations admit no equivalence with p, q in [0, 1]")
    feasible.sort(key=lambda t: (t[0], t[1], t[2]))
    return feasible[0][1], feasible[0][2]


def _solve_q(u, v, r, p, exact, tol):
    # p*u - q*v = r  =>  q*v = p*u - r
    rhs = u * p - r
    return [(p, q) for q in _solve_scalar(v, rhs, exact, tol)]


def _solve_p(u, v, r, q, exact, tol):
    rhs = v * q + r
    return [(p, q) for p in _solve_scalar(u, rhs, exact, tol)]


def _solve_scalar(a: PrepVector, b: PrepVector, exact, tol):
    """Scalars s with s*a = b (least-squares candidate, checked later)."""
    n = a.x * a.x + a.y * a.y
    if (n == 0) if exact else (n <= tol):
        zero_b = (b.x == 0 and b.y == 0) if exact else (abs(b.x) <= 1e-9 and abs(b.y) <= 1e-9)
        if zero_b:
            half = Fraction(1, 2) if exact else 0.5
            return [half]
        return []
    return [(a.x * b.x + a.y * b.y) / n]


def parity_mixtures(quad: PreparationQuad, weights: EquivalenceWeights | tuple | None = None) -> ParityMixtures:
    """Even and odd parity mixtures.

    ``weights`` may be an :class:`EquivalenceWeights`, a ``(w_even, w_odd)``
    pair, or ``None`` for the half-half mixtures P+ and P-.
    """
    if weights is None:
        wp = wq = Fraction(1, 2) if _is_exact(*quad.p00, *quad.p11, *quad.p01, *quad.p10) else 0.5
    elif isinstance(weights, EquivalenceWeights):
        wp, wq = weights.p, weights.q
    else:
        wp, wq = weights
    plus = quad.p00 * wp + quad.p11 * (1 - wp)
    minus = quad.p01 * wq + quad.p10 * (1 - wq)
    return ParityMixtures(plus, minus)


def to_fraction(v: Real, max_denominator: int = 10**6) -> Fraction:
    """Quantise a real to a rational, symmetric under negation; exact inputs pass through."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    f = Fraction(abs(float(v))).limit_denominator(max_denominator)
    return -f if v < 0 else f


def rational_quad(quad: PreparationQuad, max_denominator: int = 10**6) -> PreparationQuad:
    return quad.map(lambda v: PrepVector(to_fraction(v.x, max_denominator),
                                         to_fraction(v.y, max_denominator)))
