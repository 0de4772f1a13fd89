"""Ontological models of the four-preparation scenario as exact LPs.

Why four ontic states suffice: any model of two binary measurements can be
refined so that both response functions are deterministic (split each ontic
state by sampling the two outcomes in advance).  Pushing every distribution
forward onto the joint outcome assignment ``lambda = (X outcome, Y outcome)``
preserves all measurement statistics, preserves exact equalities between
mixtures, and cannot increase any total-variation distance.  Hence feasibility
and the minimum total-variation distance over all models are both attained on
the four cells ``(0,0), (0,1), (1,0), (1,1)``.

Variables are ``mu[k][lambda]`` for the four preparations ``k`` in label
order 00, 01, 10, 11.  Constraints fix each distribution's X and Y marginals
to ``(1 + x)/2`` and ``(1 + y)/2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TextIO

from ..errors import InconsistentWeights
from ..geometry import (
    LABELS,
    EquivalenceWeights,
    PreparationQuad,
    equivalence_residual,
    find_equivalence,
    operational_distance,
    parity_mixtures,
    rational_quad,
    to_fraction,
)
from . import simplex

ONTIC_STATES = ((0, 0), (0, 1), (1, 0), (1, 1))
DEFAULT_MAX_DENOMINATOR = 10**6


@dataclass(frozen=True)
class OnticDistribution:
    """Distribution over the four joint outcome assignments."""

    mass: tuple[Fraction, Fraction, Fraction, Fraction]

    def marginal_x0(self) -> Fraction:
        return self.mass[0] + self.mass[1]

    def marginal_y0(self) -> Fraction:
        return self.mass[0] + self.mass[2]

    def as_dict(self) -> dict[str, Fraction]:
        return {f"{a}{b}": m for (a, b), m in zip(ONTIC_STATES, self.mass)}


@dataclass
class LpVerdict:
    feasible: bool
    weights: EquivalenceWeights
    min_parity_tv: Fraction | None = None
    witness_model: dict[str, OnticDistribution] | None = None
    certificate_verified: bool = False
    farkas: list[Fraction] | None = None
    duals: list[Fraction] | None = None
    iterations: int = 0
    weights_mismatch: float = 0.0
    extra: dict = field(default_factory=dict)


@dataclass
class LinearProgram:
    """Standard-form LP ``min c.x, A x = b, x >= 0`` with named rows and columns."""

    names: list[str]
    row_names: list[str]
    A: list[list[Fraction]]
    b: list[Fraction]
    c: list[Fraction]

    def solve(self) -> simplex.LPResult:
        return simplex.solve(self.A, self.b, self.c)

    def dump(self, fh: TextIO) -> None:
        """Plain-text tableau dump; see README for the format."""
        fh.write("# pmwitness LP v1\n")
        fh.write("sense min\n")
        fh.write(f"shape {len(self.A)} {len(self.names)}\n")
        fh.write("columns " + " ".join(self.names) + "\n")
        fh.write("objective " + " ".join(str(v) for v in self.c) + "\n")
        for name, row, rhs in zip(self.row_names, self.A, self.b):
            fh.write(f"row {name} " + " ".join(str(v) for v in row) + f" = {rhs}\n")
        fh.write("end\n")


def _mu(k: int, lam: int) -> int:
    return 4 * k + lam


def _marginal_rows(quad: PreparationQuad, ncols: int):
    rows, rhs, names = [], [], []
    for k, lab in enumerate(LABELS):
        v = quad[lab]
        norm = [Fraction(0)] * ncols
        mx = [Fraction(0)] * ncols
        my = [Fraction(0)] * ncols
        for lam, (ox, oy) in enumerate(ONTIC_STATES):
            norm[_mu(k, lam)] = Fraction(1)
            if ox == 0:
                mx[_mu(k, lam)] = Fraction(1)
            if oy == 0:
                my[_mu(k, lam)] = Fraction(1)
        rows += [norm, mx, my]
        rhs += [Fraction(1), (1 + v.x) / 2, (1 + v.y) / 2]
        names += [f"norm_{lab}", f"x0_{lab}", f"y0_{lab}"]
    return rows, rhs, names


def _mixture_coeffs(p: Fraction, q: Fraction, lam: int) -> dict[int, Fraction]:
    """Coefficients of ``nu_plus(lam) - nu_minus(lam)`` in the mu variables."""
    return {
        _mu(0, lam): p,          # 00
        _mu(3, lam): 1 - p,      # 11
        _mu(1, lam): -q,         # 01
        _mu(2, lam): -(1 - q),   # 10
    }


def _mu_names():
    return [f"mu{lab}_{a}{b}" for lab in LABELS for (a, b) in ONTIC_STATES]


def feasibility_program(quad: PreparationQuad, p: Fraction, q: Fraction) -> LinearProgram:
    """16 variables; marginals plus ``nu_plus = nu_minus`` cell by cell."""
    n = 16
    rows, rhs, names = _marginal_rows(quad, n)
    for lam, (a, b) in enumerate(ONTIC_STATES):
        row = [Fraction(0)] * n
        for j, coef in _mixture_coeffs(p, q, lam).items():
            row[j] = coef
        rows.append(row)
        rhs.append(Fraction(0))
        names.append(f"equiv_{a}{b}")
    return LinearProgram(_mu_names(), names, rows, rhs, [Fraction(0)] * n)


def parity_tv_program(quad: PreparationQuad, p: Fraction, q: Fraction) -> LinearProgram:
    """Minimise ``1/2 sum |nu_plus - nu_minus|`` with one bound variable per cell.

    Columns: 16 ``mu``, 4 ``t``, 4 ``s_plus``, 4 ``s_minus`` where
    ``nu_plus - nu_minus - t + s_plus = 0`` and
    ``nu_minus - nu_plus - t + s_minus = 0``.
    """
    n = 28
    rows, rhs, names = _marginal_rows(quad, n)
    for lam, (a, b) in enumerate(ONTIC_STATES):
        coeffs = _mixture_coeffs(p, q, lam)
        up = [Fraction(0)] * n
        dn = [Fraction(0)] * n
        for j, coef in coeffs.items():
            up[j] = coef
            dn[j] = -coef
        up[16 + lam] = dn[16 + lam] = Fraction(-1)
        up[20 + lam] = Fraction(1)
        dn[24 + lam] = Fraction(1)
        rows += [up, dn]
        rhs += [Fraction(0), Fraction(0)]
        names += [f"abs_plus_{a}{b}", f"abs_minus_{a}{b}"]
    c = [Fraction(0)] * 16 + [Fraction(1, 2)] * 4 + [Fraction(0)] * 8
    cols = (_mu_names() + [f"t_{a}{b}" for a, b in ONTIC_STATES]
            + [f"sp_{a}{b}" for a, b in ONTIC_STATES] + [f"sm_{a}{b}" for a, b in ONTIC_STATES])
    return LinearProgram(cols, names, rows, rhs, c)


def _model_from_x(x) -> dict[str, OnticDistribution]:
    return {lab: OnticDistribution(tuple(x[_mu(k, lam)] for lam in range(4)))
            for k, lab in enumerate(LABELS)}


def exact_inputs(quad: PreparationQuad, weights=None, *, max_denominator: int = DEFAULT_MAX_DENOMINATOR,
                 tol: float = 1e-6, require_equivalence: bool = True):
    """Quantise the quad and settle on exact weights.

    With ``require_equivalence`` the weights are re-solved exactly from the
    quantised quad, and any supplied weights must agree with them within
    ``tol``.  Otherwise supplied weights (an :class:`EquivalenceWeights` or a
    ``(p, q)`` pair; ``None`` means one half each) are quantised and used as is.
    """
    rq = rational_quad(quad, max_denominator)
    if require_equivalence:
        exact = find_equivalence(rq)
        mismatch = 0.0
        if weights is not None:
            wp, wq = (weights.p, weights.q) if isinstance(weights, EquivalenceWeights) else weights
            mismatch = max(abs(float(wp) - float(exact.p)), abs(float(wq) - float(exact.q)))
            if mismatch > tol:
                raise InconsistentWeights(
                    f"supplied weights (p={float(wp):.6g}, q={float(wq):.6g}) differ from the "
                    f"equivalence of the data (p={float(exact.p):.6g}, q={float(exact.q):.6g})"
                )
        return rq, exact, mismatch
    if weights is None:
        p = q = Fraction(1, 2)
    elif isinstance(weights, EquivalenceWeights):
        p, q = to_fraction(weights.p, max_denominator), to_fraction(weights.q, max_denominator)
    else:
        p, q = (to_fraction(v, max_denominator) for v in weights)
    c = rq.p00 * p + rq.p11 * (1 - p)
    return rq, EquivalenceWeights(p, q, c), 0.0


def nc_feasible(quad: PreparationQuad, weights=None, *,
                max_denominator: int = DEFAULT_MAX_DENOMINATOR, tol: float = 1e-6) -> LpVerdict:
    """Does a preparation-noncontextual model reproduce the data?"""
    rq, w, mismatch = exact_inputs(quad, weights, max_denominator=max_denominator, tol=tol)
    res = feasibility_program(rq, w.p, w.q).solve()
    verdict = LpVerdict(res.feasible, w, certificate_verified=res.certificate_verified,
                        iterations=res.iterations, weights_mismatch=mismatch)
    if res.feasible:
        verdict.witness_model = _model_from_x(res.x)
        verdict.min_parity_tv = Fraction(0)
    else:
        verdict.farkas = res.farkas
    return verdict


def min_parity_tv(quad: PreparationQuad, weights=None, *, equivalence: bool = True,
                  max_denominator: int = DEFAULT_MAX_DENOMINATOR, tol: float = 1e-6) -> LpVerdict:
    """Exact minimum total-variation distance between the even and odd mixtures.

    By default the mixtures use the data's own equivalence weights.  With
    ``equivalence=False`` the given weights (default one half each, i.e. the
    parity mixtures P+ and P-) are used directly.
    """
    rq, w, mismatch = exact_inputs(quad, weights, max_denominator=max_denominator, tol=tol,
                                   require_equivalence=equivalence)
    res = parity_tv_program(rq, w.p, w.q).solve()
    if res.status != "optimal":
        raise simplex.SolverError(f"parity TV program returned {res.status}")
    verdict = LpVerdict(res.value == 0, w, min_parity_tv=res.value,
                        witness_model=_model_from_x(res.x),
                        certificate_verified=res.certificate_verified,
                        duals=res.duals, iterations=res.iterations, weights_mismatch=mismatch)
    return verdict


def bodp_gap(quad: PreparationQuad, weights=None, *, equivalence: bool = True,
             max_denominator: int = DEFAULT_MAX_DENOMINATOR, tol: float = 1e-6) -> Fraction:
    """Minimum ontic distance minus operational distance of the parity pair.

    A strictly positive value certifies a violation of parity preservation.
    """
    verdict = min_parity_tv(quad, weights, equivalence=equivalence,
                            max_denominator=max_denominator, tol=tol)
    rq = rational_quad(quad, max_denominator)
    mix = parity_mixtures(rq, (verdict.weights.p, verdict.weights.q))
    return verdict.min_parity_tv - operational_distance(mix.plus, mix.minus)


def check_model(quad: PreparationQuad, model: dict[str, OnticDistribution], p, q,
                require_equal: bool = True) -> bool:
    """Exact check that a model matches the marginals (and the mixture equality)."""
    for lab in LABELS:
        mu = model[lab]
        v = quad[lab]
        if any(m < 0 for m in mu.mass) or sum(mu.mass) != 1:
            return False
        if mu.marginal_x0() != (1 + v.x) / 2 or mu.marginal_y0() != (1 + v.y) / 2:
            return False
    if require_equal:
        for lam in range(4):
            plus = p * model["00"].mass[lam] + (1 - p) * model["11"].mass[lam]
            minus = q * model["01"].mass[lam] + (1 - q) * model["10"].mass[lam]
            if plus != minus:
                return False
    return True


def weights_residual(quad: PreparationQuad, w: EquivalenceWeights):
    return equivalence_residual(quad, w.p, w.q)
