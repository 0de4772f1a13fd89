"""Two-phase primal simplex over the rationals.

Solves ``min c.x  s.t.  A x = b, x >= 0`` exactly.  Rows are scaled to
integers and pivoted fraction-free (see :mod:`.kernel`); Bland's rule rules
out cycling.  Every result carries a certificate that is checked in exact
arithmetic before it is returned:

* optimal: primal ``x`` and dual ``y`` with ``A^T y <= c`` and ``b.y = c.x``;
* infeasible: Farkas ray ``y`` with ``A^T y <= 0`` and ``b.y > 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import kernel

MAX_ITER = 10_000


class SolverError(RuntimeError):
    pass


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list[Fraction] | None = None
    value: Fraction | None = None
    duals: list[Fraction] | None = None
    farkas: list[Fraction] | None = None
    basis: list[int] = field(default_factory=list)
    iterations: int = 0
    certificate_verified: bool = False

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _lcm_denominators(values) -> int:
    out = 1
    for v in values:
        d = v.denominator
        if d != 1:
            out = out * d // math.gcd(out, d)
    return out


def _as_fractions(rows):
    return [[v if type(v) is Fraction else Fraction(v) for v in row] for row in rows]


def _dot(row, vec) -> Fraction:
    total = Fraction(0)
    for a, v in zip(row, vec):
        if a and v:
            total += a * v
    return total


def phase1_tableau(A: list[list[Fraction]], b: list[Fraction]) -> tuple[list[list[int]], list[int]]:
    """Integer phase-1 tableau: rows scaled to integers with nonnegative rhs,
    one artificial column per row, and the artificial-sum objective last."""
    m, n = len(A), len(A[0]) if A else 0
    T = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        scale = sign * _lcm_denominators(A[i] + [b[i]])
        row = [int(a * scale) for a in A[i]]
        art = [0] * m
        art[i] = 1
        T.append(row + art + [int(b[i] * scale)])
    obj = [0] * (n + m + 1)
    for row in T:
        for j in range(n):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    T.append(obj)
    return T, list(range(n, n + m))


def solve(A: Sequence[Sequence], b: Sequence, c: Sequence, max_iter: int = MAX_ITER) -> LPResult:
    """Minimise ``c.x`` subject to ``A x = b``, ``x >= 0`` in exact arithmetic."""
    A = _as_fractions(A)
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    m, n = len(A), len(c)
    if any(len(row) != n for row in A) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")

    T, basis = phase1_tableau(A, b)
    det = 1

    status, det, it1 = kernel.simplex_loop(T, basis, det, m, n, max_iter)
    if status != kernel.OPTIMAL:
        raise SolverError(f"phase 1 did not terminate normally (status {status})")
    phase1_value = Fraction(-T[m][-1], det)
    if phase1_value > 0:
        # duals of the scaled phase-1 problem from the artificial columns, mapped
        # back to the original rows
        y = []
        for i in range(m):
            sign = -1 if b[i] < 0 else 1
            scale = sign * _lcm_denominators(A[i] + [b[i]])
            y.append((1 - Fraction(T[m][n + i], det)) * scale)
        res = LPResult("infeasible", farkas=y, basis=list(basis), iterations=it1)
        res.certificate_verified = verify_farkas(A, b, y)
        if not res.certificate_verified:
            raise SolverError("Farkas certificate failed verification")
        return res

    # drive zero-level artificials out of the basis; drop redundant rows
    keep = []
    for r in range(m):
        if basis[r] >= n:
            j = next((j for j in range(n) if T[r][j] != 0), -1)
            if j < 0:
                continue
            det = kernel.pivot(T, r, j, det)
            basis[r] = j
        keep.append(r)
    rows = [T[r][:n] + [T[r][-1]] for r in keep]
    basis = [basis[r] for r in keep]
    m2 = len(rows)

    cscale = _lcm_denominators(c)
    ci = [int(v * cscale) for v in c]
    obj = [det * ci[j] for j in range(n)] + [0]
    for r, row in enumerate(rows):
        cb = ci[basis[r]]
        if cb:
            for j in range(n + 1):
                obj[j] -= cb * row[j]
    # exact division back to the tableau convention: obj entries are already minors
    rows.append(obj)
    status, det, it2 = kernel.simplex_loop(rows, basis, det, m2, n, max_iter)
    if status == kernel.UNBOUNDED:
        return LPResult("unbounded", basis=list(basis), iterations=it1 + it2)
    if status != kernel.OPTIMAL:
        raise SolverError("phase 2 hit the iteration limit")

    x = [Fraction(0)] * n
    for r, j in enumerate(basis):
        x[j] = Fraction(rows[r][-1], det)
    value = _dot(c, x)
    y_kept = _solve_transposed([[A[keep[r]][j] for j in basis] for r in range(m2)],
                               [c[j] for j in basis])
    y = [Fraction(0)] * m
    for r, i in enumerate(keep):
        y[i] = y_kept[r]
    res = LPResult("optimal", x=x, value=value, duals=y, basis=list(basis),
                   iterations=it1 + it2)
    res.certificate_verified = verify_optimal(A, b, c, x, y)
    if not res.certificate_verified:
        raise SolverError("optimality certificate failed verification")
    return res


def _solve_transposed(B: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve ``B^T y = rhs`` by Gauss-Jordan elimination over the rationals."""
    k = len(B)
    M = [[B[r][col] for r in range(k)] + [rhs[col]] for col in range(k)]
    for col in range(k):
        piv = next((r for r in range(col, k) if M[r][col] != 0), None)
        if piv is None:
            raise SolverError("singular basis")
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        if pv != 1:
            M[col] = [v / pv if v else v for v in M[col]]
        for r in range(k):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * bb if bb else a for a, bb in zip(M[r], M[col])]
    return [M[r][-1] for r in range(k)]


def verify_optimal(A, b, c, x, y) -> bool:
    """Primal feasibility, dual feasibility and zero duality gap, exactly."""
    m, n = len(A), len(c)
    if any(v < 0 for v in x):
        return False
    if any(_dot(A[i], x) != b[i] for i in range(m)):
        return False
    cols = list(zip(*A)) if m else [()] * n
    if any(_dot(cols[j], y) > c[j] for j in range(n)):
        return False
    return _dot(c, x) == _dot(b, y)


def verify_farkas(A, b, y) -> bool:
    """``A^T y <= 0`` and ``b.y > 0`` certify that ``A x = b, x >= 0`` has no solution."""
    if any(_dot(col, y) > 0 for col in zip(*A)):
        return False
    return _dot(b, y) > 0
