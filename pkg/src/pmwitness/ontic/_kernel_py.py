"""Fraction-free simplex kernel, pure-Python reference.

The tableau is a list of integer rows; the true tableau entry is
``T[i][j] / det``.  Pivots use Bareiss' exact-division update, so every
entry stays an integer minor of the initial integer matrix and no gcd
reduction is ever needed.  Row ``nrows - 1`` is the objective (reduced
costs), column ``ncols`` is the right-hand side.

``_kernel.pyx`` mirrors these functions one for one.
"""

OPTIMAL = 0
UNBOUNDED = 1
ITERATION_LIMIT = 2


def pivot(T, r, c, det):
    """Pivot on ``T[r][c]`` in place; returns the new common denominator."""
    prow = T[r]
    piv = prow[c]
    width = len(prow)
    for i in range(len(T)):
        if i == r:
            continue
        row = T[i]
        f = row[c]
        if f == 0:
            for k in range(width):
                if row[k]:
                    row[k] = row[k] * piv // det
        else:
            # zero entries skip the bigint products; the result is unchanged
            for k in range(width):
                if prow[k]:
                    row[k] = (row[k] * piv - f * prow[k]) // det
                elif row[k]:
                    row[k] = row[k] * piv // det
    if piv < 0:
        for row in T:
            for k in range(width):
                if row[k]:
                    row[k] = -row[k]
        piv = -piv
    return piv


def entering(obj, ncols):
    """Bland's rule: first column with negative reduced cost, or -1."""
    for j in range(ncols):
        if obj[j] < 0:
            return j
    return -1


def leaving(T, c, basis, m, rhs):
    """Minimum-ratio row for entering column ``c`` (ties: smallest basic index), or -1."""
    best = -1
    bnum = 0
    bden = 1
    for i in range(m):
        a = T[i][c]
        if a > 0:
            num = T[i][rhs]
            if best < 0:
                best, bnum, bden = i, num, a
            else:
                lhs = num * bden
                rhs_ = bnum * a
                if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[best]):
                    best, bnum, bden = i, num, a
    return best


def simplex_loop(T, basis, det, m, ncols, max_iter):
    """Run primal simplex on a feasible tableau.

    ``m`` constraint rows precede the objective row ``T[m]``; only columns
    ``< ncols`` may enter; the rhs sits at column ``len(T[0]) - 1``.
    Returns ``(status, det, iterations)``.
    """
    rhs = len(T[0]) - 1
    obj = T[m]
    it = 0
    while it < max_iter:
        c = entering(obj, ncols)
        if c < 0:
            return OPTIMAL, det, it
        r = leaving(T, c, basis, m, rhs)
        if r < 0:
            return UNBOUNDED, det, it
        det = pivot(T, r, c, det)
        basis[r] = c
        it += 1
    return ITERATION_LIMIT, det, it
