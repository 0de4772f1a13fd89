# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fraction-free simplex kernel.

Same contract as ``_kernel_py``; entries are arbitrary-precision Python ints,
so the gain comes from typed loop indices and list access rather than from
native integer arithmetic.
"""

cdef enum:
    OPTIMAL_ = 0
    UNBOUNDED_ = 1
    ITERATION_LIMIT_ = 2

OPTIMAL = OPTIMAL_
UNBOUNDED = UNBOUNDED_
ITERATION_LIMIT = ITERATION_LIMIT_


cpdef object pivot(list T, Py_ssize_t r, Py_ssize_t c, object det):
    cdef list prow = <list>T[r]
    cdef object piv = prow[c]
    cdef Py_ssize_t width = len(prow)
    cdef Py_ssize_t n = len(T)
    cdef Py_ssize_t i, k
    cdef list row
    cdef object f
    for i in range(n):
        if i == r:
            continue
        row = <list>T[i]
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
        for i in range(n):
            row = <list>T[i]
            for k in range(width):
                if row[k]:
                    row[k] = -row[k]
        piv = -piv
    return piv


cpdef Py_ssize_t entering(list obj, Py_ssize_t ncols):
    cdef Py_ssize_t j
    for j in range(ncols):
        if obj[j] < 0:
            return j
    return -1


cpdef Py_ssize_t leaving(list T, Py_ssize_t c, list basis, Py_ssize_t m, Py_ssize_t rhs):
    cdef Py_ssize_t best = -1
    cdef Py_ssize_t i
    cdef object bnum = 0, bden = 1, a, num, lhs, rhs_
    cdef list row
    for i in range(m):
        row = <list>T[i]
        a = row[c]
        if a > 0:
            num = row[rhs]
            if best < 0:
                best = i
                bnum = num
                bden = a
            else:
                lhs = num * bden
                rhs_ = bnum * a
                if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[best]):
                    best = i
                    bnum = num
                    bden = a
    return best


cpdef tuple simplex_loop(list T, list basis, object det, Py_ssize_t m, Py_ssize_t ncols,
                         Py_ssize_t max_iter):
    cdef Py_ssize_t rhs = len(<list>T[0]) - 1
    cdef list obj = <list>T[m]
    cdef Py_ssize_t it = 0
    cdef Py_ssize_t c, r
    while it < max_iter:
        c = entering(obj, ncols)
        if c < 0:
            return (OPTIMAL_, det, it)
        r = leaving(T, c, basis, m, rhs)
        if r < 0:
            return (UNBOUNDED_, det, it)
        det = pivot(T, r, c, det)
        basis[r] = c
        it += 1
    return (ITERATION_LIMIT_, det, it)
