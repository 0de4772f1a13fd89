"""Independent reference computations used to cross-check the LP solver."""
from fractions import Fraction


def cell_interval(v):
    """Feasible mass range of the (0, 0) cell for a preparation at ``v``."""
    lo = max(Fraction(0), (v.x + v.y) / 2)
    hi = (1 + min(v.x, v.y)) / 2
    return lo, hi


def closed_form_min_tv(quad, p, q):
    """Minimum TV between the two mixtures when their marginals coincide.

    With equal marginals the difference of the mixtures is ``t * (1, -1, -1, 1)``
    over the four cells, so the TV is ``2|t|`` and ``t`` ranges over the
    difference of two intervals.
    """
    l00, u00 = cell_interval(quad.p00)
    l11, u11 = cell_interval(quad.p11)
    l01, u01 = cell_interval(quad.p01)
    l10, u10 = cell_interval(quad.p10)
    lo_p, hi_p = p * l00 + (1 - p) * l11, p * u00 + (1 - p) * u11
    lo_m, hi_m = q * l01 + (1 - q) * l10, q * u01 + (1 - q) * u10
    return 2 * max(Fraction(0), lo_p - hi_m, lo_m - hi_p)
