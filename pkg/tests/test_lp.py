import io
import math
import random
from fractions import Fraction as F

import pytest

from oracles import closed_form_min_tv
from pmwitness.errors import InconsistentWeights, NoEquivalence
from pmwitness.geometry import (
    PrepVector,
    PreparationQuad,
    find_equivalence,
    ideal_quad,
    noise_delta,
    operational_distance,
    parity_mixtures,
    rational_quad,
)
from pmwitness.jones import depolarize
from pmwitness.ontic import lp
from pmwitness.witnesses import marvian_noise_bound, pusey_raw

#: exact LP optimum for the ideal quad quantised at denominator 10**6
IDEAL_MIN_TV = F(275807, 665857)


def origin():
    z = PrepVector(F(0), F(0))
    return PreparationQuad(z, z, z, z)


def rand_vec(rng, sx, sy, den=200):
    while True:
        x, y = F(rng.randint(0, den), den), F(rng.randint(0, den), den)
        if x * x + y * y <= 1:
            return PrepVector(sx * x, sy * y)


def oriented_quad(rng):
    return PreparationQuad(rand_vec(rng, 1, 1), rand_vec(rng, 1, -1),
                           rand_vec(rng, -1, 1), rand_vec(rng, -1, -1))


def test_ideal_infeasible_with_certificate():
    v = lp.nc_feasible(ideal_quad())
    assert not v.feasible
    assert v.certificate_verified
    assert v.farkas is not None


def test_origin_feasible_uniform():
    v = lp.nc_feasible(origin())
    assert v.feasible
    assert lp.check_model(origin(), v.witness_model, v.weights.p, v.weights.q)
    assert lp.min_parity_tv(origin()).min_parity_tv == 0
    assert lp.bodp_gap(origin()) == 0


def test_ideal_min_tv_frozen():
    v = lp.min_parity_tv(ideal_quad())
    assert v.min_parity_tv == IDEAL_MIN_TV
    assert float(v.min_parity_tv) == pytest.approx(math.sqrt(2) - 1, abs=1e-6)
    assert v.min_parity_tv >= marvian_noise_bound(0)
    assert lp.bodp_gap(ideal_quad()) > 0


def test_optimal_model_is_consistent():
    v = lp.min_parity_tv(ideal_quad())
    rq = rational_quad(ideal_quad())
    assert lp.check_model(rq, v.witness_model, v.weights.p, v.weights.q, require_equal=False)


def test_supplied_weights_checked():
    w = find_equivalence(ideal_quad())
    assert lp.nc_feasible(ideal_quad(), w).weights_mismatch < 1e-6
    with pytest.raises(InconsistentWeights):
        lp.nc_feasible(ideal_quad(), (0.6, 0.4))


def test_half_parity_pair_without_equivalence():
    v = lp.min_parity_tv(ideal_quad(), equivalence=False)
    assert v.weights.p == F(1, 2)
    assert v.min_parity_tv == IDEAL_MIN_TV


def test_relabelled_quad_beyond_pusey_facet():
    # violates no Pusey bound yet admits no noncontextual model
    r = F(7, 10)
    q = PreparationQuad(PrepVector(-r, r), PrepVector(r, r), PrepVector(-r, -r), PrepVector(r, -r))
    w = find_equivalence(q)
    assert pusey_raw(q, w) == -2
    assert not lp.nc_feasible(q).feasible


def test_lp_matches_closed_form_and_three_way_agreement():
    rng = random.Random(3)
    seen = 0
    while seen < 100:
        q = oriented_quad(rng)
        try:
            w = find_equivalence(q)
        except NoEquivalence:
            continue
        seen += 1
        tv = lp.min_parity_tv(q).min_parity_tv
        assert tv == closed_form_min_tv(q, w.p, w.q)
        feasible = lp.nc_feasible(q).feasible
        assert feasible == (tv == 0) == (pusey_raw(q, w) <= 0)


def test_generic_quads_one_directional():
    rng = random.Random(5)
    seen = 0
    while seen < 100:
        q = PreparationQuad(*(rand_vec(rng, rng.choice((-1, 1)), rng.choice((-1, 1))) for _ in range(4)))
        try:
            w = find_equivalence(q)
        except NoEquivalence:
            continue
        seen += 1
        tv = lp.min_parity_tv(q).min_parity_tv
        mix = parity_mixtures(q, w)
        assert tv >= operational_distance(mix.plus, mix.minus)
        if pusey_raw(q, w) > 0:
            assert not lp.nc_feasible(q).feasible


def test_tv_dominates_marvian_bound():
    rng = random.Random(9)
    seen = 0
    while seen < 60:
        q = oriented_quad(rng)
        try:
            find_equivalence(q)
        except NoEquivalence:
            continue
        seen += 1
        d = float(noise_delta(q))
        if d < math.sqrt(2) / 4:
            assert float(lp.min_parity_tv(q).min_parity_tv) >= marvian_noise_bound(d) - 1e-12


def test_tv_monotone_under_depolarization():
    prev = None
    for k in range(0, 41):
        a = F(k, 40)
        q = rational_quad(ideal_quad()).map(lambda v: v * (1 - a))
        tv = lp.min_parity_tv(q).min_parity_tv
        if prev is not None:
            assert tv <= prev
        prev = tv
    assert prev == 0


def test_depolarized_tv_is_half_pusey():
    for a in (F(0), F(1, 10), F(1, 5)):
        q = rational_quad(ideal_quad()).map(lambda v: v * (1 - a))
        w = find_equivalence(q)
        assert lp.min_parity_tv(q).min_parity_tv == pusey_raw(q, w) / 2


def test_feasibility_flip_near_pusey_zero():
    below = ideal_quad().map(lambda v: depolarize(v, 0.29))
    above = ideal_quad().map(lambda v: depolarize(v, 0.2929))
    assert not lp.nc_feasible(below).feasible
    assert lp.nc_feasible(above).feasible


def test_dump_format():
    rq = rational_quad(ideal_quad(), 1000)
    w = find_equivalence(rq)
    buf = io.StringIO()
    lp.parity_tv_program(rq, w.p, w.q).dump(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "# pmwitness LP v1"
    assert lines[2] == "shape 20 28"
    assert sum(line.startswith("row ") for line in lines) == 20
    assert lines[-1] == "end"
