from __future__ import annotations

import json
import random
from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

import oracles
from bpwl.bpcore import level_data, relaxed_cubic_coeffs
from bpwl.errors import DomainError, OutOfScopeLevel
from bpwl.minmod import (
    OrbitLabel,
    cubic_factorization_holds,
    j_of_rs,
    minmod_table,
    minmod_table_json,
    nabla,
    orbit_hw,
    orbit_j_roots,
    orbit_of,
    pwlat_enum,
    sigma23_lookup,
    singlet_h,
    singlet_roots,
    singlet_w_hat,
    z3_orbit_reps,
)
from bpwl.scalars import expand_roots, mod1

NONDEGENERATE = [(4, 3), (5, 3), (3, 4), (4, 5), (5, 4), (7, 3), (3, 7), (7, 5), (8, 7), (10, 9)]


def test_pwlat_examples():
    assert pwlat_enum(0) == [(0, 0, 0)]
    assert pwlat_enum(1) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert len(pwlat_enum(2)) == 6
    with pytest.raises(ValueError):
        pwlat_enum(-1)


@pytest.mark.parametrize("total", range(31))
def test_pwlat_count_and_order(total):
    ts = pwlat_enum(total)
    assert len(ts) == (total + 1) * (total + 2) // 2
    assert ts == sorted(ts) and len(set(ts)) == len(ts)
    assert all(sum(t) == total and min(t) >= 0 for t in ts)


def test_orbit_examples():
    assert [lab.size for lab in z3_orbit_reps(4, 3)] == [3]
    assert len(z3_orbit_reps(5, 3)) == 2
    assert len(z3_orbit_reps(3, 4)) == 1


@pytest.mark.parametrize("u, v", NONDEGENERATE)
def test_orbits_partition_the_pairs(u, v):
    labels = z3_orbit_reps(u, v)
    pairs = [(r, s) for r in pwlat_enum(u - 3) for s in pwlat_enum(v - 3)]
    covered = [p for lab in labels for p in lab.members()]
    assert sorted(covered) == sorted(pairs)
    for lab in labels:
        assert lab.rep == min(lab.members())
        assert nabla(nabla(nabla(lab.rep))) == lab.rep
        assert lab.size == len(orbit_of(lab.rep))


@pytest.mark.parametrize("u, v", [(2, 3), (4, 2), (3, 1), (6, 4)])
def test_orbits_reject_bad_levels(u, v):
    with pytest.raises((OutOfScopeLevel, DomainError)):
        z3_orbit_reps(u, v)


def test_orbit_hw_examples():
    assert orbit_hw(OrbitLabel.of(((1, 0, 0), (0, 0, 0))), 4, 3) == (0, 0)
    assert orbit_hw(OrbitLabel.of(((1, 1, 0), (0, 0, 0))), 5, 3) == (F(-1, 5), 0)


@pytest.mark.parametrize("u, v", NONDEGENERATE)
def test_orbit_hw_well_defined_and_matches_oracle(u, v):
    for lab in z3_orbit_reps(u, v):
        values = {orbit_hw(p, u, v) for p in lab.members()}
        assert len(values) == 1
        h, w = oracles.minmod_hw(*lab.rep, u, v)
        assert values.pop() == (oracles.to_fraction(h), oracles.to_fraction(w))


@pytest.mark.parametrize("u, v", NONDEGENERATE)
def test_vacuum_label(u, v):
    pair = ((u - 3, 0, 0), (v - 3, 0, 0))
    assert orbit_hw(pair, u, v) == (0, 0)


def test_j_examples():
    p = ((1, 0, 0), (0, 0, 0))
    assert j_of_rs(p, 4, 3) == F(4, 9)
    assert j_of_rs(nabla(p), 4, 3) == F(1, 9)
    assert j_of_rs(nabla(nabla(p)), 4, 3) == F(7, 9)


@pytest.mark.parametrize("u, v", NONDEGENERATE)
def test_j_cosets_distinct(u, v):
    for lab in z3_orbit_reps(u, v):
        for p in lab.members():
            step = j_of_rs(nabla(p), u, v) - j_of_rs(p, u, v)
            r, s = p
            assert step == r[1] + 1 - F(u, v) * (s[1] + 1)
            assert step.denominator != 1
        roots = orbit_j_roots(lab, u, v)
        assert len({mod1(x) for x in roots}) == 3


@pytest.mark.parametrize("u, v", NONDEGENERATE)
def test_cubic_factorization(u, v):
    j = sp.Symbol("j")
    k = sp.Rational(u, v) - 3
    for lab in z3_orbit_reps(u, v):
        assert cubic_factorization_holds(lab, u, v)
        h, w = orbit_hw(lab, u, v)
        roots = orbit_j_roots(lab, u, v)
        lhs = oracles.relaxed_cubic(j, sp.Rational(h.numerator, h.denominator), sp.Rational(w.numerator, w.denominator), k)
        rhs = -sp.prod([j - sp.Rational(x.numerator, x.denominator) for x in roots])
        assert sp.expand(lhs - rhs) == 0


def test_singlet_data():
    assert (singlet_h(1), singlet_w_hat(1)) == (1, F(-2, 9))
    assert singlet_roots(1) == [F(-7, 9), F(5, 9), F(8, 9)]


def test_singlet_factorization_random():
    lv = level_data((2, 3))
    rng = random.Random(3)
    for _ in range(100):
        lam = F(rng.randint(-200, 200), rng.randint(1, 30))
        coeffs = relaxed_cubic_coeffs(singlet_h(lam), singlet_w_hat(lam), lv)
        assert coeffs == expand_roots(singlet_roots(lam), -1)


def test_singlet_w_hat_is_rescaled_w():
    # alpha_{-7/3} = (2/3)^{3/2} / sqrt(3); w_lam = -lam(lam+1)(2lam+1) / (6 sqrt 2)
    lam = sp.Symbol("lam")
    alpha = sp.Rational(2, 3) ** sp.Rational(3, 2) / sp.sqrt(3)
    w = -lam * (lam + 1) * (2 * lam + 1) / (6 * sp.sqrt(2))
    assert sp.simplify(alpha * w + lam * (lam + 1) * (2 * lam + 1) / 27) == 0


def test_sigma23_examples():
    assert sigma23_lookup(1, F(-2, 9)).lams == (F(1),)
    assert sigma23_lookup(0, 0).lams == (F(-1), F(0))
    empty = sigma23_lookup(F(5, 2), 0)
    assert empty.lams == () and not empty.non_rational


@settings(max_examples=200)
@given(st.builds(F, st.integers(-90, 90), st.integers(1, 12)))
def test_sigma23_recovers_lambda(lam):
    match = sigma23_lookup(singlet_h(lam), singlet_w_hat(lam))
    expected = {lam, -1 - lam} if singlet_w_hat(-1 - lam) == singlet_w_hat(lam) else {lam}
    assert set(match.lams) == expected
    assert not match.non_rational


def test_table_json_schema():
    doc = json.loads(minmod_table_json(5, 3))
    assert doc == minmod_table(5, 3)
    assert set(doc) == {"u", "v", "orbits"}
    assert len(doc["orbits"]) == 2
    for orb in doc["orbits"]:
        assert set(orb) == {"rep", "h", "w_hat", "j_roots"}
        assert all(isinstance(x, str) for x in orb["j_roots"])
    assert {(o["h"], o["w_hat"]) for o in doc["orbits"]} == {("0", "0"), ("-1/5", "0")}
