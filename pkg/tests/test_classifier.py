from __future__ import annotations

import json
from fractions import Fraction as F

import pytest

from bpwl.bpcore import BPWeight, hw_spectral_flow_image, level_data, relaxed_cubic_coeffs, top_space_dim
from bpwl.classifier import (
    HW_FAMILIES,
    ORDINARY_FAMILIES,
    Kind,
    arrow_domain_sample,
    check_level_in_scope,
    classify_nondegenerate,
    classify_singlet_ordinary,
    classify_singlet_relaxed,
    coincidences_23,
    identify_ordinary,
    kl_membership_23,
    minimal_qhr,
    orbit_image_hw_23,
    ordinary_dim_formula,
    submodule_realisation,
)
from bpwl.errors import DomainError, OutOfScopeLevel
from bpwl.minmod import SINGLET_LEVEL
from bpwl.scalars import mod1, rational_roots
from bpwl.bpcore import relaxed_cubic_eval

K73 = SINGLET_LEVEL


# ---- nondegenerate levels -----------------------------------------------------


def test_classify_43():
    table = classify_nondegenerate(4, 3)
    assert len(table.orbits) == 1
    orb = table.orbits[0]
    assert (orb.h, orb.w_hat) == (0, 0)
    assert list(orb.reducible_cosets) == [F(1, 9), F(4, 9), F(7, 9)]
    assert sorted(q.payload.as_tuple() for q in orb.quotients) == sorted(
        [(F(-5, 9), F(-1, 9)), (F(-8, 9), F(-1, 9)), (F(-2, 9), F(-1, 9))]
    )
    for q in orb.quotients:
        assert q.kind is Kind.HIGHEST_WEIGHT and q.top_dim is None
        assert q.conjugate.j == q.payload.j + 1


def test_classify_53():
    table = classify_nondegenerate(5, 3)
    assert {(o.h, o.w_hat) for o in table.orbits} == {(F(0), F(0)), (F(-1, 5), F(0))}


@pytest.mark.parametrize("u, v", [(4, 3), (5, 3), (4, 5), (5, 4), (7, 5), (3, 8)])
def test_quotients_have_infinite_top(u, v):
    table = classify_nondegenerate(u, v)
    for orb in table.orbits:
        for q in orb.quotients:
            assert top_space_dim(q.payload, table.level, 200) is None


@pytest.mark.parametrize("u, v", [(4, 3), (5, 3), (4, 5), (5, 4), (7, 5)])
def test_root_sets_agree_with_cubic(u, v):
    table = classify_nondegenerate(u, v)
    for orb in table.orbits:
        roots, rest = rational_roots(relaxed_cubic_coeffs(orb.h, orb.w_hat, table.level))
        assert roots == list(orb.j_roots) and len(rest) == 1


@pytest.mark.parametrize("u, v", [(4, 3), (7, 5), (8, 3)])
def test_entries_unique(u, v):
    table = classify_nondegenerate(u, v)
    keys = [e.key() for e in table.entries]
    assert len(keys) == len(set(keys))
    assert set(table.reducible_index()) == {o.label.rep for o in table.orbits}


@pytest.mark.parametrize("u, v", [(4, 1), (5, 2), (2, 5), (2, 1)])
def test_out_of_scope_levels(u, v):
    with pytest.raises(OutOfScopeLevel):
        check_level_in_scope(u, v)
    with pytest.raises(OutOfScopeLevel):
        classify_nondegenerate(u, v)


def test_degenerate_refusal_explains_embedding():
    with pytest.raises(OutOfScopeLevel, match="no embedding"):
        classify_nondegenerate(5, 2)


def test_table_json():
    doc = json.loads(json.dumps(classify_nondegenerate(4, 3).to_json()))
    assert doc["kappa"] == "-1/9"
    assert doc["orbits"][0]["reducible_cosets"] == ["1/9", "4/9", "7/9"]
    assert {q["top_dim"] for q in doc["orbits"][0]["quotients"]} == {"infinite"}


# ---- singlet: relaxed ------------------------------------------------------


def test_singlet_lambda_one():
    rel = classify_singlet_relaxed(1)
    assert rel.excluded_cosets == (F(2, 9), F(5, 9), F(8, 9))
    assert rel.collisions == ()
    at = {mod1(q.conjugate.j): q for q in rel.quotients}
    assert at[F(8, 9)].payload == BPWeight(F(-1, 9), F(4, 9))
    assert at[F(8, 9)].family == "i"


def test_singlet_collision_third():
    rel = classify_singlet_relaxed(F(1, 3))
    assert ("i", "iii") in rel.collisions
    assert F(2, 3) in rel.roots and F(-1, 3) in rel.roots
    assert len(rel.excluded_cosets) == 2
    # lambda > 0: the quotient at the shared coset comes from the root -(6 lam + 1)/9
    shared = [q for q in rel.quotients if mod1(q.conjugate.j) == F(2, 3)]
    assert len(shared) == 1 and shared[0].family == "iii"
    assert shared[0].conjugate.j == F(-1, 3)


def test_singlet_collision_negative_lambda():
    # lambda = -5/3 lies in Z + 1/3; the roots 0 and 1 share a coset
    rel = classify_singlet_relaxed(F(-5, 3))
    assert ("i", "iii") in rel.collisions
    shared = [q for q in rel.quotients if mod1(q.conjugate.j) == 0]
    assert len(shared) == 1 and shared[0].family == "i" and shared[0].conjugate.j == 0


def test_singlet_collision_minus_third():
    rel = classify_singlet_relaxed(F(2, 3))  # in Z - 1/3
    assert ("ii", "iii") in rel.collisions


def test_singlet_minus_one_is_duplicate():
    with pytest.raises(DomainError):
        classify_singlet_relaxed(-1)


@pytest.mark.parametrize("lam", [F(p, 9) for p in range(-30, 31) if p != -9])
def test_singlet_quotients_consistent(lam):
    rel = classify_singlet_relaxed(lam)
    for q in rel.quotients:
        assert relaxed_cubic_eval(q.conjugate.j, rel.h, rel.w_hat, K73) == 0
        assert q.payload == HW_FAMILIES[q.family].weight(lam)
        dim = top_space_dim(q.payload, K73, 300)
        assert (dim is None) == (q.top_dim is None)


# ---- singlet: ordinary --------------------------------------------------------


def test_ordinary_examples():
    entries = classify_singlet_ordinary(-3, 3, 5)
    by_family = {e.family: e for e in entries}
    assert by_family["1:0"].payload == BPWeight(0, 0) and by_family["1:0"].top_dim == 1
    assert by_family["2:4/3"].payload == BPWeight(0, 1) and by_family["2:4/3"].top_dim == 2
    assert by_family["4:-8/3"].payload == BPWeight(F(2, 3), F(5, 3)) and by_family["4:-8/3"].top_dim == 2


def test_ordinary_dims_match_formula():
    for e in classify_singlet_ordinary(-15, 15, 40, den=6):
        tag, lam = e.family.split(":")
        assert e.top_dim == ordinary_dim_formula(tag, F(lam)) == top_space_dim(e.payload, K73, 60)


def test_ordinary_excludes_minus_five_thirds():
    fams = [e.family for e in classify_singlet_ordinary(-2, -1, 5, den=3)]
    assert "1:-5/3" not in fams and "1:-4/3" in fams


def test_ordinary_dim_cap():
    assert all(e.top_dim <= 3 for e in classify_singlet_ordinary(-10, 10, 3))


def test_ordinary_unique():
    entries = classify_singlet_ordinary(-10, 10, 30, den=9)
    weights = [e.payload for e in entries]
    assert len(weights) == len(set(weights))


# ---- coincidences --------------------------------------------------------------


def test_coincidence_examples():
    infinite, ordinary = coincidences_23()
    inf = {c.weight.as_tuple(): {c.member, c.excluded} for c in infinite}
    ordn = {c.weight.as_tuple(): {c.member, c.excluded} for c in ordinary}
    assert inf[(F(-7, 9), F(-5, 9))] == {("i", F(-1)), ("ii", F(0))}
    assert inf[(F(-2, 3), F(-2, 3))] == {("iii", F(-2, 3)), ("i", F(-2, 3))}
    assert ordn[(F(0), F(0))] == {("1", F(0)), ("4", F(-5, 3))}
    assert len(inf) == 5 and len(ordn) == 4


def test_coincidences_are_real():
    infinite, ordinary = coincidences_23()
    for c in infinite:
        fams = HW_FAMILIES
        assert fams[c.member[0]].weight(c.member[1]) == fams[c.excluded[0]].weight(c.excluded[1]) == c.weight
        assert fams[c.member[0]].member(c.member[1]) and not fams[c.excluded[0]].member(c.excluded[1])
    for c in ordinary:
        fams = ORDINARY_FAMILIES
        assert fams[c.member[0]].weight(c.member[1]) == fams[c.excluded[0]].weight(c.excluded[1]) == c.weight


# ---- orbit arrows ---------------------------------------------------------------


def test_arrow_examples():
    a = orbit_image_hw_23("1", 0)
    assert (a.target, a.mu, a.weight) == ("ii", F(2, 3), BPWeight(F(-5, 9), 0))
    b = orbit_image_hw_23("3", F(2, 3))
    assert (b.target, b.mu) == ("iii", F(0))
    c = orbit_image_hw_23("5", F(-4, 3))
    assert (c.target, c.mu) == ("i", F(-1))


@pytest.mark.parametrize("tag", ["1", "i", "ii", "iii", "2", "3", "4", "5"])
def test_arrows_match_hw_flow(tag):
    for lam in arrow_domain_sample(tag, 12):
        a = orbit_image_hw_23(tag, lam)
        assert a.weight == hw_spectral_flow_image(a.source_weight, a.source_top_dim, K73)


@pytest.mark.parametrize("tag, lam", [("i", F(1, 2)), ("ii", F(-1, 3)), ("iii", F(1)), ("x", F(0))])
def test_arrow_domain_errors(tag, lam):
    with pytest.raises(DomainError):
        orbit_image_hw_23(tag, lam)


def test_arrow_sample_unknown_tag():
    with pytest.raises(DomainError):
        arrow_domain_sample("vi", 3)


# ---- minimal reduction ------------------------------------------------------------


def test_qhr_examples():
    for k in (F(-7, 3), F(-5, 3), F(-1, 2), F(3, 7)):
        assert minimal_qhr(1, 1, k) == (BPWeight(0, 0), 1)
    assert minimal_qhr(1, 2, K73) == (BPWeight(F(2, 3), F(5, 3)), 2)
    assert minimal_qhr(3, 1, K73) == (BPWeight(F(2, 3), F(11, 3)), 1)
    # cross-check with the ordinary families
    assert identify_ordinary(BPWeight(F(2, 3), F(5, 3))) == [("4", F(-8, 3))]
    assert ("1", F(2)) in identify_ordinary(BPWeight(F(2, 3), F(11, 3)))


@pytest.mark.parametrize("k", [F(-1), F(0), F(4)])
def test_qhr_excluded_levels(k):
    with pytest.raises(OutOfScopeLevel):
        minimal_qhr(1, 1, k)


def test_qhr_bad_indices():
    with pytest.raises(DomainError):
        minimal_qhr(0, 2, K73)


def test_realisation_examples():
    jp, label = submodule_realisation(1, 1, K73)
    assert label.j_coset == F(5, 9) and label.h == 0 and label.w_hat == 0
    assert jp == -K73.kappa
    for k in (F(-7, 3), F(-5, 3), F(1, 2)):
        assert submodule_realisation(2, 2, k)[1].w_hat == 0


@pytest.mark.parametrize("k", [F(-7, 3), F(-5, 3), F(-12, 5), F(5, 2)])
def test_realisation_root(k):
    level = level_data(k)
    for r in range(1, 6):
        for s in range(1, 6):
            jp, label = submodule_realisation(r, s, level)
            wt, _ = minimal_qhr(r, s, level)
            assert label.h == wt.delta - wt.j
            assert mod1(jp) == mod1(wt.j - level.kappa)
            # the conjugate highest-weight vector sits at charge j'
            assert relaxed_cubic_eval(jp, label.h, label.w_hat, level) == 0


def test_kl_examples():
    assert kl_membership_23(1, 1)
    assert kl_membership_23(4, 1)
    assert not kl_membership_23(2, 2)


def test_kl_grid():
    for r in range(1, 13):
        for s in range(1, 13):
            assert kl_membership_23(r, s) == (r == 1 or s == 1)
