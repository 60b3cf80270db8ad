import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ainfmut.ainf import (AInfCategory, MuEntry, ainf_residuals, gram_matrix, hom_cohomology,
                          validate_ainf, validate_directed)
from ainfmut.catfile import load
from ainfmut.generators import KnottedSpec, a3_path, gen_knotted, random_category
from ainfmut.gf2 import GradedSpace
from ainfmut.mutation import apply_c
from oracles import dense_ainf_residuals


def test_a3_valid():
    a = a3_path()
    assert validate_directed(a).ok
    assert validate_ainf(a).ok
    assert a.mu_labels((0, 1, 2), ["a", "b"]) == ["c"]


def test_wrong_degree_is_named():
    a = AInfCategory(["X", "Y", "Z"],
                     {(0, 1): GradedSpace((("a", 0),)), (1, 2): GradedSpace((("b", 1),)),
                      (0, 2): GradedSpace((("c", 0),))},
                     [MuEntry((0, 1, 2), ("a", "b"), "c")])
    rep = validate_directed(a)
    assert not rep.ok
    assert rep.violations[0].kind == "degree"
    assert "inputs=['a', 'b']" in rep.violations[0].where


def test_empty_category_valid():
    a = AInfCategory([], {})
    assert validate_ainf(a).ok
    assert gram_matrix(a).shape == (0, 0)


def test_non_strict_chain_reported():
    a = AInfCategory(["X", "Y"], {(0, 1): GradedSpace((("a", 0),))},
                     [MuEntry((1, 0), ("a",), "a")])
    rep = validate_directed(a)
    assert any("not strictly increasing" in v.message for v in rep.violations)


def test_nonassociative_fails_d3(fixtures_dir):
    a = load(fixtures_dir / "nonassoc.cat")
    rep = validate_ainf(a)
    assert not rep.ok
    assert all("d=3" in v.where for v in rep.violations)
    assert dense_ainf_residuals(a)


def test_knotted_commuting_passes_and_noncommuting_fails():
    q1 = np.zeros((3, 3), int)
    q1[1, 0] = 1
    q2 = np.zeros((3, 3), int)
    q2[2, 1] = 1
    good = gen_knotted(KnottedSpec(r=3, rdeg=0, degrees=(0, 2, 2), q1=q1, q2=q1))
    assert validate_ainf(good).ok
    spec = KnottedSpec(r=3, rdeg=0, degrees=(0, 2, 4), q1=q1, q2=q2)
    assert spec.problems() == ["q1 q2 != q2 q1"]
    with pytest.raises(ValueError, match="q1 q2 != q2 q1"):
        gen_knotted(spec)
    bad = gen_knotted(spec, check=False)
    rep = validate_ainf(bad)
    assert not rep.ok
    assert all("chain=[1, 2, 3, 4]" in v.where for v in rep.violations)


def test_mu3_fixture_valid(fixtures_dir):
    a = load(fixtures_dir / "mu3.cat")
    assert validate_ainf(a).ok
    assert not dense_ainf_residuals(a)


def test_hom_cohomology_examples(fixtures_dir):
    assert hom_cohomology(a3_path(), 0, 2) == {0: 1}
    assert hom_cohomology(load(fixtures_dir / "two_term.cat"), 0, 1) == {}
    k = gen_knotted(KnottedSpec(r=3))
    assert hom_cohomology(k, 0, 2) == {1: 3}
    with pytest.raises(IndexError):
        hom_cohomology(k, 0, 4)


def test_gram_examples():
    assert gram_matrix(a3_path()).tolist() == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
    assert gram_matrix(AInfCategory(["X"], {})).tolist() == [[1]]
    assert gram_matrix(apply_c(a3_path())).tolist() == [[1, 1, -1], [0, 1, -1], [0, 0, 1]]


def test_identity_rules():
    a = a3_path()
    assert a.mu((0, 0, 1), [1, 1]) == 1
    assert a.mu((0, 1, 1), [1, 1]) == 1
    assert a.mu((1, 1, 1), [1, 1]) == 1
    assert a.mu((0, 0, 1, 2), [1, 1, 1]) == 0  # identities only survive in mu^2


def test_sparse_validator_agrees_with_dense_oracle(corpus):
    for a in corpus[:80]:
        assert (not ainf_residuals(a)) == (not dense_ainf_residuals(a))


@given(st.integers(0, 10 ** 6), st.integers(1, 4))
def test_random_categories_valid_and_gram_triangular(seed, m):
    a = random_category(np.random.default_rng(seed), m)
    assert validate_ainf(a).ok
    g = gram_matrix(a)
    assert np.array_equal(np.diag(g), np.ones(m))
    assert not np.tril(g, -1).any()


@given(st.integers(0, 10 ** 6), st.randoms(use_true_random=False))
def test_validation_stable_under_relabel_and_reorder(seed, rnd):
    a = random_category(np.random.default_rng(seed), 4, p_mu3=0.5)
    entries = a.entries()
    rename = {lab: f"z{j}" for j, lab in enumerate(l for s in a.homs.values() for l in s.labels)}
    homs = {p: s.relabel([rename[l] for l in s.labels]) for p, s in a.homs.items()}
    moved = [MuEntry(e.chain, tuple(rename[x] for x in e.inputs), rename[e.output])
             for e in entries]
    rnd.shuffle(moved)
    b = AInfCategory(a.names, homs, moved)
    assert validate_ainf(b).ok == validate_ainf(a).ok
    # now break one relation, and check the report does not depend on order
    if moved:
        broken = moved[:-1]
        r1 = validate_ainf(AInfCategory(a.names, homs, broken))
        rnd.shuffle(broken)
        r2 = validate_ainf(AInfCategory(a.names, homs, broken))
        assert [str(v) for v in r1.violations] == [str(v) for v in r2.violations]


def test_repeated_entries_cancel():
    a = a3_path()
    b = AInfCategory(a.names, a.homs, list(a._raw) * 2)
    assert b.entries() == []
