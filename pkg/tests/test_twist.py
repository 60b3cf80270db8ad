import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ainfmut.ainf import AInfCategory, gram_matrix, hom_dims_table, validate_ainf
from ainfmut.generators import KnottedSpec, a3_path, gen_knotted, random_category
from ainfmut.gf2 import GradedSpace, total
from ainfmut.mutation import c_objects, r_inv_objects, r_objects
from ainfmut.twist import (Summand, TwObject, cone, dual_twist_object, evaluation,
                           extract_directed_subcategory, hom_basis, hom_complex, mc_check,
                           object_tw, triangle_euler_check, twist_object)
from oracles import dense_ainf_residuals, direct_tw_table


def test_mc_zero_delta():
    a = a3_path()
    assert mc_check(TwObject(a, [Summand(0), Summand(2)])).ok


def test_two_summand_closed_passes():
    a = a3_path()
    t = TwObject(a, [Summand(0, 1), Summand(1)], {(0, 1): 1})
    assert mc_check(t).ok


def test_mc_fails_on_composable_pair():
    # delta = a + b on X1[2] + X2[1] + X3: mu^1 = 0 but mu^2(b, a) = c != 0
    a = a3_path()
    with pytest.raises(ValueError, match="Maurer-Cartan"):
        TwObject(a, [Summand(0, 2), Summand(1, 1), Summand(2)], {(0, 1): 1, (1, 2): 1})
    t = TwObject(a, [Summand(0, 2), Summand(1, 1), Summand(2)], {(0, 1): 1, (1, 2): 1},
                 check=False)
    rep = mc_check(t)
    assert not rep.ok and "0 -> 2" in rep.violations[0].where


def test_delta_shape_checks():
    a = a3_path()
    with pytest.raises(ValueError, match="backwards"):
        TwObject(a, [Summand(1), Summand(0)], {(0, 1): 1})
    with pytest.raises(ValueError, match="total degree 1"):
        TwObject(a, [Summand(0), Summand(1)], {(0, 1): 1})


def test_hom_complex_single_summands_is_hom():
    a = a3_path()
    h = hom_complex(object_tw(a, 0), object_tw(a, 2))
    assert h.space.basis == (("c", 0),)
    assert h.d1.is_zero()


def test_hom_between_shifted_copies():
    # total degree of a component is d + s_source - s_target
    a = a3_path()
    for s, t in [(0, 0), (2, -1), (-3, 1)]:
        h = hom_complex(object_tw(a, 1, s), object_tw(a, 1, t))
        assert h.space.dims == {s - t: 1}


def test_twist_a3():
    a = a3_path()
    t = twist_object(1, object_tw(a, 2))
    assert t.summands == (Summand(1, 1, "b"), Summand(2, 0, None))
    assert t.delta == {(0, 1): 1}
    # mu^2(b, -) : hom(X1, X2) -> hom(X1, X3) is an isomorphism, so the cone is acyclic
    assert hom_complex(object_tw(a, 0), t).cohomology() == {}
    assert hom_complex(object_tw(a, 0), t).space.dims == {-1: 1, 0: 1}


def test_twist_with_zero_hom_is_y():
    a = AInfCategory(["X", "Y"], {})
    t = twist_object(0, object_tw(a, 1))
    assert t.summands == (Summand(1),)


def test_twist_knotted_matches_cone_of_mu2():
    k = gen_knotted(KnottedSpec(r=3))
    t = twist_object(2, object_tw(k, 3))
    # R(x)e2 (degree 0) maps isomorphically onto R (degree 1); R(x)p2 sits in
    # degree 1 + 2 - 1 and mu^2(-, p2) = q2 = 0 kills nothing
    for i in (0, 1):
        assert hom_complex(object_tw(k, i), t).space.dims == {0: 3, 1: 3, 2: 3}
        assert hom_complex(object_tw(k, i), t).cohomology() == {2: 3}


def test_cone_of_identity_is_contractible():
    a = a3_path()
    x = object_tw(a, 1)
    c = cone({(0, 0): 1}, x, x)
    for i in range(3):
        assert total(hom_complex(object_tw(a, i), c).cohomology()) == 0
        assert total(hom_complex(c, object_tw(a, i)).cohomology()) == 0


def test_cone_of_zero_is_sum():
    a = a3_path()
    c = cone({}, object_tw(a, 0), object_tw(a, 2))
    assert c.delta == {}
    assert c.summands == (Summand(0, 1), Summand(2, 0))


def test_cone_errors():
    a = a3_path()
    with pytest.raises(ValueError, match="degree 0"):
        cone({(0, 0): 1}, object_tw(a, 0, 1), object_tw(a, 1))


def test_cone_not_closed():
    a = a3_path()
    t = TwObject(a, [Summand(1, 1), Summand(2)], {(0, 1): 1})
    # a: X1[1] -> t with component on the X2 summand; mu^1 = mu^2(a, b) = c != 0
    with pytest.raises(ValueError, match="closed"):
        cone({(0, 0): 1}, object_tw(a, 0, 1), t)


def test_triangle_checks():
    a = a3_path()
    x = object_tw(a, 1)
    for i in range(3):
        rep = triangle_euler_check({(0, 0): 1}, x, x, object_tw(a, i))
        assert rep["ok"] and rep["chi"]["cone"] == 0
        rep = triangle_euler_check({}, object_tw(a, 0), object_tw(a, 2), object_tw(a, i))
        d = rep["dims"]
        assert total(d["cone"]) == total(d["source"]) + total(d["target"])
    k = gen_knotted(KnottedSpec(r=3))
    vx, ev = evaluation(2, object_tw(k, 3))
    assert triangle_euler_check(ev, vx, object_tw(k, 3), object_tw(k, 0))["ok"]


def test_dual_twist_zero_hom_is_y():
    a = AInfCategory(["X", "Y"], {})
    t = dual_twist_object(1, object_tw(a, 0))
    assert t.summands == (Summand(0),)


def test_dual_twist_after_twist_restores_dims():
    a = a3_path()
    t = twist_object(1, object_tw(a, 2))
    back = dual_twist_object(1, t)
    for i in range(3):
        assert (hom_complex(object_tw(a, i), back).cohomology()
                == hom_complex(object_tw(a, i), object_tw(a, 2)).cohomology())


def test_extraction_identity_and_single():
    a = a3_path()
    assert extract_directed_subcategory([object_tw(a, i) for i in range(3)], a.names) == a
    one = extract_directed_subcategory([object_tw(a, 1)])
    assert one.m == 1 and gram_matrix(one).tolist() == [[1]]


def test_extraction_r_collection_a3():
    a = a3_path()
    b = extract_directed_subcategory(r_objects(a))
    assert hom_dims_table(b) == {(0, 1): {}, (0, 2): {0: 1}, (1, 2): {1: 1}}
    assert b.homs[(0, 1)].dims == {-1: 1, 0: 1}


def _collections(a):
    out = [r_objects(a), r_inv_objects(a)]
    if a.m >= 2:
        out.append(c_objects(a))
    return out


@given(st.integers(0, 10 ** 6), st.integers(2, 4), st.booleans())
def test_extraction_matches_direct_tw_evaluation(seed, m, mu3):
    a = random_category(np.random.default_rng(seed), m, p_mu3=0.6 if mu3 else 0.0)
    for objs in _collections(a):
        ext = extract_directed_subcategory(objs)
        bases = {(i, k): hom_basis(objs[i], objs[k])
                 for i in range(len(objs)) for k in range(i + 1, len(objs))}
        want = direct_tw_table(objs, bases)
        got = {k: v for k, v in ext.table.items() if len(k[1]) <= 3}
        assert got == want
        assert validate_ainf(ext).ok
        assert not dense_ainf_residuals(ext, max_d=3)


@given(st.integers(0, 10 ** 6), st.integers(2, 4))
def test_hom_complex_d1_squares_to_zero(seed, m):
    a = random_category(np.random.default_rng(seed), m)
    objs = r_objects(a) + [twist_object(0, object_tw(a, m - 1))]
    for c in objs:
        for d in objs:
            h = hom_complex(c, d)
            assert (h.d1 @ h.d1).is_zero()


@given(st.integers(0, 10 ** 6), st.integers(-3, 3))
def test_shifting_shifts_hom_complexes(seed, s):
    a = random_category(np.random.default_rng(seed), 3)
    t = twist_object(1, object_tw(a, 2))
    for i in range(3):
        x = object_tw(a, i)
        into = hom_complex(x, t).cohomology()
        assert hom_complex(x, t.shifted(s)).cohomology() == {k - s: v for k, v in into.items()}
        out = hom_complex(t, x).cohomology()
        assert hom_complex(t.shifted(s), x).cohomology() == {k + s: v for k, v in out.items()}


@given(st.integers(0, 10 ** 6))
def test_hom_dims_additive(seed):
    a = random_category(np.random.default_rng(seed), 4)
    t = twist_object(1, object_tw(a, 3))
    for i in range(4):
        h = hom_complex(object_tw(a, i), t).space
        want = {}
        for s in t.summands:
            for lab, d in a.hom(i, s.obj).basis:
                want[d - s.shift] = want.get(d - s.shift, 0) + 1
        assert h.dims == want
