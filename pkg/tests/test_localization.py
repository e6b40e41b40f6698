import random

import pytest

from cluster_loc.localization import (LocHom, Zigzag, algebra_of, classify,
                                      elementary_identities_suite,
                                      factor_through_s, forward, inv, loc_hom,
                                      s_resolution, zigzag_equal, zigzag_eval)
from cluster_loc.modules import (H_mor, H_obj, direct_sum_modules,
                                 hom_dim_modules, modules_isomorphic,
                                 simple_module)
from cluster_loc.rigid import in_CT, perp_view, rigid_object
from cluster_loc.suites import cached_category
from cluster_loc.triangles import mesh_map_into, mesh_map_out_of


def test_classify_example_maps(cat4, example_T):
    m34 = cat4.arc_of_token("M34")
    s = mesh_map_into(cat4, m34)
    cs = classify(cat4, example_T, s)
    assert cs.in_S and cs.in_S_tilde
    t = mesh_map_out_of(cat4, m34)
    ct = classify(cat4, example_T, t)
    assert ct.in_S_tilde and not ct.in_S
    assert ct.H_mono and ct.H_epi
    ident = cat4.identity(cat4.obj(["M34", "M44"]))
    ci = classify(cat4, example_T, ident)
    assert ci.in_S and ci.in_S_tilde
    assert ci.witness_triangle.z.is_zero()


def test_classify_flags_track_mono_epi(cat4, example_T):
    alg = algebra_of(cat4, example_T)
    # the basis map M44 -> M34 induces S1 -> S1 + S3: mono, not epi
    f = cat4.basis_mor(cat4.arc_of_token("M44"), cat4.arc_of_token("M34"))
    c = classify(cat4, example_T, f)
    hf = H_mor(cat4, alg, f)
    assert c.H_mono == hf.is_mono() is True
    assert c.H_epi == hf.is_epi() is False
    assert not c.in_S_tilde
    # the zero map out of a T-summand: neither mono nor epi
    z = cat4.zero_mor(cat4.obj(["M44"]), cat4.obj(["M34"]))
    cz = classify(cat4, example_T, z)
    assert not cz.H_mono and not cz.H_epi


def test_zero_map_to_zero_is_in_S(cat4, example_T):
    # elementary identity (a): U -> 0 for U in Sigma T-perp
    for u in sorted(perp_view(cat4, example_T, "SigmaTperp").members):
        f = cat4.zero_mor(cat4.obj([u]), cat4.zero_obj)
        assert classify(cat4, example_T, f).in_S


def test_zero_map_from_zero_not_always_in_S(cat4, example_T):
    # 0 -> U for U in Sigma T-perp is inverted (both ends have zero image)
    # but is NOT in S when the cosuspension of U leaves Sigma T-perp, e.g.
    # U = SP4 with cosuspension M44; resolutions of perp objects therefore
    # go through the octahedral construction rather than this shortcut
    f = cat4.zero_mor(cat4.zero_obj, cat4.obj(["SP4"]))
    c = classify(cat4, example_T, f)
    assert c.in_S_tilde is True
    assert c.in_S is False


def test_s_resolution_all_indecomposables(cat4, example_T):
    for i in range(cat4.N):
        xp, s = s_resolution(cat4, example_T, cat4.obj([i]))
        assert in_CT(cat4, example_T, xp)
        assert classify(cat4, example_T, s).in_S
        assert s.src == xp and s.tgt.summands == (i,)


def test_s_resolution_example_image(cat4, example_T):
    alg = algebra_of(cat4, example_T)
    xp, s = s_resolution(cat4, example_T, cat4.obj(["M34"]))
    s1s3, _ = direct_sum_modules([simple_module(alg, 0),
                                  simple_module(alg, 2)])
    assert modules_isomorphic(H_obj(cat4, alg, xp), s1s3)


def test_s_resolution_zero_object(cat4, example_T):
    xp, s = s_resolution(cat4, example_T, cat4.zero_obj)
    assert xp.is_zero() and s.is_zero()


def test_factor_through_s(cat4, example_T):
    y = cat4.obj(["M13"])
    xp, s = s_resolution(cat4, example_T, y)
    # u = s itself factors (h is then an endomorphism with s.h = s)
    h = factor_through_s(cat4, example_T, s, s)
    assert cat4.compose(s, h).m == s.m
    # u = 0 factors through anything
    u0 = cat4.zero_mor(cat4.obj(["M44"]), y)
    h0 = factor_through_s(cat4, example_T, u0, s)
    assert cat4.compose(s, h0).is_zero()
    # basis maps from presented indecomposables factor
    for i in range(cat4.N):
        if not in_CT(cat4, example_T, cat4.obj([i])):
            continue
        if cat4.dim_hom_obj(cat4.obj([i]), y):
            u = cat4.mor(cat4.obj([i]), y, [[1]])
            h = factor_through_s(cat4, example_T, u, s)
            assert cat4.compose(s, h).m == u.m


def test_factor_through_s_preconditions(cat4, example_T):
    y = cat4.obj(["M13"])
    xp, s = s_resolution(cat4, example_T, y)
    with pytest.raises(ValueError):
        factor_through_s(cat4, example_T,
                         cat4.zero_mor(cat4.obj(["M34"]), y), s)  # M34 not in C(T)
    with pytest.raises(ValueError):
        factor_through_s(cat4, example_T,
                         cat4.zero_mor(cat4.obj(["M44"]), cat4.obj(["M44"])), s)


def test_loc_hom_summand_endomorphisms(cat4, example_T):
    alg = algebra_of(cat4, example_T)
    for i, a in enumerate(example_T.arcs):
        lh = loc_hom(cat4, example_T, cat4.obj([a]), cat4.obj([a]), verify=True)
        # End of the corresponding projective: e_i Lambda e_i is 1-dimensional
        assert lh.dim == 1 == hom_dim_modules(
            H_obj(cat4, alg, cat4.obj([a])), H_obj(cat4, alg, cat4.obj([a])))


def test_loc_hom_perp_source_vanishes(cat4, example_T):
    for u in sorted(perp_view(cat4, example_T, "SigmaTperp").members):
        for j in (0, 5, 9):
            lh = loc_hom(cat4, example_T, cat4.obj([u]), cat4.obj([j % cat4.N]))
            assert lh.dim == 0


def test_loc_hom_matches_module_dimension_all_pairs(cat4, example_T):
    alg = algebra_of(cat4, example_T)
    mods = [H_obj(cat4, alg, cat4.obj([i])) for i in range(cat4.N)]
    for i in range(cat4.N):
        for j in range(cat4.N):
            lh = loc_hom(cat4, example_T, cat4.obj([i]), cat4.obj([j]))
            assert lh.dim == hom_dim_modules(mods[i], mods[j])
            assert len(lh.reps) == lh.dim
            assert isinstance(lh, LocHom)


def test_zigzag_eval_and_equal(cat4, example_T):
    alg = algebra_of(cat4, example_T)
    m34 = cat4.arc_of_token("M34")
    s = mesh_map_into(cat4, m34)
    # single forward step evaluates to H
    z = Zigzag((forward(s),))
    ev = zigzag_eval(cat4, example_T, z)
    hs = H_mor(cat4, alg, s)
    assert all(a.entries == b.entries for a, b in zip(ev.comps, hs.comps))
    # s then its formal inverse is the identity
    z2 = Zigzag((forward(s), inv(s)))
    ident = Zigzag((forward(cat4.identity(s.src)),))
    assert zigzag_equal(cat4, example_T, z2, ident)
    # the inverse of s is an isomorphism on a module isomorphic to S1+S3
    zi = zigzag_eval(cat4, example_T, Zigzag((inv(s),)))
    assert zi.is_iso()
    s1s3, _ = direct_sum_modules([simple_module(alg, 0),
                                  simple_module(alg, 2)])
    assert modules_isomorphic(zi.src, s1s3)


def test_zigzag_insert_cancelling_pair(cat4, example_T):
    m34 = cat4.arc_of_token("M34")
    t = mesh_map_out_of(cat4, m34)
    s = mesh_map_into(cat4, m34)
    z1 = Zigzag((forward(s), forward(t)))
    z2 = Zigzag((forward(s), inv(s), forward(s), forward(t)))
    assert zigzag_equal(cat4, example_T, z1, z2)


def test_zigzag_translation_by_perp_factoring(cat4, example_T):
    # u + v ~ u whenever v factors through Sigma T-perp; built on sum
    # objects so that u itself has a nonzero image
    x = cat4.obj(["M44", "M34"])
    y = cat4.obj(["M34", "M13"])
    mid = cat4.obj(["M23"])
    alg = algebra_of(cat4, example_T)
    v = cat4.compose(cat4.random_mor(random.Random(1), mid, y),
                     cat4.random_mor(random.Random(2), x, mid))
    assert H_mor(cat4, alg, v).is_zero()
    u = cat4.random_mor(random.Random(3), x, y)
    assert not H_mor(cat4, alg, u).is_zero()
    z1 = Zigzag((forward(cat4.add_mor(u, v)),))
    z2 = Zigzag((forward(u),))
    assert zigzag_equal(cat4, example_T, z1, z2)
    # distinct module images stay distinct
    z3 = Zigzag((forward(cat4.scale_mor(3, u)),))
    assert not zigzag_equal(cat4, example_T, z2, z3)


def test_zigzag_validation(cat4, example_T):
    m34 = cat4.arc_of_token("M34")
    s = mesh_map_into(cat4, m34)
    t = mesh_map_out_of(cat4, m34)
    with pytest.raises(ValueError):
        Zigzag((forward(s), forward(s))).validate()
    with pytest.raises(ValueError):
        zigzag_equal(cat4, example_T, Zigzag((forward(s),)),
                     Zigzag((forward(t),)))
    # inverting a map outside the inverted class is rejected
    f = cat4.basis_mor(cat4.arc_of_token("M44"), m34)
    with pytest.raises(ValueError):
        zigzag_eval(cat4, example_T, Zigzag((inv(f),)))


def test_elementary_identities(cat4, example_T, fan_T, cat2):
    for cat, t in [(cat4, example_T), (cat4, fan_T),
                   (cat2, rigid_object(cat2, ["M22", "M12"]))]:
        rep = elementary_identities_suite(cat, t, random.Random(3))
        assert rep["failures"] == []
        assert rep["checks"] > 10


def test_resolution_variant_agrees(cat4, example_T):
    for i in range(cat4.N):
        xp0, _ = s_resolution(cat4, example_T, cat4.obj([i]), variant=0)
        xp1, _ = s_resolution(cat4, example_T, cat4.obj([i]), variant=1)
        alg = algebra_of(cat4, example_T)
        assert modules_isomorphic(H_obj(cat4, alg, xp0),
                                  H_obj(cat4, alg, xp1))
