from __future__ import annotations

import itertools
import random

import pytest

from rackcollapse.ffield import FieldError, delta
from rackcollapse.permgrp import brute_force_closure, centralizer, closure, element_order, is_real
from rackcollapse.suzuki import (Mat4, SuzukiError, affine_map, build_sz, center_U_minus,
                                 subgroup_T_ZU, suzuki_order, sz2_affine_model, sz_field, t_elem,
                                 u_elem, w0_elem)

from conftest import classes_of_order

GF8 = sz_field(1)


def test_u_elem_examples():
    zero, one = GF8.zero, GF8.one
    assert u_elem(zero, zero) == Mat4.identity(GF8)
    M = u_elem(one, zero)
    rows = [tuple(int(x) for x in M.row(i)) for i in range(4)]
    assert rows == [(1, 0, 0, 0), (1, 1, 0, 0), (1, 1, 1, 0), (1, 0, 1, 1)]
    for b, d in itertools.product(GF8.elements(), repeat=2):
        assert u_elem(zero, b) * u_elem(zero, d) == u_elem(zero, b + d)


def test_product_rule_exhaustive():
    els = list(GF8.elements())
    for a, b, c, d in itertools.product(els, repeat=4):
        assert u_elem(a, b) * u_elem(c, d) == u_elem(a + c, a * delta(c) + b + d)


def test_torus():
    assert t_elem(GF8.one) == Mat4.identity(GF8)
    t = GF8.gen
    M = t_elem(t)
    x2 = t * t  # delta(t^2) = t^8 = t, so delta^-1(t) = t^2
    assert M[1, 1] == x2 and M[2, 2] == x2.inverse()
    assert delta(M[0, 0]) == t * delta(t)
    assert M[3, 3] == M[0, 0].inverse()
    with pytest.raises(FieldError):
        t_elem(GF8.zero)
    for k in GF8.units():
        T = t_elem(k)
        Ti = T.inverse()
        for a, b in itertools.product(GF8.elements(), repeat=2):
            assert Ti * u_elem(a, b) * T == u_elem(a * k, b * k * delta(k))


def test_form():
    J = w0_elem(GF8)
    assert J * J == Mat4.identity(GF8)
    assert J.preserves_form()
    for a, b in itertools.product(GF8.elements(), repeat=2):
        assert u_elem(a, b).preserves_form()
    for k in GF8.units():
        assert t_elem(k).preserves_form()


def test_inverse():
    rng = random.Random(1)
    els = list(GF8.elements())
    for _ in range(20):
        M = u_elem(rng.choice(els), rng.choice(els)) * t_elem(rng.choice(list(GF8.units())))
        assert M * M.inverse() == Mat4.identity(GF8)


def test_build_sz_small():
    sz0 = build_sz(0)
    assert sz0.perm_group.order == 20 and sz0.perm_group.degree == 5
    assert len(brute_force_closure(sz0.perm_group.generators, 5)) == 20


def test_build_sz_caps():
    with pytest.raises(SuzukiError):
        build_sz(3)
    with pytest.raises(ValueError):
        build_sz(-1)
    assert suzuki_order(32) == 32537600


def test_sz8(sz8):
    G = sz8.perm_group
    assert G.degree == 65 and G.order == 29120
    assert G.contains(sz8.J())
    assert element_order(sz8.U(1, 0)) == 4
    assert sz8.borel_minus().order == 448


def test_perm_image_is_homomorphism(sz8):
    rng = random.Random(2)
    mats = sz8.generators
    for _ in range(20):
        M, N = rng.choice(mats), rng.choice(mats)
        assert sz8.perm(M * N) == sz8.perm(M) * sz8.perm(N)


def test_subgroups(sz8):
    H = subgroup_T_ZU(sz8)
    assert H.order == 56
    assert element_order(sz8.t(sz8.zeta)) == 7 and H.contains(sz8.t(sz8.zeta))
    Z = center_U_minus(sz8)
    assert Z.order == 8 and Z.is_abelian()
    g = sz8.U(0, 1)
    assert all(g.commutes(sz8.U(0, b)) for b in range(8))


def test_sz8_classes(sz8, sz8_classes):
    G = sz8.perm_group
    assert len(sz8_classes) == 11
    inv = classes_of_order(sz8_classes, 2)
    assert len(inv) == 1 and len(inv[0]) == 455
    assert centralizer(G, inv[0].representative).order == 64
    for n in (5, 13):
        for c in classes_of_order(sz8_classes, n):
            assert is_real(G, c.representative)


def test_torus_witness_subgroup(sz8):
    t = sz8.t(sz8.zeta)
    s = t.inverse() * sz8.U(1, 0)
    assert closure([t, s]).order == 448


def test_affine_model():
    G = sz2_affine_model()
    assert G.order == 20
    els = G.elements()
    assert sum(element_order(x) == 4 for x in els) == 10
    N = [x for x in els if element_order(x) in (1, 5)]
    assert len(N) == 5
    assert all(a.commutes(b) for a in N for b in N)
    assert all(g.conj(n) in N for g in els for n in N)
    assert affine_map(1, 1) in G
