from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from rackcollapse.checks import (order4_type_F_certificate, product_instance,
                                 torus_type_C_certificate)
from rackcollapse.collapse import (CollapseCertificate, NotFound, PairScan, certificate_from_json,
                                   check_type_C, check_type_D, check_type_F, classify,
                                   conjugate_certificate, find_type, kthulhu_exhaustive, verify)
from rackcollapse.permgrp import (Perm, TooLarge, brute_force_closure, conjugacy_classes,
                                  element_order, symmetric_group)
from rackcollapse.rackkit import ConjClassRack, conj_rack
from rackcollapse.registry import build_group
from rackcollapse.suzuki import structural_subgroups, torus

from conftest import classes_of_order


def orbit_oracle(x, gens):
    H = brute_force_closure(gens, x.degree, cap=100_000)
    return {h.conj(x) for h in H}


def type_D_oracle(r, s):
    if (r * s) ** 2 == (s * r) ** 2:
        return False
    return s not in orbit_oracle(r, [r, s])


@pytest.fixture(scope="module")
def psl8_order7():
    P = build_group("psl2:q=8")
    x = next(g for g in P.elements() if element_order(g) == 7)
    return P, conj_rack(P, x)


def test_D_trivial_cases(psl8_order7):
    P, R = psl8_order7
    r = R.representative
    assert not check_type_D(r, r)
    assert not check_type_D(r, r * r)


def test_D_matches_oracle_on_psl2_8(psl8_order7):
    # the brute-force oracle finds no type D partner for the order-7 class; the
    # class collapses through type C inside a Borel subgroup instead
    P, R = psl8_order7
    r = R.representative
    expected = [s for s in R.elements if type_D_oracle(r, s)]
    got = [s for s in R.elements if check_type_D(r, s)]
    assert got == expected == []
    res = find_type("D", R)
    assert isinstance(res, NotFound) and res.complete
    cert = find_type("C", R)
    assert isinstance(cert, CollapseCertificate) and verify(cert)
    assert min(cert.details["orbit_sizes"]) > 2


def test_centralizer_reduction_is_complete(psl8_order7):
    P, R = psl8_order7
    scan = PairScan(R)
    r = R.representative
    split_full = [i for i, s in enumerate(R.elements)
                  if not r.commutes(s) and s not in orbit_oracle(r, [r, s])]
    assert scan.split_set() == split_full
    assert len(scan.candidates) < len(R)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 251), st.integers(0, 251))
def test_D_symmetric(i, j):
    G = build_group("ree-g2-3")
    orb = [c for c in conjugacy_classes(G) if len(c) == 252][0]
    r, s = orb.elements[i], orb.elements[j]
    assert check_type_D(r, s) == check_type_D(s, r)


def test_C_examples(sz8):
    cert = torus_type_C_certificate(sz8, sz8.zeta)
    r, s = cert.witnesses
    assert check_type_C(r, s, cert.H_gens)
    assert verify(cert)
    Z = sz8.U(0, 1)
    assert not check_type_C(Z, sz8.U(0, 2), [Z, sz8.U(0, 2)])
    u = sz8.u_minus_gens()[0]
    assert not check_type_C(r, u.conj(r), cert.H_gens)  # same H-orbit


def test_F_examples(sz8, sz8_classes):
    G = sz8.perm_group
    for orb in classes_of_order(sz8_classes, 4):
        cert = order4_type_F_certificate(sz8, ConjClassRack(G, orb))
        assert check_type_F(*cert.witnesses) and verify(cert)
        a, b, c, _ = cert.witnesses
        assert not check_type_F(a, b, c, c)
    invs = [sz8.U(0, b) for b in (1, 2, 3, 4)]
    assert not check_type_F(*invs)


def test_find_type_sz2(sz2):
    for orb in conjugacy_classes(sz2):
        o = element_order(orb.representative)
        if o in (2, 5):
            res = find_type("D", ConjClassRack(sz2, orb))
            assert isinstance(res, NotFound) and res.complete and res.mode == "exhaustive"
            assert res.to_json()["label"] == "evidence"


def test_find_type_F_order4(sz8, sz8_classes):
    G = sz8.perm_group
    for orb in classes_of_order(sz8_classes, 4):
        res = find_type("F", ConjClassRack(G, orb), structural=structural_subgroups(sz8),
                        conjugators=torus(sz8))
        assert isinstance(res, CollapseCertificate) and res.kind == "F" and verify(res)


def test_find_type_order7_C(sz8, sz8_classes):
    G = sz8.perm_group
    orb = classes_of_order(sz8_classes, 7)[0]
    res = find_type("C", ConjClassRack(G, orb), structural=structural_subgroups(sz8))
    assert isinstance(res, CollapseCertificate) and verify(res)
    assert res.details["orbit_sizes"] == [64, 64]


def test_verify_negative(sz8, sz8_classes):
    cert = torus_type_C_certificate(sz8, sz8.zeta)
    other = torus_type_C_certificate(sz8, sz8.zeta ** 3)
    bad = CollapseCertificate("C", other.witnesses, cert.group, cert.class_rep, cert.ambient,
                              cert.H_gens)
    if other.class_rep != cert.class_rep:
        assert not verify(bad)
    wrong_kind = CollapseCertificate("F", cert.witnesses, cert.group, cert.class_rep, cert.ambient)
    assert not verify(wrong_kind)
    outside = CollapseCertificate("D", (Perm.identity(65), Perm.identity(65)), cert.group,
                                  cert.class_rep, cert.ambient)
    assert not verify(outside)


def test_conjugate_covariance(sz8):
    G = sz8.perm_group
    rng = random.Random(5)
    els = [sz8.J(), sz8.U(1, 0), sz8.t(sz8.zeta)]
    cert = torus_type_C_certificate(sz8, sz8.zeta)
    for _ in range(5):
        g = rng.choice(els) * rng.choice(els) * rng.choice(els)
        assert G.contains(g)
        assert verify(conjugate_certificate(cert, g))


def test_product_instance():
    G, R = product_instance(8)
    assert G.order == 504 * 504
    res = find_type("C", R)
    assert isinstance(res, CollapseCertificate) and verify(res)


def test_kthulhu_exhaustive(sz2, sz8, sz8_classes):
    for orb in conjugacy_classes(sz2):
        rep = kthulhu_exhaustive(sz2, ConjClassRack(sz2, orb))
        assert rep.proved and rep.mode == "exhaustive-proof"
    S3 = symmetric_group(3)
    assert kthulhu_exhaustive(S3, conj_rack(S3, Perm.from_cycles(3, (0, 1)))).proved
    orb = classes_of_order(sz8_classes, 4)[0]
    assert isinstance(kthulhu_exhaustive(sz8.perm_group, ConjClassRack(sz8.perm_group, orb)),
                      TooLarge)


def test_non_kthulhu_is_not_proved():
    S4 = symmetric_group(4)
    rep = kthulhu_exhaustive(S4, conj_rack(S4, Perm.from_cycles(4, (0, 1, 2))))
    assert not rep.proved


def test_random_strategy_is_seeded(psl8_order7):
    P, R = psl8_order7
    a = find_type("C", R, "random", seed=11, budget=200)
    b = find_type("C", R, "random", seed=11, budget=200)
    assert isinstance(a, CollapseCertificate)
    assert a.witnesses == b.witnesses and a.seed == 11
    with pytest.raises(ValueError):
        find_type("E", R)
    with pytest.raises(ValueError):
        find_type("D", R, "bogus")


def test_certificate_json_roundtrip(sz8):
    cert = torus_type_C_certificate(sz8, sz8.zeta)
    doc = json.loads(json.dumps(cert.to_json()))
    assert doc["verified"] is True and doc["kind"] == "C" and "H_generators" in doc
    back = certificate_from_json(doc, sz8.perm_group)
    assert verify(back)
    doc["witnesses"][1] = doc["witnesses"][0]
    assert not verify(certificate_from_json(doc, sz8.perm_group))


def test_classify_report(sz2):
    orb = [c for c in conjugacy_classes(sz2) if element_order(c.representative) == 4][0]
    rep = classify(sz2, ConjClassRack(sz2, orb))
    assert rep["certificates"] == [] and len(rep["not_found"]) == 3
    assert rep["element_order"] == 4 and rep["is_real"] is False
    assert "no certificate" in rep["verdict"]
