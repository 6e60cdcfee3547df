from __future__ import annotations

from rackcollapse.permgrp import Perm, centralizer, class_of, conjugacy_classes, symmetric_group
from rackcollapse.rackkit import (ConjClassRack, build_table, check_axioms, check_table_axioms,
                                  conj_rack, is_commuting_set, is_indecomposable)

from conftest import classes_of_order


def test_small_racks():
    S3 = symmetric_group(3)
    R = conj_rack(S3, Perm.from_cycles(3, (0, 1)))
    assert len(R) == 3
    assert check_axioms(R).ok
    assert is_indecomposable(R)
    Z = conj_rack(S3, S3.identity())
    assert len(Z) == 1 and check_axioms(Z).ok


def test_table_is_conjugation():
    R = conj_rack(symmetric_group(4), Perm.from_cycles(4, (0, 1, 2)))
    T = R.table
    for i, x in enumerate(R.elements):
        for j, y in enumerate(R.elements):
            assert R.elements[T[i, j]] == x * y * x.inverse()
            assert R.op(i, j) == T[i, j]


def test_corrupted_tables_fail():
    R = conj_rack(symmetric_group(4), Perm.from_cycles(4, (0, 1)))
    T = R.table.copy()
    T[1, 2], T[1, 3] = T[1, 3], T[1, 2]
    rep = check_table_axioms(T)
    assert not rep.ok and rep.violation["axiom"] == "self-distributivity"
    T2 = R.table.copy()
    T2[0, 1] = T2[0, 2]
    rep = check_table_axioms(T2)
    assert not rep.ok and rep.violation["axiom"] == "bijectivity" and rep.violation["triple"][0] == 0
    T3 = R.table.copy()
    T3[2, 2] = -1
    rep = check_table_axioms(T3)
    assert not rep.ok and rep.violation["axiom"] == "closure"


def test_non_closed_set_fails():
    els = [Perm.from_cycles(4, (0, 1)), Perm.from_cycles(4, (1, 2))]
    T = build_table(els, {x: i for i, x in enumerate(els)})
    assert (T == -1).any() and not check_table_axioms(T).ok


def test_all_classes_small_groups(sz2, ree):
    for G in (sz2, ree.group, symmetric_group(5)):
        for orb in conjugacy_classes(G):
            rep = check_axioms(ConjClassRack(G, orb), exhaustive=True)
            assert rep.ok, rep.violation


def test_sampled_axioms_sz8(sz8, sz8_classes):
    G = sz8.perm_group
    for orb in sz8_classes[1:4]:
        rep = check_axioms(ConjClassRack(G, orb), samples=2000, seed=3)
        assert rep.ok and rep.mode == "sampled"


def test_commuting_sets(sz8, ree):
    Z = [sz8.U(0, b) for b in range(8)]
    assert is_commuting_set(Z)
    G = ree.group
    orb = class_of(G, ree.phi)
    meet = [x for x in centralizer(G, ree.phi).elements() if x in orb]
    assert is_commuting_set(meet)
    assert not is_commuting_set([sz8.U(1, 0), sz8.J()])


def test_involution_rack_size(sz8, sz8_classes):
    inv = classes_of_order(sz8_classes, 2)[0]
    assert len(conj_rack(sz8.perm_group, inv.representative)) == 455
