"""Named reference checks, run in a fixed order by ``verify-paper``.

Each check returns a JSON-ready dict with at least ``ok``.  The explicit
witness constructions used by the checks live here too, so tests can reuse them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from . import nichols
from .collapse import (CollapseCertificate, find_type, kthulhu_exhaustive, type_C_conditions,
                       verify)
from .ffield import FieldCtx, phi
from .permgrp import (PermGroup, centralizer, class_of, conjugacy_classes, element_order,
                      embed_pair, is_real)
from .rackkit import ConjClassRack, conj_rack
from .registry import build_group, ree_context, sz_context
from .suzuki import SzContext, suzuki_order, sz_field, t_elem, u_elem


# -- field and matrix identities ---------------------------------------------------


def delta_squared_is_frobenius(ctx: FieldCtx) -> dict:
    bad = [int(x) for x in ctx.elements()
           if ctx.delta_int(ctx.delta_int(int(x))) != ctx.pow_int(int(x), ctx.p)]
    return {"ok": not bad, "q": ctx.q, "instances": ctx.q, "failures": bad[:5]}


def phi_is_bijection(ctx: FieldCtx) -> dict:
    units = list(ctx.units())
    images = {int(phi(k)) for k in units}
    return {"ok": len(images) == len(units) and 0 not in images, "q": ctx.q,
            "instances": len(units)}


def product_rule(ctx: FieldCtx) -> dict:
    """U(a,b) U(c,d) = U(a+c, a delta(c) + b + d) over all a, b, c, d."""
    els = list(ctx.elements())
    n = fails = 0
    for a, b, c, d in itertools.product(els, repeat=4):
        n += 1
        if u_elem(a, b) * u_elem(c, d) != u_elem(a + c, a * ctx(ctx.delta_int(int(c))) + b + d):
            fails += 1
    return {"ok": fails == 0, "instances": n, "failures": fails}


def torus_commutation_rule(ctx: FieldCtx) -> dict:
    """t_k^-1 U(a,b) t_k = U(a k, b k delta(k)) over all k != 0, a, b."""
    els = list(ctx.elements())
    n = fails = 0
    for k in ctx.units():
        t = t_elem(k)
        ti = t.inverse()
        dk = ctx(ctx.delta_int(int(k)))
        for a, b in itertools.product(els, repeat=2):
            n += 1
            if ti * u_elem(a, b) * t != u_elem(a * k, b * k * dk):
                fails += 1
    return {"ok": fails == 0, "instances": n, "failures": fails}


# -- explicit witnesses ------------------------------------------------------------


def torus_type_C_certificate(sz: SzContext, k) -> CollapseCertificate:
    """r = t_k, s = t_k^-1 U(1,0), H = <t_k, U^->."""
    G = sz.perm_group
    ctx = sz.field
    t = sz.t(k)
    r = t
    s = t.inverse() * sz.U(ctx.one, ctx.zero)
    H_gens = (t,) + tuple(sz.u_minus_gens())
    rep = class_of(G, t).representative
    return CollapseCertificate(kind="C", witnesses=(r, s), group=G.name, class_rep=rep,
                               ambient=G, H_gens=H_gens)


def order4_type_F_certificate(sz: SzContext, R: ConjClassRack) -> CollapseCertificate:
    """r_j = t_{k_j} |> r for four distinct k_j, with r = U(a,b), a != 0, in the class."""
    ctx = sz.field
    r = next(sz.U(a, b) for a in ctx.units() for b in ctx.elements() if sz.U(a, b) in R)
    z = sz.zeta
    quad = tuple(sz.t(z ** j).conj(r) for j in range(4))
    G = sz.perm_group
    return CollapseCertificate(kind="F", witnesses=quad, group=G.name,
                               class_rep=R.representative, ambient=G)


def ree_abelian(ree=None) -> PermGroup:
    return nichols.ree_abelian_subgroup(ree or ree_context())


def product_instance(q: int = 8) -> tuple[PermGroup, ConjClassRack]:
    """(m1, m2) in PSL2(q) x PSL2(q) with both factors of order 7."""
    G = build_group(f"psl2x2:q={q}")
    P = build_group(f"psl2:q={q}")
    m = next(x for x in P.elements() if element_order(x) == 7)
    return G, conj_rack(G, embed_pair(m, m))


# -- check registry ----------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    fn: Callable[[], dict]
    min_h: int = 0


def _sz2() -> dict:
    G = build_group("sz2-affine")
    classes = conjugacy_classes(G)
    return {"ok": G.order == 20 and len(classes) == 5, "order": G.order, "classes": len(classes),
            "orders": sorted(element_order(c.representative) for c in classes)}


def _sz2_kthulhu() -> dict:
    G = build_group("sz2-affine")
    reps = []
    for orb in conjugacy_classes(G):
        rep = kthulhu_exhaustive(G, ConjClassRack(G, orb))
        reps.append({"order": element_order(orb.representative), "proved": rep.proved,
                     **rep.stats})
    return {"ok": all(r["proved"] for r in reps), "classes": reps}


def involution_square_witness(G: PermGroup) -> dict:
    """An involution u and v in its class with (uv)^2 != (vu)^2."""
    u = next(x for x in G.elements() if element_order(x) == 2)
    orb = class_of(G, u)
    good = [v for v in orb.elements if v != u and (u * v) ** 2 != (v * u) ** 2]
    return {"ok": bool(good), "u": u.to_json(), "v": good[0].to_json() if good else None,
            "all_others": len(good) == len(orb) - 1}


def _sz8_group() -> dict:
    sz = sz_context(1)
    G = sz.perm_group
    return {"ok": G.order == suzuki_order(8) == 29120, "order": G.order, "degree": G.degree}


def _sz32_group() -> dict:
    sz = sz_context(2)
    G = sz.perm_group
    return {"ok": G.order == suzuki_order(32), "order": G.order, "degree": G.degree}


def _sz8_classes() -> dict:
    G = sz_context(1).perm_group
    classes = conjugacy_classes(G)
    return {"ok": len(classes) == 11, "classes": len(classes),
            "sizes": sorted(len(c) for c in classes)}


def _sz8_involutions() -> dict:
    G = sz_context(1).perm_group
    inv = [c for c in conjugacy_classes(G) if element_order(c.representative) == 2]
    size = len(inv[0]) if inv else 0
    cent = centralizer(G, inv[0].representative).order if inv else 0
    return {"ok": len(inv) == 1 and size == 455 and cent == 64, "classes": len(inv),
            "size": size, "centralizer_order": cent}


def _sz8_order4_F() -> dict:
    sz = sz_context(1)
    G = sz.perm_group
    out = []
    for orb in conjugacy_classes(G):
        if element_order(orb.representative) == 4:
            cert = order4_type_F_certificate(sz, ConjClassRack(G, orb))
            out.append({"verified": verify(cert), "certificate": cert.to_json()})
    return {"ok": len(out) == 2 and all(c["verified"] for c in out), "classes": out}


def _sz8_torus_C() -> dict:
    sz = sz_context(1)
    out = []
    for k in list(sz.field.units())[1:]:
        cert = torus_type_C_certificate(sz, k)
        conds = type_C_conditions(*cert.witnesses, cert.H_gens)
        out.append({"k": int(k), "verified": verify(cert), "orbit_sizes": conds.get("orbit_sizes")})
    ok = len(out) == 6 and all(c["verified"] and c["orbit_sizes"] == [64, 64] for c in out)
    return {"ok": ok, "elements": out}


def _sz8_real_odd() -> dict:
    G = sz_context(1).perm_group
    out = []
    for orb in conjugacy_classes(G):
        r = orb.representative
        o = element_order(r)
        if o % 2 == 1 and o > 1:
            out.append({"order": o, "real": is_real(G, r), "az_real_odd": nichols.az_real_odd(G, r)})
    return {"ok": len(out) == 7 and all(c["real"] and c["az_real_odd"] for c in out),
            "classes": out}


def _involution_h1() -> dict:
    rep = nichols.verify_involution_braidings(1)
    return {"ok": rep["ok"], "verdicts": [c["verdict"]["rule"] for c in rep["characters"]],
            "span_contains_one": rep["span"]["contains_one"]}


def _involution_h2() -> dict:
    rep = nichols.verify_involution_braidings(2)
    return {"ok": rep["ok"], "span": rep["span"]}


def _ree_group() -> dict:
    G = ree_context().group
    return {"ok": G.order == 1512 == 27 * 2 * 28, "order": G.order, "degree": G.degree}


def _ree_centralizer() -> dict:
    ree = ree_context()
    G, f = ree.group, ree.phi
    C = centralizer(G, f)
    orb = class_of(G, f)
    meet = [x for x in C.elements() if x in orb]
    commuting = all(a.commutes(b) for a in meet for b in meet)
    return {"ok": C.order == 18 and len(meet) == 3 and commuting, "centralizer_order": C.order,
            "meet": len(meet), "commuting": commuting}


def _ree_reality() -> dict:
    G = ree_context().group
    f = ree_context().phi
    classes = conjugacy_classes(G)
    real3 = [c for c in classes if element_order(c.representative) == 3
             and is_real(G, c.representative)]
    return {"ok": not is_real(G, f) and len(real3) == 1, "phi_real": is_real(G, f),
            "real_order3_classes": len(real3)}


def _ree_borel() -> dict:
    ree = ree_context()
    B1, M = ree.borel_b1(), ree.borel_m()
    orb = class_of(M, ree.phi)
    CB1 = [b for b in B1.elements() if b.commutes(ree.phi)]
    return {"ok": B1.order == 56 and M.order == 168 and len(orb) == 28 and len(CB1) == 2,
            "B1_order": B1.order, "M_order": M.order, "orbit": len(orb),
            "centralizer_in_B1": len(CB1)}


def _ree_braiding() -> dict:
    rep = nichols.verify_unipotent_braidings()
    return {"ok": rep["ok"], "meet_size": rep["meet_size"],
            "verdicts": [c["verdict"]["rule"] for c in rep["characters"]]}


def _product_C() -> dict:
    G, R = product_instance(8)
    res = find_type("C", R)
    ok = isinstance(res, CollapseCertificate) and verify(res)
    return {"ok": ok, "class_size": len(R),
            "certificate": res.to_json() if isinstance(res, CollapseCertificate) else res.to_json()}


def _sz2_involution() -> dict:
    return involution_square_witness(build_group("sz2-affine"))


CHECKS: list[Check] = [
    Check("field.gf8.delta_squared_frobenius", lambda: delta_squared_is_frobenius(sz_field(1))),
    Check("field.gf32.delta_squared_frobenius", lambda: delta_squared_is_frobenius(sz_field(2))),
    Check("field.gf8.phi_bijective", lambda: phi_is_bijection(sz_field(1))),
    Check("field.gf32.phi_bijective", lambda: phi_is_bijection(sz_field(2))),
    Check("suzuki.gf8.product_rule", lambda: product_rule(sz_field(1))),
    Check("suzuki.gf8.torus_commutation", lambda: torus_commutation_rule(sz_field(1))),
    Check("sz2.order_and_classes", _sz2),
    Check("sz2.kthulhu_exhaustive", _sz2_kthulhu),
    Check("sz8.order", _sz8_group, 1),
    Check("sz8.eleven_classes", _sz8_classes, 1),
    Check("sz8.single_involution_class", _sz8_involutions, 1),
    Check("sz8.order4_type_F", _sz8_order4_F, 1),
    Check("sz8.split_torus_type_C", _sz8_torus_C, 1),
    Check("sz8.odd_classes_real", _sz8_real_odd, 1),
    Check("sz8.involution_braiding", _involution_h1, 1),
    Check("sz32.span_contains_one", _involution_h2),
    Check("sz32.order", _sz32_group, 2),
    Check("ree.order", _ree_group),
    Check("ree.phi_centralizer", _ree_centralizer),
    Check("ree.reality", _ree_reality),
    Check("ree.borel_orbit", _ree_borel),
    Check("ree.unipotent_braiding", _ree_braiding),
    Check("psl2x2.type_C", _product_C),
    Check("sz2.involution_square_witness", _sz2_involution),
]


def run_checks(h_max: int = 1, names: list[str] | None = None) -> list[dict]:
    out = []
    for c in CHECKS:
        if c.min_h > h_max or (names and c.name not in names):
            continue
        try:
            res = c.fn()
        except Exception as exc:  # a crashing check is a failing check
            res = {"ok": False, "error": f"{type(exc).__name__}: {exc}"}
        out.append({"name": c.name, **res})
    return out
