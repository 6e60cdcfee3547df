"""Type C, D, F detectors, re-verifiable certificates and kthulhu checks.

All three conditions are one-sided: finding a certificate proves the class
collapses, failing to find one is only evidence.  The only proof of the
kthulhu property offered here is :func:`kthulhu_exhaustive`, which runs the
subgroup-intersection criterion over every subgroup of a small group.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Sequence

from .permgrp import (DEFAULT_ORBIT_CAP, DEFAULT_SUBGROUP_CAP, CapExceeded, ClassOrbit, Perm,
                      PermGroup, TooLarge, all_subgroups, centralizer, class_of, closure,
                      element_order, in_conj_orbit, is_real)
from .rackkit import ConjClassRack, is_commuting_set

logger = logging.getLogger(__name__)

PRNG_NAME = "python-random/MT19937"
STRUCTURAL_CAP = 20_000


@dataclass
class CollapseCertificate:
    kind: str
    witnesses: tuple[Perm, ...]
    group: str
    class_rep: Perm
    ambient: PermGroup = field(repr=False, compare=False)
    H_gens: tuple[Perm, ...] = ()
    seed: int | None = None
    details: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        doc = {
            "kind": self.kind,
            "group": self.group,
            "class_rep": self.class_rep.to_json(),
            "witnesses": [w.to_json() for w in self.witnesses],
            "seed": self.seed,
            "verified": True,
        }
        if self.kind == "C":
            doc["H_generators"] = [g.to_json() for g in self.H_gens]
        if self.details:
            doc["details"] = self.details
        return doc


@dataclass
class NotFound:
    kind: str
    reason: str
    mode: str
    scanned: int
    complete: bool
    seed: int | None = None

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"kind": self.kind, "found": False, "label": "evidence", "mode": self.mode,
                "reason": self.reason, "scanned": self.scanned, "complete_scan": self.complete,
                "seed": self.seed}


# -- the three conditions ----------------------------------------------------------


def check_type_D(r: Perm, s: Perm, cap: int = DEFAULT_ORBIT_CAP) -> bool:
    """(rs)^2 != (sr)^2 and s outside the orbit of r under conjugation by <r, s>."""
    rs, sr = r * s, s * r
    if rs * rs == sr * sr:
        return False
    return not in_conj_orbit(r, s, [r, s], cap)


def type_C_conditions(r: Perm, s: Perm, H_gens: Sequence[Perm],
                      cap: int = DEFAULT_ORBIT_CAP) -> dict:
    """Evaluate conditions (a)-(d) of type C; stops at the first failure."""
    H_gens = list(H_gens)
    out: dict = {"a": None, "b": None, "c": None, "d": None}
    H = closure(H_gens, cap=cap)
    if isinstance(H, TooLarge):
        raise CapExceeded("subgroup H", cap, H.order)
    if not (H.contains(r) and H.contains(s)):
        raise ValueError("r and s must lie in <H_gens>")
    out["b"] = not r.commutes(s)
    if not out["b"]:
        return out
    Or = ClassOrbit(r, H_gens, cap=cap, stop_at=s)
    out["a"] = s not in Or
    if not out["a"]:
        return out
    Os = ClassOrbit(s, H_gens, cap=cap)
    out["orbit_sizes"] = [len(Or), len(Os)]
    if set(H_gens) == {r, s}:
        out["c"] = True
    else:
        K = closure(Or.elements + Os.elements, cap=H.order)
        out["c"] = not isinstance(K, TooLarge) and K.order == H.order
    lo, hi = sorted((len(Or), len(Os)))
    out["d"] = lo > 2 or hi > 4
    return out


def check_type_C(r: Perm, s: Perm, H_gens: Sequence[Perm], cap: int = DEFAULT_ORBIT_CAP) -> bool:
    c = type_C_conditions(r, s, H_gens, cap)
    return all(c[k] for k in "abcd")


def check_type_F(*rs: Perm, cap: int = DEFAULT_ORBIT_CAP) -> bool:
    """Pairwise non-commuting, pairwise distinct orbits under <r1, ..., r4>."""
    if len(rs) == 1:
        rs = tuple(rs[0])
    if len(rs) != 4 or len(set(rs)) != 4:
        return False
    if not all(not a.commutes(b) for a, b in itertools.combinations(rs, 2)):
        return False
    gens = list(rs)
    for i in range(3):
        orb = ClassOrbit(rs[i], gens, cap=cap)
        if any(rs[j] in orb for j in range(i + 1, 4)):
            return False
    return True


# -- searching ---------------------------------------------------------------------


@dataclass
class PairOutcome:
    s_index: int
    commute: bool
    same_orbit: bool | None = None
    orbit_sizes: tuple[int, int] | None = None
    square_differs: bool | None = None

    @property
    def split(self) -> bool:
        """rs != sr and s outside O_r^<r,s>."""
        return not self.commute and self.same_orbit is False


class PairScan:
    """r-fixed scan of the class, one candidate s per C_G(r)-orbit.

    Conjugating the pair (r, s) by c in C_G(r) preserves every condition, so
    the scan over orbit representatives is as strong as a scan over all s.
    """

    def __init__(self, R: ConjClassRack, cap: int = DEFAULT_ORBIT_CAP):
        self.R = R
        self.cap = cap
        self.r = R.representative
        self.Cr = centralizer(R.ambient, self.r, cap)
        self.orbit_of: list[int] = [-1] * len(R)
        self.candidates: list[int] = []
        self.orbits: dict[int, list[int]] = {}
        els, index = R.elements, R.orbit.index
        gens = self.Cr.generators
        for i in range(len(R)):
            if self.orbit_of[i] >= 0:
                continue
            self.candidates.append(i)
            members = [i]
            self.orbit_of[i] = i
            k = 0
            while k < len(members):
                x = els[members[k]]
                for c in gens:
                    j = index[c.conj(x)]
                    if self.orbit_of[j] < 0:
                        self.orbit_of[j] = i
                        members.append(j)
                k += 1
            self.orbits[i] = sorted(members)
        self.results: dict[int, PairOutcome] = {}

    def outcome(self, i: int) -> PairOutcome:
        res = self.results.get(i)
        if res is not None:
            return res
        r, s = self.r, self.R.elements[i]
        if r.commutes(s):
            res = PairOutcome(i, True)
        else:
            Or = ClassOrbit(r, [r, s], cap=self.cap, stop_at=s)
            if s in Or:
                res = PairOutcome(i, False, True)
            else:
                Os = ClassOrbit(s, [r, s], cap=self.cap)
                rs, sr = r * s, s * r
                res = PairOutcome(i, False, False, (len(Or), len(Os)), rs * rs != sr * sr)
        self.results[i] = res
        return res

    def scan(self, budget: int | None = None):
        for n, i in enumerate(self.candidates):
            if budget is not None and n >= budget:
                return
            yield self.outcome(i)

    def split_set(self) -> list[int]:
        """All class indices s (not only representatives) forming a split pair with r."""
        out = []
        for i in self.candidates:
            if self.outcome(i).split:
                out.extend(self.orbits[i])
        return sorted(out)


def _pair_scan(R: ConjClassRack, cap: int) -> PairScan:
    scan = getattr(R, "_pair_scan", None)
    if scan is None:
        scan = PairScan(R, cap)
        R._pair_scan = scan
    return scan


def _group_id(R: ConjClassRack) -> str:
    return R.ambient.name or "anonymous"


def _cert(kind, R, witnesses, H_gens=(), seed=None, details=None) -> CollapseCertificate:
    cert = CollapseCertificate(kind=kind, witnesses=tuple(witnesses), group=_group_id(R),
                               class_rep=R.representative, ambient=R.ambient,
                               H_gens=tuple(H_gens), seed=seed, details=details or {})
    if not verify(cert):  # pragma: no cover - emission contract
        raise AssertionError(f"emitted type {kind} certificate failed verification")
    return cert


def _structural_C(R: ConjClassRack, structural: Sequence[Sequence[Perm]], cap: int):
    """Type C inside explicitly offered subgroups H: r, s from distinct H-classes of O n H."""
    for H_gens in structural:
        H_gens = list(H_gens)
        H = closure(H_gens, cap=STRUCTURAL_CAP)
        if isinstance(H, TooLarge):
            continue
        meet = [h for h in H.elements() if h in R]
        if len(meet) < 2:
            continue
        hclasses: list[ClassOrbit] = []
        seen: set[Perm] = set()
        for x in meet:
            if x in seen:
                continue
            orb = ClassOrbit(x, H_gens, cap=cap)
            seen.update(orb.elements)
            hclasses.append(orb)
        for A, B in itertools.combinations(hclasses, 2):
            lo, hi = sorted((len(A), len(B)))
            if not (lo > 2 or hi > 4):
                continue
            K = closure(A.elements + B.elements, cap=H.order)
            if isinstance(K, TooLarge) or K.order != H.order:
                continue
            for r in A.elements:
                s = next((s for s in B.elements if not r.commutes(s)), None)
                if s is not None:
                    return _cert("C", R, (r, s), H_gens,
                                 details={"orbit_sizes": [len(A), len(B)], "H_order": H.order,
                                          "source": "structural"})
    return None


def find_type(kind: str, R: ConjClassRack, strategy: str = "exhaustive", *, seed: int = 0,
              budget: int | None = None, structural: Sequence[Sequence[Perm]] = (),
              conjugators: Sequence[Perm] = (), cap: int = DEFAULT_ORBIT_CAP):
    """Search for a type ``kind`` certificate on R.

    ``exhaustive`` fixes r as the class representative and scans s over the
    class up to C_G(r)-conjugacy; ``budget`` bounds the number of candidates.
    ``structural`` offers subgroups for type C, ``conjugators`` seeds the type F
    search with conjugates of r.  ``random`` draws candidates from a seeded PRNG.
    """
    kind = kind.upper()
    if kind not in "CDF" or len(kind) != 1:
        raise ValueError(f"unknown type {kind!r}")
    if len(R) < 2:
        return NotFound(kind, "class has a single element", strategy, 0, True)
    if strategy == "random":
        return _find_random(kind, R, seed, budget or 1000, cap)
    if strategy != "exhaustive":
        raise ValueError(f"unknown strategy {strategy!r}")

    r = R.representative
    if kind == "C" and structural:
        cert = _structural_C(R, structural, cap)
        if cert is not None:
            return cert
    if kind in "CD":
        scan = _pair_scan(R, cap)
        scanned = 0
        for res in scan.scan(budget):
            scanned += 1
            if not res.split:
                continue
            s = R.elements[res.s_index]
            if kind == "D" and res.square_differs:
                return _cert("D", R, (r, s), details={"orbit_sizes": list(res.orbit_sizes)})
            if kind == "C":
                lo, hi = sorted(res.orbit_sizes)
                if lo > 2 or hi > 4:
                    return _cert("C", R, (r, s), (r, s),
                                 details={"orbit_sizes": list(res.orbit_sizes), "source": "pair"})
        complete = scanned == len(scan.candidates)
        return NotFound(kind, f"no s with r fixed satisfies type {kind}"
                        + ("" if kind == "D" else " with H=<r,s>"),
                        "exhaustive", scanned, complete)
    return _find_F(R, conjugators, budget, cap, structural)


def _anchor(R: ConjClassRack, structural: Sequence[Sequence[Perm]]) -> Perm:
    """Least class element inside the first structural subgroup meeting R, else the rep."""
    for H_gens in structural:
        H = closure(list(H_gens), cap=STRUCTURAL_CAP)
        if isinstance(H, TooLarge):
            continue
        hit = next((h for h in H.elements() if h in R), None)
        if hit is not None:
            return hit
    return R.representative


def _find_F(R: ConjClassRack, conjugators: Sequence[Perm], budget: int | None, cap: int,
            structural: Sequence[Sequence[Perm]] = ()):
    tried = 0
    if conjugators:
        base = _anchor(R, structural)
        conj = []
        seen = set()
        for c in conjugators:
            x = c.conj(base)
            if x not in seen:
                seen.add(x)
                conj.append(x)
        for quad in itertools.combinations(conj, 4):
            if budget is not None and tried >= budget:
                break
            tried += 1
            if check_type_F(*quad, cap=cap):
                return _cert("F", R, quad, details={"source": "structured-conjugates"})
    r = R.representative
    scan = _pair_scan(R, cap)
    split = scan.split_set()
    if not split:
        return NotFound("F", "no s forms a split pair with r (rs != sr and s outside "
                        "O_r^<r,s>), so no quadruple can contain r", "exhaustive",
                        len(scan.candidates), True)
    # every pair inside an F quadruple is itself split; search triangles in S
    els = R.elements
    memo: dict[tuple[int, int], bool] = {}

    def compatible(i: int, j: int) -> bool:
        nonlocal tried
        key = (i, j) if i < j else (j, i)
        v = memo.get(key)
        if v is None:
            tried += 1
            a, b = els[key[0]], els[key[1]]
            v = not a.commutes(b) and not in_conj_orbit(a, b, [a, b], cap)
            memo[key] = v
        return v

    for ia, a in enumerate(split):
        nbrs = []
        for b in split[ia + 1:]:
            if budget is not None and tried >= budget:
                return NotFound("F", "budget exhausted in split-triangle search", "exhaustive",
                                tried, False)
            if compatible(a, b):
                nbrs.append(b)
        for b, c in itertools.combinations(nbrs, 2):
            if not compatible(b, c):
                continue
            tried += 1
            quad = (r, els[a], els[b], els[c])
            if check_type_F(*quad, cap=cap):
                return _cert("F", R, quad, details={"source": "split-triangles"})
    return NotFound("F", "no split triangle extends r to a type F quadruple", "exhaustive",
                    tried, True)


def _find_random(kind: str, R: ConjClassRack, seed: int, budget: int, cap: int):
    rng = random.Random(seed)
    els = R.elements
    n = len(els)
    r = R.representative
    for _ in range(budget):
        if kind in "CD":
            s = els[rng.randrange(n)]
            if kind == "D" and check_type_D(r, s, cap):
                return _cert("D", R, (r, s), seed=seed)
            if kind == "C" and check_type_C(r, s, [r, s], cap):
                return _cert("C", R, (r, s), (r, s), seed=seed)
        else:
            quad = [r] + [els[rng.randrange(n)] for _ in range(3)]
            if check_type_F(*quad, cap=cap):
                return _cert("F", R, quad, seed=seed)
    return NotFound(kind, f"{budget} random draws ({PRNG_NAME})", "random", budget, False, seed)


# -- verification ------------------------------------------------------------------


def _conjugate_to_rep(G: PermGroup, rep: Perm, w: Perm) -> bool:
    orb = class_of(G, rep)
    if w not in orb:
        return False
    c = orb.conjugator(w)
    return G.contains(c) and c.conj(rep) == w


def verify(cert: CollapseCertificate, cap: int = DEFAULT_ORBIT_CAP) -> bool:
    """Recompute every defining condition of the certificate from scratch."""
    G = cert.ambient
    try:
        pts = list(cert.witnesses) + list(cert.H_gens) + [cert.class_rep]
        if not all(G.contains(x) for x in pts):
            return False
        if not all(_conjugate_to_rep(G, cert.class_rep, w) for w in cert.witnesses):
            return False
        if cert.kind == "D":
            return len(cert.witnesses) == 2 and check_type_D(*cert.witnesses, cap=cap)
        if cert.kind == "C":
            return len(cert.witnesses) == 2 and bool(cert.H_gens) and check_type_C(
                cert.witnesses[0], cert.witnesses[1], cert.H_gens, cap)
        if cert.kind == "F":
            return check_type_F(*cert.witnesses, cap=cap)
    except (ValueError, CapExceeded):
        return False
    return False


def conjugate_certificate(cert: CollapseCertificate, g: Perm) -> CollapseCertificate:
    """Apply g |> . to every witness and H-generator."""
    return CollapseCertificate(kind=cert.kind, witnesses=tuple(g.conj(w) for w in cert.witnesses),
                               group=cert.group, class_rep=cert.class_rep, ambient=cert.ambient,
                               H_gens=tuple(g.conj(h) for h in cert.H_gens), seed=cert.seed)


def certificate_from_json(doc: dict, ambient: PermGroup) -> CollapseCertificate:
    return CollapseCertificate(kind=doc["kind"], witnesses=tuple(Perm(w) for w in doc["witnesses"]),
                               group=doc["group"], class_rep=Perm(doc["class_rep"]),
                               ambient=ambient,
                               H_gens=tuple(Perm(h) for h in doc.get("H_generators", [])),
                               seed=doc.get("seed"))


# -- kthulhu -----------------------------------------------------------------------


@dataclass
class KthulhuReport:
    class_rep: Perm
    mode: str
    proved: bool
    outcomes: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"class_rep": self.class_rep.to_json(), "mode": self.mode, "kthulhu_proved": self.proved,
                "outcomes": self.outcomes, "stats": self.stats}


def intersection_type(R: ConjClassRack, H: PermGroup) -> str:
    """How the class meets H: empty, single H-class, commuting, or other."""
    meet = [h for h in H.elements() if h in R]
    if not meet:
        return "empty"
    gens = H.generators
    if len(ClassOrbit(meet[0], gens)) == len(meet):
        return "single-class"
    if is_commuting_set(meet):
        return "commuting"
    return "other"


def kthulhu_exhaustive(G: PermGroup, R: ConjClassRack,
                       cap: int = DEFAULT_SUBGROUP_CAP) -> KthulhuReport | TooLarge:
    """Subgroup-intersection criterion over every subgroup (sufficient for kthulhu).

    Groups above ``cap`` are refused with :class:`TooLarge`.
    """
    if G.order > cap:
        return TooLarge(G.order, cap)
    subgroups = all_subgroups(G, cap)
    outcomes = []
    counts: dict[str, int] = {}
    for H in subgroups:
        t = intersection_type(R, H)
        counts[t] = counts.get(t, 0) + 1
        outcomes.append({"subgroup_order": H.order, "intersection": t})
    proved = counts.get("other", 0) == 0
    return KthulhuReport(R.representative, "exhaustive-proof", proved, outcomes,
                         {"subgroups": len(subgroups), "counts": dict(sorted(counts.items()))})


# -- classification driver ---------------------------------------------------------


DEFAULT_BUDGETS = {"C": None, "D": None, "F": 20_000}


def classify(G: PermGroup, R: ConjClassRack, budgets: dict | None = None, *,
             structural: Sequence[Sequence[Perm]] = (), conjugators: Sequence[Perm] = (),
             seed: int = 0, kinds: str = "FCD", cap: int = DEFAULT_ORBIT_CAP) -> dict:
    budgets = {**DEFAULT_BUDGETS, **(budgets or {})}
    r = R.representative
    certs = []
    evidence = []
    for kind in kinds:
        res = find_type(kind, R, "exhaustive", seed=seed, budget=budgets.get(kind),
                        structural=structural, conjugators=conjugators, cap=cap)
        if isinstance(res, CollapseCertificate):
            certs.append(res)
        else:
            evidence.append(res)
    return {
        "group": G.name,
        "class_rep": r.to_json(),
        "element_order": element_order(r),
        "class_size": len(R),
        "is_real": is_real(G, r),
        "certificates": [c.to_json() for c in certs],
        "not_found": [e.to_json() for e in evidence],
        "verdict": ("collapses: type " + "/".join(c.kind for c in certs)) if certs
        else "no certificate found (evidence consistent with kthulhu)",
        "_certs": certs,
    }
