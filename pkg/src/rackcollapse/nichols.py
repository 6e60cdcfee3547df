"""Diagonal braidings from abelian subracks, exact roots of unity, generalized
Dynkin diagrams and the three infinite-dimensionality rules R1, R2, R3.

Given g in an abelian A <= C_G(g), a character chi of A and the elements
x_i = g_i |> g of O_g cap A, the braiding matrix is q_ij = chi(g_j^-1 g_i |> g).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .ffield import FieldCtx, f2_span, phi
from .permgrp import Perm, PermGroup, class_of, closure, element_order, is_real


class NotAbelian(ValueError):
    pass


class ClosureViolation(ValueError):
    """g_j^-1 g_i |> g left A, so chi cannot be evaluated there."""

    def __init__(self, i: int, j: int):
        super().__init__(f"g_{j}^-1 g_{i} |> g is not in A")
        self.i, self.j = i, j


class VerificationFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2 pi i k / n) in lowest terms; construct through :meth:`of`."""
    n: int
    k: int

    @classmethod
    def of(cls, n: int, k: int) -> "RootOfUnity":
        if n < 1:
            raise ValueError("order must be >= 1")
        k %= n
        g = math.gcd(k, n)
        return cls(n // g, k // g) if k else cls(1, 0)

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(1, 0)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        L = self.n * other.n // math.gcd(self.n, other.n)
        return RootOfUnity.of(L, self.k * (L // self.n) + other.k * (L // other.n))

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity.of(self.n, -self.k)

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity.of(self.n, self.k * e)

    def is_one(self) -> bool:
        return self.n == 1

    @property
    def order(self) -> int:
        return self.n

    def to_json(self) -> list[int]:
        return [self.n, self.k]

    def __repr__(self) -> str:
        return "1" if self.n == 1 else ("-1" if self.n == 2 else f"e({self.k}/{self.n})")


MINUS_ONE = RootOfUnity(2, 1)


# -- abelian groups and characters -------------------------------------------------


def _require_abelian(A: PermGroup) -> None:
    if not A.is_abelian():
        raise NotAbelian("group is not abelian")


def _cyclic(x: Perm) -> list[Perm]:
    out = [Perm.identity(x.degree)]
    y = x
    while not y.is_identity():
        out.append(y)
        y = y * x
    return out


def _primary_basis(P: list[Perm], size: int) -> list[Perm] | None:
    """Basis of an abelian p-group given as an element list, by backtracking."""
    e = Perm.identity(P[0].degree)
    order = {x: element_order(x) for x in P}

    def extend(S: frozenset, chosen: list[Perm]):
        if len(S) == size:
            return chosen
        cands = [x for x in P if x not in S and not (set(_cyclic(x)) & S) - {e}]
        cands.sort(key=lambda x: (-order[x], x))
        top = order[cands[0]] if cands else 0
        for x in cands:
            if order[x] != top:
                break
            S2 = frozenset(s * c for s in S for c in _cyclic(x))
            res = extend(S2, chosen + [x])
            if res is not None:
                return res
        return None

    return extend(frozenset([e]), [])


def cyclic_decomposition(A: PermGroup) -> list[tuple[Perm, int]]:
    """Generators of A as a direct product of cyclic groups, orders descending."""
    _require_abelian(A)
    N = A.order
    if N == 1:
        return []
    els = A.elements()
    primes = [p for p in range(2, N + 1) if N % p == 0 and all(p % d for d in range(2, p))]
    parts: list[list[Perm]] = []
    for p in primes:
        pk = 1
        while N % (pk * p) == 0:
            pk *= p
        P = [x for x in els if pk % element_order(x) == 0]
        basis = _primary_basis(P, pk)
        if basis is None:  # pragma: no cover - abelian p-groups always decompose
            raise RuntimeError("no basis found")
        parts.append(sorted(basis, key=lambda x: (-element_order(x), x)))
    width = max(len(b) for b in parts)
    gens = []
    for i in range(width):
        g = Perm.identity(A.degree)
        for b in parts:
            if i < len(b):
                g = g * b[i]
        gens.append((g, element_order(g)))
    if math.prod(n for _, n in gens) != N or len(_coordinates(gens)) != N:
        raise RuntimeError("decomposition does not generate A freely")
    return gens


def _coordinates(gens: Sequence[tuple[Perm, int]]) -> dict[Perm, tuple[int, ...]]:
    if not gens:
        return {}
    n = gens[0][0].degree
    coords: dict[Perm, tuple[int, ...]] = {Perm.identity(n): ()}
    for g, m in gens:
        powers = _cyclic(g)
        coords = {x * powers[c]: v + (c,) for x, v in coords.items() for c in range(m)}
    return coords


@dataclass
class Character:
    """chi(gens[i]) = exp(2 pi i exponents[i] / orders[i])."""
    gens: tuple[Perm, ...]
    orders: tuple[int, ...]
    exponents: tuple[int, ...]
    _coords: dict = field(repr=False, compare=False, default_factory=dict)

    def __call__(self, x: Perm) -> RootOfUnity:
        if not self.gens:
            if not x.is_identity():
                raise ClosureViolation(-1, -1)
            return RootOfUnity.one()
        c = self._coords.get(x)
        if c is None:
            raise KeyError("element outside the domain")
        val = RootOfUnity.one()
        for ci, ei, ni in zip(c, self.exponents, self.orders):
            val = val * RootOfUnity.of(ni, ci * ei)
        return val

    def in_domain(self, x: Perm) -> bool:
        return x in self._coords or (not self.gens and x.is_identity())

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def to_json(self) -> dict:
        return {"exponents": list(self.exponents), "orders": list(self.orders)}


def characters(A: PermGroup) -> list[Character]:
    """All |A| characters, lexicographic in exponent vectors."""
    gens = cyclic_decomposition(A)
    coords = _coordinates(gens)
    orders = tuple(n for _, n in gens)
    g = tuple(x for x, _ in gens)
    return [Character(g, orders, exps, coords)
            for exps in itertools.product(*(range(n) for n in orders))]


# -- braiding ----------------------------------------------------------------------


@dataclass
class BraidingMatrix:
    q: list[list[RootOfUnity]]
    points: list[Perm]
    conjugators: list[Perm]
    character: Character
    provenance: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.q)

    def permuted(self, perm: Sequence[int]) -> "BraidingMatrix":
        """Reindex so that new vertex a is old vertex perm[a]."""
        q = [[self.q[i][j] for j in perm] for i in perm]
        return BraidingMatrix(q, [self.points[i] for i in perm],
                              [self.conjugators[i] for i in perm], self.character, self.provenance)

    def to_json(self) -> dict:
        return {"size": self.size, "q": [[v.to_json() for v in row] for row in self.q],
                "character": self.character.to_json(), "provenance": self.provenance}


def braiding(G: PermGroup, g: Perm, A: PermGroup, chi: Character,
             conjugators: Sequence[Perm] | None = None) -> BraidingMatrix:
    """q_ij = chi(g_j^-1 g_i |> g) over O_g cap A.

    Without ``conjugators`` the points are taken in class-orbit order with the
    Schreier-tree transversal (g_0 = 1).  Given conjugators must hit every
    point of O_g cap A exactly once.
    """
    _require_abelian(A)
    if not A.contains(g):
        raise ValueError("g must lie in A")
    if not all(a.commutes(g) for a in A.generators):
        raise ValueError("A must centralize g")
    orb = class_of(G, g)
    meet = [x for x in orb.elements if A.contains(x)]
    if conjugators is None:
        conj = [orb.conjugator(x) for x in meet]
    else:
        conj = list(conjugators)
        if not all(G.contains(c) for c in conj):
            raise ValueError("conjugators must lie in G")
        pts = [c.conj(g) for c in conj]
        if len(set(pts)) != len(pts) or set(pts) != set(meet):
            raise ValueError("conjugators do not enumerate O_g cap A")
        meet = pts
    n = len(meet)
    inv = [c.inverse() for c in conj]
    q = [[RootOfUnity.one()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            y = (inv[j] * conj[i]).conj(g)
            if not chi.in_domain(y) or not A.contains(y):
                raise ClosureViolation(i, j)
            q[i][j] = chi(y)
    B = BraidingMatrix(q, meet, conj, chi, {"group": G.name, "g": g.to_json(),
                                             "A_order": A.order,
                                             "transversal": "given" if conjugators is not None
                                             else "class-orbit"})
    chig = chi(g)
    if any(q[i][i] != chig for i in range(n)):  # pragma: no cover - algebraic identity
        raise RuntimeError("diagonal differs from chi(g)")
    return B


# -- diagrams and verdicts ---------------------------------------------------------


@dataclass
class Gdd:
    labels: list[RootOfUnity]
    edges: dict[tuple[int, int], RootOfUnity]

    def to_json(self) -> dict:
        return {"vertices": [v.to_json() for v in self.labels],
                "edges": [[i, j, lab.to_json()] for (i, j), lab in sorted(self.edges.items())]}


def gdd(B: BraidingMatrix) -> Gdd:
    n = B.size
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            lab = B.q[i][j] * B.q[j][i]
            if not lab.is_one():
                edges[(i, j)] = lab
    return Gdd([B.q[i][i] for i in range(n)], edges)


@dataclass
class Verdict:
    outcome: str  # "Infinite" or "Unknown"
    rule: str | None
    witness: list[int] = field(default_factory=list)

    @property
    def infinite(self) -> bool:
        return self.outcome == "Infinite"

    def recheck(self, B: BraidingMatrix) -> bool:
        q = B.q
        w = self.witness
        if self.rule == "R1":
            return len(w) == 1 and q[w[0]][w[0]].is_one()
        if self.rule == "R2":
            if len(w) < 3 or len(set(w)) != len(w):
                return False
            if any(q[i][i] != MINUS_ONE for i in range(B.size)):
                return False
            return all(q[a][b] * q[b][a] == MINUS_ONE for a, b in zip(w, w[1:] + w[:1]))
        if self.rule == "R3":
            return _r3(B)
        return self.outcome == "Unknown"

    def to_json(self) -> dict:
        return {"outcome": self.outcome, "rule": self.rule, "witness": self.witness}


def _minus_one_cycle(n: int, edges: dict[tuple[int, int], RootOfUnity]) -> list[int] | None:
    """A simple cycle in the subgraph of -1-labelled edges, by DFS."""
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for (i, j), lab in edges.items():
        if lab == MINUS_ONE:
            adj[i].append(j)
            adj[j].append(i)
    parent: dict[int, int] = {}
    for root in range(n):
        if root in parent:
            continue
        parent[root] = -1
        stack = [(root, iter(adj[root]))]
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                continue
            if nxt == parent[v]:
                continue
            if nxt in parent:
                # back edge v -> nxt closes a cycle along the DFS path
                path = [v]
                u = v
                while u != nxt:
                    u = parent[u]
                    if u == -1:
                        break
                    path.append(u)
                if u == nxt:
                    return path[::-1]
                continue
            parent[nxt] = v
            stack.append((nxt, iter(adj[nxt])))
    return None


def _r3(B: BraidingMatrix) -> bool:
    if B.size != 3:
        return False
    w = B.q[0][0]
    if w.n != 3 or any(B.q[i][i] != w for i in range(3)):
        return False
    w2 = w * w
    return all(B.q[i][j] * B.q[j][i] == w2 for i, j in ((0, 1), (1, 2), (0, 2)))


def verdict(B: BraidingMatrix) -> Verdict:
    """R1: some q_ii = 1.  R2: all q_ii = -1 and a cycle of -1 edges.
    R3: three vertices labelled a primitive cube root w, all edges w^2.
    Unknown means no rule fired."""
    n = B.size
    for i in range(n):
        if B.q[i][i].is_one():
            return Verdict("Infinite", "R1", [i])
    if n and all(B.q[i][i] == MINUS_ONE for i in range(n)):
        cyc = _minus_one_cycle(n, gdd(B).edges)
        if cyc is not None:
            return Verdict("Infinite", "R2", cyc)
    if _r3(B):
        return Verdict("Infinite", "R3", [0, 1, 2])
    return Verdict("Unknown", None)


def az_real_odd(G: PermGroup, g: Perm) -> bool:
    """Odd order > 1 and real: the criterion for classes of real odd-order elements."""
    o = element_order(g)
    return o > 1 and o % 2 == 1 and is_real(G, g)


# -- the two worked instances ------------------------------------------------------


def span_fact(ctx: FieldCtx) -> dict:
    """Does the GF(2)-span of phi(k) + phi(k^-1), k outside GF(2), contain 1?"""
    vals = []
    for k in ctx.units():
        if int(k) in (0, 1):
            continue
        vals.append(phi(k) + phi(k.inverse()))
    span = f2_span(vals, ctx)
    return {"q": ctx.q, "contains_one": ctx.one in span, "dim": span.dim,
            "generators": sorted({int(v) for v in vals})}


def verify_involution_braidings(h: int) -> dict:
    """Braiding verdicts for every character of Z(U^-) on the class of U(0,1)
    in H = T Z(U^-); for h = 2 only the field-level span fact is checked."""
    from .suzuki import build_sz, center_U_minus, subgroup_T_ZU, sz_field

    if h < 1:
        raise ValueError("needs h >= 1")
    ctx = sz_field(h)
    span = span_fact(ctx)
    report: dict = {"h": h, "q": ctx.q, "span": span, "characters": []}
    if h >= 2:
        report["mode"] = "span-only"
        report["ok"] = span["contains_one"]
        return report
    sz = build_sz(h)
    H = subgroup_T_ZU(sz)
    A = center_U_minus(sz)
    zero = ctx.zero
    g = sz.U(zero, ctx.one)
    z = ctx.primitive_element()
    ks = [z ** i for i in range(ctx.q - 1)]
    conj = [sz.t(k) for k in ks]
    ok = span["contains_one"]
    for chi in characters(A):
        B = braiding(H, g, A, chi, conj)
        v = verdict(B)
        entry = {"character": chi.to_json(), "chi_g": chi(g).to_json(), "verdict": v.to_json(),
                 "recheck": v.recheck(B)}
        if chi(g) == MINUS_ONE:
            # some k outside GF(2) has chi(U(0, phi(k) + phi(k^-1))) = -1
            wit = next((int(k) for k in ks[1:]
                        if chi(sz.U(zero, phi(k) + phi(k.inverse()))) == MINUS_ONE), None)
            entry["span_witness_k"] = wit
            ok = ok and wit is not None
        ok = ok and v.infinite and entry["recheck"]
        report["characters"].append(entry)
    report["mode"] = "full"
    report["class_size"] = len(class_of(H, g))
    report["ok"] = ok
    if not ok:
        raise VerificationFailure(f"involution braiding check failed for h={h}")
    return report


def find_cyclic_conjugator(G: PermGroup, x: Sequence[Perm]) -> Perm:
    """g with g |> x_i = x_{i+1 mod 3}, by the z / y / yz procedure."""
    x0, x1, x2 = x
    orb = class_of(G, x0)

    def cycles(c: Perm) -> bool:
        return all(c.conj(x[i]) == x[(i + 1) % 3] for i in range(3))

    z = orb.conjugator(x1)
    if z.inverse().conj(x0) == x2 and cycles(z):
        return z
    y = orb.conjugator(x2)
    for c in (y, y * z, z * y):
        if cycles(c):
            return c
    raise VerificationFailure("no cyclic conjugator")  # pragma: no cover


def ree_abelian_subgroup(ree) -> PermGroup:
    """A = A_3 x <phi>, with A_3 generated by (0 1; 1 1) in SL2(2) <= PSL2(8)."""
    c = ree.psl.mat(0, 1, 1, 1)
    return closure([c, ree.phi], name="ree-g2-3.A3xphi")


def verify_unipotent_braidings() -> dict:
    from .ree_small import build_2g2_3

    ree = build_2g2_3()
    G, f = ree.group, ree.phi
    A = ree_abelian_subgroup(ree)
    orb = class_of(G, f)
    meet = sorted(x for x in A.elements() if x in orb)
    if f not in meet or len(meet) != 3:
        raise VerificationFailure("O_phi cap A is not three points")
    x = [f] + [m for m in meet if m != f]
    gc = find_cyclic_conjugator(G, x)
    conj = [gc ** i for i in range(3)]
    report: dict = {"meet_size": len(meet), "cyclic_conjugator": gc.to_json(),
                    "commuting": all(a.commutes(b) for a in meet for b in meet),
                    "characters": []}
    ok = True
    for chi in characters(A):
        B = braiding(G, f, A, chi, conj)
        v = verdict(B)
        w = [chi(xi) for xi in x]
        rel = {
            "omega_cubed_one": all((wi ** 3).is_one() for wi in w),
            "omega_product_one": (w[0] * w[1] * w[2]).is_one(),
            "edges_omega0_sq": all(B.q[i][j] * B.q[j][i] == w[0] * w[0]
                                   for i, j in ((0, 1), (1, 2), (0, 2))),
            "q_is_omega_shift": all(B.q[i][j] == w[(i - j) % 3] for i in range(3) for j in range(3)),
        }
        expected = "R1" if w[0].is_one() else "R3"
        good = v.infinite and v.rule == expected and all(rel.values()) and v.recheck(B)
        ok = ok and good
        report["characters"].append({"character": chi.to_json(), "omega": [wi.to_json() for wi in w],
                                     "verdict": v.to_json(), "relations": rel})
    report["ok"] = ok
    if not ok:
        raise VerificationFailure("2G2(3) braiding check failed")
    return report
