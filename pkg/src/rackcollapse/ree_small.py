"""PSL2(q) on the projective line, and 2G2(3) = PSL2(8) x| <phi> with phi the
Frobenius of GF(8), together with the Borel subgroup B1 used for the orbit
counts of the subregular unipotent classes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .ffield import SUPPORTED_PRIMES, FieldCtx
from .permgrp import Perm, PermGroup, closure

MAX_Q = 32


class UnsupportedField(ValueError):
    pass


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1:
                raise UnsupportedField(f"{q} is not a prime power")
            return p, m
    raise UnsupportedField(f"{q} is not a prime power")


class ProjectiveLine:
    """Points of P^1(GF(q)) normalized with first nonzero coordinate 1.

    Point i < q is (1 : i) in integer encoding, point q is (0 : 1).
    """

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.points = [(1, y) for y in range(ctx.q)] + [(0, 1)]
        self.index = {pt: i for i, pt in enumerate(self.points)}

    def normalize(self, v: tuple[int, int]) -> tuple[int, int]:
        ctx = self.ctx
        x0, x1 = v
        if x0:
            return 1, ctx.mul_int(ctx.inv_int(x0), x1)
        if x1:
            return 0, 1
        raise ValueError("zero vector")

    def matrix_perm(self, a: int, b: int, c: int, d: int) -> Perm:
        """Action of (a b; c d) on column vectors."""
        ctx = self.ctx
        add, mul = ctx.add_int, ctx.mul_int
        return Perm([self.index[self.normalize((add(mul(a, x), mul(b, y)), add(mul(c, x), mul(d, y))))]
                     for x, y in self.points])

    def frobenius_perm(self, e: int = 1) -> Perm:
        p = self.ctx.p ** e
        pw = self.ctx.pow_int
        return Perm([self.index[(pw(x, p), pw(y, p))] for x, y in self.points])


def psl2_order(q: int) -> int:
    p, _ = _prime_power(q)
    return q * (q * q - 1) // (1 if p == 2 else 2)


@dataclass
class Psl2:
    q: int
    line: ProjectiveLine
    group: PermGroup

    @property
    def field(self) -> FieldCtx:
        return self.line.ctx

    def mat(self, a, b, c, d) -> Perm:
        return self.line.matrix_perm(int(a), int(b), int(c), int(d))


def build_psl2_model(q: int) -> Psl2:
    if q > MAX_Q:
        raise UnsupportedField(f"q={q} above {MAX_Q}")
    p, m = _prime_power(q)
    if p not in SUPPORTED_PRIMES:
        raise UnsupportedField(f"characteristic {p} not supported")
    ctx = FieldCtx(p, m)
    line = ProjectiveLine(ctx)
    neg1 = ctx.neg_int(1)
    gens = [line.matrix_perm(1, b.value, 0, 1) for b in ctx.prime_basis()]
    if q > 3:
        z = ctx.primitive
        gens.append(line.matrix_perm(z, 0, 0, ctx.inv_int(z)))
    gens.append(line.matrix_perm(0, 1, neg1, 0))
    G = PermGroup(gens, name=f"psl2:q={q}")
    if G.order != psl2_order(q):
        raise RuntimeError(f"PSL2({q}) order {G.order} != {psl2_order(q)}")
    return Psl2(q, line, G)


def build_psl2(q: int) -> PermGroup:
    return build_psl2_model(q).group


@dataclass
class Ree3:
    """2G2(3) on the 9 points of P^1(GF(8)), with tagged distinguished elements."""
    psl: Psl2
    group: PermGroup
    phi: Perm
    unipotent: Perm  # (1 1; 0 1)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def field(self) -> FieldCtx:
        return self.psl.field

    def borel_b1(self) -> PermGroup:
        """B1 = {(a x; 0 a^-1)} of order 56."""
        if "b1" not in self._cache:
            ctx = self.field
            z = ctx.primitive
            gens = [self.psl.mat(z, 0, 0, ctx.inv_int(z))]
            gens += [self.psl.mat(1, b.value, 0, 1) for b in ctx.prime_basis()]
            self._cache["b1"] = closure(gens, name="ree-g2-3.B1")
        return self._cache["b1"]

    def borel_m(self) -> PermGroup:
        """M = B1 x| <phi> of order 168."""
        if "m" not in self._cache:
            self._cache["m"] = closure(list(self.borel_b1().generators) + [self.phi],
                                       name="ree-g2-3.B1:phi")
        return self._cache["m"]

    def psl_subgroup(self) -> PermGroup:
        return self.psl.group


REE_G2_3_ORDER = 27 * 2 * 28


def build_2g2_3() -> Ree3:
    psl = build_psl2_model(8)
    phi = psl.line.frobenius_perm()
    G = PermGroup(list(psl.group.generators) + [phi], name="ree-g2-3")
    if G.order != REE_G2_3_ORDER:
        raise RuntimeError(f"2G2(3) order {G.order} != {REE_G2_3_ORDER}")
    return Ree3(psl=psl, group=G, phi=phi, unipotent=psl.mat(1, 1, 0, 1))


def borel_b1(ree: Ree3 | None = None) -> PermGroup:
    return (ree or build_2g2_3()).borel_b1()
