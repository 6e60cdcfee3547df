"""The Suzuki group 2B2(q), q = 2^(2h+1), as 4x4 matrices preserving the
anti-diagonal form, and its doubly transitive action on q^2 + 1 points.

The points are the projective images of ``e4`` (the line fixed by the lower
unitriangular group and the diagonal torus).  Stabilizer of ``e4`` is the
lower Borel subgroup ``T U^-`` of order q^2 (q - 1).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .ffield import FieldCtx, FieldElem, FieldError
from .permgrp import Perm, PermGroup, closure

MAX_H = 2


class SuzukiError(RuntimeError):
    pass


class Mat4:
    """4x4 matrix over a field context, entries stored as integer encodings."""

    __slots__ = ("ctx", "entries")

    def __init__(self, ctx: FieldCtx, entries: Sequence[int | FieldElem]):
        self.ctx = ctx
        self.entries = tuple(int(e) for e in entries)
        if len(self.entries) != 16:
            raise ValueError("Mat4 needs 16 entries")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows) -> "Mat4":
        return cls(ctx, [int(e) for row in rows for e in row])

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "Mat4":
        return cls(ctx, [1 if i == j else 0 for i in range(4) for j in range(4)])

    def __getitem__(self, ij: tuple[int, int]) -> FieldElem:
        i, j = ij
        return FieldElem(self.entries[4 * i + j], self.ctx)

    def row(self, i: int) -> tuple[FieldElem, ...]:
        return tuple(self[i, j] for j in range(4))

    def __mul__(self, other: "Mat4") -> "Mat4":
        add, mul = self.ctx.add_int, self.ctx.mul_int
        a, b = self.entries, other.entries
        out = []
        for i in range(4):
            for j in range(4):
                acc = 0
                for k in range(4):
                    x = a[4 * i + k]
                    if x:
                        y = b[4 * k + j]
                        if y:
                            acc = add(acc, mul(x, y))
                out.append(acc)
        return Mat4(self.ctx, out)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        add, mul = self.ctx.add_int, self.ctx.mul_int
        a = self.entries
        out = []
        for i in range(4):
            acc = 0
            for k in range(4):
                if a[4 * i + k] and v[k]:
                    acc = add(acc, mul(a[4 * i + k], v[k]))
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Mat4":
        return Mat4(self.ctx, [self.entries[4 * j + i] for i in range(4) for j in range(4)])

    def inverse(self) -> "Mat4":
        """Gauss-Jordan elimination over the field."""
        ctx = self.ctx
        rows = [list(self.entries[4 * i:4 * i + 4]) + [1 if i == j else 0 for j in range(4)]
                for i in range(4)]
        for col in range(4):
            piv = next((r for r in range(col, 4) if rows[r][col]), None)
            if piv is None:
                raise SuzukiError("singular matrix")
            rows[col], rows[piv] = rows[piv], rows[col]
            inv = ctx.inv_int(rows[col][col])
            rows[col] = [ctx.mul_int(inv, x) for x in rows[col]]
            for r in range(4):
                if r != col and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [ctx.sub_int(x, ctx.mul_int(f, y)) for x, y in zip(rows[r], rows[col])]
        return Mat4(ctx, [x for r in rows for x in r[4:]])

    def preserves_form(self) -> bool:
        J = w0_elem(self.ctx)
        return self.transpose() * J * self == J

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat4) and self.ctx == other.ctx and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return "Mat4(" + "; ".join(" ".join(str(x) for x in self.entries[4 * i:4 * i + 4])
                                   for i in range(4)) + ")"

    def to_json(self) -> list[int]:
        return list(self.entries)


def _require_sz_field(ctx: FieldCtx) -> None:
    if ctx.p != 2 or not ctx.delta_enabled:
        raise FieldError("Suzuki matrices need GF(2^(2h+1))")


def u_elem(a: FieldElem, b: FieldElem) -> Mat4:
    """Lower unitriangular element U(a, b) of the Sylow 2-subgroup U^-."""
    ctx = a.ctx
    _require_sz_field(ctx)
    add, mul = ctx.add_int, ctx.mul_int
    A, B = int(a), int(b)
    dA, dB = ctx.delta_int(A), ctx.delta_int(B)
    r2 = add(mul(A, dA), B)
    r3 = add(add(mul(mul(A, A), dA), mul(A, B)), dB)
    return Mat4(ctx, [
        1, 0, 0, 0,
        A, 1, 0, 0,
        r2, dA, 1, 0,
        r3, B, A, 1,
    ])


def t_elem(k: FieldElem) -> Mat4:
    """Torus element diag(x1, x2, x2^-1, x1^-1) with delta(x1) = k delta(k), delta(x2) = k."""
    ctx = k.ctx
    _require_sz_field(ctx)
    if not k:
        raise FieldError("t_k needs k != 0")
    K = int(k)
    x1 = ctx.delta_inv_int(ctx.mul_int(K, ctx.delta_int(K)))
    x2 = ctx.delta_inv_int(K)
    d = [x1, x2, ctx.inv_int(x2), ctx.inv_int(x1)]
    return Mat4(ctx, [d[i] if i == j else 0 for i in range(4) for j in range(4)])


def w0_elem(ctx: FieldCtx) -> Mat4:
    """The anti-diagonal identity J."""
    return Mat4(ctx, [1 if i + j == 3 else 0 for i in range(4) for j in range(4)])


def _normalize(v: Sequence[int], ctx: FieldCtx) -> tuple[int, ...]:
    for x in v:
        if x:
            inv = ctx.inv_int(x)
            return tuple(ctx.mul_int(inv, y) for y in v)
    raise SuzukiError("zero vector")


@dataclass
class SzContext:
    h: int
    field: FieldCtx
    generators: list[Mat4]
    perm_group: PermGroup
    points: list[tuple[int, ...]]
    point_index: dict[tuple[int, ...], int] = field(repr=False)
    labels: list[str] = field(default_factory=list)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def q(self) -> int:
        return self.field.q

    def perm(self, M: Mat4) -> Perm:
        """Permutation of the projective points induced by ``M``."""
        ctx = self.field
        return Perm([self.point_index[_normalize(M.apply(v), ctx)] for v in self.points])

    def U(self, a, b) -> Perm:
        return self.perm(u_elem(self._fe(a), self._fe(b)))

    def t(self, k) -> Perm:
        return self.perm(t_elem(self._fe(k)))

    def J(self) -> Perm:
        return self.perm(w0_elem(self.field))

    def _fe(self, x) -> FieldElem:
        return x if isinstance(x, FieldElem) else self.field(x)

    @property
    def zeta(self) -> FieldElem:
        return self.field.primitive_element()

    def u_minus_gens(self) -> list[Perm]:
        basis = self.field.prime_basis()
        zero = self.field.zero
        return [self.U(a, zero) for a in basis] + [self.U(zero, b) for b in basis]

    def borel_minus(self) -> PermGroup:
        """B^- = T U^-, the stabilizer of the point <e4>."""
        if "borel" not in self._cache:
            gens = self.u_minus_gens()
            if self.q > 2:
                gens = [self.t(self.zeta)] + gens
            self._cache["borel"] = closure(gens, name=f"Sz({self.q}).B-")
        return self._cache["borel"]

    def u_minus(self) -> PermGroup:
        if "uminus" not in self._cache:
            self._cache["uminus"] = closure(self.u_minus_gens(), name=f"Sz({self.q}).U-")
        return self._cache["uminus"]

    def to_json(self) -> dict:
        return {
            "family": "sz",
            "h": self.h,
            "q": self.q,
            "field": self.field.header(),
            "degree": self.perm_group.degree,
            "order": self.perm_group.order,
            "matrix_generators": [{"label": l, "entries": M.to_json()}
                                  for l, M in zip(self.labels, self.generators)],
        }


def suzuki_order(q: int) -> int:
    return q * q * (q - 1) * (q * q + 1)


def sz_field(h: int) -> FieldCtx:
    return FieldCtx(2, 2 * h + 1)


def build_sz(h: int, max_h: int = MAX_H) -> SzContext:
    """Build 2B2(2^(2h+1)) with generators U(a,0), U(0,b) (a, b over a basis),
    t_zeta and J; the order is checked against q^2 (q-1) (q^2+1)."""
    if h < 0:
        raise ValueError("h must be >= 0")
    if h > max_h:
        raise SuzukiError(f"h={h} above the desk-scale cap {max_h}")
    ctx = sz_field(h)
    q = ctx.q
    zero = ctx.zero
    basis = ctx.prime_basis()
    mats: list[Mat4] = []
    labels: list[str] = []
    for a in basis:
        mats.append(u_elem(a, zero))
        labels.append(f"U({a.value},0)")
    for b in basis:
        mats.append(u_elem(zero, b))
        labels.append(f"U(0,{b.value})")
    if q > 2:
        z = ctx.primitive_element()
        mats.append(t_elem(z))
        labels.append(f"t({z.value})")
    mats.append(w0_elem(ctx))
    labels.append("J")
    for M, l in zip(mats, labels):
        if not M.preserves_form():
            raise SuzukiError(f"generator {l} does not preserve the form")

    e4 = (0, 0, 0, 1)
    points = [e4]
    index = {e4: 0}
    queue = deque([e4])
    while queue:
        v = queue.popleft()
        for M in mats:
            w = _normalize(M.apply(v), ctx)
            if w not in index:
                index[w] = len(points)
                points.append(w)
                queue.append(w)
    if len(points) != q * q + 1:
        raise SuzukiError(f"orbit of <e4> has {len(points)} points, expected {q * q + 1}")
    sz = SzContext(h=h, field=ctx, generators=mats, perm_group=None, points=points,
                   point_index=index, labels=labels)
    perms = [sz.perm(M) for M in mats]
    G = PermGroup(perms, name=f"sz:h={h}")
    if G.order != suzuki_order(q):
        raise SuzukiError(f"group order {G.order} != {suzuki_order(q)}")
    sz.perm_group = G
    return sz


def sz2_affine_model() -> PermGroup:
    """Affine maps y -> a y + x of GF(5), a model of 2B2(2) of order 20."""
    gens = [Perm([(y + 1) % 5 for y in range(5)]), Perm([(2 * y) % 5 for y in range(5)])]
    return PermGroup(gens, name="sz2-affine")


def affine_map(a: int, x: int) -> Perm:
    return Perm([(a * y + x) % 5 for y in range(5)])


def subgroup_T_ZU(sz: SzContext) -> PermGroup:
    """H = T Z(U^-) = <t_zeta, U(0, b)>; order q (q - 1)."""
    zero = sz.field.zero
    gens = [sz.t(sz.zeta)] + [sz.U(zero, b) for b in sz.field.prime_basis()]
    return closure(gens, name=f"sz:h={sz.h}.TZ(U-)")


def center_U_minus(sz: SzContext) -> PermGroup:
    zero = sz.field.zero
    return closure([sz.U(zero, b) for b in sz.field.prime_basis()], name=f"sz:h={sz.h}.Z(U-)")


def torus(sz: SzContext) -> list[Perm]:
    """The split torus T = {t_k : k != 0} as permutations, indexed by k = zeta^i."""
    z = sz.zeta
    return [sz.t(z ** i) for i in range(sz.q - 1)]


def structural_subgroups(sz: SzContext) -> list[list[Perm]]:
    """Generator lists of the subgroups offered to the type C search."""
    if sz.q == 2:
        return [sz.u_minus_gens()]
    return [[sz.t(sz.zeta)] + sz.u_minus_gens()]
