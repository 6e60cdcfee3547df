"""Conjugacy classes as racks, x |> y = x y x^-1."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .permgrp import DEFAULT_ORBIT_CAP, ClassOrbit, Perm, PermGroup, class_of

TABLE_LIMIT = 512
EXHAUSTIVE_TRIPLES = 10 ** 6


class ConjClassRack:
    """The rack structure on a conjugacy class of ``ambient``.

    Elements are addressed by their index in the class orbit.  Below
    ``TABLE_LIMIT`` elements the operation table is cached on first use.
    """

    def __init__(self, ambient: PermGroup, orbit: ClassOrbit):
        self.ambient = ambient
        self.orbit = orbit
        self._table: np.ndarray | None = None

    @property
    def elements(self) -> list[Perm]:
        return self.orbit.elements

    @property
    def representative(self) -> Perm:
        return self.orbit.representative

    def __len__(self) -> int:
        return len(self.orbit)

    def __contains__(self, x: Perm) -> bool:
        return x in self.orbit.index

    def index(self, x: Perm) -> int:
        return self.orbit.index[x]

    def op(self, i: int, j: int) -> int:
        if self._table is not None:
            return int(self._table[i, j])
        els = self.orbit.elements
        return self.orbit.index[els[i].conj(els[j])]

    def act(self, x: Perm, y: Perm) -> Perm:
        return x.conj(y)

    @property
    def table(self) -> np.ndarray | None:
        """Operation table, or None above the size limit."""
        if self._table is None and len(self) < TABLE_LIMIT:
            self._table = build_table(self.orbit.elements, self.orbit.index)
        return self._table


def build_table(elements: Sequence[Perm], index: dict[Perm, int]) -> np.ndarray:
    n = len(elements)
    T = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            z = x.conj(y)
            # a missing key means the set is not closed; encode as -1
            T[i, j] = index.get(z, -1)
    return T


def conj_rack(G: PermGroup, x: Perm, cap: int = DEFAULT_ORBIT_CAP) -> ConjClassRack:
    return ConjClassRack(G, class_of(G, x, cap))


@dataclass
class AxiomReport:
    ok: bool
    size: int
    mode: str
    checked: int
    violation: dict | None = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "size": self.size, "mode": self.mode, "checked": self.checked,
                "violation": self.violation}


def check_table_axioms(T: np.ndarray) -> AxiomReport:
    """Exhaustive closure, bijectivity and self-distributivity on a table."""
    n = T.shape[0]
    if (T < 0).any() or (T >= n).any():
        i, j = map(int, np.argwhere((T < 0) | (T >= n))[0])
        return AxiomReport(False, n, "exhaustive", 0, {"axiom": "closure", "triple": [i, j, None]})
    for i in range(n):
        if len(np.unique(T[i])) != n:
            row = T[i]
            vals, counts = np.unique(row, return_counts=True)
            dup = int(vals[counts > 1][0])
            j, k = map(int, np.nonzero(row == dup)[0][:2])
            return AxiomReport(False, n, "exhaustive", i * n,
                               {"axiom": "bijectivity", "triple": [i, j, k]})
    checked = 0
    for x in range(n):
        # x |> (y |> z)  vs  (x |> y) |> (x |> z), for all y, z at once
        lhs = T[x][T]
        tx = T[x]
        rhs = T[np.ix_(tx, tx)]
        checked += n * n
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            y, z = map(int, bad[0])
            return AxiomReport(False, n, "exhaustive", checked,
                               {"axiom": "self-distributivity", "triple": [x, y, z]})
    return AxiomReport(True, n, "exhaustive", checked)


def check_axioms(R: ConjClassRack, samples: int = 10_000, seed: int = 0,
                 exhaustive: bool | None = None) -> AxiomReport:
    """Rack axioms on R: exhaustive when |R|^3 <= 10^6 (or forced), else sampled."""
    n = len(R)
    if exhaustive is None:
        exhaustive = n ** 3 <= EXHAUSTIVE_TRIPLES
    if exhaustive:
        T = R.table if n < TABLE_LIMIT else None
        if T is None:
            T = build_table(R.elements, R.orbit.index)
        return check_table_axioms(T)
    rng = random.Random(seed)
    els = R.elements
    index = R.orbit.index
    for c in range(samples):
        i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        x, y, z = els[i], els[j], els[k]
        yz = y.conj(z)
        xy = x.conj(y)
        xz = x.conj(z)
        if xy not in index or xz not in index or yz not in index:
            return AxiomReport(False, n, "sampled", c, {"axiom": "closure", "triple": [i, j, k]})
        if x.conj(yz) != xy.conj(xz):
            return AxiomReport(False, n, "sampled", c,
                               {"axiom": "self-distributivity", "triple": [i, j, k]})
        # left translation by x is injective on conjugation: x|>y = x|>z forces y = z
        if j != k and xy == xz:
            return AxiomReport(False, n, "sampled", c, {"axiom": "bijectivity", "triple": [i, j, k]})
    return AxiomReport(True, n, "sampled", samples)


def is_commuting_set(S: Iterable[Perm]) -> bool:
    S = list(S)
    return all(a.commutes(b) for a, b in itertools.combinations(S, 2))


def is_indecomposable(R: ConjClassRack) -> bool:
    """Single orbit under the rack's own inner translations (recorded, not required)."""
    els = R.elements
    seen = {0}
    stack = [0]
    while stack:
        j = stack.pop()
        for x in els:
            k = R.orbit.index[x.conj(els[j])]
            if k not in seen:
                seen.add(k)
                stack.append(k)
    return len(seen) == len(R)
