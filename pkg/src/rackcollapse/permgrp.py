"""Permutation groups: Schreier-Sims, conjugation orbits, centralizers, classes.

Permutations compose as functions: ``(x * y)(i) = x(y(i))``, so ``y`` acts
first.  With this convention the map from matrices acting on column vectors to
permutations of points is a homomorphism, and ``x | y`` (the rack operation)
is ``x * y * x**-1``.
"""
from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

logger = logging.getLogger(__name__)

DEFAULT_ORBIT_CAP = 2_000_000
DEFAULT_GROUP_CAP = 1_000_000
DEFAULT_SUBGROUP_CAP = 2500


class CapExceeded(RuntimeError):
    """A configured desk-scale limit was hit."""

    def __init__(self, what: str, cap: int, size: int | None = None):
        self.what = what
        self.cap = cap
        self.size = size
        msg = f"{what} exceeds cap {cap}" + (f" (size {size})" if size is not None else "")
        super().__init__(msg)


@dataclass(frozen=True)
class TooLarge:
    """Outcome of :func:`closure` when the generated group is above the cap."""
    order: int
    cap: int

    def __bool__(self) -> bool:
        return False


class Perm:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        self.images = tuple(images)
        self._hash = hash(self.images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Perm":
        img = list(range(n))
        for c in cycles:
            for i, a in enumerate(c):
                img[a] = c[(i + 1) % len(c)]
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        a = self.images
        return Perm([a[j] for j in other.images])

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __invert__(self) -> "Perm":
        return self.inverse()

    def __pow__(self, e: int) -> "Perm":
        if e < 0:
            return self.inverse() ** (-e)
        result = Perm.identity(self.degree)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self, other: "Perm") -> "Perm":
        """``self | other = self * other * self^-1``."""
        a = self.images
        inv = [0] * len(a)
        for i, j in enumerate(a):
            inv[j] = i
        o = other.images
        return Perm([a[o[inv_i]] for inv_i in inv])

    __or__ = conj

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def commutes(self, other: "Perm") -> bool:
        a, b = self.images, other.images
        return all(a[b[i]] == b[a[i]] for i in range(len(a)))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            c = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                c.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(c))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        cs = self.cycles()
        return "Perm(" + ("".join("(" + " ".join(map(str, c)) + ")" for c in cs) or "()") + ")"

    def to_json(self) -> list[int]:
        return list(self.images)


def element_order(x: Perm) -> int:
    order = 1
    for c in x.cycles():
        order = math.lcm(order, len(c))
    return order


# -- Schreier-Sims --------------------------------------------------------------


def _orbit_transversal(base_pt: int, gens: Sequence[Perm], n: int) -> dict[int, Perm]:
    """Map each point of the orbit of ``base_pt`` to an element carrying base_pt to it."""
    trans = {base_pt: Perm.identity(n)}
    queue = deque([base_pt])
    while queue:
        pt = queue.popleft()
        u = trans[pt]
        for g in gens:
            img = g.images[pt]
            if img not in trans:
                trans[img] = g * u
                queue.append(img)
    return trans


class PermGroup:
    """A permutation group with a base and strong generating set.

    The BSGS is computed eagerly by the deterministic incremental Schreier-Sims
    algorithm; ``order`` is the product of the fundamental orbit lengths.
    """

    def __init__(self, generators: Sequence[Perm], degree: int | None = None,
                 name: str | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators must share a degree")
        self.degree = degree
        self.generators = gens
        self.name = name
        self.base: list[int] = []
        self.strong_gens: list[list[Perm]] = []
        self.transversals: list[dict[int, Perm]] = []
        self._trans_inv: list[dict[int, Perm]] = []
        self._orbit_cache: dict[Perm, ClassOrbit] = {}
        self._elements: list[Perm] | None = None
        self._element_set: frozenset[Perm] | None = None
        for g in gens:
            self._extend_with(g)

    # -- construction ---------------------------------------------------------

    def _extend_with(self, g: Perm) -> bool:
        """Enlarge the group by ``g``; returns False if ``g`` was already a member."""
        residue, _ = self._sift(g)
        if residue.is_identity():
            return False
        self._elements = None
        self._element_set = None
        deepest = self._add_strong(residue, 0)
        self._saturate_from(deepest)
        return True

    def _saturate_from(self, i: int) -> None:
        # Levels deeper than i are complete; walk upward, dropping back down to
        # the deepest touched level whenever a new strong generator appears.
        while i >= 0:
            j = self._saturate_level(i)
            i = i - 1 if j is None else j

    def _saturate_level(self, i: int) -> int | None:
        trans = self.transversals[i]
        tinv = self._trans_inv[i]
        for pt, u in list(trans.items()):
            for s in self.strong_gens[i]:
                img = s.images[pt]
                schreier = tinv[img] * (s * u)
                if schreier.is_identity():
                    continue
                residue, _ = self._sift(schreier, start=i + 1)
                if not residue.is_identity():
                    return self._add_strong(residue, i + 1)
        return None

    def _add_strong(self, g: Perm, level: int) -> int:
        """Add ``g`` (fixing base[:level]) to levels level..j, j its first moved base point."""
        n = self.degree
        j = level
        while j < len(self.base) and g.images[self.base[j]] == self.base[j]:
            j += 1
        if j == len(self.base):
            moved = next(i for i in range(n) if g.images[i] != i)
            self.base.append(moved)
            self.strong_gens.append([])
            self.transversals.append({})
            self._trans_inv.append({})
        for k in range(level, j + 1):
            self.strong_gens[k].append(g)
            trans = _orbit_transversal(self.base[k], self.strong_gens[k], n)
            self.transversals[k] = trans
            self._trans_inv[k] = {pt: u.inverse() for pt, u in trans.items()}
        return j

    def _sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self.base)):
            img = g.images[self.base[i]]
            uinv = self._trans_inv[i].get(img)
            if uinv is None:
                return g, i
            g = uinv * g
        return g, len(self.base)

    # -- queries ----------------------------------------------------------------

    @property
    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    def __len__(self) -> int:
        return self.order

    def contains(self, x: Perm) -> bool:
        if x.degree != self.degree:
            raise ValueError("degree mismatch")
        residue, _ = self._sift(x)
        return residue.is_identity()

    __contains__ = contains

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def elements(self) -> list[Perm]:
        """All elements, sorted by image tuple."""
        if self._elements is None:
            elems = [self.identity()]
            for trans in reversed(self.transversals):
                reps = list(trans.values())
                elems = [u * e for u in reps for e in elems]
            elems.sort()
            self._elements = elems
        return self._elements

    def element_set(self) -> frozenset[Perm]:
        if self._element_set is None:
            self._element_set = frozenset(self.elements())
        return self._element_set

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a.commutes(b) for i, a in enumerate(gs) for b in gs[i + 1:])

    def sift_ok(self) -> bool:
        return all(self.contains(g) for g in self.generators)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "degree": self.degree,
            "order": self.order,
            "generators": [g.to_json() for g in self.generators],
        }

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<PermGroup{tag} degree={self.degree} order={self.order}>"


def bsgs(generators: Sequence[Perm], degree: int | None = None, name: str | None = None) -> PermGroup:
    return PermGroup(generators, degree=degree, name=name)


def membership(G: PermGroup, x: Perm) -> bool:
    return G.contains(x)


def closure(S: Sequence[Perm], cap: int = DEFAULT_GROUP_CAP, degree: int | None = None,
            name: str | None = None) -> PermGroup | TooLarge:
    """Subgroup generated by ``S``; generators already inside are skipped."""
    S = list(S)
    if degree is None:
        degree = S[0].degree if S else 0
    G = PermGroup([], degree=degree, name=name)
    kept = []
    for s in S:
        if G.contains(s):
            continue
        kept.append(s)
        G._extend_with(s)
        if G.order > cap:
            return TooLarge(G.order, cap)
    G.generators = kept
    return G


def brute_force_closure(S: Sequence[Perm], degree: int, cap: int = 10_000) -> set[Perm]:
    """Element-set closure by multiplying on the right by generators (test oracle)."""
    e = Perm.identity(degree)
    elems = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s in S:
            y = x * s
            if y not in elems:
                elems.add(y)
                if len(elems) > cap:
                    raise CapExceeded("brute-force closure", cap, len(elems))
                queue.append(y)
    return elems


# -- conjugation orbits ------------------------------------------------------------


class ClassOrbit:
    """Orbit of ``representative`` under conjugation by ``gens``.

    Elements are in breadth-first order (generator index order within a
    layer).  Conjugators are stored as a Schreier tree: ``parent[i]`` and
    ``via[i]`` record that ``elements[i] = gens[via[i]] | elements[parent[i]]``.
    """

    def __init__(self, representative: Perm, gens: Sequence[Perm], cap: int = DEFAULT_ORBIT_CAP,
                 stop_at: Perm | None = None):
        self.representative = representative
        self.gens = list(gens)
        self.elements: list[Perm] = [representative]
        self.index: dict[Perm, int] = {representative: 0}
        self.parent: list[int] = [-1]
        self.via: list[int] = [-1]
        self.complete = True
        if stop_at is not None and stop_at == representative:
            self.complete = False
            return
        queue = deque([0])
        while queue:
            i = queue.popleft()
            x = self.elements[i]
            for k, g in enumerate(self.gens):
                y = g.conj(x)
                if y not in self.index:
                    self.index[y] = len(self.elements)
                    self.elements.append(y)
                    self.parent.append(i)
                    self.via.append(k)
                    if len(self.elements) > cap:
                        raise CapExceeded("conjugation orbit", cap, len(self.elements))
                    if stop_at is not None and y == stop_at:
                        self.complete = False
                        return
                    queue.append(len(self.elements) - 1)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: Perm) -> bool:
        return x in self.index

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    def word(self, i: int) -> list[int]:
        """Generator indices, first applied first, mapping the representative to element i."""
        w = []
        while i > 0:
            w.append(self.via[i])
            i = self.parent[i]
        w.reverse()
        return w

    def conjugator(self, i: int | Perm) -> Perm:
        if isinstance(i, Perm):
            i = self.index[i]
        c = Perm.identity(self.representative.degree)
        for k in self.word(i):
            c = self.gens[k] * c
        return c

    @property
    def transversal(self) -> list[Perm]:
        return [self.conjugator(i) for i in range(len(self.elements))]


def conj_orbit(x: Perm, gens: Sequence[Perm], cap: int = DEFAULT_ORBIT_CAP) -> ClassOrbit:
    return ClassOrbit(x, gens, cap=cap)


def in_conj_orbit(x: Perm, y: Perm, gens: Sequence[Perm], cap: int = DEFAULT_ORBIT_CAP) -> bool:
    """Is ``y`` in the orbit of ``x`` under conjugation by ``<gens>``?  Stops early."""
    orb = ClassOrbit(x, gens, cap=cap, stop_at=y)
    return y in orb


def class_of(G: PermGroup, x: Perm, cap: int = DEFAULT_ORBIT_CAP) -> ClassOrbit:
    """Cached full conjugacy class of ``x`` in ``G``."""
    orb = G._orbit_cache.get(x)
    if orb is None:
        orb = ClassOrbit(x, G.generators, cap=cap)
        G._orbit_cache[x] = orb
    return orb


def centralizer(G: PermGroup, x: Perm, cap: int = DEFAULT_ORBIT_CAP) -> PermGroup:
    """C_G(x) from Schreier generators of the conjugation action on the class of x.

    Schreier generators are added until the order reaches |G| / |class|.
    """
    orb = class_of(G, x, cap)
    target = G.order // len(orb)
    n = G.degree
    C = PermGroup([], degree=n)
    kept: list[Perm] = []
    if target == 1:
        C.generators = kept
        return C
    conj = [None] * len(orb)
    conj[0] = Perm.identity(n)
    for i in range(1, len(orb)):
        conj[i] = orb.gens[orb.via[i]] * conj[orb.parent[i]]
    inv_cache: dict[int, Perm] = {}
    for i in range(len(orb)):
        ci = conj[i]
        for g in orb.gens:
            j = orb.index[g.conj(orb.elements[i])]
            cj_inv = inv_cache.get(j)
            if cj_inv is None:
                cj_inv = inv_cache[j] = conj[j].inverse()
            s = cj_inv * (g * ci)
            if s.is_identity() or C.contains(s):
                continue
            kept.append(s)
            C._extend_with(s)
            if C.order == target:
                C.generators = kept
                return C
    C.generators = kept
    if C.order != target:  # pragma: no cover - would contradict orbit-stabilizer
        raise RuntimeError("centralizer order mismatch")
    return C


def is_real(G: PermGroup, x: Perm, cap: int = DEFAULT_ORBIT_CAP) -> bool:
    orb = G._orbit_cache.get(x)
    if orb is not None:
        return x.inverse() in orb
    return in_conj_orbit(x, x.inverse(), G.generators, cap)


def conjugacy_classes(G: PermGroup, cap: int = DEFAULT_GROUP_CAP) -> list[ClassOrbit]:
    """Partition of G into classes; each class is rooted at its least element."""
    if G.order > cap:
        raise CapExceeded("group order for class enumeration", cap, G.order)
    seen: set[Perm] = set()
    classes = []
    for x in G.elements():
        if x in seen:
            continue
        orb = class_of(G, x)
        seen.update(orb.elements)
        classes.append(orb)
    return classes


def all_subgroups(G: PermGroup, cap: int = DEFAULT_SUBGROUP_CAP) -> list[PermGroup]:
    """Every subgroup of a small group, each listed once.

    Starts from the cyclic subgroups and repeatedly joins a known subgroup with
    one more cyclic subgroup, deduplicating by element set.
    """
    if G.order > cap:
        raise CapExceeded("group order for subgroup enumeration", cap, G.order)
    n = G.degree
    e = G.identity()
    cyclic: dict[frozenset, Perm] = {}
    for x in G.elements():
        powers = {e}
        y = x
        while y != e:
            powers.add(y)
            y = y * x
        key = frozenset(powers)
        if key not in cyclic:
            cyclic[key] = x
    found: dict[frozenset, list[Perm]] = {frozenset([e]): []}
    queue = deque([frozenset([e])])
    while queue:
        H = queue.popleft()
        gens = found[H]
        for cset, c in cyclic.items():
            if cset <= H:
                continue
            new_gens = gens + [c]
            K = frozenset(brute_force_closure(new_gens, n, cap=G.order))
            if K not in found:
                found[K] = new_gens
                queue.append(K)
    out = []
    for key in sorted(found, key=lambda k: (len(k), sorted(k))):
        H = PermGroup(found[key], degree=n)
        H._element_set = key
        out.append(H)
    return out


def direct_product(G: PermGroup, H: PermGroup, name: str | None = None) -> PermGroup:
    m, n = G.degree, H.degree
    gens = [Perm(list(g.images) + list(range(m, m + n))) for g in G.generators]
    gens += [Perm(list(range(m)) + [m + i for i in h.images]) for h in H.generators]
    return PermGroup(gens, degree=m + n, name=name)


def embed_pair(x: Perm, y: Perm) -> Perm:
    """(x, y) in the direct product acting on the disjoint union of points."""
    m = x.degree
    return Perm(list(x.images) + [m + i for i in y.images])


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup([], degree=max(n, 1), name=f"S{n}")
    gens = [Perm.from_cycles(n, (0, 1))]
    if n > 2:
        gens.append(Perm.from_cycles(n, tuple(range(n))))
    return PermGroup(gens, name=f"S{n}")


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], degree=1, name="C1")
    return PermGroup([Perm.from_cycles(n, tuple(range(n)))], name=f"C{n}")
