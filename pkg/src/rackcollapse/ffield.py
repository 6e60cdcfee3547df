"""Finite fields GF(p^m), p in {2, 3, 5}, in a polynomial basis.

Elements are stored as the integer ``sum(c_i * p**i)`` of their little-endian
coefficient vector.  That integer is also the serialized form of an element;
the ``(p, m, modulus)`` triple of the context is written next to it.

For odd ``m = 2h + 1`` and ``p`` in ``{2, 3}`` the context carries the twisted
Frobenius ``delta(x) = x**(p**(h+1))``, whose square is ``x -> x**p``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

SUPPORTED_PRIMES = (2, 3, 5)
# log/antilog tables are built up to this field size
TABLE_LIMIT = 1 << 16


class FieldError(ValueError):
    pass


def _digits(n: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        n, r = divmod(n, p)
        out.append(r)
    return out


def _undigits(cs: Sequence[int], p: int) -> int:
    n = 0
    for c in reversed(cs):
        n = n * p + c
    return n


def _poly_mod(num: list[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of ``num`` by monic ``den`` (little-endian coefficient lists)."""
    num = [c % p for c in num]
    d = len(den) - 1
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c:
            shift = i - d
            for j, dc in enumerate(den):
                num[shift + j] = (num[shift + j] - c * dc) % p
    return num[:d] if d else []


def _poly_mulmod(a: Sequence[int], b: Sequence[int], den: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else [0]
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod(prod, den, p)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p != 1:
        return False
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not any(_poly_mod(list(modulus), divisor, p)):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m.

    Candidates are ordered by their constant term first, i.e. by the integer
    ``sum(c_i p^i)`` of the non-leading coefficients.
    """
    for n in range(p ** m):
        cand = tuple(_digits(n, p, m)) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


class FieldCtx:
    """GF(p^m) with a fixed modulus.  Immutable after construction."""

    def __init__(self, p: int, m: int, modulus: Sequence[int] | None = None):
        if p not in SUPPORTED_PRIMES:
            raise FieldError(f"unsupported characteristic {p}")
        if m < 1:
            raise FieldError("extension degree must be >= 1")
        if modulus is None:
            modulus = smallest_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is not irreducible of degree {m} over GF({p})")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.q = p ** m
        self.delta_enabled = p in (2, 3) and m % 2 == 1
        self.h = (m - 1) // 2 if self.delta_enabled else None
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._add: list[list[int]] | None = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # -- construction helpers -------------------------------------------------

    def _poly_mul_int(self, a: int, b: int) -> int:
        pa = _digits(a, self.p, self.m)
        pb = _digits(b, self.p, self.m)
        return _undigits(_poly_mulmod(pa, pb, self.modulus, self.p), self.p)

    def _build_tables(self) -> None:
        q = self.q
        for g in range(2, q) if q > 2 else [1]:
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._poly_mul_int(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                break
        else:
            raise FieldError("no primitive element found")  # pragma: no cover
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self._exp = exp
        self._log = log
        self.primitive = exp[1] if q > 2 else 1

    # -- integer-level arithmetic (hot path) ------------------------------------

    def add_int(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        out = 0
        place = 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * place
            place *= p
        return out

    def neg_int(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        out = 0
        place = 1
        while a:
            a, r = divmod(a, p)
            out += ((-r) % p) * place
            place *= p
        return out

    def sub_int(self, a: int, b: int) -> int:
        return self.add_int(a, self.neg_int(b))

    def mul_int(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is None:
            return self._poly_mul_int(a, b)
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv_int(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero in " + repr(self))
        if self._exp is None:
            return self.pow_int(a, self.q - 2)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow_int(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow_int(self.inv_int(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        result, base = 1, a
        while e:
            if e & 1:
                result = self._poly_mul_int(result, base)
            base = self._poly_mul_int(base, base)
            e >>= 1
        return result

    def delta_int(self, a: int) -> int:
        self._require_delta()
        return self.pow_int(a, self.p ** (self.h + 1))

    def delta_inv_int(self, a: int) -> int:
        self._require_delta()
        return self.pow_int(a, self.p ** self.h)

    def _require_delta(self) -> None:
        if not self.delta_enabled:
            raise FieldError(f"{self!r} has no twisted Frobenius (need p in (2, 3), odd m)")

    # -- element-level API -----------------------------------------------------

    def __call__(self, value: int | Sequence[int]) -> "FieldElem":
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise FieldError(f"{value} out of range for GF({self.q})")
            return FieldElem(value, self)
        cs = list(value)
        if len(cs) > self.m:
            raise FieldError("too many coefficients")
        return FieldElem(_undigits([c % self.p for c in cs], self.p), self)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(0, self)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(1, self)

    @property
    def gen(self) -> "FieldElem":
        """The class of the polynomial variable t."""
        return self([0, 1]) if self.m > 1 else self.one

    def primitive_element(self) -> "FieldElem":
        return FieldElem(self.primitive, self)

    def elements(self) -> Iterator["FieldElem"]:
        return (FieldElem(i, self) for i in range(self.q))

    def units(self) -> Iterator["FieldElem"]:
        return (FieldElem(i, self) for i in range(1, self.q))

    def prime_basis(self) -> list["FieldElem"]:
        """The monomial basis 1, t, ..., t^(m-1) over the prime field."""
        return [FieldElem(self.p ** i, self) for i in range(self.m)]

    def header(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.p, self.m, self.modulus) == (
            other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={list(self.modulus)})"


def field_new(p: int, m: int, modulus: Sequence[int] | None = None) -> FieldCtx:
    return FieldCtx(p, m, modulus)


@dataclass(frozen=True)
class FieldElem:
    value: int
    ctx: FieldCtx

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(_digits(self.value, self.ctx.p, self.ctx.m))

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise FieldError("context mismatch")
            return other.value
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx.add_int(self.value, o), self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.ctx.neg_int(self.value), self.ctx)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx.sub_int(self.value, o), self.ctx)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx.mul_int(self.value, o), self.ctx)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx.inv_int(self.value), self.ctx)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx.mul_int(self.value, self.ctx.inv_int(o)), self.ctx)

    def __pow__(self, e: int) -> "FieldElem":
        return FieldElem(self.ctx.pow_int(self.value, e), self.ctx)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}{mono}")
        return " + ".join(reversed(terms)) or "0"


def arith(x: FieldElem, y: FieldElem | int | None, op: str) -> FieldElem:
    """Dispatch ``op`` in {add, mul, inv, pow}; for pow, ``y`` is an int exponent."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x ** int(y)
    raise ValueError(f"unknown op {op!r}")


def delta(x: FieldElem) -> FieldElem:
    """x -> x^(p^(h+1)); applying it twice gives the p-power Frobenius."""
    return FieldElem(x.ctx.delta_int(x.value), x.ctx)


def delta_inv(x: FieldElem) -> FieldElem:
    return FieldElem(x.ctx.delta_inv_int(x.value), x.ctx)


def phi(k: FieldElem) -> FieldElem:
    """k -> k * delta(k), an automorphism of the multiplicative group."""
    if not k:
        raise FieldError("phi is defined on nonzero elements only")
    return k * delta(k)


class F2Span:
    """GF(2)-linear span of field elements of a characteristic-2 field.

    Vectors are the integer encodings (bit i = coefficient of t^i); the basis is
    kept in reduced row echelon form keyed by pivot bit.
    """

    def __init__(self, ctx: FieldCtx, vectors: Iterable[int] = ()):
        if ctx.p != 2:
            raise FieldError("F2Span needs characteristic 2")
        self.ctx = ctx
        self._rows: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def _reduce(self, v: int) -> int:
        for pivot, row in self._rows.items():
            if v >> pivot & 1:
                v ^= row
        return v

    def add(self, v: int) -> bool:
        v = self._reduce(v)
        if not v:
            return False
        pivot = v.bit_length() - 1
        for piv, row in list(self._rows.items()):
            if row >> pivot & 1:
                self._rows[piv] = row ^ v
        self._rows[pivot] = v
        return True

    @property
    def basis(self) -> list[FieldElem]:
        return [FieldElem(self._rows[k], self.ctx) for k in sorted(self._rows, reverse=True)]

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __contains__(self, x: FieldElem | int) -> bool:
        v = x.value if isinstance(x, FieldElem) else x
        return self._reduce(v) == 0

    def elements(self) -> list[FieldElem]:
        rows = list(self._rows.values())
        out = []
        for mask in range(1 << len(rows)):
            v = 0
            for i, r in enumerate(rows):
                if mask >> i & 1:
                    v ^= r
            out.append(FieldElem(v, self.ctx))
        return sorted(out, key=lambda e: e.value)


def f2_span(elems: Iterable[FieldElem], ctx: FieldCtx | None = None) -> F2Span:
    elems = list(elems)
    if ctx is None:
        if not elems:
            raise FieldError("empty span needs an explicit context")
        ctx = elems[0].ctx
    return F2Span(ctx, (e.value for e in elems))
