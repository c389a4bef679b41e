"""Exact arithmetic in GF(p^m).

Elements are integers ``0 <= x < p**m`` whose base-p digits are the
coordinates in the power basis ``1, t, ..., t^(m-1)`` (lowest power first),
where ``t`` is the class of ``x`` modulo the defining polynomial.  So the
additive group is F_p^m with the obvious encoding and the integer ``p**j``
is ``t^j``.  Multiplication goes through discrete-log tables built lazily per
field.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .additive import AdditiveMap, digit_table, from_digits, to_digits, vec_add, vec_neg
from .errors import FieldMismatch, NonPrime, NotADivisor, ReducibleModulus, ZeroInverse

Poly = tuple[int, ...]  # ascending coefficients

_MAX_TABLE = 1 << 16


# -- small helpers ----------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` divided by monic-or-not ``b`` over F_p."""
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def monic_polys(p: int, d: int) -> Iterator[Poly]:
    """Monic polynomials of degree ``d``, in increasing integer-encoding order."""
    for low in range(p**d):
        yield tuple(int(c) for c in to_digits(low, p, d)) + (1,)


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    f = _trim([c % p for c in f])
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in monic_polys(p, d):
            if not poly_mod(f, g, p):
                return False
    return True


def _polymul_mod(x: int, y: int, p: int, m: int, modulus: Poly) -> int:
    a = to_digits(x, p, m)
    b = to_digits(y, p, m)
    prod = [0] * (2 * m - 1)
    for i in range(m):
        if a[i]:
            for j in range(m):
                prod[i + j] += int(a[i]) * int(b[j])
    r = poly_mod(prod, modulus, p)
    return from_digits(r + [0] * (m - len(r)), p)


# -- the field --------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^m) with a fixed defining polynomial and primitive element.

    Build instances with :func:`make_field`, which validates everything.
    """

    p: int
    m: int
    modulus: Poly
    primitive: int
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False, hash=False)

    @property
    def order(self) -> int:
        return self.p**self.m

    def __len__(self) -> int:
        return self.order

    def elements(self) -> range:
        return range(self.order)

    @property
    def t(self) -> int:
        """The class of x (the power-basis generator)."""
        return self.p if self.m > 1 else from_digits([(-self.modulus[0]) % self.p], self.p)

    def describe(self) -> str:
        mod = ",".join(str(c) for c in self.modulus)
        return f"p={self.p} m={self.m} modulus={mod}"

    # tables -------------------------------------------------------------

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        with self._lock:
            q = self.order
            if q > _MAX_TABLE:
                raise ValueError("log tables are limited to fields of at most 2^16 elements")
            exp = [0] * (q - 1)
            log = [-1] * q
            x = 1
            for k in range(q - 1):
                exp[k] = x
                log[x] = k
                x = _polymul_mod(x, self.primitive, self.p, self.m, self.modulus)
            return exp, log

    @property
    def exp_table(self) -> list[int]:
        return self._tables[0]

    @property
    def log_table(self) -> list[int]:
        return self._tables[1]

    @cached_property
    def digits(self) -> np.ndarray:
        return digit_table(self.p, self.m)

    # arithmetic on integer encodings -----------------------------------

    def coeffs(self, x: int) -> tuple[int, ...]:
        return tuple(int(c) for c in to_digits(x, self.p, self.m))

    def from_coeffs(self, c: Sequence[int]) -> int:
        if len(c) > self.m:
            raise ValueError(f"too many coefficients for GF({self.p}^{self.m})")
        return from_digits(c, self.p)

    def add(self, x: int, y: int) -> int:
        return vec_add(x, y, self.p, self.m)

    def neg(self, x: int) -> int:
        return vec_neg(x, self.p, self.m)

    def sub(self, x: int, y: int) -> int:
        return vec_add(x, vec_neg(y, self.p, self.m), self.p, self.m)

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        exp, log = self._tables
        return exp[(log[x] + log[y]) % (self.order - 1)]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroInverse("zero has no multiplicative inverse")
        exp, log = self._tables
        return exp[(-log[x]) % (self.order - 1)]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, k: int) -> int:
        if x == 0:
            if k < 0:
                raise ZeroInverse("zero has no multiplicative inverse")
            return 1 if k == 0 else 0
        exp, log = self._tables
        return exp[(log[x] * k) % (self.order - 1)]

    def frobenius(self, x: int, j: int = 1) -> int:
        """``x^(p^j)``, with ``j`` taken modulo m."""
        return self.pow(x, self.p ** (j % self.m))

    def multiplicative_order(self, x: int) -> int:
        if x == 0:
            raise ZeroInverse("zero is not a unit")
        n = self.order - 1
        return n // math.gcd(n, self.log_table[x])

    def trace(self, x: int, d: int = 1) -> int:
        """Trace from GF(p^m) down to the subfield GF(p^d)."""
        if self.m % d:
            raise NotADivisor(f"{d} does not divide {self.m}")
        out = 0
        for i in range(self.m // d):
            out = self.add(out, self.frobenius(x, d * i))
        return out

    def subfield_generator(self, d: int) -> int:
        """A generator of the multiplicative group of GF(p^d) inside this field."""
        if self.m % d:
            raise NotADivisor(f"{d} does not divide {self.m}")
        return self.pow(self.primitive, (self.order - 1) // (self.p**d - 1))

    def element(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.spec != self:
                raise FieldMismatch("element belongs to another field")
            return x
        if isinstance(x, (list, tuple)):
            return FieldElement(self, self.from_coeffs(x))
        return FieldElement(self, int(x))


def _find_primitive(p: int, m: int, modulus: Poly) -> int:
    q = p**m
    n = q - 1
    if n == 1:
        return 1
    factors = prime_factors(n)

    def power(x: int, k: int) -> int:
        result, base = 1, x
        while k:
            if k & 1:
                result = _polymul_mod(result, base, p, m, modulus)
            base = _polymul_mod(base, base, p, m, modulus)
            k >>= 1
        return result

    for x in range(1, q):
        if all(power(x, n // ell) != 1 for ell in factors):
            return x
    raise ReducibleModulus("no element of full multiplicative order; modulus is not irreducible")


def default_modulus(p: int, m: int) -> Poly:
    """Smallest monic irreducible of degree m, ordered by integer encoding.

    Encoding ``sum c_i p^i`` makes the leading (highest) coefficients most
    significant, e.g. x^4+x+1 comes before x^4+x^3+1 over F_2.
    """
    for f in monic_polys(p, m):
        if is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


@lru_cache(maxsize=None)
def _make_field_cached(p: int, m: int, modulus: Poly) -> FieldSpec:
    return FieldSpec(p, m, modulus, _find_primitive(p, m, modulus))


def make_field(p: int, m: int, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Validated :class:`FieldSpec` for GF(p^m).

    ``modulus`` is the ascending coefficient list of a monic irreducible of
    degree m; when omitted the smallest one is used (see
    :func:`default_modulus`).  Fields are cached, so equal arguments give the
    same object.
    """
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be at least 1")
    if modulus is None:
        mod = default_modulus(p, m)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {m}")
        if not is_irreducible(mod, p):
            raise ReducibleModulus(f"{list(mod)} is reducible over F_{p}")
    return _make_field_cached(p, m, mod)


# -- element wrapper ----------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    """A value of GF(p^m) together with its field; supports ``+ - * / **``."""

    spec: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.spec.order:
            raise ValueError(f"{self.value} is not an element of GF({self.spec.p}^{self.spec.m})")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatch("operands live in different fields")
            return other.value
        if isinstance(other, int):
            return self.spec.from_coeffs([other % self.spec.p])
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.spec, self.spec.div(self.value, self._other(other)))

    def __pow__(self, k: int):
        return FieldElement(self.spec, self.spec.pow(self.value, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.value))

    def frobenius(self, j: int = 1) -> "FieldElement":
        return FieldElement(self.spec, self.spec.frobenius(self.value, j))

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


def field_arith(op: str, *operands: FieldElement) -> FieldElement:
    """Dispatch ``add``/``mul``/``inv``/``pow`` on :class:`FieldElement` operands.

    ``pow`` takes an element and an integer exponent.
    """
    if op == "add":
        x, y = operands
        return x + y
    if op == "mul":
        x, y = operands
        return x * y
    if op == "inv":
        (x,) = operands
        return x.inverse()
    if op == "pow":
        x, k = operands
        return x ** int(k)
    raise ValueError(f"unknown field operation {op!r}")


def frobenius(x: FieldElement, j: int) -> FieldElement:
    return x.frobenius(j)


# -- subfields ------------------------------------------------------------------


@dataclass(frozen=True)
class Subfield:
    """GF(p^d) sitting inside ``spec``."""

    spec: FieldSpec
    d: int
    generator: int
    elements: frozenset[int]

    @property
    def order(self) -> int:
        return self.spec.p**self.d

    def contains(self, x) -> bool:
        if isinstance(x, FieldElement):
            x = x.value
        return x in self.elements

    def trace_to(self, x):
        """Relative trace ``sum_i x^(p^(d i))``; returns the same kind it was given."""
        if isinstance(x, FieldElement):
            return FieldElement(self.spec, self.spec.trace(x.value, self.d))
        return self.spec.trace(x, self.d)

    def sorted_elements(self) -> list[int]:
        return sorted(self.elements)

    def fp_basis(self) -> list[int]:
        """``1, g, ..., g^(d-1)`` for the generator g: an F_p-basis of the subfield."""
        return [self.spec.pow(self.generator, k) for k in range(self.d)]


@lru_cache(maxsize=None)
def subfield(spec: FieldSpec, d: int) -> Subfield:
    if d < 1 or spec.m % d:
        raise NotADivisor(f"{d} does not divide {spec.m}")
    gen = spec.subfield_generator(d)
    elems = frozenset([0] + [spec.pow(gen, k) for k in range(spec.p**d - 1)])
    return Subfield(spec, d, gen, elems)


# -- compositum ----------------------------------------------------------------


def _smallest_root(poly: Poly, target: FieldSpec, degree: int) -> int:
    """Smallest (by encoding) root of ``poly`` in the subfield GF(p^degree) of target."""
    sub = subfield(target, degree)
    best = None
    for z in sub.sorted_elements():
        acc = 0
        for c in reversed(poly):
            acc = target.add(target.mul(acc, z), target.from_coeffs([c]))
        if acc == 0:
            best = z
            break
    if best is None:
        raise AssertionError("irreducible polynomial has no root in the splitting subfield")
    return best


def _embedding_table(src: FieldSpec, dst: FieldSpec) -> tuple[int, ...]:
    if src == dst:
        return tuple(range(src.order))
    root = _smallest_root(src.modulus, dst, src.m)
    powers = [1]
    for _ in range(1, src.m):
        powers.append(dst.mul(powers[-1], root))
    table = []
    for x in range(src.order):
        acc = 0
        for j, c in enumerate(src.coeffs(x)):
            for _ in range(c):
                acc = dst.add(acc, powers[j])
        table.append(acc)
    return tuple(table)


@dataclass(frozen=True)
class Compositum:
    """GF(p^lcm(r, m)) with fixed embeddings of the alphabet GF(p^r) and of K = GF(p^m).

    Each embedding sends the generator t of the smaller field to the smallest
    root (by integer encoding) of its defining polynomial.
    """

    alphabet: FieldSpec
    field: FieldSpec
    big: FieldSpec
    embed_alphabet_table: tuple[int, ...]
    embed_field_table: tuple[int, ...]

    def embed_alphabet(self, x: int) -> int:
        return self.embed_alphabet_table[x]

    def embed_field(self, x: int) -> int:
        return self.embed_field_table[x]


@lru_cache(maxsize=None)
def compositum(alphabet: FieldSpec, field_: FieldSpec) -> Compositum:
    if alphabet.p != field_.p:
        raise FieldMismatch("fields of different characteristic")
    n = math.lcm(alphabet.m, field_.m)
    if n == field_.m:
        big = field_
    elif n == alphabet.m:
        big = alphabet
    else:
        big = make_field(field_.p, n)
    return Compositum(
        alphabet,
        field_,
        big,
        _embedding_table(alphabet, big),
        _embedding_table(field_, big),
    )


def compositum_embed(x: FieldElement, comp: Compositum) -> FieldElement:
    """Image of ``x`` (from either the alphabet or K) inside the compositum field."""
    if x.spec == comp.field:
        return FieldElement(comp.big, comp.embed_field(x.value))
    if x.spec == comp.alphabet:
        return FieldElement(comp.big, comp.embed_alphabet(x.value))
    raise FieldMismatch("element belongs to neither embedded field")


# -- linear maps of K ----------------------------------------------------------


def mul_matrix(spec: FieldSpec, gamma) -> AdditiveMap:
    """Matrix over F_p of ``y -> gamma * y`` in the power basis."""
    g = gamma.value if isinstance(gamma, FieldElement) else int(gamma)
    return AdditiveMap.from_function(lambda y: spec.mul(g, y), spec.p, spec.m)


def frobenius_matrix(spec: FieldSpec, j: int = 1) -> AdditiveMap:
    return AdditiveMap.from_function(lambda y: spec.frobenius(y, j), spec.p, spec.m)


def trace_matrix(spec: FieldSpec, d: int, c: int = 1) -> AdditiveMap:
    """``x -> Tr_{K/GF(p^d)}(c x)`` as an additive map of K (image in the subfield)."""
    return AdditiveMap.from_function(lambda y: spec.trace(spec.mul(c, y), d), spec.p, spec.m)


def subfield_linear_map(spec: FieldSpec, d: int, basis: Sequence[int], images: Sequence[int]) -> AdditiveMap:
    """The GF(p^d)-linear map of K sending ``basis[i]`` to ``images[i]``.

    ``basis`` must be a GF(p^d)-basis of K.  The F_p-matrix is obtained from
    the F_p-basis ``{g^k b_i}`` with g generating GF(p^d).
    """
    sub_basis = subfield(spec, d).fp_basis()
    src, dst = [], []
    for b, im in zip(basis, images):
        for s in sub_basis:
            src.append(spec.mul(s, b))
            dst.append(spec.mul(s, im))
    if len(src) != spec.m:
        raise ValueError("basis has the wrong size for a GF(p^d)-basis of K")
    return AdditiveMap.from_basis_images(src, dst, spec.p, spec.m)


def subfield_basis(spec: FieldSpec, d: int, vectors: Sequence[int] | None = None) -> list[int]:
    """Greedy GF(p^d)-basis drawn in order from ``vectors`` (default: 1, t, t^2, ...).

    Returns a basis of the GF(p^d)-span of the given vectors.
    """
    sub_basis = subfield(spec, d).fp_basis()
    if vectors is None:
        vectors = [spec.p**j for j in range(spec.m)] + list(spec.elements())
    chosen: list[int] = []
    rows = np.zeros((0, spec.m), dtype=np.int64)
    current = 0
    for v in vectors:
        if v == 0:
            continue
        new = np.array([to_digits(spec.mul(s, v), spec.p, spec.m) for s in sub_basis], dtype=np.int64)
        trial = np.vstack([rows, new])
        r = linalg.rank(trial, spec.p)
        if r > current:
            chosen.append(v)
            rows, current = trial, r
            if current == spec.m:
                break
    return chosen
