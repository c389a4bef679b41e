"""p-adic digits, the digitwise order, and q-cyclotomic classes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import NonCoprimeMultiplier
from .finite_field import divisors


@dataclass(frozen=True)
class PadicExpansion:
    digits: tuple[int, ...]  # least significant first
    base: int

    def __int__(self) -> int:
        return sum(d * self.base**i for i, d in enumerate(self.digits))


def padic_expansion(x: int, p: int) -> PadicExpansion:
    """Minimal base-p expansion; zero expands to the single digit 0."""
    if x < 0:
        raise ValueError("p-adic expansion needs a non-negative integer")
    if x == 0:
        return PadicExpansion((0,), p)
    digits = []
    while x:
        x, d = divmod(x, p)
        digits.append(d)
    return PadicExpansion(tuple(digits), p)


def preceq(s: int, t: int, p: int) -> bool:
    """Digitwise order: every base-p digit of s is at most the matching digit of t."""
    if s < 0 or t < 0:
        raise ValueError("digitwise order is defined on non-negative integers")
    while s:
        if s % p > t % p:
            return False
        s //= p
        t //= p
    return True


def padic_weight(x: int, p: int) -> int:
    return sum(padic_expansion(x, p).digits)


@dataclass(frozen=True)
class CyclotomicClass:
    members: tuple[int, ...]  # sorted
    multiplier: int
    modulus: int

    @property
    def leader(self) -> int:
        return self.members[0]

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)


def cyclotomic_class(i: int, q: int, n: int) -> CyclotomicClass:
    """Orbit of ``i`` under multiplication by ``q`` modulo ``n``."""
    if math.gcd(q, n) != 1:
        raise NonCoprimeMultiplier(f"gcd({q}, {n}) != 1")
    if not 0 <= i < n:
        raise ValueError(f"{i} is not a residue modulo {n}")
    orbit = {i}
    x = i * q % n
    while x not in orbit:
        orbit.add(x)
        x = x * q % n
    return CyclotomicClass(tuple(sorted(orbit)), q, n)


def cyclotomic_classes(q: int, n: int) -> list[CyclotomicClass]:
    """All classes modulo n, ordered by leader."""
    seen: set[int] = set()
    out = []
    for i in range(n):
        if i not in seen:
            c = cyclotomic_class(i, q, n)
            seen.update(c.members)
            out.append(c)
    return out


def is_union_of_classes(D: Iterable[int], q: int, n: int) -> bool:
    """True iff D minus the value n is closed under multiplication by q mod n.

    The value ``n`` itself (the exponent p^m - 1 when n = p^m - 1) is a flag
    outside the residue range and is ignored.
    """
    core = {x for x in D if x != n}
    return all(x * q % n in core for x in core)


def minimal_b(D: Iterable[int], p: int, m: int) -> int:
    """Least d >= 1 for which D (minus p^m - 1) is a union of p^d-classes mod p^m - 1.

    Only divisors of m are scanned; d = m always works because p^m = 1 mod n.
    """
    n = p**m - 1
    D = frozenset(D)
    if n == 1:
        return 1
    for d in divisors(m):
        if is_union_of_classes(D, p**d, n):
            return d
    raise AssertionError("unreachable: d = m always closes")


def closing_degrees(D: Iterable[int], p: int, m: int, upto: int | None = None) -> list[int]:
    """Every d in 1..upto (default m) for which D is a union of p^d-classes."""
    n = p**m - 1
    D = frozenset(D)
    return [d for d in range(1, (upto or m) + 1) if n == 1 or is_union_of_classes(D, p**d, n)]
