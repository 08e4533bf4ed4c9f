"""Exact rationals and the small amount of elementary number theory the rest
of the package needs: factorization, squarefree parts, rational square roots,
Legendre and Hilbert symbols over the places of Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

# Fraction already keeps lowest terms with a positive denominator.
Rat = Fraction

RatLike = Union[int, str, Fraction]


def as_rat(x: RatLike) -> Fraction:
    """Coerce an int, Fraction or a "p/q" string to an exact rational.

    Floats are rejected on purpose; they would silently lose exactness.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        if any(ch in s for ch in ".eE"):
            raise ValueError(f"decimal literal {x!r} not accepted; use p/q")
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_integer(x: Fraction) -> bool:
    return Fraction(x).denominator == 1


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division with a 2/3 wheel."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p, step = 5, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class SquarefreeSplit:
    d: int
    k: int


def squarefree_split(n: int) -> SquarefreeSplit:
    """Write n = d * k**2 with d squarefree."""
    d, k = 1, 1
    for p, e in factorize(n):
        if e % 2:
            d *= p
        k *= p ** (e // 2)
    return SquarefreeSplit(d, k)


def squarefree_part(n: int) -> int:
    """Signed squarefree part of a nonzero integer."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    sign = -1 if n < 0 else 1
    return sign * squarefree_split(abs(n)).d


def rational_sqrt(x: RatLike) -> Optional[Fraction]:
    x = as_rat(x)
    if x < 0:
        raise ValueError("rational_sqrt expects x >= 0")
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def legendre_symbol(a: int, p: int) -> int:
    """Quadratic residue symbol (a|p) for an odd prime p, via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


@dataclass(frozen=True)
class Place:
    """A place of Q: a finite prime ``p`` or the real place (``p is None``)."""

    p: Optional[int] = None

    @property
    def is_infinite(self) -> bool:
        return self.p is None

    def sort_key(self):
        return (self.p is None, self.p or 0)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "inf" if self.p is None else str(self.p)


INFINITY = Place(None)


def finite(p: int) -> Place:
    return Place(p)


def _split_valuation(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def hilbert_symbol(a: int, b: int, v: Place) -> int:
    """Hilbert symbol (a, b)_v for nonzero integers a, b."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if v.is_infinite:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    alpha, u = _split_valuation(a, p)
    beta, w = _split_valuation(b, p)
    if p == 2:
        eps_u = ((u - 1) // 2) % 2
        eps_w = ((w - 1) // 2) % 2
        om_u = ((u * u - 1) // 8) % 2
        om_w = ((w * w - 1) // 8) % 2
        e = (eps_u * eps_w + alpha * om_w + beta * om_u) % 2
        return -1 if e else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * legendre_symbol(u, p) ** beta * legendre_symbol(w, p) ** alpha


def relevant_places(a: int, b: int) -> list[Place]:
    """Places where (a, b)_v can be -1: the real place and primes dividing 2ab."""
    primes = {2}
    for n in (a, b):
        primes.update(p for p, _ in factorize(abs(n)))
    return [Place(p) for p in sorted(primes)] + [INFINITY]
