"""Closed-form hyperbolic identities in cosh-coordinates.

Everything that is rational in the cosh-lengths (a, b, c) of an orthobasis is
computed exactly with :class:`fractions.Fraction`.  Lengths are floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .exact import RatLike, as_rat, rat_str, rational_sqrt


class DomainError(ValueError):
    """Raised when an input lies outside the domain of an identity."""


@dataclass(frozen=True)
class OrthoTriple:
    """Cosh-lengths (a, b, c) of the orthobasis arcs alpha, beta, gamma."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in "abc":
            val = as_rat(getattr(self, name))
            if val <= 1:
                raise DomainError(f"cosh-length {name}={val} must exceed 1")
            object.__setattr__(self, name, val)

    @classmethod
    def of(cls, a: RatLike, b: RatLike, c: RatLike) -> "OrthoTriple":
        return cls(as_rat(a), as_rat(b), as_rat(c))

    @classmethod
    def parse(cls, text: str) -> "OrthoTriple":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated rationals, got {text!r}")
        return cls.of(*parts)

    def astuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.astuple())

    def int_tuple(self) -> tuple[int, int, int]:
        if not self.is_integral():
            raise ValueError(f"{self} has non-integral entries")
        return tuple(int(x) for x in self.astuple())

    def __iter__(self):
        return iter(self.astuple())

    def __str__(self) -> str:
        return "(" + ",".join(rat_str(x) for x in self.astuple()) + ")"


def trace_sq_to_length(trace_sq: Fraction) -> float:
    """Length of a closed geodesic from tr^2, using |tr| = 2 cosh(l/2)."""
    return 2.0 * math.acosh(math.sqrt(float(trace_sq)) / 2.0)


def trace_to_length(trace: Fraction) -> float:
    return 2.0 * math.acosh(float(trace) / 2.0)


def hexagon_opposite_cosh_sq(x: RatLike, y: RatLike, z: RatLike) -> Fraction:
    """Square of cosh of the side opposite z in the right-angled hexagon
    with alternating cosh-sides x, y, z: (xy+z)^2 / ((x^2-1)(y^2-1))."""
    x, y, z = as_rat(x), as_rat(y), as_rat(z)
    if min(x, y, z) <= 1:
        raise DomainError("hexagon sides must have cosh-length > 1")
    return (x * y + z) ** 2 / ((x * x - 1) * (y * y - 1))


def hexagon_opposite_cosh(x: RatLike, y: RatLike, z: RatLike) -> float:
    return math.sqrt(float(hexagon_opposite_cosh_sq(x, y, z)))


@dataclass(frozen=True)
class BoundaryData:
    trace_sq_alpha: Fraction
    trace_sq_beta: Fraction
    trace_sq_gamma: Fraction
    lengths: tuple[float, float, float]

    @property
    def trace_squares(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.trace_sq_alpha, self.trace_sq_beta, self.trace_sq_gamma)

    @property
    def total_length(self) -> float:
        return math.fsum(self.lengths)


def pants_boundary(t: OrthoTriple) -> BoundaryData:
    a, b, c = t
    # boundary delta_x lies opposite the arc x in each hexagon
    ta = 4 * hexagon_opposite_cosh_sq(b, c, a)
    tb = 4 * hexagon_opposite_cosh_sq(c, a, b)
    tg = 4 * hexagon_opposite_cosh_sq(a, b, c)
    return BoundaryData(ta, tb, tg, tuple(trace_sq_to_length(x) for x in (ta, tb, tg)))


@dataclass(frozen=True)
class EtaParams:
    tau: Fraction
    s: Fraction


def eta_params(t: OrthoTriple) -> EtaParams:
    a, b, c = t
    tau = pants_boundary(t).trace_sq_alpha
    s = 2 * (a * a + b * b + c * c + 2 * a * b * c - 1) / (c * c - 1)
    return EtaParams(tau, s)


def eta_sequence(t: OrthoTriple, k_max: int) -> list[Fraction]:
    """Cosh-lengths of the orthogeodesics from delta_gamma that wind k times
    around delta_alpha (cutting sequence gamma, beta, ..., gamma)."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    p = eta_params(t)
    tau, s = p.tau, p.s
    seq = [s - 1, tau * s - 1, tau * tau * s - 2 * tau * s + s - 1]
    while len(seq) <= k_max:
        seq.append((tau - 1) * seq[-1] - (tau - 1) * seq[-2] + seq[-3])
    return seq[: k_max + 1]


def torus_boundary_trace(t: OrthoTriple) -> Fraction:
    """|tr_SL| of the boundary of the one-holed torus T(a, b, c)."""
    a, b, c = t
    return 2 * (a + b + c - 1) ** 2 / ((a - 1) * (b - 1) * (c - 1)) + 2


def torus_boundary_length(t: OrthoTriple) -> float:
    return trace_to_length(torus_boundary_trace(t))


def torus_accompanying_trace_squares(t: OrthoTriple) -> tuple[Fraction, Fraction, Fraction]:
    a, b, c = t
    n = (a + b + c - 1) ** 2
    return (n / ((b - 1) * (c - 1)), n / ((c - 1) * (a - 1)), n / ((a - 1) * (b - 1)))


def markoff_constant(t: OrthoTriple) -> Fraction:
    return 2 - torus_boundary_trace(t)


@dataclass(frozen=True)
class MarkoffReport:
    triple: OrthoTriple
    squares: tuple[Fraction, Fraction, Fraction]
    product: Optional[int]
    constant: Fraction
    ok: bool
    reason: str = ""

    def as_dict(self) -> dict:
        return {
            "triple": str(self.triple),
            "squares": [rat_str(x) for x in self.squares],
            "product": self.product,
            "constant": rat_str(self.constant),
            "ok": self.ok,
            "reason": self.reason,
        }


def markoff_verify(t: OrthoTriple) -> MarkoffReport:
    """Check X^2+Y^2+Z^2-XYZ = 2-|tr(boundary)| on the accompanying traces.

    Failure is reported, not raised: it signals a non-integral torus.
    """
    m = torus_accompanying_trace_squares(t)
    k = markoff_constant(t)
    if any(x.denominator != 1 for x in m):
        return MarkoffReport(t, m, None, k, False, "accompanying trace squares not integral")
    prod_sq = m[0] * m[1] * m[2]
    root = rational_sqrt(prod_sq)
    if root is None or root.denominator != 1:
        return MarkoffReport(t, m, None, k, False, "product of squares is not a perfect square")
    lhs = m[0] + m[1] + m[2]
    for sign in (1, -1):
        if lhs - sign * root == k:
            return MarkoffReport(t, m, int(sign * root), k, True)
    return MarkoffReport(t, m, int(root), k, False, "Markoff-type equation fails for both signs")


def bavard_upper_bound(L: float, g: int, n: int) -> float:
    """Upper bound on cosh(orthosystole) for signature (g, n), boundary length L."""
    denom = 12 * g - 12 + 6 * n
    if 2 * g - 2 + n <= 0:
        raise DomainError("signature must have negative Euler characteristic")
    if L <= 0:
        raise DomainError("boundary length must be positive")
    return 1.0 / (math.cosh(L / denom) - 1.0) + 1.0


def torus_osys_bounds(L: float, oi: bool = False) -> tuple[float, float]:
    """(lower, upper) bounds for cosh(osys) of a one-holed torus.

    The lower bound is strict for general tori (numerator 4) and attainable
    for ortho-integral ones (numerator 5).
    """
    if L <= 0:
        raise DomainError("boundary length must be positive")
    num = 5.0 if oi else 4.0
    return num / (math.cosh(L / 2) - 1.0) + 1.0, bavard_upper_bound(L, 1, 1)


def torus_oi_lower_bound_exact(t: OrthoTriple) -> Fraction:
    """Exact value of 5/(cosh(L/2)-1)+1, with cosh(L/2) = |tr(boundary)|/2."""
    half = torus_boundary_trace(t) / 2
    return 5 / (half - 1) + 1


def strictly_increasing(seq: Iterable[Fraction]) -> bool:
    seq = list(seq)
    return all(x < y for x, y in zip(seq, seq[1:]))
