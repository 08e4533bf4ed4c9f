"""Orbit integrality for the reflection group of H(a,a,a), a in {2,3}, and
the counting data of the glued family X_n."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import rat_str
from .geometry import OrthoTriple
from .orbit import boundary_reflections, lattice_orbit_check, pants_generators, seed_vectors

GLUE_VALUES = (2, 3)


@dataclass(frozen=True)
class OrbitReport:
    a: int
    depth: int
    integral: bool
    orbit_size: int
    backend: str

    def as_dict(self) -> dict:
        return {"a": self.a, "depth": self.depth, "integral": self.integral,
                "orbit_size": self.orbit_size}


def reflection_group(a: int):
    """f_alpha, f_beta, f_gamma, r_alpha, r_beta, r_gamma for the triple (a,a,a)."""
    t = OrthoTriple.of(a, a, a)
    return list(pants_generators(t)) + list(boundary_reflections(t)), t


def lambda_orbit_report(a: int, depth: int, backend: Optional[str] = None) -> OrbitReport:
    if a not in GLUE_VALUES:
        raise ValueError(f"a must be 2 or 3, got {a}")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    gens, t = reflection_group(a)
    rep = lattice_orbit_check(gens, seed_vectors(t), depth, backend=backend)
    return OrbitReport(a, depth, rep.integral, rep.visited, rep.backend)


def lambda_orbit_integral(a: int, depth: int) -> bool:
    """Are all vectors w.u (u a seed, w a word of length <= depth in the six
    reflections) integral?"""
    return lambda_orbit_report(a, depth).integral


@dataclass(frozen=True)
class XnStats:
    n: int
    okiss: int
    area_over_2pi: int
    ratio: Fraction

    def as_dict(self) -> dict:
        return {"n": self.n, "okiss": self.okiss, "area_over_2pi": self.area_over_2pi,
                "ratio": rat_str(self.ratio)}


def xn_stats(n: int) -> XnStats:
    if n < 1:
        raise ValueError("n must be >= 1")
    okiss = 3 * 2 ** (n - 1)
    area = 3 * 2 ** n - 2
    return XnStats(n, okiss, area, Fraction(area, okiss))


def incommensurability_witness(n1: int, n2: int) -> bool:
    """True iff area/okiss differs between X_n1 and X_n2."""
    return xn_stats(n1).ratio != xn_stats(n2).ratio
