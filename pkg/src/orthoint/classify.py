"""Bounded searches for ortho-integral pants and one-holed tori, and the
finite-depth (1/d)Z membership check for pants spectra."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exact import rat_str
from .geometry import OrthoTriple, hexagon_opposite_cosh_sq, markoff_verify, pants_boundary, torus_boundary_trace
from .orbit import LatticeReport, lattice_orbit_check, pants_generators, seed_vectors

PANTS_BOX = 19
TORUS_A_MAX = 20
TORUS_C_MAX = 107


@dataclass(frozen=True, order=True)
class PantsCandidate:
    a1: int
    a2: int
    a3: int

    def __post_init__(self):
        if not 2 <= self.a1 <= self.a2 <= self.a3:
            raise ValueError(f"need 2 <= a1 <= a2 <= a3, got {self.astuple()}")

    def astuple(self) -> tuple[int, int, int]:
        return (self.a1, self.a2, self.a3)

    def triple(self) -> OrthoTriple:
        return OrthoTriple.of(*self.astuple())

    def __str__(self) -> str:
        return "({},{},{})".format(*self.astuple())


@dataclass(frozen=True, order=True)
class TorusCandidate:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if not 2 <= self.a <= self.b <= self.c:
            raise ValueError(f"need 2 <= a <= b <= c, got {self.astuple()}")
        if self.c - self.a - 1 > self.b:
            raise ValueError(f"{self.astuple()} violates c - a - 1 <= b")

    def astuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def triple(self) -> OrthoTriple:
        return OrthoTriple.of(*self.astuple())

    def __str__(self) -> str:
        return "({},{},{})".format(*self.astuple())


def pants_quantities(a1: int, a2: int, a3: int) -> list[Fraction]:
    """The nine numbers that must be natural for P(a1,a2,a3) to be OI: each
    a_i, each s_i = 2(a1^2+a2^2+a3^2+2a1a2a3-1)/(a_i^2-1), and the three
    boundary trace squares."""
    xs = [Fraction(a1), Fraction(a2), Fraction(a3)]
    num = 2 * (sum(x * x for x in xs) + 2 * xs[0] * xs[1] * xs[2] - 1)
    out = list(xs)
    out += [num / (x * x - 1) for x in xs]
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        out.append(4 * hexagon_opposite_cosh_sq(xs[i], xs[j], xs[k]))
    return out


def oi_pants_condition(a1: int, a2: int, a3: int) -> bool:
    # integer divisibility form of the nine conditions; the a_i are integers
    xs = (a1, a2, a3)
    if min(xs) < 2:
        return False
    num = 2 * (a1 * a1 + a2 * a2 + a3 * a3 + 2 * a1 * a2 * a3 - 1)
    if any(num % (x * x - 1) for x in xs):
        return False
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        x, y, z = xs[i], xs[j], xs[k]
        if (4 * (x * y + z) ** 2) % ((x * x - 1) * (y * y - 1)):
            return False
    return True


def _pants_search_space() -> Iterable[tuple[int, int, int]]:
    seen = set()
    # branch a2 = 2 forces a1 = 2 and (a3 - 1) | 16
    for d in (1, 2, 4, 8, 16):
        seen.add((2, 2, d + 1))
    for a3 in range(2, PANTS_BOX + 1):
        for a2 in range(2, a3 + 1):
            for a1 in range(2, a2 + 1):
                seen.add((a1, a2, a3))
    return sorted(seen)


def classify_oi_pants(full_box: bool = False, box: int = 107) -> list[PantsCandidate]:
    """OI pants up to isometry.  ``full_box`` scans every a1 <= a2 <= a3 <= box
    instead of the proof-derived search space."""
    if full_box:
        space = ((a1, a2, a3) for a3 in range(2, box + 1)
                 for a2 in range(2, a3 + 1) for a1 in range(2, a2 + 1))
    else:
        space = _pants_search_space()
    return sorted(PantsCandidate(*t) for t in space if oi_pants_condition(*t))


def torus_quantities(a: int, b: int, c: int) -> list[Fraction]:
    n = Fraction(a + b + c - 1) ** 2
    return [n / ((a - 1) * (b - 1)), n / ((b - 1) * (c - 1)), n / ((c - 1) * (a - 1))]


def oi_torus_condition(a: int, b: int, c: int) -> bool:
    if min(a, b, c) < 2:
        return False
    n = (a + b + c - 1) ** 2
    return not (n % ((a - 1) * (b - 1)) or n % ((b - 1) * (c - 1)) or n % ((c - 1) * (a - 1)))


def classify_oi_tori(full_box: bool = False, box: int = TORUS_C_MAX) -> list[TorusCandidate]:
    """OI one-holed tori by minimal orthobasis triple.  The default scan uses
    2 <= a <= 20, c - a - 1 <= b <= c <= 107; ``full_box`` drops a <= 20."""
    out = []
    for c in range(2, box + 1):
        for b in range(2, c + 1):
            a_lo = max(2, c - b - 1)
            a_hi = b if full_box else min(b, TORUS_A_MAX)
            for a in range(a_lo, a_hi + 1):
                if oi_torus_condition(a, b, c):
                    out.append(TorusCandidate(a, b, c))
    return sorted(out)


def partial_oi_traces(t: OrthoTriple) -> tuple[Fraction, Fraction]:
    bd = pants_boundary(t)
    return bd.trace_sq_alpha, bd.trace_sq_beta


def minimal_orthobasis_unique(t: TorusCandidate) -> bool:
    """No other b' in [a, c] gives the same boundary trace with (a, c) fixed."""
    target = torus_boundary_trace(t.triple())
    for b2 in range(t.a, t.c + 1):
        if b2 != t.b and torus_boundary_trace(OrthoTriple.of(t.a, b2, t.c)) == target:
            return False
    return True


@dataclass(frozen=True)
class DAOIReport:
    triple: OrthoTriple
    d: int
    depth: int
    result: bool
    visited: int
    backend: str

    def as_dict(self) -> dict:
        return {"triple": str(self.triple), "d": self.d, "depth": self.depth,
                "in_lattice": self.result, "visited": self.visited}


def d_aoi_report(t: OrthoTriple, d: int, depth: int, backend=None) -> DAOIReport:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if d < 1:
        raise ValueError("d must be a positive integer")
    rep: LatticeReport = lattice_orbit_check(list(pants_generators(t)), seed_vectors(t), depth,
                                             scale=d, backend=backend)
    return DAOIReport(t, d, depth, rep.integral, rep.visited, rep.backend)


def d_aoi_check(t: OrthoTriple, d: int, depth: int) -> bool:
    """Do all pants-group orbit vectors of u_alpha, u_beta, u_gamma up to word
    length ``depth`` lie in (1/d)Z^3?  A finite-depth necessary check."""
    return d_aoi_report(t, d, depth).result


# --------------------------------------------------------------------------
# output helpers

PANTS_CSV_HEADER = ["triple", "boundary_trace_squares"]
TORI_CSV_HEADER = ["triple", "boundary_trace", "markoff_constant", "initial_solution_squares"]


def pants_rows(cands: Iterable[PantsCandidate]) -> list[dict]:
    out = []
    for p in cands:
        bd = pants_boundary(p.triple())
        out.append({"triple": list(p.astuple()),
                    "boundary_trace_squares": [rat_str(x) for x in bd.trace_squares]})
    return out


def tori_rows(cands: Iterable[TorusCandidate]) -> list[dict]:
    out = []
    for t in cands:
        m = markoff_verify(t.triple())
        out.append({"triple": list(t.astuple()),
                    "boundary_trace": rat_str(torus_boundary_trace(t.triple())),
                    "markoff_constant": rat_str(m.constant),
                    "initial_solution_squares": [rat_str(x) for x in m.squares]})
    return out
