"""The quadratic form q_(a,b,c), the reflection/rotation groups acting on it,
and orthotree enumeration of ortho cosh-length spectra.

Conventions
-----------
Generators are indexed 0, 1, 2 for the labels alpha, beta, gamma and written
``a``, ``b``, ``g`` in words.  A word string is a matrix product written left
to right, so ``"gbg"`` means ``f_gamma @ f_beta @ f_gamma`` and its rightmost
letter acts first on the seed vector.

Each orthotree is rooted at the boundary side of the base hexagon carried by
``u_x`` and its first step is the generator ``x`` (the arc opposite that
side).  Every later step is a different generator from the previous one.  The
cosh-length contributed by a node is the coordinate changed by its outermost
generator; that coordinate strictly grows along every root path, which the
enumeration asserts while pruning at the cutoff.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .exact import as_rat, rat_str
from .geometry import OrthoTriple, pants_boundary, torus_boundary_trace, trace_sq_to_length, trace_to_length

LABELS = ("alpha", "beta", "gamma")
LETTERS = "abg"
KINDS = ("pants", "torus")

Vec3 = tuple


class MonotonicityError(RuntimeError):
    """A child node's cosh-length did not exceed its parent's; pruning at a
    cutoff would be unsound, so enumeration stops."""


def label_index(label) -> int:
    if isinstance(label, int):
        if label in (0, 1, 2):
            return label
        raise ValueError(f"bad label index {label}")
    key = str(label).lower()
    aliases = {"alpha": 0, "a": 0, "beta": 1, "b": 1, "gamma": 2, "g": 2, "c": 2}
    if key not in aliases:
        raise ValueError(f"unknown boundary label {label!r}")
    return aliases[key]


class Mat3:
    """Immutable 3x3 matrix over the rationals."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(as_rat(x) if not isinstance(x, Fraction) else x for x in r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs exactly 3 rows of 3 entries")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Mat3 is immutable")

    @classmethod
    def identity(cls) -> "Mat3":
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat3) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rat_str(x) for x in r) for r in self.rows)
        return f"Mat3[{body}]"

    def __matmul__(self, other):
        A = self.rows
        if isinstance(other, Mat3):
            B = other.rows
            return Mat3([[A[i][0] * B[0][j] + A[i][1] * B[1][j] + A[i][2] * B[2][j]
                          for j in range(3)] for i in range(3)])
        v = tuple(other)
        return tuple(A[i][0] * v[0] + A[i][1] * v[1] + A[i][2] * v[2] for i in range(3))

    def __mul__(self, k):
        return Mat3([[k * x for x in r] for r in self.rows])

    __rmul__ = __mul__

    @property
    def T(self) -> "Mat3":
        return Mat3(zip(*self.rows))

    def trace(self) -> Fraction:
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def det(self) -> Fraction:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def inverse(self) -> "Mat3":
        d = self.det()
        if d == 0:
            raise ZeroDivisionError("singular matrix")
        (a, b, c), (e, f, g), (h, i, j) = self.rows
        adj = [[f * j - g * i, c * i - b * j, b * g - c * f],
               [g * h - e * j, a * j - c * h, c * e - a * g],
               [e * i - f * h, b * h - a * i, a * f - b * e]]
        return Mat3([[x / d for x in r] for r in adj])

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def denominator(self) -> int:
        return math.lcm(*(x.denominator for r in self.rows for x in r))

    def to_lattice(self) -> tuple[np.ndarray, int]:
        """Integer numerator matrix and common denominator."""
        d = self.denominator()
        return np.array([[int(x * d) for x in r] for r in self.rows], dtype=object), d


IDENTITY = Mat3.identity()


def vec(*xs) -> tuple:
    return tuple(as_rat(x) for x in xs)


@dataclass(frozen=True)
class QForm:
    gram: Mat3

    def B(self, x: Sequence, y: Sequence) -> Fraction:
        Gy = self.gram @ y
        return sum((Fraction(xi) * gi for xi, gi in zip(x, Gy)), Fraction(0))

    def q(self, x: Sequence) -> Fraction:
        return self.B(x, x)


def gram_matrix(t: OrthoTriple) -> QForm:
    a, b, c = t
    return QForm(Mat3([
        [a * a - 1, -(a * b + c), -(c * a + b)],
        [-(a * b + c), b * b - 1, -(b * c + a)],
        [-(c * a + b), -(b * c + a), c * c - 1],
    ]))


def special_vectors(t: OrthoTriple) -> dict[str, tuple]:
    """The vectors e_i, u_*, v_*, w_* attached to the hexagon H(a, b, c)."""
    a, b, c = t
    one, zero = Fraction(1), Fraction(0)
    return {
        "e1": (one, zero, zero), "e2": (zero, one, zero), "e3": (zero, zero, one),
        "u_alpha": (-one, c, b), "u_beta": (c, -one, a), "u_gamma": (b, a, -one),
        "v_alpha": (zero, c * c - 1, b * c + a), "v_beta": (c * a + b, zero, a * a - 1),
        "v_gamma": (b * b - 1, a * b + c, zero),
        "w_alpha": (zero, b * c + a, b * b - 1), "w_beta": (c * c - 1, zero, c * a + b),
        "w_gamma": (a * b + c, a * a - 1, zero),
    }


ORTHOGONAL_BASES = (
    ("v_beta", "u_beta", "e1"), ("w_gamma", "u_gamma", "e1"),
    ("v_gamma", "u_gamma", "e2"), ("w_alpha", "u_alpha", "e2"),
    ("v_alpha", "u_alpha", "e3"), ("w_beta", "u_beta", "e3"),
)


def seed_vectors(t: OrthoTriple) -> tuple[tuple, tuple, tuple]:
    sv = special_vectors(t)
    return sv["u_alpha"], sv["u_beta"], sv["u_gamma"]


def pants_generators(t: OrthoTriple) -> tuple[Mat3, Mat3, Mat3]:
    """Reflections in the orthobasis arcs; they generate the pants group."""
    a, b, c = t
    fa = Mat3([[-1, 2 * (a * b + c) / (a * a - 1), 2 * (a * c + b) / (a * a - 1)],
               [0, 1, 0], [0, 0, 1]])
    fb = Mat3([[1, 0, 0],
               [2 * (b * a + c) / (b * b - 1), -1, 2 * (b * c + a) / (b * b - 1)],
               [0, 0, 1]])
    fg = Mat3([[1, 0, 0], [0, 1, 0],
               [2 * (c * a + b) / (c * c - 1), 2 * (c * b + a) / (c * c - 1), -1]])
    return fa, fb, fg


def torus_generators(t: OrthoTriple) -> tuple[Mat3, Mat3, Mat3]:
    """Order-two rotations about the midpoints of the orthobasis arcs."""
    a, b, c = t
    p, q, r = (b + c) / (a - 1), (c + a) / (b - 1), (a + b) / (c - 1)
    ga = Mat3([[-1, p, p], [0, 0, 1], [0, 1, 0]])
    gb = Mat3([[0, 0, 1], [q, -1, q], [1, 0, 0]])
    gg = Mat3([[0, 1, 0], [1, 0, 0], [r, r, -1]])
    return ga, gb, gg


def boundary_reflections(t: OrthoTriple) -> tuple[Mat3, Mat3, Mat3]:
    """Reflections in the three boundary sides of H(a, b, c)."""
    a, b, c = t
    ra = Mat3([[-1, 0, 0], [2 * c, 1, 0], [2 * b, 0, 1]])
    rb = Mat3([[1, 2 * c, 0], [0, -1, 0], [0, 2 * a, 1]])
    rg = Mat3([[1, 0, 2 * b], [0, 1, 2 * a], [0, 0, -1]])
    return ra, rb, rg


def generators(t: OrthoTriple, kind: str) -> tuple[Mat3, Mat3, Mat3]:
    if kind == "pants":
        return pants_generators(t)
    if kind == "torus":
        return torus_generators(t)
    raise ValueError(f"unknown surface kind {kind!r}")


def preserves_form(m: Mat3, q: QForm) -> bool:
    return m.T @ q.gram @ m == q.gram


def cosh_distance_sq(u1: Sequence, u2: Sequence, q: QForm) -> Fraction:
    """Squared cosh-distance between the geodesics dual to two space-like vectors."""
    b11, b22 = q.B(u1, u1), q.B(u2, u2)
    if b11 <= 0 or b22 <= 0:
        raise ValueError("cosh_distance_sq needs space-like vectors (B(u,u) > 0)")
    b12 = q.B(u1, u2)
    return b12 * b12 / (b11 * b22)


def trace_sl_square(m: Mat3) -> Fraction:
    """tr_SL^2 of the PSL2 element whose SO(2,1) image is ``m``."""
    return m.trace() + 1


def word_matrix(word: str, gens: Sequence[Mat3]) -> Mat3:
    m = IDENTITY
    for ch in word:
        m = m @ gens[LETTERS.index(ch)]
    return m


def apply_word(word: str, gens: Sequence[Mat3], v: Sequence) -> tuple:
    """Apply a word (rightmost letter first) to a vector."""
    v = tuple(v)
    for ch in reversed(word):
        v = gens[LETTERS.index(ch)] @ v
    return v


def alternating_word(first: int, second: int, k: int) -> str:
    """The word (x y)^k x with x = ``first``, y = ``second``."""
    x, y = LETTERS[first], LETTERS[second]
    return (x + y) * k + x


# --------------------------------------------------------------------------
# spectra

@dataclass(frozen=True)
class SpectrumEntry:
    cosh_length: Fraction
    multiplicity: int
    witness_word: str

    def as_dict(self) -> dict:
        return {"cosh": rat_str(self.cosh_length), "mult": self.multiplicity,
                "word": self.witness_word}


@dataclass(frozen=True)
class Spectrum:
    entries: tuple
    cutoff: Fraction
    surface_kind: str
    boundary_label: str
    triple: OrthoTriple
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        vals = [e.cosh_length for e in self.entries]
        if any(x >= y for x, y in zip(vals, vals[1:])):
            raise ValueError("spectrum entries must be strictly increasing")
        if vals and vals[-1] > self.cutoff:
            raise ValueError("spectrum entry above cutoff")

    def values(self) -> list[Fraction]:
        return [e.cosh_length for e in self.entries]

    def multiset(self) -> list[Fraction]:
        out = []
        for e in self.entries:
            out.extend([e.cosh_length] * e.multiplicity)
        return out

    def total_count(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def __contains__(self, x) -> bool:
        x = as_rat(x)
        return any(e.cosh_length == x for e in self.entries)

    def is_integral(self) -> bool:
        return all(e.cosh_length.denominator == 1 for e in self.entries)

    def as_dict(self) -> dict:
        return {
            "surface_kind": self.surface_kind,
            "triple": [rat_str(x) for x in self.triple],
            "boundary": self.boundary_label,
            "cutoff": rat_str(self.cutoff),
            "entries": [e.as_dict() for e in self.entries],
            "meta": self.meta,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False)

    def csv_rows(self) -> list[list[str]]:
        return [[rat_str(e.cosh_length), str(e.multiplicity), e.witness_word] for e in self.entries]


@dataclass(frozen=True)
class TreeNode:
    value: Fraction
    word: str


def _to_lattice(gens: Sequence[Mat3]):
    nums, dens = [], []
    for g in gens:
        n, d = g.to_lattice()
        nums.append(n)
        dens.append(d)
    return nums, dens


def _fits_int64(arrs) -> bool:
    return all(abs(int(x)) < (1 << 62) for a in arrs for x in np.asarray(a, dtype=object).ravel())


def _words_from_parents(parents: np.ndarray, gens: np.ndarray) -> list[str]:
    words: list[Optional[str]] = [None] * len(parents)
    for i in range(len(parents)):
        p = int(parents[i])
        letter = LETTERS[int(gens[i])]
        # parents always precede children in both kernels
        words[i] = letter if p < 0 else letter + words[p]
    return words


PRUNINGS = ("monotone", "arc")
_ARC_MARGIN = 1e-9


def default_pruning(kind: str) -> str:
    # produced coordinates need not grow along a path (pants (2,2,5) and
    # torus (6,29,36) both have a child below its parent), so the default is
    # the arc bound for every surface kind
    return "arc"


def _arc_test(t: OrthoTriple, seed: Sequence, cutoff: Fraction):
    """Exact test for the arc bound.

    Coordinate i of w.u equals B(u, w^-1 u_i) / q(u_i), so a node reached by
    generator j from parent vector v sits beyond the arc lift dual to
    w'^-1 e_j, whose cosh-distance to the root boundary is
    |(G v)_j| / sqrt(q(u) q(e_j)).  Every value in that subtree is at least
    this distance, so the subtree can go once it exceeds the cutoff.
    """
    qf = gram_matrix(t)
    G = qf.gram
    qu = qf.q(seed)
    lim = [cutoff * cutoff * qu * G[j, j] for j in range(3)]

    def keep(v, j) -> bool:
        g = G[j, 0] * v[0] + G[j, 1] * v[1] + G[j, 2] * v[2]
        return g * g <= lim[j]
    return keep


def _arc_floats(t: OrthoTriple, seed: Sequence, cutoff: Fraction):
    qf = gram_matrix(t)
    gram = np.array([[float(qf.gram[i, j]) for j in range(3)] for i in range(3)])
    c = float(cutoff) * (1 + _ARC_MARGIN)
    thresh = np.array([c * c * float(qf.q(seed)) * gram[j, j] for j in range(3)])
    return gram, thresh


def _exact_tree(gens: Sequence[Mat3], seed: Sequence, first: int, cutoff: Fraction,
                keep=None) -> list[TreeNode]:
    out = []
    if keep is not None and not keep(seed, first):
        return out
    stack = [(gens[first] @ tuple(seed), first, LETTERS[first], None)]
    while stack:
        v, g, word, parent_val = stack.pop()
        val = v[g]
        if keep is None:
            if parent_val is not None and val <= parent_val:
                raise MonotonicityError(
                    f"word {word!r}: cosh-length {val} does not exceed parent value {parent_val}")
            if val > cutoff:
                continue
        if val <= cutoff:
            out.append(TreeNode(val, word))
        for j in range(3):
            if j != g and (keep is None or keep(v, j)):
                stack.append((gens[j] @ v, j, LETTERS[j] + word, val))
    return out


def orthotree(t: OrthoTriple, kind: str, start, cutoff, backend: Optional[str] = None,
              pruning: Optional[str] = None) -> list[TreeNode]:
    """All nodes of the orthotree rooted at boundary side ``start`` whose
    cosh-length is at most ``cutoff`` (one node per reduced word).

    ``backend`` is ``"numba"``, ``"numpy"``, ``"exact"`` or ``None`` (auto).
    The lattice kernels are used when every produced coordinate is an integer;
    anything else is redone with exact rationals.

    ``pruning="monotone"`` cuts a branch when its new coordinate exceeds the
    cutoff and raises MonotonicityError if a child fails to exceed its
    parent.  ``pruning="arc"`` cuts a branch only when the arc it crosses is
    farther than the cutoff from the root boundary, which needs no growth
    assumption and is the default.
    """
    cutoff = as_rat(cutoff)
    if cutoff <= 1:
        raise ValueError("cutoff must exceed 1")
    pruning = pruning or default_pruning(kind)
    if pruning not in PRUNINGS:
        raise ValueError(f"unknown pruning {pruning!r}")
    idx = label_index(start)
    gens = generators(t, kind)
    seed = seed_vectors(t)[idx]
    keep = _arc_test(t, seed, cutoff) if pruning == "arc" else None

    if backend != "exact" and all(x.denominator == 1 for x in seed):
        nums, dens = _to_lattice(gens)
        if _fits_int64(nums):
            num = np.array(nums, dtype=np.int64)
            den = np.array(dens, dtype=np.int64)
            s = np.array([int(x) for x in seed], dtype=np.int64)
            arc = _arc_floats(t, seed, cutoff) if pruning == "arc" else None
            status, values, parents, letters = _kernels.tree_search(
                num, den, s, idx, math.floor(cutoff), backend=backend, arc=arc)
            if status == _kernels.OK:
                words = _words_from_parents(parents, letters)
                return [TreeNode(Fraction(int(v)), w) for v, w in zip(values, words)
                        if v <= cutoff]
    return _exact_tree(gens, seed, idx, cutoff, keep)


def _collect(nodes: Iterable[tuple[Fraction, str, int]]) -> tuple:
    best: dict[Fraction, list] = {}
    for val, word, mult in nodes:
        cur = best.get(val)
        key = (len(word), word)
        if cur is None:
            best[val] = [mult, key]
        else:
            cur[0] += mult
            if key < cur[1]:
                cur[1] = key
    return tuple(SpectrumEntry(v, best[v][0], best[v][1][1]) for v in sorted(best))


def arcs_at_boundary(t: OrthoTriple, kind: str, boundary: int) -> list[tuple[Fraction, str]]:
    """Orthobasis arcs with an endpoint on the given boundary, once per endpoint."""
    vals = t.astuple()
    if kind == "pants":
        return [(vals[j], "") for j in range(3) if j != boundary]
    return [(v, "") for v in vals for _ in range(2)]


def enumerate_spectrum(t: OrthoTriple, kind: str = "pants", start="alpha", cutoff=10**6,
                       tree_multiplicity: int = 2, backend: Optional[str] = None,
                       pruning: Optional[str] = None) -> Spectrum:
    """Ortho cosh-length spectrum below ``cutoff``.

    ``start`` in alpha/beta/gamma gives the single orthotree rooted at that
    boundary side (multiplicity = number of reduced words).  ``start="all"``
    gives the oriented spectrum of the whole surface: every orthotree counted
    ``tree_multiplicity`` times (the base hexagon and its mirror image) plus
    the orthobasis arcs once per endpoint.  An empty witness word marks an
    orthobasis arc.
    """
    cutoff = as_rat(cutoff)
    if cutoff <= 1:
        raise ValueError("cutoff must exceed 1")
    if kind not in KINDS:
        raise ValueError(f"unknown surface kind {kind!r}")
    if str(start).lower() == "all":
        items = []
        for idx in range(3):
            for node in orthotree(t, kind, idx, cutoff, backend, pruning):
                items.append((node.value, node.word, tree_multiplicity))
            if kind == "pants":
                items.extend((v, w, 1) for v, w in arcs_at_boundary(t, kind, idx) if v <= cutoff)
        if kind == "torus":
            items.extend((v, w, 1) for v, w in arcs_at_boundary(t, kind, 0) if v <= cutoff)
        label = "all"
        meta = {"tree_multiplicity": tree_multiplicity, "orientation": "oriented",
                "arcs": "once per endpoint"}
    else:
        idx = label_index(start)
        items = [(n.value, n.word, 1) for n in orthotree(t, kind, idx, cutoff, backend, pruning)]
        label = LABELS[idx]
        meta = {"seed": f"u_{label}", "first_generator": LETTERS[idx]}
    meta["word_convention"] = "product written left to right; rightmost letter acts first"
    meta["pruning"] = pruning or default_pruning(kind)
    return Spectrum(_collect(items), cutoff, kind, label, t, meta)


# --------------------------------------------------------------------------
# Basmajian partial sums

def basmajian_term(x: Fraction) -> float:
    """2 log coth(L/2) for cosh(L) = x, i.e. log((x+1)/(x-1))."""
    return math.log1p(float(2 / (Fraction(x) - 1)))


@dataclass(frozen=True)
class BasmajianRow:
    boundary: str
    target_length: float
    partial_sum: float
    relative_error: float
    n_terms: int

    def as_dict(self) -> dict:
        return {"boundary": self.boundary, "target_length": self.target_length,
                "partial_sum": self.partial_sum, "relative_error": self.relative_error,
                "n_terms": self.n_terms}


def boundary_lengths(t: OrthoTriple, kind: str) -> dict[str, float]:
    if kind == "pants":
        bd = pants_boundary(t)
        return dict(zip(LABELS, bd.lengths))
    return {"all": trace_to_length(torus_boundary_trace(t))}


def basmajian_sums(t: OrthoTriple, kind: str, cutoff, tree_multiplicity: int = 2,
                   backend: Optional[str] = None, pruning: Optional[str] = None) -> list[BasmajianRow]:
    """Per-boundary partial sums of 2 log coth(L/2) over orthogeodesics that
    start on that boundary, against the boundary length from its trace."""
    cutoff = as_rat(cutoff)
    targets = boundary_lengths(t, kind)
    rows = []
    if kind == "pants":
        groups = {LABELS[i]: [i] for i in range(3)}
    else:
        groups = {"all": [0, 1, 2]}
    for name, idxs in groups.items():
        terms = []
        for i in idxs:
            for node in orthotree(t, kind, i, cutoff, backend, pruning):
                terms.extend([basmajian_term(node.value)] * tree_multiplicity)
        arc_boundary = idxs[0]
        terms.extend(basmajian_term(v) for v, _ in arcs_at_boundary(t, kind, arc_boundary) if v <= cutoff)
        total = math.fsum(terms)
        target = targets[name]
        rows.append(BasmajianRow(name, target, total, abs(target - total) / target, len(terms)))
    return rows


# --------------------------------------------------------------------------
# lattice orbits of reflection groups

def commute_masks(gens: Sequence[Mat3]) -> list[int]:
    masks = []
    for i, g in enumerate(gens):
        m = 0
        for j, h in enumerate(gens):
            if i != j and g @ h == h @ g:
                m |= 1 << j
        masks.append(m)
    return masks


def _exact_lattice(gens: Sequence[Mat3], seeds: Sequence[tuple], masks: Sequence[int], depth: int,
                   scale: int = 1) -> tuple[bool, int]:
    k = len(gens)
    visited = len(seeds)
    if any((scale * x).denominator != 1 for s in seeds for x in s):
        return False, visited
    stack = [(tuple(tuple(s) for s in seeds), 0, 0)]
    while stack:
        vs, F, lvl = stack.pop()
        if lvl == depth:
            continue
        for s in range(k):
            if (F >> s) & 1:
                continue
            ws = tuple(gens[s] @ v for v in vs)
            visited += len(ws)
            if any((scale * x).denominator != 1 for w in ws for x in w):
                return False, visited
            nF = (1 << s) | (masks[s] & (((1 << s) - 1) | F))
            stack.append((ws, nF, lvl + 1))
    return True, visited


@dataclass(frozen=True)
class LatticeReport:
    integral: bool
    visited: int
    depth: int
    backend: str


def lattice_orbit_check(gens: Sequence[Mat3], seeds: Sequence[tuple], depth: int, scale: int = 1,
                        backend: Optional[str] = None) -> LatticeReport:
    """Does every vector ``w . seed`` (``w`` a word of length <= depth) lie in
    ``(1/scale) Z^3``?

    Words are enumerated once per group element using the right-angled normal
    form: commuting generator pairs are detected from the matrices.
    """
    masks = commute_masks(gens)
    scale_f = Fraction(scale)
    scaled = [tuple(scale_f * x for x in s) for s in seeds]
    lattice_ok = all(x.denominator == 1 for s in scaled for x in s)
    if backend != "exact" and lattice_ok:
        nums, dens = _to_lattice(gens)
        if _fits_int64(nums):
            status, visited = _kernels.lattice_orbit(
                np.array(nums, dtype=np.int64), np.array(dens, dtype=np.int64),
                np.array([[int(x) for x in s] for s in scaled], dtype=np.int64),
                np.array(masks, dtype=np.int64), depth, backend=backend)
            used = backend or ("numba" if _kernels.use_numba() else "numpy")
            if status == _kernels.OK:
                return LatticeReport(True, visited, depth, used)
            if status == _kernels.NON_INTEGRAL:
                return LatticeReport(False, visited, depth, used)
    ok, visited = _exact_lattice(gens, seeds, masks, depth, scale)
    return LatticeReport(ok, visited, depth, "exact")
