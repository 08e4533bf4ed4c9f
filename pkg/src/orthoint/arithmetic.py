"""Invariant quaternion algebras and Takeuchi-style checks for the genus-two
doubles of ortho-integral pants and one-holed tori.

Traces are handled in SO(2,1) form: for the image of A in PSL2,
tr_SO = tr_SL(A)^2 - 1, so ``trace_sl_square`` (tr_SO + 1) is the rational
number whose square root is the PSL2 trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .exact import Place, hilbert_symbol, rational_sqrt, relevant_places, squarefree_part
from .geometry import OrthoTriple
from .orbit import (
    IDENTITY,
    Mat3,
    boundary_reflections,
    gram_matrix,
    pants_generators,
    preserves_form,
    torus_generators,
    trace_sl_square,
)

GENERATOR_NAMES = ("w", "x", "y", "z")


@dataclass(frozen=True)
class QuatAlgQ:
    """The algebra (x, y / Q), stored by squarefree parts; the raw pair is kept
    for display."""

    x: int
    y: int
    raw: tuple = field(default=(), compare=False)

    @classmethod
    def of(cls, x: int, y: int) -> "QuatAlgQ":
        if x == 0 or y == 0:
            raise ValueError("Hilbert symbol entries must be nonzero")
        return cls(squarefree_part(x), squarefree_part(y), (x, y))

    @property
    def canonical(self) -> tuple[int, int]:
        return (self.x, self.y)


@dataclass(frozen=True)
class RamSet:
    places: tuple

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(sorted(set(self.places))))

    @property
    def finite_primes(self) -> tuple[int, ...]:
        return tuple(v.p for v in self.places if not v.is_infinite)

    @property
    def has_infinite(self) -> bool:
        return any(v.is_infinite for v in self.places)

    def satisfies_reciprocity(self) -> bool:
        return len(self.places) % 2 == 0

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in self.places) + "}"


def invariant_quaternion_algebra(t: OrthoTriple) -> QuatAlgQ:
    a, b, c = t.int_tuple()
    return QuatAlgQ.of(b * b - 1, a * a + b * b + c * c + 2 * a * b * c - 1)


def ramification_set(alg: QuatAlgQ) -> RamSet:
    places = [v for v in relevant_places(alg.x, alg.y) if hilbert_symbol(alg.x, alg.y, v) == -1]
    return RamSet(tuple(places))


def algebras_isomorphic(u: QuatAlgQ, v: QuatAlgQ) -> bool:
    return ramification_set(u) == ramification_set(v)


@dataclass(frozen=True)
class DoubleGroup:
    generators: tuple
    kind: str
    triple: OrthoTriple

    def __post_init__(self):
        q = gram_matrix(self.triple)
        for name, g in zip(GENERATOR_NAMES, self.generators):
            if g.det() != 1 or not preserves_form(g, q):
                raise ValueError(f"generator {name} is not in SO(q)")


def double_group(t: OrthoTriple, kind: str) -> DoubleGroup:
    """Four generators of the fundamental group of the genus-two double."""
    ra, _, _ = boundary_reflections(t)
    if kind == "pants":
        fa, fb, fg = pants_generators(t)
        rb, rg = boundary_reflections(t)[1:]
        gens = (fa @ fb, fa @ fg, ra @ rb, ra @ rg)
    elif kind == "torus":
        ga, gb, gg = torus_generators(t)
        gens = (ga @ gb, ga @ gg, ra @ ga @ gb @ ra, ra @ ga @ gg @ ra)
    else:
        raise ValueError(f"unknown surface kind {kind!r}")
    return DoubleGroup(gens, kind, t)


def _subset_words(letters: Sequence[str], power: int) -> list[tuple[str, tuple[int, ...]]]:
    out = []
    for size in range(1, len(letters) + 1):
        for combo in combinations(range(len(letters)), size):
            name = "".join(letters[i] + ("^2" if power == 2 else "") for i in combo)
            out.append((name, combo))
    return out


def takeuchi_words() -> list[str]:
    """w, x, y, z, wx, ..., xyz, wxyz in the standard order."""
    return [name for name, _ in _subset_words(GENERATOR_NAMES, 1)]


def takeuchi_word_set(g: DoubleGroup) -> list[Mat3]:
    out = []
    for _, combo in _subset_words(GENERATOR_NAMES, 1):
        m = IDENTITY
        for i in combo:
            m = m @ g.generators[i]
        out.append(m)
    return out


def square_word_set(g: DoubleGroup) -> list[tuple[str, Mat3]]:
    """The fourteen products of squares (every nonempty subset except the full one)."""
    squares = [m @ m for m in g.generators]
    out = []
    for name, combo in _subset_words(GENERATOR_NAMES, 2):
        if len(combo) == 4:
            continue
        m = IDENTITY
        for i in combo:
            m = m @ squares[i]
        out.append((name, m))
    return out


@dataclass(frozen=True)
class TraceReport:
    check: str
    kind: str
    triple: OrthoTriple
    words: tuple
    values: tuple
    passed: bool
    note: str = ""

    def as_dict(self) -> dict:
        from .exact import rat_str

        return {
            "check": self.check,
            "kind": self.kind,
            "triple": str(self.triple),
            "words": list(self.words),
            "trace_sl_squares": [rat_str(v) for v in self.values],
            "passed": self.passed,
            "note": self.note,
        }


def integrality_check(g: DoubleGroup) -> TraceReport:
    names = takeuchi_words()
    vals = tuple(trace_sl_square(m) for m in takeuchi_word_set(g))
    ok = all(v.denominator == 1 and v >= 0 for v in vals)
    return TraceReport("integrality", g.kind, g.triple, tuple(names), vals, ok)


def trace_field_check(g: DoubleGroup) -> TraceReport:
    words = square_word_set(g)
    vals = tuple(trace_sl_square(m) for _, m in words)
    ok = all(v >= 0 and rational_sqrt(v) is not None for v in vals)
    return TraceReport("trace_field", g.kind, g.triple, tuple(n for n, _ in words), vals, ok,
                       "real-place condition vacuous when the invariant trace field is Q")


def square_trace_identity_holds(m: Mat3) -> bool:
    """tr_SO(m^2) + 1 == (tr_SO(m) - 1)^2, i.e. tr(A^2) = tr(A)^2 - 2 in SL2."""
    return trace_sl_square(m @ m) == (m.trace() - 1) ** 2


def _int_form(m: Mat3) -> tuple[tuple, int]:
    d = m.denominator()
    return tuple(int(x * d) for r in m.rows for x in r), d


def _imul(A: tuple, B: tuple) -> tuple:
    return (
        A[0] * B[0] + A[1] * B[3] + A[2] * B[6], A[0] * B[1] + A[1] * B[4] + A[2] * B[7],
        A[0] * B[2] + A[1] * B[5] + A[2] * B[8], A[3] * B[0] + A[4] * B[3] + A[5] * B[6],
        A[3] * B[1] + A[4] * B[4] + A[5] * B[7], A[3] * B[2] + A[4] * B[5] + A[5] * B[8],
        A[6] * B[0] + A[7] * B[3] + A[8] * B[6], A[6] * B[1] + A[7] * B[4] + A[8] * B[7],
        A[6] * B[2] + A[7] * B[5] + A[8] * B[8],
    )


def reduced_words(g: DoubleGroup, max_len: int):
    """Yield (word, tr_SL^2) over the generators and their inverses, with no
    letter followed by its own inverse.  Inverses are written in upper case."""
    mats = []
    for m in g.generators:
        mats.extend([_int_form(m), _int_form(m.inverse())])
    names = []
    for n in GENERATOR_NAMES:
        names.extend([n, n.upper()])
    # matrices are kept as integer numerators over a running denominator
    frontier = [((), (1, 0, 0, 0, 1, 0, 0, 0, 1), 1)]
    for _ in range(max_len):
        nxt = []
        for word, N, d in frontier:
            for k, (Nk, dk) in enumerate(mats):
                if word and (word[-1] ^ 1) == k:
                    continue
                N2, d2 = _imul(N, Nk), d * dk
                w2 = word + (k,)
                nxt.append((w2, N2, d2))
                yield "".join(names[i] for i in w2), Fraction(N2[0] + N2[4] + N2[8], d2) + 1
        frontier = nxt


@dataclass(frozen=True)
class TraceRingSample:
    kind: str
    triple: OrthoTriple
    max_len: int
    n_words: int
    classes: tuple
    negative_words: tuple

    def as_dict(self) -> dict:
        return {"kind": self.kind, "triple": str(self.triple), "max_len": self.max_len,
                "n_words": self.n_words, "squarefree_classes": list(self.classes),
                "negative_words": list(self.negative_words)}


def trace_ring_sample_report(g: DoubleGroup, max_len: int) -> TraceRingSample:
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    classes = set()
    negatives = []
    n = 0
    for word, v in reduced_words(g, max_len):
        n += 1
        if v < 0:
            negatives.append(word)
            continue
        if v == 0:
            continue
        num = v.numerator * v.denominator
        classes.add(squarefree_part(num))
    if negatives:
        raise ArithmeticError(f"negative tr_SL^2 for words {negatives[:5]}: not in the identity component")
    return TraceRingSample(g.kind, g.triple, max_len, n, tuple(sorted(classes)), tuple(negatives))


def trace_ring_sample(g: DoubleGroup, max_len: int) -> set[int]:
    return set(trace_ring_sample_report(g, max_len).classes)


def multiplicative_span(gens: Iterable[int]) -> set[int]:
    """Squarefree classes generated by ``gens`` modulo squares, including 1."""
    span = {1}
    for d in gens:
        span |= {squarefree_part(x * d) for x in span}
    return span


def ring_contains(observed: Iterable[int], ring_generators: Iterable[int]) -> bool:
    return set(observed) <= multiplicative_span(ring_generators)


# --------------------------------------------------------------------------
# table reproduction

@dataclass(frozen=True)
class InvariantRow:
    kind: str
    triple: OrthoTriple
    algebra: QuatAlgQ
    ram: RamSet
    ring_classes: tuple
    integrality: bool
    trace_field: bool

    def csv_row(self) -> list[str]:
        return [str(self.triple),
                f"({self.algebra.raw[0]},{self.algebra.raw[1]})",
                f"({self.algebra.x},{self.algebra.y})",
                "{" + ",".join(str(p) for p in self.ram.finite_primes) + "}",
                "{" + ",".join(str(d) for d in self.ring_classes) + "}"]


CSV_HEADER = ["triple", "hilbert_raw", "hilbert_canonical", "ram_set", "trace_ring_observed"]


def invariant_row(t: OrthoTriple, kind: str, max_len: int = 4) -> InvariantRow:
    alg = invariant_quaternion_algebra(t)
    g = double_group(t, kind)
    return InvariantRow(kind, t, alg, ramification_set(alg),
                        tuple(sorted(trace_ring_sample(g, max_len))),
                        integrality_check(g).passed, trace_field_check(g).passed)


@dataclass(frozen=True)
class TableDiff:
    kind: str
    label: str
    computed_triple: str
    field: str
    expected: str
    observed: str
    severity: str  # "error" or "warning"

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def diff_against_golden(rows: Sequence[InvariantRow], golden: Sequence[dict],
                        aliases: Optional[dict] = None) -> list[TableDiff]:
    """Compare computed rows with golden table rows by ramification set and
    trace-ring containment.  ``aliases`` maps a golden row label to the triple
    it is taken to denote; such rows produce a warning and are compared
    against the aliased triple."""
    aliases = aliases or {}
    by_triple = {r.triple.int_tuple(): r for r in rows}
    diffs = []
    for g in golden:
        label = tuple(g["label"])
        target = tuple(aliases.get(label, label))
        kind = rows[0].kind if rows else ""
        lab = "(" + ",".join(map(str, label)) + ")"
        tgt = "(" + ",".join(map(str, target)) + ")"
        if target != label:
            diffs.append(TableDiff(kind, lab, tgt, "label", lab, tgt, "warning"))
        row = by_triple.get(target)
        if row is None:
            diffs.append(TableDiff(kind, lab, tgt, "row", "present", "missing", "error"))
            continue
        exp_ram = tuple(sorted(g["ram"]))
        if row.ram.finite_primes != exp_ram or row.ram.has_infinite:
            diffs.append(TableDiff(kind, lab, tgt, "ram", str(exp_ram), str(row.ram), "error"))
        if not ring_contains(row.ring_classes, g["ring"]):
            diffs.append(TableDiff(kind, lab, tgt, "trace_ring", str(sorted(multiplicative_span(g["ring"]))),
                                   str(list(row.ring_classes)), "error"))
        golden_alg = QuatAlgQ.of(*g["hilbert_raw"])
        canon_alg = QuatAlgQ.of(*g["hilbert_canonical"])
        if not (algebras_isomorphic(golden_alg, row.algebra) and algebras_isomorphic(canon_alg, row.algebra)):
            diffs.append(TableDiff(kind, lab, tgt, "hilbert_pair",
                                   f"{tuple(g['hilbert_raw'])}={tuple(g['hilbert_canonical'])}",
                                   str(row.algebra.raw), "warning"))
    return diffs
