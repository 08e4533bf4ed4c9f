"""Reproduction of the Markoff-equation table and the quaternion-algebra
tables, with diffs against the bundled reference rows."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from . import _kernels
from .arithmetic import CSV_HEADER, InvariantRow, TableDiff, diff_against_golden, invariant_row
from .exact import rat_str
from .geometry import OrthoTriple, markoff_verify
from .golden import label_aliases, load_golden, pants_list, tori_list

KIND_TABLE = {"pants": "pants_invariants", "torus": "tori_invariants"}


def markoff_diffs(triples: Optional[Sequence[tuple]] = None) -> tuple[list[dict], list[TableDiff]]:
    rows, diffs = [], []
    golden = {tuple(r["triple"]): r for r in load_golden()["markoff"]}
    for trip in triples or tori_list():
        rep = markoff_verify(OrthoTriple.of(*trip))
        row = rep.as_dict()
        rows.append(row)
        g = golden.get(tuple(trip))
        if g is None:
            continue
        lab = str(rep.triple)
        if rat_str(rep.constant) != str(g["constant"]):
            diffs.append(TableDiff("torus", lab, lab, "markoff_constant", str(g["constant"]),
                                   rat_str(rep.constant), "error"))
        if [rat_str(x) for x in rep.squares] != [str(x) for x in g["initial_squares"]]:
            diffs.append(TableDiff("torus", lab, lab, "initial_squares", str(g["initial_squares"]),
                                   str([rat_str(x) for x in rep.squares]), "error"))
        if not rep.ok:
            diffs.append(TableDiff("torus", lab, lab, "markoff_equation", "holds", rep.reason, "error"))
    return rows, diffs


def invariant_rows(kind: str, triples: Optional[Sequence[tuple]] = None, max_len: int = 4,
                   threads: Optional[int] = None) -> list[InvariantRow]:
    if triples is None:
        triples = pants_list() if kind == "pants" else tori_list()
    workers = threads or _kernels.thread_count()
    job = lambda t: invariant_row(OrthoTriple.of(*t), kind, max_len)  # noqa: E731
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(job, triples))
    return [job(t) for t in triples]


def invariant_diffs(kind: str, rows: Sequence[InvariantRow]) -> list[TableDiff]:
    table = KIND_TABLE[kind]
    present = {r.triple.int_tuple() for r in rows}
    aliases = label_aliases(table)
    golden = [g for g in load_golden()[table] if tuple(aliases.get(tuple(g["label"]), g["label"])) in present]
    diffs = diff_against_golden(rows, golden, aliases)
    for r in rows:
        lab = str(r.triple)
        if not r.integrality:
            diffs.append(TableDiff(kind, lab, lab, "integrality", "pass", "fail", "error"))
        if not r.trace_field:
            diffs.append(TableDiff(kind, lab, lab, "trace_field", "pass", "fail", "error"))
        if not r.ram.satisfies_reciprocity():
            diffs.append(TableDiff(kind, lab, lab, "reciprocity", "even", str(r.ram), "error"))
    return diffs


@dataclass(frozen=True)
class InvariantsReport:
    markoff: list
    pants: list
    tori: list
    diffs: list

    @property
    def errors(self) -> list[TableDiff]:
        return [d for d in self.diffs if d.severity == "error"]

    @property
    def warnings(self) -> list[TableDiff]:
        return [d for d in self.diffs if d.severity == "warning"]

    def as_dict(self) -> dict:
        def rowdict(r: InvariantRow) -> dict:
            return {"triple": str(r.triple), "hilbert_raw": list(r.algebra.raw),
                    "hilbert_canonical": [r.algebra.x, r.algebra.y],
                    "ram_set": list(r.ram.finite_primes), "trace_ring_observed": list(r.ring_classes),
                    "integrality": r.integrality, "trace_field": r.trace_field}
        return {"markoff": self.markoff, "pants": [rowdict(r) for r in self.pants],
                "tori": [rowdict(r) for r in self.tori],
                "diffs": [d.as_dict() for d in self.diffs]}

    def csv_rows(self) -> list[list[str]]:
        out = []
        for kind, rows in (("pants", self.pants), ("torus", self.tori)):
            out.extend([kind] + r.csv_row() for r in rows)
        return out


INVARIANTS_CSV_HEADER = ["kind"] + CSV_HEADER


def invariants_report(kinds: Sequence[str] = ("pants", "torus"),
                      triples: Optional[Sequence[tuple]] = None, max_len: int = 4) -> InvariantsReport:
    pants = invariant_rows("pants", triples, max_len) if "pants" in kinds else []
    tori = invariant_rows("torus", triples, max_len) if "torus" in kinds else []
    markoff, diffs = markoff_diffs(triples) if "torus" in kinds else ([], [])
    diffs = list(diffs)
    if pants:
        diffs += invariant_diffs("pants", pants)
    if tori:
        diffs += invariant_diffs("torus", tori)
    return InvariantsReport(markoff, pants, tori, diffs)
