"""Compare the numba kernels with the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--cutoff 10^6] [--depth 11] [--repeat 3]

Both backends run on the same inputs and must return identical results;
the first numba call (compilation or cache load) is timed separately.
"""

from __future__ import annotations

import argparse
import json
import time

from orthoint import _kernels
from orthoint.cli import parse_rational
from orthoint.geometry import OrthoTriple
from orthoint.glue import lambda_orbit_report
from orthoint.orbit import enumerate_spectrum

TREE_CASES = [("pants", (2, 2, 2)), ("pants", (5, 5, 11)), ("torus", (2, 3, 6)),
              ("torus", (6, 29, 36))]


def best_of(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cutoff", default="10^6")
    ap.add_argument("--depth", type=int, default=11, help="word length for the reflection orbit")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    cutoff = parse_rational(args.cutoff)
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable")

    rows = []
    t0 = time.perf_counter()
    enumerate_spectrum(OrthoTriple.of(2, 2, 2), "pants", "alpha", 100, backend="numba")
    lambda_orbit_report(2, 2, backend="numba")
    warm = time.perf_counter() - t0

    for kind, trip in TREE_CASES:
        t = OrthoTriple.of(*trip)
        res = {}
        for be in ("numba", "numpy"):
            res[be] = best_of(lambda: enumerate_spectrum(t, kind, "all", cutoff, backend=be), args.repeat)
        assert res["numba"][1].entries == res["numpy"][1].entries
        rows.append({"task": f"spectrum {kind} {t} cutoff {args.cutoff}",
                     "size": res["numba"][1].total_count(),
                     "numba_s": round(res["numba"][0], 4), "numpy_s": round(res["numpy"][0], 4),
                     "speedup": round(res["numpy"][0] / res["numba"][0], 2)})

    for a in (2, 3):
        res = {}
        for be in ("numba", "numpy"):
            res[be] = best_of(lambda: lambda_orbit_report(a, args.depth, backend=be), args.repeat)
        assert res["numba"][1].orbit_size == res["numpy"][1].orbit_size
        rows.append({"task": f"reflection orbit a={a} depth {args.depth}",
                     "size": res["numba"][1].orbit_size,
                     "numba_s": round(res["numba"][0], 4), "numpy_s": round(res["numpy"][0], 4),
                     "speedup": round(res["numpy"][0] / res["numba"][0], 2)})

    print(json.dumps({"numba_warmup_s": round(warm, 3), "threads": _kernels.thread_count(),
                      "results": rows}, indent=2))


if __name__ == "__main__":
    main()
