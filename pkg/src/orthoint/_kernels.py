"""Integer-lattice orbit kernels.

Two hot loops live here, each with a numba implementation and a pure-numpy
fallback that must agree with it:

* ``tree_search``: the pruned orthotree walk that produces a spectrum below a
  cutoff (depth-first in numba, level-synchronous in numpy).
* ``lattice_orbit``: the depth-bounded walk over normal-form words of a
  right-angled reflection group, checking that every orbit vector stays in
  the integer lattice.

Matrices arrive as integer numerators ``num[k]`` with one positive
denominator ``den[k]`` per generator; vectors are int64.  A product that is
not divisible by the denominator means the orbit left the lattice, and the
caller falls back to exact rational arithmetic.

Set ``ORTHO_NUMBA=0`` to force the numpy path.  ``ORTHO_THREADS`` caps the
number of worker threads used to split the lattice walk across first-level
branches (numba kernels release the GIL).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

OK = 0
NON_INTEGRAL = 1
NOT_MONOTONE = 2
OVERFLOW = 3

STATUS_NAMES = {OK: "ok", NON_INTEGRAL: "non-integral", NOT_MONOTONE: "not-monotone",
                OVERFLOW: "overflow"}

_INT_LIMIT = 1 << 62


def _env_flag(name: str, default: str = "1") -> bool:
    return os.environ.get(name, default).strip().lower() not in ("0", "false", "no", "off", "")


try:
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def use_numba() -> bool:
    """True when numba kernels are both importable and enabled."""
    return HAVE_NUMBA and _env_flag("ORTHO_NUMBA")


def thread_count() -> int:
    raw = os.environ.get("ORTHO_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


def vector_limit(num: np.ndarray) -> int:
    """Largest |v| entry for which num @ v cannot overflow int64."""
    m = int(np.abs(num).max()) if num.size else 1
    return _INT_LIMIT // (3 * max(m, 1))


# --------------------------------------------------------------------------
# numpy implementations

def _arc_pruned(V, j, arc):
    """Rows of V (parent vectors) whose subtree through generator j may still
    hold a value within the cutoff.  ``arc = (gram, thresh)`` with
    ``thresh[j] = (cutoff * (1 + margin))^2 * q(seed) * q(e_j)``."""
    gram, thresh = arc
    g = V.astype(np.float64) @ gram[j]
    return g * g <= thresh[j]


def _tree_search_numpy(num, den, seed, first, cutoff, arc=None):
    limit = vector_limit(num)
    values, parents, gens = [], [], []

    if np.abs(seed).max() > limit:
        return OVERFLOW, *_empty3()
    if arc is not None and not _arc_pruned(seed.reshape(1, 3), first, arc)[0]:
        return OK, *_empty3()
    w = num[first] @ seed
    if np.any(w % den[first]):
        return NON_INTEGRAL, *_empty3()
    w = w // den[first]
    if arc is None and w[first] > cutoff:
        return OK, *_empty3()

    values.append(np.array([w[first]], dtype=np.int64))
    parents.append(np.array([-1], dtype=np.int64))
    gens.append(np.array([first], dtype=np.int64))
    vecs = w.reshape(1, 3)
    last = np.array([first], dtype=np.int64)
    ids = np.array([0], dtype=np.int64)
    count = 1

    while len(vecs):
        if np.abs(vecs).max() > limit:
            return OVERFLOW, *_concat3(values, parents, gens)
        parent_val = vecs[np.arange(len(vecs)), last]
        nv, nl, ni = [], [], []
        for j in range(num.shape[0]):
            sel = last != j
            if arc is not None:
                sel &= _arc_pruned(vecs, j, arc)
            if not sel.any():
                continue
            W = vecs[sel] @ num[j].T
            if np.any(W % den[j]):
                return NON_INTEGRAL, *_concat3(values, parents, gens)
            W //= den[j]
            if arc is None:
                if np.any(W[:, j] <= parent_val[sel]):
                    return NOT_MONOTONE, *_concat3(values, parents, gens)
                keep = W[:, j] <= cutoff
            else:
                keep = np.ones(len(W), dtype=bool)
            if not keep.any():
                continue
            W = W[keep]
            n = len(W)
            new_ids = np.arange(count, count + n, dtype=np.int64)
            count += n
            values.append(W[:, j].copy())
            parents.append(ids[sel][keep])
            gens.append(np.full(n, j, dtype=np.int64))
            nv.append(W)
            nl.append(np.full(n, j, dtype=np.int64))
            ni.append(new_ids)
        if not nv:
            break
        vecs = np.concatenate(nv)
        last = np.concatenate(nl)
        ids = np.concatenate(ni)
    return OK, *_concat3(values, parents, gens)


def _empty3():
    e = np.empty(0, dtype=np.int64)
    return e, e.copy(), e.copy()


def _concat3(values, parents, gens):
    if not values:
        return _empty3()
    return np.concatenate(values), np.concatenate(parents), np.concatenate(gens)


_CHUNK = 16384


def _lattice_numpy(num, den, roots, root_masks, commute, depth):
    """Walk normal-form words from each root state; returns (status, visited).

    Pending states are kept per level and the deepest level is always
    expanded first, in batches of up to ``_CHUNK`` rows, so memory stays
    bounded while the arrays stay large enough to vectorize well.
    """
    k = num.shape[0]
    limit = vector_limit(num)
    low = np.array([(1 << s) - 1 for s in range(k)], dtype=np.int64)
    numT = [np.ascontiguousarray(num[s].T) for s in range(k)]
    visited = roots.shape[0] * roots.shape[1]
    pending = [[] for _ in range(depth + 1)]
    pending[depth].append((roots, root_masks))
    level = depth
    while level <= depth:
        if not pending[level]:
            level += 1
            continue
        V, F = pending[level].pop()
        rows = V.shape[0]
        while pending[level] and rows < _CHUNK:
            V2, F2 = pending[level].pop()
            V, F = np.concatenate((V, V2)), np.concatenate((F, F2))
            rows = V.shape[0]
        if rows > _CHUNK:
            pending[level].append((V[_CHUNK:], F[_CHUNK:]))
            V, F = V[:_CHUNK], F[:_CHUNK]
        if level == 0:
            continue
        if np.abs(V).max() > limit:
            return OVERFLOW, visited
        for s in range(k):
            sel = ((F >> s) & 1) == 0
            if not sel.any():
                continue
            W = V[sel] @ numT[s]
            if np.any(W % den[s]):
                return NON_INTEGRAL, visited
            W //= den[s]
            visited += W.shape[0] * W.shape[1]
            nF = (1 << s) | (commute[s] & (low[s] | F[sel]))
            pending[level - 1].append((W, nF))
        level -= 1
    return OK, visited


# --------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _grow(arr, n):
        out = np.empty(max(2 * arr.shape[0], n), dtype=arr.dtype)
        out[: arr.shape[0]] = arr
        return out

    @njit(cache=True, nogil=True)
    def _grow2(arr, n):
        out = np.empty((max(2 * arr.shape[0], n), arr.shape[1]), dtype=arr.dtype)
        out[: arr.shape[0]] = arr
        return out

    @njit(cache=True, nogil=True)
    def _tree_search_numba(num, den, seed, first, cutoff, limit, use_arc, gram, thresh):
        k = num.shape[0]
        values = np.empty(256, np.int64)
        parents = np.empty(256, np.int64)
        gens = np.empty(256, np.int64)
        n = 0

        svec = np.empty((256, 3), np.int64)
        sgen = np.empty(256, np.int64)
        spar = np.empty(256, np.int64)
        top = 0

        for i in range(3):
            if abs(seed[i]) > limit:
                return OVERFLOW, values[:0], parents[:0], gens[:0]
        if use_arc:
            g = 0.0
            for i in range(3):
                g += gram[first, i] * seed[i]
            if g * g > thresh[first]:
                return OK, values[:0], parents[:0], gens[:0]
        w0 = np.zeros(3, np.int64)
        for i in range(3):
            acc = 0
            for j in range(3):
                acc += num[first, i, j] * seed[j]
            if acc % den[first] != 0:
                return NON_INTEGRAL, values[:0], parents[:0], gens[:0]
            w0[i] = acc // den[first]
        svec[0] = w0
        sgen[0] = first
        spar[0] = -1
        top = 1

        w = np.zeros(3, np.int64)
        while top > 0:
            top -= 1
            v = svec[top].copy()
            g = sgen[top]
            par = spar[top]
            val = v[g]
            if val > cutoff and not use_arc:
                continue
            if n >= values.shape[0]:
                values = _grow(values, n + 1)
                parents = _grow(parents, n + 1)
                gens = _grow(gens, n + 1)
            values[n] = val
            parents[n] = par
            gens[n] = g
            me = n
            n += 1
            for i in range(3):
                if abs(v[i]) > limit:
                    return OVERFLOW, values[:n], parents[:n], gens[:n]
            for j in range(k):
                if j == g:
                    continue
                if use_arc:
                    gs = 0.0
                    for i in range(3):
                        gs += gram[j, i] * v[i]
                    if gs * gs > thresh[j]:
                        continue
                for i in range(3):
                    acc = 0
                    for l in range(3):
                        acc += num[j, i, l] * v[l]
                    if acc % den[j] != 0:
                        return NON_INTEGRAL, values[:n], parents[:n], gens[:n]
                    w[i] = acc // den[j]
                if not use_arc and w[j] <= val:
                    return NOT_MONOTONE, values[:n], parents[:n], gens[:n]
                if top >= sgen.shape[0]:
                    svec = _grow2(svec, top + 1)
                    sgen = _grow(sgen, top + 1)
                    spar = _grow(spar, top + 1)
                svec[top] = w
                sgen[top] = j
                spar[top] = me
                top += 1
        return OK, values[:n], parents[:n], gens[:n]

    @njit(cache=True, nogil=True)
    def _lattice_numba(num, den, root, root_mask, commute, depth, limit):
        """Depth-first walk over normal-form words below one root state."""
        k = num.shape[0]
        m = root.shape[0]
        vecs = np.empty((depth + 1, m, 3), np.int64)
        masks = np.empty(depth + 1, np.int64)
        nxt = np.zeros(depth + 1, np.int64)
        vecs[0] = root
        masks[0] = root_mask
        visited = m
        level = 0
        while level >= 0:
            if level == depth or nxt[level] >= k:
                level -= 1
                continue
            s = nxt[level]
            nxt[level] += 1
            F = masks[level]
            if (F >> s) & 1:
                continue
            src = vecs[level]
            for r in range(m):
                for i in range(3):
                    if abs(src[r, i]) > limit:
                        return OVERFLOW, visited
            for r in range(m):
                for i in range(3):
                    acc = 0
                    for l in range(3):
                        acc += num[s, i, l] * src[r, l]
                    if acc % den[s] != 0:
                        return NON_INTEGRAL, visited
                    vecs[level + 1, r, i] = acc // den[s]
            low = (1 << s) - 1
            masks[level + 1] = (1 << s) | (commute[s] & (low | F))
            nxt[level + 1] = 0
            visited += m
            level += 1
        return OK, visited


# --------------------------------------------------------------------------
# public entry points

def tree_search(num, den, seed, first, cutoff, backend=None, arc=None):
    """Enumerate one orthotree in the integer lattice.

    Returns ``(status, values, parents, gens)``; node ``i`` was produced by
    generator ``gens[i]`` from node ``parents[i]`` (``-1`` for the root) and
    its new coordinate is ``values[i]``.

    With ``arc=None`` a branch is cut once its new coordinate exceeds the
    cutoff, and a child not exceeding its parent aborts with NOT_MONOTONE.
    Otherwise ``arc = (gram, thresh)`` (float arrays, see ``_arc_pruned``)
    and a branch is cut only when the arc crossed to enter it is farther
    than the cutoff; expanded nodes above the cutoff are then also returned
    and the caller filters them.
    """
    num = np.ascontiguousarray(num, dtype=np.int64)
    den = np.ascontiguousarray(den, dtype=np.int64)
    seed = np.ascontiguousarray(seed, dtype=np.int64)
    cutoff = int(min(cutoff, _INT_LIMIT))
    backend = backend or ("numba" if use_numba() else "numpy")
    if arc is not None:
        arc = (np.ascontiguousarray(arc[0], dtype=np.float64),
               np.ascontiguousarray(arc[1], dtype=np.float64))
    if backend == "numba":
        gram, thresh = arc if arc is not None else (np.zeros((3, 3)), np.zeros(3))
        st, v, p, g = _tree_search_numba(num, den, seed, int(first), cutoff, vector_limit(num),
                                         arc is not None, gram, thresh)
        return int(st), v, p, g
    return _tree_search_numpy(num, den, seed, int(first), cutoff, arc)


def lattice_orbit(num, den, seeds, commute_masks, depth, backend=None, threads=None):
    """Check that all vectors ``w . seed`` stay integral for every normal-form
    word ``w`` of length at most ``depth``.

    ``commute_masks[s]`` is the bitmask of generators commuting with ``s``.
    Returns ``(status, visited)`` where ``visited`` counts (word, seed) pairs.
    """
    num = np.ascontiguousarray(num, dtype=np.int64)
    den = np.ascontiguousarray(den, dtype=np.int64)
    seeds = np.ascontiguousarray(seeds, dtype=np.int64)
    commute = np.ascontiguousarray(commute_masks, dtype=np.int64)
    backend = backend or ("numba" if use_numba() else "numpy")
    k = num.shape[0]
    limit = vector_limit(num)
    if depth <= 0:
        return OK, seeds.shape[0]
    if np.abs(seeds).max() > limit:
        return OVERFLOW, 0

    # identity word, then one independent subtree per first letter
    roots = []
    for s in range(k):
        W = np.einsum("ij,mj->mi", num[s], seeds)
        if np.any(W % den[s]):
            return NON_INTEGRAL, seeds.shape[0]
        roots.append((W // den[s], (1 << s) | (int(commute[s]) & ((1 << s) - 1))))

    def run(item):
        W, mask = item
        if backend == "numba":
            st, vis = _lattice_numba(num, den, W, mask, commute, depth - 1, limit)
            return int(st), int(vis)
        return _lattice_numpy(num, den, W[None, :, :], np.array([mask], dtype=np.int64),
                              commute, depth - 1)

    workers = min(threads or thread_count(), k)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, roots))
    else:
        results = [run(r) for r in roots]
    visited = seeds.shape[0] + sum(v for _, v in results)
    statuses = {st for st, _ in results}
    # a lattice escape is conclusive; an overflow only means "undecided here"
    for st in (NON_INTEGRAL, OVERFLOW):
        if st in statuses:
            return st, visited
    return OK, visited
