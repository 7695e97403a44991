"""Hot search kernels for the monodromy oracle.

Given a fixed permutation ``F`` the kernels walk the conjugacy class of a
cycle type and keep the permutations ``E`` such that ``F`` followed by ``E``
has a prescribed cycle type and ``<F, E>`` (plus any extra generators folded
into ``comp0``) acts transitively.

Two interchangeable backends:

* ``numba``: depth-first search over partial images, pruning on partial
  cycle structure of both ``E`` and the product. Compiled with ``@njit``.
* ``numpy``: the class is listed in lexicographic order and checked in
  vectorized chunks. No pruning; used when numba is unavailable and as a
  cross-check.

Select with the ``HURWITZ_BACKEND`` environment variable (``numba`` or
``numpy``). Both return the lexicographically least witness first, so their
answers coincide. Budgets count DFS nodes for numba and class elements for
numpy.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from hurwitz.permutations import iter_class

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda func: func


MODE_FIRST = 0
MODE_ALL = 1
MODE_COUNT = 2

STATUS_EXHAUSTED = 0
STATUS_FOUND = 1
STATUS_BUDGET = 2
STATUS_OVERFLOW = 3


def cycle_counts(cycle_lengths, d: int) -> np.ndarray:
    cnt = np.zeros(d + 1, dtype=np.int64)
    for length in cycle_lengths:
        cnt[length] += 1
    return cnt


# ---------------------------------------------------------------------------
# numba backend


@njit(cache=True, nogil=True)
def _has_room(rem, length):
    for k in range(length, rem.shape[0]):
        if rem[k] > 0:
            return True
    return False


@njit(cache=True, nogil=True)
def _transitive(e, comp0):
    d = e.shape[0]
    parent = comp0.copy()
    for x in range(d):
        a = x
        while parent[a] != a:
            a = parent[a]
        b = e[x]
        while parent[b] != b:
            b = parent[b]
        if a != b:
            if a < b:
                parent[b] = a
            else:
                parent[a] = b
    roots = 0
    for x in range(d):
        if parent[x] == x:
            roots += 1
    return roots == 1


@njit(cache=True, nogil=True)
def search_pair_numba(fixed, enum_cnt, prod_cnt, comp0, mode, budget, lo, hi, out, frontier):
    """Depth-first search; returns ``(status, nodes, found)``.

    ``out`` receives witnesses (one per row) in MODE_ALL and the first one in
    MODE_FIRST. ``frontier`` receives the partial images when the budget runs
    out (unassigned entries are -1).
    """
    d = fixed.shape[0]
    finv = np.empty(d, np.int64)
    for x in range(d):
        finv[fixed[x]] = x

    e = -np.ones(d, np.int64)
    used = np.zeros(d, np.bool_)
    # chain bookkeeping: head[end] = start, tail[start] = end, length[start]
    eh = np.arange(d)
    et = np.arange(d)
    el = np.ones(d, np.int64)
    ph = np.arange(d)
    pt = np.arange(d)
    pl = np.ones(d, np.int64)
    erem = enum_cnt.copy()
    prem = prod_cnt.copy()

    # undo records per depth: kind (0 closed, 1 merged), closed length or saved values
    e_kind = np.zeros(d, np.int64)
    e_sv = np.zeros((d, 5), np.int64)
    p_kind = np.zeros(d, np.int64)
    p_sv = np.zeros((d, 5), np.int64)
    cand = np.zeros(d + 1, np.int64)

    nodes = 0
    found = 0
    i = 0
    cand[0] = lo
    while i >= 0:
        j = cand[i]
        limit = hi if i == 0 else d
        advanced = False
        while j < limit:
            if used[j]:
                j += 1
                continue
            # E: i -> j
            a = eh[i]
            ok = True
            if j == a:
                length = el[a]
                if erem[length] > 0:
                    erem[length] -= 1
                    e_kind[i] = 0
                    e_sv[i, 0] = length
                else:
                    ok = False
            else:
                new_len = el[a] + el[j]
                if _has_room(erem, new_len):
                    b = et[j]
                    e_kind[i] = 1
                    e_sv[i, 0] = a
                    e_sv[i, 1] = b
                    e_sv[i, 2] = et[a]
                    e_sv[i, 3] = eh[b]
                    e_sv[i, 4] = el[a]
                    et[a] = b
                    eh[b] = a
                    el[a] = new_len
                else:
                    ok = False
            if not ok:
                j += 1
                continue
            # product: finv[i] -> j
            x = finv[i]
            pa = ph[x]
            pok = True
            if j == pa:
                length = pl[pa]
                if prem[length] > 0:
                    prem[length] -= 1
                    p_kind[i] = 0
                    p_sv[i, 0] = length
                else:
                    pok = False
            else:
                new_len = pl[pa] + pl[j]
                if _has_room(prem, new_len):
                    b = pt[j]
                    p_kind[i] = 1
                    p_sv[i, 0] = pa
                    p_sv[i, 1] = b
                    p_sv[i, 2] = pt[pa]
                    p_sv[i, 3] = ph[b]
                    p_sv[i, 4] = pl[pa]
                    pt[pa] = b
                    ph[b] = pa
                    pl[pa] = new_len
                else:
                    pok = False
            if not pok:
                # roll back the E step
                if e_kind[i] == 0:
                    erem[e_sv[i, 0]] += 1
                else:
                    a0 = e_sv[i, 0]
                    b0 = e_sv[i, 1]
                    et[a0] = e_sv[i, 2]
                    eh[b0] = e_sv[i, 3]
                    el[a0] = e_sv[i, 4]
                j += 1
                continue

            e[i] = j
            used[j] = True
            nodes += 1
            if i == d - 1:
                if _transitive(e, comp0):
                    if mode == 0:
                        for k in range(d):
                            out[0, k] = e[k]
                        return 1, nodes, 1
                    elif mode == 1:
                        if found >= out.shape[0]:
                            return 3, nodes, found
                        for k in range(d):
                            out[found, k] = e[k]
                    found += 1
                # undo leaf and try the next candidate
                used[j] = False
                e[i] = -1
                if p_kind[i] == 0:
                    prem[p_sv[i, 0]] += 1
                else:
                    pt[p_sv[i, 0]] = p_sv[i, 2]
                    ph[p_sv[i, 1]] = p_sv[i, 3]
                    pl[p_sv[i, 0]] = p_sv[i, 4]
                if e_kind[i] == 0:
                    erem[e_sv[i, 0]] += 1
                else:
                    et[e_sv[i, 0]] = e_sv[i, 2]
                    eh[e_sv[i, 1]] = e_sv[i, 3]
                    el[e_sv[i, 0]] = e_sv[i, 4]
                j += 1
                continue
            if nodes >= budget:
                for k in range(d):
                    frontier[k] = e[k]
                return 2, nodes, found
            cand[i] = j
            i += 1
            cand[i] = 0
            advanced = True
            break
        if advanced:
            continue
        # depth exhausted: backtrack one level
        i -= 1
        if i < 0:
            break
        j = e[i]
        used[j] = False
        e[i] = -1
        if p_kind[i] == 0:
            prem[p_sv[i, 0]] += 1
        else:
            pt[p_sv[i, 0]] = p_sv[i, 2]
            ph[p_sv[i, 1]] = p_sv[i, 3]
            pl[p_sv[i, 0]] = p_sv[i, 4]
        if e_kind[i] == 0:
            erem[e_sv[i, 0]] += 1
        else:
            et[e_sv[i, 0]] = e_sv[i, 2]
            eh[e_sv[i, 1]] = e_sv[i, 3]
            el[e_sv[i, 0]] = e_sv[i, 4]
        cand[i] = j + 1
    return 0, nodes, found


# ---------------------------------------------------------------------------
# numpy backend


def _orbit_lengths(perms: np.ndarray) -> np.ndarray:
    """Cycle length of every point, row-wise."""
    rows, d = perms.shape
    start = np.broadcast_to(np.arange(d), (rows, d))
    cur = start.copy()
    lengths = np.zeros((rows, d), dtype=np.int64)
    for k in range(1, d + 1):
        cur = np.take_along_axis(perms, cur, axis=1)
        hit = (cur == start) & (lengths == 0)
        lengths[hit] = k
    return lengths


def _cycle_counts_rows(perms: np.ndarray) -> np.ndarray:
    rows, d = perms.shape
    lengths = _orbit_lengths(perms)
    counts = np.zeros((rows, d + 1), dtype=np.int64)
    for length in range(1, d + 1):
        counts[:, length] = (lengths == length).sum(axis=1) // length
    return counts


def _transitive_rows(perms: np.ndarray, comp0: np.ndarray) -> np.ndarray:
    rows, d = perms.shape
    same = (comp0[:, None] == comp0[None, :]).astype(np.int64)
    inv = np.argsort(perms, axis=1)
    reach = np.zeros((rows, d), dtype=bool)
    reach[:, 0] = True
    for _ in range(d):
        reach = (reach.astype(np.int64) @ same) > 0
        reach = reach | np.take_along_axis(reach, inv, axis=1)
    return reach.all(axis=1)


def search_pair_numpy(fixed, enum_type, prod_cnt, comp0, mode, budget, lo, hi, chunk=1 << 14):
    """Vectorized counterpart of :func:`search_pair_numba`.

    Returns ``(status, nodes, witnesses, frontier)`` where ``witnesses`` is a
    2-D array of valid permutations in lexicographic order.
    """
    d = fixed.shape[0]
    fixed = np.asarray(fixed, dtype=np.int64)
    target = np.asarray(prod_cnt, dtype=np.int64)
    found: list[np.ndarray] = []
    nodes = 0

    def check(batch: list) -> np.ndarray:
        arr = np.asarray(batch, dtype=np.int64)
        prod = arr[:, fixed]  # fixed first, then E
        ok = (_cycle_counts_rows(prod) == target).all(axis=1)
        if ok.any():
            ok[ok] = _transitive_rows(arr[ok], comp0)
        return arr[ok]

    batch: list = []
    for perm in iter_class(enum_type):
        if perm[0] < lo:
            continue
        if perm[0] >= hi:
            break
        if nodes >= budget:
            hits = check(batch) if batch else np.zeros((0, d), np.int64)
            if len(hits):
                found.append(hits)
                if mode == MODE_FIRST:
                    return STATUS_FOUND, nodes, hits[:1], None
            return STATUS_BUDGET, nodes, _stack(found, d), np.asarray(perm, dtype=np.int64)
        batch.append(perm)
        nodes += 1
        if len(batch) == chunk:
            hits = check(batch)
            batch = []
            if len(hits):
                if mode == MODE_FIRST:
                    return STATUS_FOUND, nodes, hits[:1], None
                found.append(hits)
    if batch:
        hits = check(batch)
        if len(hits):
            if mode == MODE_FIRST:
                return STATUS_FOUND, nodes, hits[:1], None
            found.append(hits)
    witnesses = _stack(found, d)
    if mode == MODE_FIRST:
        return STATUS_EXHAUSTED, nodes, witnesses, None
    return STATUS_EXHAUSTED, nodes, witnesses, None


def _stack(found, d):
    if not found:
        return np.zeros((0, d), dtype=np.int64)
    return np.concatenate(found, axis=0)


# ---------------------------------------------------------------------------
# dispatch


def default_backend() -> str:
    requested = os.environ.get("HURWITZ_BACKEND", "").strip().lower()
    if requested == "numpy":
        return "numpy"
    if requested not in ("", "numba"):
        raise ValueError(f"HURWITZ_BACKEND must be 'numba' or 'numpy', got {requested!r}")
    return "numba" if NUMBA_AVAILABLE else "numpy"


@dataclass
class SearchResult:
    status: int
    nodes: int
    count: int
    witnesses: np.ndarray
    frontier: np.ndarray | None = None


def search_pair(fixed, enum_type, prod_type, comp0, mode, budget, lo=0, hi=None, backend=None, capacity=None):
    """Run one shard of the pair search on the selected backend."""
    fixed = np.ascontiguousarray(fixed, dtype=np.int64)
    comp0 = np.ascontiguousarray(comp0, dtype=np.int64)
    d = fixed.shape[0]
    if hi is None:
        hi = d
    backend = backend or default_backend()
    prod_cnt = cycle_counts(prod_type, d)
    if backend == "numpy":
        status, nodes, wit, frontier = search_pair_numpy(
            fixed, tuple(enum_type), prod_cnt, comp0, mode, budget, lo, hi
        )
        if mode == MODE_COUNT:
            return SearchResult(status, nodes, len(wit), wit[:0], frontier)
        return SearchResult(status, nodes, len(wit), wit, frontier)
    enum_cnt = cycle_counts(enum_type, d)
    rows = 1 if mode != MODE_ALL else (capacity or 1024)
    while True:
        out = np.zeros((rows, d), dtype=np.int64)
        frontier = -np.ones(d, dtype=np.int64)
        status, nodes, found = search_pair_numba(
            fixed, enum_cnt, prod_cnt, comp0, mode, budget, lo, hi, out, frontier
        )
        if status == STATUS_OVERFLOW:
            rows *= 4
            continue
        if mode == MODE_ALL:
            kept = found
        elif mode == MODE_FIRST:
            kept = 1 if status == STATUS_FOUND else 0
        else:
            kept = 0
        return SearchResult(
            status, nodes, found, out[:kept].copy(), frontier if status == STATUS_BUDGET else None
        )
