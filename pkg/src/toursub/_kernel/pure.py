"""Pure-Python exact subdivision search (reference implementation).

Backtracks over injective branch assignments (ascending host order, no
symmetry assumptions) and then over per-edge directed paths, always expanding
the most constrained remaining pattern edge.  Vertex sets are Python-int
bitmasks, so this works for any host size; the compiled twin in
``_speedups.pyx`` mirrors this search step for step on single-word hosts.

NotFound is exact: when the search exhausts without exceeding the node
budget, no subdivision within the length caps exists.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

NOTFOUND = 0
FOUND = 1
BUDGET_EXCEEDED = 2


class _Budget(Exception):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def search_subdivision(
    out_masks: Sequence[int],
    k: int,
    edges: Sequence[Tuple[int, int]],
    max_len: int,
    exact_len: Optional[int],
    budget: int,
) -> Tuple[int, Optional[Tuple[int, ...]], Optional[List[Tuple[int, ...]]], int]:
    """Returns (status, branch, internals-per-edge, nodes)."""
    n = len(out_masks)
    full = (1 << n) - 1
    out = list(out_masks)
    inm = [full & ~out[v] & ~(1 << v) for v in range(n)]
    m = len(edges)
    lo_len = exact_len if exact_len is not None else 1
    hi_len = exact_len if exact_len is not None else max_len

    branch = [-1] * k
    internals: List[Optional[Tuple[int, ...]]] = [None] * m
    state = {"used": 0, "nodes": 0}

    def tick():
        state["nodes"] += 1
        if state["nodes"] > budget:
            raise _Budget

    def path_feasible(x: int, y: int, pool: int) -> bool:
        # Necessary condition only: distinctness of internals is ignored.
        if lo_len <= 1 <= hi_len and (out[x] >> y) & 1:
            return True
        if lo_len <= 2 <= hi_len and out[x] & inm[y] & pool:
            return True
        if hi_len < 3:
            return False
        layer = out[x] & pool
        for length in range(3, hi_len + 1):
            nxt = 0
            for z in _bits(layer):
                nxt |= out[z]
            layer = nxt & pool
            if not layer:
                return False
            if length >= lo_len and layer & inm[y]:
                return True
        return False

    def assign_branch(i: int) -> bool:
        for h in range(n):
            if (state["used"] >> h) & 1:
                continue
            tick()
            branch[i] = h
            state["used"] |= 1 << h
            pool = full & ~state["used"]
            ok = True
            for a, b in edges:
                if a <= i and b <= i and (a == i or b == i):
                    if not path_feasible(branch[a], branch[b], pool):
                        ok = False
                        break
            if ok:
                if i == k - 1:
                    if embed_edges(m):
                        return True
                elif assign_branch(i + 1):
                    return True
            branch[i] = -1
            state["used"] &= ~(1 << h)
        return False

    def edge_options(ei: int, free: int) -> int:
        x = branch[edges[ei][0]]
        y = branch[edges[ei][1]]
        est = 0
        if lo_len <= 1 <= hi_len and (out[x] >> y) & 1:
            est += 1
        if lo_len <= 2 <= hi_len:
            est += (out[x] & inm[y] & free).bit_count()
        if hi_len >= 3:
            a = (out[x] & free).bit_count()
            b = (inm[y] & free).bit_count()
            est += a if a < b else b
        return est

    def embed_edges(remaining: int) -> bool:
        if remaining == 0:
            return True
        free = full & ~state["used"]
        pick = -1
        best = -1
        for ei in range(m):
            if internals[ei] is not None:
                continue
            est = edge_options(ei, free)
            if est == 0:
                return False
            if best < 0 or est < best:
                best = est
                pick = ei
        x = branch[edges[pick][0]]
        y = branch[edges[pick][1]]

        if lo_len <= 1 <= hi_len and (out[x] >> y) & 1:
            tick()
            internals[pick] = ()
            if embed_edges(remaining - 1):
                return True
            internals[pick] = None

        chain = [0] * max(hi_len, 1)

        def extend(depth: int, total: int, prev: int) -> bool:
            # depth internals placed so far out of ``total``.
            free_now = full & ~state["used"]
            if depth == total - 1:
                cands = out[prev] & inm[y] & free_now
            else:
                cands = out[prev] & free_now
            for z in _bits(cands):
                tick()
                chain[depth] = z
                state["used"] |= 1 << z
                if depth == total - 1:
                    internals[pick] = tuple(chain[:total])
                    if embed_edges(remaining - 1):
                        return True
                    internals[pick] = None
                elif extend(depth + 1, total, z):
                    return True
                state["used"] &= ~(1 << z)
            return False

        for length in range(max(2, lo_len), hi_len + 1):
            if extend(0, length - 1, x):
                return True
        return False

    try:
        found = assign_branch(0) if k > 0 else embed_edges(m)
    except _Budget:
        return BUDGET_EXCEEDED, None, None, state["nodes"]
    if found:
        return (
            FOUND,
            tuple(branch),
            [tuple(t) for t in internals],  # type: ignore[arg-type]
            state["nodes"],
        )
    return NOTFOUND, None, None, state["nodes"]
