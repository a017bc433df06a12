"""Transitive-tournament subdivisions: the length-3 recursion and the
1-subdivision pipeline.

The length-3 finder embeds short paths on a nearly-regular branch set and,
when stuck, splits off the common in/out neighbourhoods of the stuck pair
and recurses on both sides.  The 1-subdivision finder clusters vertices
whose out-neighbourhoods are nearly equal (the auxiliary graph), separates
that graph into small components with a BFS ball separator, recurses on two
component families of a degree-ordered split, and joins the halves with
exact 2-paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .core import Tournament, bits_of, induced, mask_of
from .errors import BallTooLarge, FailureTrace, InfeasibleSize, TooSmall
from .params import FinderParams
from .subdivision import PathWitness, Subdivision, pattern_transitive

__all__ = [
    "NearlyRegularSet",
    "find_nearly_regular",
    "find_nearly_regular_k",
    "find_tt_len3",
    "Graph",
    "build_aux_graph",
    "BallDecomposition",
    "ball_decomposition",
    "ComponentPartition",
    "partition_components",
    "transitive_chain",
    "find_one_subdivision",
]

RATIO_BOUND = 4
DEGREE_WINDOW_FACTOR = 10  # (C, m, k) window half-width is 10k


# ---------------------------------------------------------------------------
# nearly-regular sets


@dataclass(frozen=True)
class NearlyRegularSet:
    """Vertices with out/in-degree ratio in [1, C], one inequality side for
    all of them; the k-variant pins in-degrees to a 10k-wide window."""

    vertices: Tuple[int, ...]
    ratio_bound: int
    side: str  # "out" for d- <= d+ <= C d-, "in" for the reverse chain
    m: Optional[int] = None


def _ratio_set(t: Tournament) -> Tuple[List[int], List[int]]:
    """Vertices satisfying each side chain (overlap allowed when d+ = d-)."""
    out_side = []
    in_side = []
    for v in t.vertices():
        dp = t.out_degree(v)
        dm = t.n - 1 - dp
        if dp == 0 or dm == 0:
            continue
        if dm <= dp <= RATIO_BOUND * dm:
            out_side.append(v)
        if dp <= dm <= RATIO_BOUND * dp:
            in_side.append(v)
    return out_side, in_side


def find_nearly_regular(t: Tournament) -> NearlyRegularSet:
    """The larger side-homogeneous half of the bounded-ratio vertex set.

    The ratio set has at least |T|/5 vertices for every tournament our
    generators produce; a violation raises, so callers can surface it.
    """
    if t.n < 10:
        raise TooSmall("nearly-regular extraction needs at least 10 vertices")
    out_side, in_side = _ratio_set(t)
    ratio_count = len(set(out_side) | set(in_side))
    if 5 * ratio_count < t.n:
        raise TooSmall(
            f"bounded-ratio set has {ratio_count} < n/5 vertices; "
            "host is too lopsided for the nearly-regular argument"
        )
    if len(out_side) >= len(in_side):
        return NearlyRegularSet(tuple(out_side), RATIO_BOUND, "out")
    return NearlyRegularSet(tuple(in_side), RATIO_BOUND, "in")


def find_nearly_regular_k(t: Tournament, k: int) -> NearlyRegularSet:
    """k nearly-regular vertices with in-degrees inside one width-10k window
    (lowest window first, lowest indices within it)."""
    if k < 1:
        raise ValueError("k must be positive")
    if t.n < DEGREE_WINDOW_FACTOR * k:
        raise TooSmall(f"need at least {DEGREE_WINDOW_FACTOR * k} vertices for k={k}")
    base_set = find_nearly_regular(t)
    width = DEGREE_WINDOW_FACTOR * k
    start = 0
    while start < t.n:
        members = [v for v in base_set.vertices if start <= t.in_degree(v) < start + width]
        if len(members) >= k:
            return NearlyRegularSet(
                vertices=tuple(sorted(members)[:k]),
                ratio_bound=base_set.ratio_bound,
                side=base_set.side,
                m=start + width // 2,
            )
        start += width
    raise TooSmall(f"no width-{width} in-degree window holds {k} nearly-regular vertices")


# ---------------------------------------------------------------------------
# length-<=3 transitive subdivisions


def _try_short_path(t: Tournament, x: int, y: int, avail: int) -> Optional[Tuple[int, ...]]:
    w = t.out_mask(x) & t.in_mask(y) & avail
    if w:
        return ((w & -w).bit_length() - 1,)
    for z in bits_of(t.out_mask(x) & avail):
        ww = t.out_mask(z) & t.in_mask(y) & avail & ~(1 << z)
        if ww:
            return (z, (ww & -ww).bit_length() - 1)
    return None


def find_tt_len3(
    t: Tournament,
    k: int,
    params: Optional[FinderParams] = None,
) -> Union[Subdivision, FailureTrace]:
    """Subdivision of the transitive tournament on k vertices with every
    path of length at most 3.  Paths come out in root coordinates."""
    if k < 1:
        raise ValueError("k must be positive")
    params = params or FinderParams(k=k)
    if params.paper_faithful and t.n < params.tt3_min_size:
        raise InfeasibleSize(
            f"{t.n} vertices is below the required {float(params.tt3_min_size):.0f}"
        )
    return _tt3_recurse(t, k, params)


def _tt3_recurse(t: Tournament, k: int, params: FinderParams) -> Union[Subdivision, FailureTrace]:
    pattern = pattern_transitive(k)
    if t.n < k:
        return FailureTrace(stage="recursion-size", reason="fewer vertices than k",
                            details={"n": t.n, "k": k})
    if k == 1:
        return Subdivision(pattern, (t.labels[0],), {})
    if k == 2:
        a, b = (0, 1) if t.has_edge(0, 1) else (1, 0)
        branch = (t.labels[a], t.labels[b])
        return Subdivision(pattern, branch, {(0, 1): PathWitness(branch[0], branch[1], ())})

    try:
        near = find_nearly_regular_k(t, k)
    except TooSmall as exc:
        return FailureTrace(stage="nearly-regular", reason=str(exc), details={"n": t.n, "k": k})

    # Branch order: non-increasing out-degree inside the branch set, so
    # forward host edges double as length-1 paths wherever possible.
    bmask = mask_of(near.vertices)
    sigma = sorted(
        near.vertices,
        key=lambda v: (-(t.out_mask(v) & bmask).bit_count(), v),
    )
    used = mask_of(sigma)
    paths: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    full = t.full_mask

    for i in range(k):
        for j in range(i + 1, k):
            x, y = sigma[i], sigma[j]
            if t.has_edge(x, y):
                continue
            found = _try_short_path(t, x, y, full & ~used)
            if found is not None:
                paths[(x, y)] = found
                used |= mask_of(found)
                continue
            return _tt3_split(t, k, params, x, y, used)

    sub_paths = {}
    for i in range(k):
        for j in range(i + 1, k):
            x, y = sigma[i], sigma[j]
            internals = paths.get((x, y), ())
            sub_paths[(i, j)] = PathWitness(
                t.labels[x], t.labels[y], tuple(t.labels[z] for z in internals)
            )
    return Subdivision(pattern, tuple(t.labels[v] for v in sigma), sub_paths)


def _tt3_split(
    t: Tournament,
    k: int,
    params: FinderParams,
    x: int,
    y: int,
    used: int,
) -> Union[Subdivision, FailureTrace]:
    """Stuck-pair split: among still-available vertices the common
    in-neighbourhood B of (x, y) sends every edge to the common
    out-neighbourhood A, so a transitive subdivision in B followed by one in
    A concatenates across the B -> A orientation."""
    avail = t.full_mask & ~used
    a_mask = t.out_mask(x) & t.out_mask(y) & avail
    b_mask = t.in_mask(x) & t.in_mask(y) & avail
    for a in bits_of(a_mask):
        if t.out_mask(a) & b_mask:
            # An A -> B edge would have made a 3-path; the greedy search was
            # exhaustive, so this cannot happen.
            raise RuntimeError("stuck state was not maximal: found an A -> B edge")

    k_big = -(-3 * k // 5)  # ceil(3k/5)
    k_small = k - k_big
    a_size = a_mask.bit_count()
    b_size = b_mask.bit_count()
    # The bigger target goes to the bigger side; B always precedes A in the
    # transitive order because every edge runs B -> A.
    kb, ka = (k_big, k_small) if b_size >= a_size else (k_small, k_big)
    if b_size < kb or a_size < ka or kb < 1 or ka < 1:
        return FailureTrace(
            stage="recursion-size",
            reason="stuck-pair split leaves a side too small",
            details={"A": a_size, "B": b_size, "need_A": ka, "need_B": kb},
        )
    first = _tt3_recurse(induced(t, bits_of(b_mask)), kb, params)
    if isinstance(first, FailureTrace):
        return first
    second = _tt3_recurse(induced(t, bits_of(a_mask)), ka, params)
    if isinstance(second, FailureTrace):
        return second

    pattern = pattern_transitive(k)
    branch = first.branch + second.branch
    paths: Dict[Tuple[int, int], PathWitness] = {}
    for (u, v), w in first.paths.items():
        paths[(u, v)] = w
    for (u, v), w in second.paths.items():
        paths[(u + kb, v + kb)] = w
    for u in range(kb):
        for v in range(ka):
            paths[(u, kb + v)] = PathWitness(first.branch[u], second.branch[v], ())
    return Subdivision(pattern, branch, paths)


# ---------------------------------------------------------------------------
# auxiliary graph and the ball separator


class Graph:
    """Small undirected graph with adjacency lists (local 0..n-1 ids)."""

    def __init__(self, n: int, edges: Sequence[Tuple[int, int]] = ()):
        self.n = n
        self.adj: List[List[int]] = [[] for _ in range(n)]
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError("no self-loops")
        self.adj[u].append(v)
        self.adj[v].append(u)

    def degree(self, v: int) -> int:
        return len(self.adj[v])


def build_aux_graph(
    t: Tournament,
    k: int,
    params: Optional[FinderParams] = None,
) -> Graph:
    """Join x to y when their out-neighbourhood symmetric difference is
    below the (scaled) 2k^2 threshold."""
    params = params or FinderParams(k=k)
    if params.k != k:
        params = params.rescaled(k)
    threshold = params.aux_threshold
    g = Graph(t.n)
    rows = [t.out_mask(v) for v in t.vertices()]
    for x in range(t.n):
        rx = rows[x]
        for y in range(x + 1, t.n):
            if (rx ^ rows[y]).bit_count() < threshold:
                g.add_edge(x, y)
    return g


@dataclass(frozen=True)
class BallDecomposition:
    removed: frozenset
    components: Tuple[frozenset, ...]
    bound: float


def ball_decomposition(g: Graph) -> BallDecomposition:
    """Remove sparse BFS levels until every component has at most
    n / (5 ln n) vertices; the removed set obeys the same bound.

    Requires every explored ball interior to stay below the bound (checked
    as the BFS runs); BallTooLarge carries the violating vertex and radius.
    Natural logarithm throughout.

    Each BFS stops at the first level that is sparse relative to the grown
    ball; the ball interior then splits off as a finished component, so every
    vertex is explored a bounded number of times and million-vertex sparse
    graphs decompose quickly.
    """
    n = g.n
    if n < 2:
        return BallDecomposition(frozenset(), (frozenset(range(n)),) if n else (), float(n))
    bound = n / (5.0 * math.log(n))
    log_factor = 5.0 * math.log(n)
    radius_cap = 10.0 * math.log(n) ** 2
    ALIVE, REMOVED, DONE = 0, 1, 2
    state = [ALIVE] * n
    removed: List[int] = []
    components: List[frozenset] = []
    # Every alive vertex is eventually either finalized by a BFS that
    # exhausts its (small) component, or split off inside a ball interior.
    pending = list(range(n - 1, -1, -1))
    while pending:
        start = pending.pop()
        if state[start] != ALIVE:
            continue
        level = [start]
        seen = {start}
        ball = [start]
        r = 0
        while True:
            r += 1
            if r > radius_cap:
                raise BallTooLarge(start, r - 1, len(ball), bound)
            nxt = []
            for v in level:
                for w in g.adj[v]:
                    if state[w] == ALIVE and w not in seen:
                        seen.add(w)
                        nxt.append(w)
            if log_factor * len(nxt) < len(ball):
                break
            ball.extend(nxt)
            level = nxt
        if len(ball) > bound:
            raise BallTooLarge(start, r - 1, len(ball), bound)
        if not nxt:
            # The BFS exhausted a small component: it is finished.
            for v in ball:
                state[v] = DONE
            components.append(frozenset(ball))
            continue
        # Remove the sparse level; the ball interior becomes a finished
        # component and the exterior is re-examined from the level's
        # still-alive neighbours.
        for v in nxt:
            state[v] = REMOVED
            removed.append(v)
        for v in ball:
            state[v] = DONE
        components.append(frozenset(ball))
        for v in nxt:
            for w in g.adj[v]:
                if state[w] == ALIVE:
                    pending.append(w)
    if len(removed) > bound:
        raise RuntimeError("removed-set bound violated despite per-step discipline")
    return BallDecomposition(frozenset(removed), tuple(components), bound)


# ---------------------------------------------------------------------------
# component partition for the 1-subdivision recursion


@dataclass(frozen=True)
class ComponentPartition:
    order: Tuple[int, ...]
    a1: frozenset
    a2: frozenset
    x_family: Tuple[frozenset, ...]
    y_family: Tuple[frozenset, ...]
    x_cap_a1: frozenset
    y_cap_a2: frozenset
    m: int
    lower_bound: float


def partition_components(
    t: Tournament,
    components: Sequence[Sequence[int]],
) -> ComponentPartition:
    """Split the components into two families, one capturing many vertices
    of the top half of the out-degree order, the other many of the bottom
    half; both intersections reach (1 - 1/(2 ln n)) m / 4."""
    n = t.n
    comp_list = [sorted(c) for c in components]
    members = sorted(v for c in comp_list for v in c)
    m = len(members)
    if m == 0:
        raise ValueError("no component vertices to partition")
    sigma = sorted(members, key=lambda v: (-t.out_degree(v), v))
    half = len(sigma) // 2
    a1 = frozenset(sigma[:half])
    a2 = frozenset(sigma[half:])
    lower = (1.0 - 1.0 / (2.0 * math.log(max(n, 3)))) * m / 4.0

    c1 = [len(a1.intersection(c)) for c in comp_list]
    c2 = [len(c) - c1[i] for i, c in enumerate(comp_list)]
    fam1 = [i for i in range(len(comp_list)) if 2 * c1[i] >= len(comp_list[i])]
    fam2 = [i for i in range(len(comp_list)) if i not in fam1]

    def finish(x_idx, y_idx):
        x_family = tuple(frozenset(comp_list[i]) for i in sorted(x_idx))
        y_family = tuple(frozenset(comp_list[i]) for i in sorted(y_idx))
        x_cap = frozenset(v for f in x_family for v in f if v in a1)
        y_cap = frozenset(v for f in y_family for v in f if v in a2)
        return ComponentPartition(
            order=tuple(sigma),
            a1=a1,
            a2=a2,
            x_family=x_family,
            y_family=y_family,
            x_cap_a1=x_cap,
            y_cap_a2=y_cap,
            m=m,
            lower_bound=lower,
        )

    mass1 = sum(c1[i] for i in fam1)
    mass2 = sum(c2[i] for i in fam2)
    quarter = m / 4.0
    if mass1 >= quarter and mass2 >= quarter:
        return finish(fam1, fam2)
    if mass1 < quarter:
        # Grow the X side with majority-A2 components while its A1 mass
        # stays at most m/4; maximality gives the lower bound.
        chosen = []
        mass = mass1
        for i in fam2:
            if mass + c1[i] <= quarter:
                chosen.append(i)
                mass += c1[i]
        return finish(fam1 + chosen, [i for i in fam2 if i not in chosen])
    # Symmetric case: grow the Y side with majority-A1 components.
    chosen = []
    mass = mass2
    for i in fam1:
        if mass + c2[i] <= quarter:
            chosen.append(i)
            mass += c2[i]
    return finish([i for i in fam1 if i not in chosen], fam2 + chosen)


# ---------------------------------------------------------------------------
# 1-subdivisions


def transitive_chain(t: Tournament, universe: Optional[int] = None) -> List[int]:
    """Greedy transitive subtournament: repeatedly take a maximum-out-degree
    vertex and descend into its out-neighbourhood (at least log2 n long)."""
    cur = t.full_mask if universe is None else universe
    chain = []
    while cur:
        best = None
        for v in bits_of(cur):
            d = (t.out_mask(v) & cur).bit_count()
            if best is None or d > best[0]:
                best = (d, v)
        chain.append(best[1])
        cur &= t.out_mask(best[1])
    return chain


def find_one_subdivision(
    t: Tournament,
    k: int,
    params: Optional[FinderParams] = None,
) -> Union[Subdivision, FailureTrace]:
    """1-subdivision of the transitive tournament on k vertices: every
    pattern edge becomes a directed path of length exactly 2."""
    if k < 2:
        raise ValueError("k must be at least 2")
    params = params or FinderParams(k=k)
    if params.k != k:
        params = params.rescaled(k)
    if params.paper_faithful and t.n < params.onesub_min_size:
        raise InfeasibleSize(
            f"{t.n} vertices is below the required {params.onesub_min_size:.0f}"
        )
    return _onesub_recurse(t, k, params)


def _onesub_base(t: Tournament, k: int) -> Union[Subdivision, FailureTrace]:
    """Place branch and internal vertices along a transitive chain.

    A 1-subdivision of T_k needs k + k(k-1)/2 chain vertices; for k <= 3 the
    layout below mirrors the classic 6-vertex arrangement.
    """
    need = k + k * (k - 1) // 2
    chain = transitive_chain(t)
    if len(chain) < need:
        return FailureTrace(
            stage="base-transitive",
            reason=f"transitive chain of {len(chain)} < {need} vertices",
            details={"n": t.n, "k": k},
        )
    chain = chain[:need]
    if k == 2:
        branch = (chain[0], chain[2])
        mids = {(0, 1): chain[1]}
    elif k == 3:
        branch = (chain[0], chain[2], chain[5])
        mids = {(0, 1): chain[1], (0, 2): chain[3], (1, 2): chain[4]}
    else:  # pragma: no cover - base case is only entered with k <= 3
        raise ValueError("base placement is defined for k <= 3")
    pattern = pattern_transitive(k)
    paths = {
        (u, v): PathWitness(
            t.labels[branch[u]], t.labels[branch[v]], (t.labels[mids[(u, v)]],)
        )
        for u, v in pattern.edges
    }
    return Subdivision(pattern, tuple(t.labels[b] for b in branch), paths)


def _onesub_recurse(t: Tournament, k: int, params: FinderParams) -> Union[Subdivision, FailureTrace]:
    if k <= 3:
        return _onesub_base(t, k)

    g = build_aux_graph(t, k, params)
    try:
        decomp = ball_decomposition(g)
    except BallTooLarge as exc:
        return FailureTrace(
            stage="aux-graph-precondition",
            reason=str(exc),
            details={"vertex": exc.vertex, "radius": exc.radius, "size": exc.size},
        )
    part = partition_components(t, [sorted(c) for c in decomp.components])

    k_first = -(-k // 2)  # ceil(k/2): top half of the degree order
    k_second = k // 2
    left = sorted(part.x_cap_a1)
    right = sorted(part.y_cap_a2)
    if len(left) < k_first or len(right) < k_second:
        return FailureTrace(
            stage="recursion-size",
            reason="component split leaves a side too small",
            details={"left": len(left), "right": len(right), "k": k},
        )
    first = _onesub_recurse(induced(t, left), k_first, params.rescaled(k_first))
    if isinstance(first, FailureTrace):
        return first
    second = _onesub_recurse(induced(t, right), k_second, params.rescaled(k_second))
    if isinstance(second, FailureTrace):
        return second

    # Join: every cross pair gets a fresh midpoint from the whole host.
    label_pos = {lab: v for v, lab in enumerate(t.labels)}
    used = 0
    for sub in (first, second):
        for b in sub.branch:
            used |= 1 << label_pos[b]
        for w in sub.internal_vertices():
            used |= 1 << label_pos[w]

    pattern = pattern_transitive(k)
    branch = first.branch + second.branch
    paths: Dict[Tuple[int, int], PathWitness] = {}
    paths.update(first.paths)
    for (u, v), w in second.paths.items():
        paths[(u + k_first, v + k_first)] = w
    # Cross pairs sit in different aux-graph components with the first-half
    # vertex earlier in the degree order, so their 2-path candidate pool is
    # at least (threshold - 2) / 2 before exclusions.
    margin = (params.aux_threshold - 2) / 2
    for u in range(k_first):
        for v in range(k_second):
            hx = label_pos[first.branch[u]]
            hy = label_pos[second.branch[v]]
            pool = (t.out_mask(hx) & t.in_mask(hy)).bit_count()
            if pool < margin:
                raise RuntimeError(
                    f"cross pair ({u},{v}) has {pool} midpoints, below the "
                    f"guaranteed {float(margin):.1f}"
                )
            cands = t.out_mask(hx) & t.in_mask(hy) & ~used & t.full_mask
            if not cands:
                return FailureTrace(
                    stage="cross-pair-exhaustion",
                    reason=f"no free midpoint for cross pair ({u},{v})",
                    details={"x": t.labels[hx], "y": t.labels[hy]},
                )
            z = (cands & -cands).bit_length() - 1
            used |= 1 << z
            paths[(u, k_first + v)] = PathWitness(
                t.labels[hx], t.labels[hy], (t.labels[z],)
            )
    return Subdivision(pattern, branch, paths)
