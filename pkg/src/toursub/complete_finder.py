"""Constructive pipeline for complete-digraph subdivisions in tournaments.

The driver alternates three moves until it can finish: peel low out-degree
vertices, pick a degree-balanced branch set and greedily embed the needed
short paths (dichotomy: either enough paths embed or a structured cut
appears), and shrink each cut with Hall-violator repair until its expansion
into the source side is certified by a half-matching.  The certified cut
chain then supplies disjoint 3-paths for whatever pairs the greedy left over.

Everything operates on the root tournament via vertex bitmasks; witnesses
come out in root coordinates and are checked by ``subdivision.verify``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .core import Tournament, bits_of, mask_of
from .errors import (
    CutInvalid,
    FailureTrace,
    InfeasibleDegree,
    InsufficientOutNeighbours,
    RepairExhausted,
    TooSmall,
)
from .matching import HalfMatching, HallViolator, half_matching
from .params import FinderParams
from .subdivision import (
    PathWitness,
    PatternDigraph,
    Subdivision,
    pattern_complete_digraph,
)

__all__ = [
    "BalancedSet",
    "find_balanced_set",
    "GreedyPartial",
    "CompleteEmbedding",
    "PartialEmbedding",
    "CutOutcome",
    "greedy_partial_subdivision",
    "maximize_len2",
    "CutSets",
    "derive_cut",
    "validate_cut",
    "CertifiedCut",
    "minimize_cut",
    "expansion_holds",
    "peel_low_outdegree",
    "CutStage",
    "CutChain",
    "embed_via_cut_chain",
    "find_complete_subdivision",
    "find_complete_subdivision_ex",
    "find_digraph_subdivision",
    "find_digraph_subdivision_ex",
    "CompleteRunDiagnostics",
    "reversed_pairs",
    "DEFAULT_DIGRAPH_DEGREE_FACTOR",
]

# Minimum-out-degree factor for general digraph patterns (delta+ >= C * edges).
# The source only asserts existence of such a constant; this default is a
# deliberately generous engineering choice, not a derived value.
DEFAULT_DIGRAPH_DEGREE_FACTOR = 8


# ---------------------------------------------------------------------------
# balanced branch sets


@dataclass(frozen=True)
class BalancedSet:
    """k vertices whose in-degrees sit in one pigeonhole window above the
    alpha-dependent floor."""

    vertices: Tuple[int, ...]
    m: int
    alpha: Fraction
    slack: Fraction
    window: Tuple[int, int]


def find_balanced_set(
    t: Tournament,
    params: FinderParams,
    universe: Optional[int] = None,
) -> BalancedSet:
    """Pigeonhole a width-slack in-degree window holding k vertices, lowest
    window first, lowest vertex indices within it."""
    uni = t.full_mask if universe is None else universe
    size = uni.bit_count()
    k = params.k
    alpha = params.alpha_for(size)
    if alpha < 1:
        raise TooSmall(
            f"size {size} gives alpha {float(alpha):.3f} < 1 "
            f"(need at least {float(params.balanced_min_size):.1f})"
        )
    floor = params.deg_floor(alpha)
    width = params.window_width
    degs = {}
    for v in bits_of(uni):
        d = (t.in_mask(v) & uni).bit_count()
        if d >= floor:
            degs[v] = d
    if len(degs) < k:
        raise TooSmall(f"only {len(degs)} vertices reach the in-degree floor")
    base = max(0, -(-floor.numerator // floor.denominator))  # ceil of the Fraction
    top = max(degs.values())
    start = base
    while start <= top:
        members = sorted(v for v, d in degs.items() if start <= d < start + width)
        if len(members) >= k:
            chosen = tuple(members[:k])
            dmin = min(degs[v] for v in chosen)
            dmax = max(degs[v] for v in chosen)
            return BalancedSet(
                vertices=chosen,
                m=(dmin + dmax) // 2,
                alpha=alpha,
                slack=params.slack,
                window=(start, start + width - 1),
            )
        start += width
    raise TooSmall(f"no width-{width} in-degree window holds {k} vertices")


# ---------------------------------------------------------------------------
# greedy embedding and the dichotomy


@dataclass
class GreedyPartial:
    """Mutable embedding state over a fixed branch set.

    ``paths`` maps host pairs (x, y) to internal-vertex tuples of the
    embedded x -> y path; direct edges of the branch set are implicit.
    """

    t: Tournament
    universe: int
    branch: Tuple[int, ...]
    paths: Dict[Tuple[int, int], Tuple[int, ...]] = field(default_factory=dict)
    used: int = 0
    swaps: int = 0

    def __post_init__(self):
        if not self.used:
            self.used = mask_of(self.branch)

    @property
    def l1(self) -> int:
        return sum(1 for p in self.paths.values() if len(p) == 1)

    @property
    def l2(self) -> int:
        return sum(1 for p in self.paths.values() if len(p) == 2)

    def avail(self) -> int:
        return self.universe & ~self.used


@dataclass(frozen=True)
class CompleteEmbedding:
    state: GreedyPartial


@dataclass(frozen=True)
class PartialEmbedding:
    state: GreedyPartial
    failed: Tuple[int, int]


@dataclass(frozen=True)
class CutOutcome:
    state: GreedyPartial
    failed: Tuple[int, int]
    cut: "CutSets"


DichotomyOutcome = Union[CompleteEmbedding, PartialEmbedding, CutOutcome]


def _try_short_path(t: Tournament, x: int, y: int, avail: int) -> Optional[Tuple[int, ...]]:
    """Lowest 2-path internal, else lexicographically lowest 3-path internals."""
    w = t.out_mask(x) & t.in_mask(y) & avail
    if w:
        return ((w & -w).bit_length() - 1,)
    for z in bits_of(t.out_mask(x) & avail):
        ww = t.out_mask(z) & t.in_mask(y) & avail & ~(1 << z)
        if ww:
            return (z, (ww & -ww).bit_length() - 1)
    return None


def maximize_len2(
    t: Tournament,
    state: GreedyPartial,
    failed: Tuple[int, int],
) -> bool:
    """One exchange round for a stuck pair: if some z in N+(x) & N-(y) sits
    inside an embedded 3-path whose own pair re-embeds without z, reroute
    that pair and embed (x, y) as the 2-path x-z-y.

    Mutates ``state`` and returns True iff the stuck pair got embedded; each
    success strictly increases the number of 2-paths, so the driver's
    fail/retry loop terminates.
    """
    x, y = failed
    w_all = t.out_mask(x) & t.in_mask(y) & state.universe
    for z in bits_of(w_all):
        owner = None
        for pair, internals in state.paths.items():
            if len(internals) == 2 and z in internals:
                owner = pair
                break
        if owner is None:
            continue
        old = state.paths[owner]
        used_wo = state.used & ~mask_of(old)
        re_avail = state.universe & ~used_wo & ~(1 << z)
        redo = _try_short_path(t, owner[0], owner[1], re_avail)
        if redo is None:
            continue
        state.paths[failed] = (z,)
        state.paths[owner] = redo
        state.used = used_wo | (1 << z) | mask_of(redo)
        state.swaps += 1
        return True
    return False


def reversed_pairs(t: Tournament, branch: Sequence[int]) -> List[Tuple[int, int]]:
    """Host pairs (x, y) of the branch set with y -> x in T: exactly the
    pairs that need a genuine path (the others are direct edges)."""
    out = []
    for a, b in combinations(sorted(branch), 2):
        if t.has_edge(a, b):
            out.append((b, a))
        else:
            out.append((a, b))
    return sorted(out)


def greedy_partial_subdivision(
    t: Tournament,
    balanced: BalancedSet,
    forbidden,
    params: FinderParams,
    pairs: Optional[List[Tuple[int, int]]] = None,
) -> DichotomyOutcome:
    """Embed needed pairs one at a time as 2-paths (preferred) or 3-paths.

    On a stuck pair, run the 2-path-maximizing exchange to a fixpoint; at a
    genuine fixpoint either the partial is already large enough
    (4(l1+l2) + 6*slack > m) or the stuck pair yields a disconnecting cut
    whose source side is big.  May raise CutInvalid under scaled parameters.

    ``forbidden`` is a vertex bitmask or any iterable of vertices.
    """
    if not isinstance(forbidden, int):
        forbidden = mask_of(forbidden)
    universe = t.full_mask & ~forbidden
    branch = tuple(sorted(balanced.vertices))
    if mask_of(branch) & forbidden:
        raise ValueError("branch vertices must avoid the forbidden set")
    todo = reversed_pairs(t, branch) if pairs is None else sorted(pairs)
    state = GreedyPartial(t=t, universe=universe, branch=branch)

    swap_cap = len(todo) + 1
    idx = 0
    while idx < len(todo):
        x, y = todo[idx]
        found = _try_short_path(t, x, y, state.avail())
        if found is not None:
            state.paths[(x, y)] = found
            state.used |= mask_of(found)
            idx += 1
            continue
        if state.swaps >= swap_cap:
            raise RuntimeError("exchange loop exceeded its l1 potential bound")
        if maximize_len2(t, state, (x, y)):
            idx += 1
            continue
        # Fixpoint with a genuinely stuck pair: dichotomy.
        if 4 * (state.l1 + state.l2) + 6 * params.slack > balanced.m:
            return PartialEmbedding(state=state, failed=(x, y))
        cut = derive_cut(t, state, (x, y))
        validate_cut(cut, params.k)
        return CutOutcome(state=state, failed=(x, y), cut=cut)
    return CompleteEmbedding(state=state)


# ---------------------------------------------------------------------------
# cut derivation and Hall-violator repair


@dataclass(frozen=True)
class CutSets:
    cut: frozenset
    source: frozenset
    sink: frozenset


def derive_cut(t: Tournament, state: GreedyPartial, failed: Tuple[int, int]) -> CutSets:
    """The stuck-pair cut: U = V(partial) + (N-(x) minus N-(y)), source
    N-(y) minus U, sink N+(x) minus V(partial), inside the working universe."""
    x, y = failed
    uni = state.universe
    vs = state.used  # branch plus internals
    u_mask = (vs | (t.in_mask(x) & ~t.in_mask(y))) & uni
    s_mask = t.in_mask(y) & uni & ~u_mask
    sink_mask = t.out_mask(x) & uni & ~vs
    if (u_mask | s_mask | sink_mask) != uni or (u_mask & s_mask) or (s_mask & sink_mask) or (u_mask & sink_mask):
        raise RuntimeError("cut sets do not partition the universe; greedy failure was not genuine")
    for s in bits_of(s_mask):
        if sink_mask & ~t.out_mask(s):
            raise RuntimeError(f"edge into source vertex {s} from the sink side")
    return CutSets(
        cut=frozenset(bits_of(u_mask)),
        source=frozenset(bits_of(s_mask)),
        sink=frozenset(bits_of(sink_mask)),
    )


def validate_cut(cut: CutSets, k: int) -> None:
    """Size requirements from the dichotomy: |S| >= |U| + k and sink >= k."""
    if len(cut.source) < len(cut.cut) + k:
        raise CutInvalid("source smaller than cut + k", len(cut.source), len(cut.cut), len(cut.sink))
    if len(cut.sink) < k:
        raise CutInvalid("sink smaller than k", len(cut.source), len(cut.cut), len(cut.sink))


@dataclass(frozen=True)
class CertifiedCut:
    """A cut whose expansion into the source is certified constructively:
    U splits into two halves, each matched one-to-one into S."""

    cut: frozenset
    source: frozenset
    u_prime: frozenset
    u_dprime: frozenset
    m_prime: dict
    m_dprime: dict


def _split_half_matching(hm: HalfMatching) -> Tuple[frozenset, frozenset, dict, dict]:
    by_target: Dict[int, List[int]] = {}
    for u, s in hm.edges:
        by_target.setdefault(s, []).append(u)
    u1, u2 = {}, {}
    for s, partners in sorted(by_target.items()):
        partners.sort()
        u1[partners[0]] = s
        if len(partners) > 1:
            u2[partners[1]] = s
    return frozenset(u1), frozenset(u2), u1, u2


def minimize_cut(
    t: Tournament,
    cut: CutSets,
    k: int,
) -> CertifiedCut:
    """Shrink (U, S) by the violator replacement until the half-matching
    certificate succeeds.

    Each failed certificate yields X with |N+(X) & S| < |X|/2; replacing U by
    (U minus X) + (N+(X) & S) and S by S minus N+(X) strictly shrinks U while
    keeping |S| >= |U| and growing the sink, so the loop terminates.
    """
    if len(cut.sink) < k:
        raise RepairExhausted(f"sink has {len(cut.sink)} < k = {k} vertices")
    u_set = set(cut.cut)
    s_set = set(cut.source)
    steps = 0
    bound = len(u_set) + len(s_set) + 1
    while True:
        steps += 1
        if steps > bound:
            raise RuntimeError("cut repair exceeded its potential bound")
        s_mask = mask_of(s_set)
        adj = {u: list(bits_of(t.out_mask(u) & s_mask)) for u in sorted(u_set)}
        res = half_matching(sorted(u_set), sorted(s_set), adj)
        if isinstance(res, HalfMatching):
            universe = mask_of(cut.cut) | mask_of(cut.source) | mask_of(cut.sink)
            rest = universe & ~mask_of(u_set) & ~s_mask
            for s in s_set:
                if rest & ~t.out_mask(s):
                    raise RuntimeError(
                        f"repair broke the source orientation at vertex {s}"
                    )
            u1, u2, m1, m2 = _split_half_matching(res)
            return CertifiedCut(
                cut=frozenset(u_set),
                source=frozenset(s_set),
                u_prime=u1,
                u_dprime=u2,
                m_prime=m1,
                m_dprime=m2,
            )
        assert isinstance(res, HallViolator)
        x_set = set(res.vertices)
        nx = set()
        for u in x_set:
            nx.update(bits_of(t.out_mask(u) & s_mask))
        new_u = (u_set - x_set) | nx
        if len(new_u) >= len(u_set):
            raise RuntimeError("violator replacement failed to shrink the cut")
        u_set = new_u
        s_set -= nx
        if len(s_set) < len(u_set):
            raise RuntimeError("repair broke the |S| >= |U| invariant")


def expansion_holds(t: Tournament, cut_vertices, source_vertices) -> bool:
    """Brute-force expansion check: every nonempty X in U has
    |N+(X) & S| >= |X|/2.  Exponential in |U|; meant for |U| <= ~12."""
    u_list = sorted(cut_vertices)
    s_mask = mask_of(source_vertices)
    for size in range(1, len(u_list) + 1):
        for combo in combinations(u_list, size):
            hit = 0
            for u in combo:
                hit |= t.out_mask(u) & s_mask
            if 2 * hit.bit_count() < size:
                return False
    return True


# ---------------------------------------------------------------------------
# peeling and the cut chain


def peel_low_outdegree(
    t: Tournament,
    params: FinderParams,
    universe: Optional[int] = None,
) -> Tuple[List[int], int]:
    """Repeatedly remove a vertex of out-degree below the peel threshold in
    the current subtournament (minimum degree first, then lowest index),
    stopping at k removals; returns (peeled, remaining-mask)."""
    cur = t.full_mask if universe is None else universe
    peeled: List[int] = []
    thr = params.peel_threshold
    while len(peeled) < params.k and cur:
        best = None
        for v in bits_of(cur):
            d = (t.out_mask(v) & cur).bit_count()
            if d < thr and (best is None or d < best[0]):
                best = (d, v)
        if best is None:
            break
        peeled.append(best[1])
        cur &= ~(1 << best[1])
    return peeled, cur


@dataclass(frozen=True)
class CutStage:
    universe: frozenset
    cut: frozenset
    source: frozenset
    u_prime: frozenset
    u_dprime: frozenset
    m_prime: dict
    m_dprime: dict


@dataclass(frozen=True)
class CutChain:
    stages: Tuple[CutStage, ...]
    terminal: frozenset

    def all_cut_vertices(self) -> frozenset:
        out = frozenset()
        for st in self.stages:
            out |= st.cut
        return out


def embed_via_cut_chain(
    t: Tournament,
    branch: Sequence[int],
    pairs: Sequence[Tuple[int, int]],
    chain: CutChain,
) -> List[PathWitness]:
    """Internally disjoint 3-paths x -> u -> s -> y for the given branch
    pairs, routing through the certified cut/source stages.

    Requires every pair source to have at least 2*len(pairs) out-neighbours
    in the union of the stage cuts.
    """
    ell = len(pairs)
    if ell == 0:
        return []
    u_all = 0
    u1_mask = 0
    u2_mask = 0
    m1: Dict[int, int] = {}
    m2: Dict[int, int] = {}
    for st in chain.stages:
        u_all |= mask_of(st.cut)
        u1_mask |= mask_of(st.u_prime)
        u2_mask |= mask_of(st.u_dprime)
        m1.update(st.m_prime)
        m2.update(st.m_dprime)

    nbr = {}
    for x, _ in pairs:
        if x in nbr:
            continue
        nbr[x] = t.out_mask(x) & u_all
        have = nbr[x].bit_count()
        if have < 2 * ell:
            raise InsufficientOutNeighbours(x, have, 2 * ell)

    first = [j for j in range(ell) if (nbr[pairs[j][0]] & u1_mask).bit_count() >= ell]
    second = [j for j in range(ell) if j not in first]

    witnesses: Dict[int, PathWitness] = {}
    taken = 0
    s_used = set()
    for j in first:
        x, y = pairs[j]
        cands = nbr[x] & u1_mask & ~taken
        if not cands:
            raise RuntimeError("distinct-representative pick ran dry on the first half")
        u = (cands & -cands).bit_length() - 1
        taken |= 1 << u
        s = m1[u]
        s_used.add(s)
        witnesses[j] = PathWitness(x, y, (u, s))

    blocked = mask_of(u for u, s in m2.items() if s in s_used)
    for j in second:
        x, y = pairs[j]
        cands = nbr[x] & u2_mask & ~taken & ~blocked
        if not cands:
            raise RuntimeError("distinct-representative pick ran dry on the second half")
        u = (cands & -cands).bit_length() - 1
        taken |= 1 << u
        s = m2[u]
        if s in s_used:
            raise RuntimeError("source vertex reused across matching halves")
        s_used.add(s)
        witnesses[j] = PathWitness(x, y, (u, s))
    return [witnesses[j] for j in range(ell)]


# ---------------------------------------------------------------------------
# drivers


@dataclass
class CompleteRunDiagnostics:
    chain: Optional[CutChain] = None
    stages: List[dict] = field(default_factory=list)
    terminal: str = ""
    greedy_l1: int = 0
    greedy_l2: int = 0
    swaps: int = 0
    chain_pairs: int = 0


def _assemble(
    t: Tournament,
    pattern: PatternDigraph,
    branch: Tuple[int, ...],
    path_map: Dict[Tuple[int, int], Tuple[int, ...]],
) -> Subdivision:
    paths = {}
    for u, v in pattern.edges:
        hu, hv = branch[u], branch[v]
        if (hu, hv) in path_map:
            paths[(u, v)] = PathWitness(hu, hv, path_map[(hu, hv)])
        elif t.has_edge(hu, hv):
            paths[(u, v)] = PathWitness(hu, hv, ())
        else:
            raise RuntimeError(f"no path and no direct edge for pattern edge ({u},{v})")
    return Subdivision(pattern=pattern, branch=branch, paths=paths)


def _directed_triangle(t: Tournament) -> Optional[Tuple[int, int, int]]:
    for a in t.vertices():
        for b in bits_of(t.out_mask(a)):
            w = t.out_mask(b) & t.in_mask(a)
            if w:
                return (a, b, (w & -w).bit_length() - 1)
    return None


def _fail(params: FinderParams, stage: str, reason: str, **details):
    if params.paper_faithful:
        raise RuntimeError(
            f"paper-scale run failed at {stage}: {reason} "
            f"(details: {details}) -- this indicates a bug or an unmet precondition"
        )
    return FailureTrace(stage=stage, reason=reason, details=details)


def _run_pattern_driver(
    t: Tournament,
    pattern: PatternDigraph,
    params: FinderParams,
) -> Tuple[Union[Subdivision, FailureTrace], CompleteRunDiagnostics]:
    """Shared driver: branch-set search, dichotomy, cut chain, completion."""
    k = pattern.k
    diag = CompleteRunDiagnostics()
    universe = t.full_mask
    stages: List[CutStage] = []

    for _round in range(t.n + 1):
        diag.chain = CutChain(stages=tuple(stages), terminal=frozenset(bits_of(universe)))
        uni_size = universe.bit_count()
        if uni_size < k:
            return _fail(params, "iterate", "working tournament shrank below k",
                         size=uni_size), diag
        peeled, kept = peel_low_outdegree(t, params, universe)
        info = {"universe": uni_size, "peeled": len(peeled)}
        if len(peeled) == k:
            # Terminal: k low-out-degree vertices become the branch set and
            # every needed pair routes through the cut chain.
            diag.terminal = "low-out-degree"
            chain = CutChain(stages=tuple(stages), terminal=frozenset(bits_of(universe)))
            diag.chain = chain
            branch = tuple(sorted(peeled))
            host_pairs = _needed_pairs(t, pattern, branch)
            diag.chain_pairs = len(host_pairs)
            try:
                wits = embed_via_cut_chain(t, branch, host_pairs, chain)
            except InsufficientOutNeighbours as exc:
                if params.paper_faithful:
                    raise
                return FailureTrace(
                    stage="cut-chain-embedding",
                    reason=str(exc),
                    details={"vertex": exc.vertex, "have": exc.have, "need": exc.need},
                ), diag
            path_map = {(w.from_v, w.to_v): w.internals for w in wits}
            return _assemble(t, pattern, branch, path_map), diag

        try:
            balanced = find_balanced_set(t, params, kept)
        except TooSmall as exc:
            if params.paper_faithful:
                raise
            return FailureTrace(stage="balanced-set", reason=str(exc),
                                details={"universe": kept.bit_count()}), diag
        info["alpha"] = float(balanced.alpha)
        info["m"] = balanced.m

        host_pairs = _needed_pairs(t, pattern, balanced.vertices)
        try:
            outcome = greedy_partial_subdivision(
                t, balanced, forbidden=t.full_mask & ~kept, params=params,
                pairs=host_pairs,
            )
        except CutInvalid as exc:
            if params.paper_faithful:
                raise
            info["cut_invalid"] = exc.reason
            diag.stages.append(info)
            return FailureTrace(
                stage="derive-cut",
                reason=exc.reason,
                details={
                    "source": exc.source_size,
                    "cut": exc.cut_size,
                    "sink": exc.sink_size,
                },
            ), diag

        if isinstance(outcome, (CompleteEmbedding, PartialEmbedding)):
            state = outcome.state
            diag.greedy_l1 = state.l1
            diag.greedy_l2 = state.l2
            diag.swaps = state.swaps
            diag.terminal = (
                "complete-greedy" if isinstance(outcome, CompleteEmbedding) else "partial"
            )
            diag.stages.append(info)
            chain = CutChain(stages=tuple(stages), terminal=frozenset(bits_of(universe)))
            diag.chain = chain
            branch = state.branch
            path_map = dict(state.paths)
            remaining = [p for p in host_pairs if p not in path_map]
            diag.chain_pairs = len(remaining)
            if remaining:
                try:
                    wits = embed_via_cut_chain(t, branch, remaining, chain)
                except InsufficientOutNeighbours as exc:
                    if params.paper_faithful:
                        raise
                    return FailureTrace(
                        stage="cut-chain-embedding",
                        reason=str(exc),
                        details={"vertex": exc.vertex, "have": exc.have, "need": exc.need},
                    ), diag
                for w in wits:
                    path_map[(w.from_v, w.to_v)] = w.internals
            return _assemble(t, pattern, branch, path_map), diag

        assert isinstance(outcome, CutOutcome)
        # Lift the cut from the peeled subtournament back to the full working
        # universe: peeled leftovers join the cut side.
        raw = outcome.cut
        lifted = CutSets(
            cut=raw.cut | frozenset(peeled),
            source=raw.source,
            sink=raw.sink,
        )
        try:
            certified = minimize_cut(t, lifted, k)
        except RepairExhausted as exc:
            if params.paper_faithful:
                raise
            return FailureTrace(stage="cut-repair", reason=str(exc), details={}), diag
        info["cut"] = len(certified.cut)
        info["source"] = len(certified.source)
        diag.stages.append(info)
        stages.append(
            CutStage(
                universe=frozenset(bits_of(universe)),
                cut=certified.cut,
                source=certified.source,
                u_prime=certified.u_prime,
                u_dprime=certified.u_dprime,
                m_prime=certified.m_prime,
                m_dprime=certified.m_dprime,
            )
        )
        next_universe = universe & ~mask_of(certified.cut) & ~mask_of(certified.source)
        if next_universe.bit_count() >= universe.bit_count():
            raise RuntimeError("cut stage failed to shrink the working tournament")
        universe = next_universe

    raise RuntimeError("stage iteration exceeded the vertex-count bound")


def _needed_pairs(
    t: Tournament, pattern: PatternDigraph, branch: Sequence[int]
) -> List[Tuple[int, int]]:
    """Host pairs requiring a genuine path: pattern edges whose host
    orientation points the wrong way."""
    b = tuple(sorted(branch))
    need = set()
    for u, v in pattern.edges:
        hu, hv = b[u], b[v]
        if not t.has_edge(hu, hv):
            need.add((hu, hv))
    return sorted(need)


def find_complete_subdivision(
    t: Tournament,
    k: int,
    params: Optional[FinderParams] = None,
) -> Union[Subdivision, FailureTrace]:
    outcome, _ = find_complete_subdivision_ex(t, k, params)
    return outcome


def find_complete_subdivision_ex(
    t: Tournament,
    k: int,
    params: Optional[FinderParams] = None,
) -> Tuple[Union[Subdivision, FailureTrace], CompleteRunDiagnostics]:
    """Complete-digraph subdivision with every path of length at most 3 and
    every edge subdivided at most twice; also returns run diagnostics
    (cut chain, stage log) for certification tests and sweeps."""
    if k < 2:
        raise ValueError("k must be at least 2")
    params = params or FinderParams(k=k)
    if params.k != k:
        params = params.rescaled(k)
    diag = CompleteRunDiagnostics()
    min_out = min(t.out_degree(v) for v in t.vertices()) if t.n else 0

    if k == 2:
        # A single directed cycle is the whole job; delta+ >= 1 forces a
        # directed triangle.
        if min_out < 1:
            raise InfeasibleDegree("k=2 needs minimum out-degree at least 1")
        tri = _directed_triangle(t)
        if tri is None:
            raise RuntimeError("delta+ >= 1 tournament without a directed triangle")
        a, b, c = tri
        diag.terminal = "triangle"
        branch = (a, b) if a < b else (b, a)
        pattern = pattern_complete_digraph(2)
        path_map = {(a, b): (), (b, a): (c,)}
        paths = {}
        for u, v in pattern.edges:
            hu, hv = branch[u], branch[v]
            internals = path_map[(hu, hv)] if (hu, hv) in path_map else ()
            paths[(u, v)] = PathWitness(hu, hv, internals)
        # (a -> b is an edge of the triangle; b -> c -> a covers the return.)
        return Subdivision(pattern=pattern, branch=branch, paths=paths), diag

    if params.paper_faithful and min_out < params.min_out_degree:
        raise InfeasibleDegree(
            f"minimum out-degree {min_out} is below the required "
            f"{float(params.min_out_degree):.1f}"
        )
    return _run_pattern_driver(t, pattern_complete_digraph(k), params)


def find_digraph_subdivision(
    t: Tournament,
    pattern: PatternDigraph,
    params: Optional[FinderParams] = None,
    degree_factor: int = DEFAULT_DIGRAPH_DEGREE_FACTOR,
) -> Union[Subdivision, FailureTrace]:
    outcome, _ = find_digraph_subdivision_ex(t, pattern, params, degree_factor)
    return outcome


def find_digraph_subdivision_ex(
    t: Tournament,
    pattern: PatternDigraph,
    params: Optional[FinderParams] = None,
    degree_factor: int = DEFAULT_DIGRAPH_DEGREE_FACTOR,
) -> Tuple[Union[Subdivision, FailureTrace], CompleteRunDiagnostics]:
    """Same driver generalized to an arbitrary pattern digraph: only the
    pattern's edges are embedded, each subdivided at most twice."""
    if pattern.isolated_vertices():
        raise ValueError(f"pattern has isolated vertices: {sorted(pattern.isolated_vertices())}")
    params = params or FinderParams(k=pattern.k)
    if params.k != pattern.k:
        params = params.rescaled(pattern.k)
    diag = CompleteRunDiagnostics()
    if pattern.k == 2 and len(pattern.edges) == 1 and t.n >= 2:
        # A single pattern edge is just a host edge.
        (u, v) = pattern.edges[0]
        a, b = (0, 1) if t.has_edge(0, 1) else (1, 0)
        branch = [0, 0]
        branch[u], branch[v] = a, b
        diag.terminal = "single-edge"
        return (
            Subdivision(
                pattern=pattern,
                branch=tuple(branch),
                paths={(u, v): PathWitness(a, b, ())},
            ),
            diag,
        )
    min_out = min(t.out_degree(v) for v in t.vertices()) if t.n else 0
    if params.paper_faithful and min_out < degree_factor * len(pattern.edges):
        raise InfeasibleDegree(
            f"minimum out-degree {min_out} below {degree_factor} * {len(pattern.edges)} edges"
        )
    return _run_pattern_driver(t, pattern, params)
