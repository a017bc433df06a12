"""Pattern digraphs, subdivision witnesses, and the witness verifier.

Every finder and the exact oracle produce :class:`Subdivision` values; the
single :func:`verify` below is the ground truth they are all checked against.
It never aborts: all violated clauses are collected into the report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from .core import Tournament, tournament_hash

__all__ = [
    "PatternDigraph",
    "pattern_complete_digraph",
    "pattern_transitive",
    "parse_pattern",
    "PathWitness",
    "Subdivision",
    "VerifyReport",
    "verify",
    "min_span",
    "witness_to_json",
    "witness_from_json",
]


@dataclass(frozen=True)
class PatternDigraph:
    """A digraph to be embedded as a subdivision: k vertices, ordered edges."""

    k: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("pattern needs at least one vertex")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop ({u},{v})")
            if not (0 <= u < self.k and 0 <= v < self.k):
                raise ValueError(f"edge ({u},{v}) out of range")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))

    @property
    def is_complete(self) -> bool:
        return len(self.edges) == self.k * (self.k - 1)

    def isolated_vertices(self) -> frozenset:
        touched = set()
        for u, v in self.edges:
            touched.add(u)
            touched.add(v)
        return frozenset(range(self.k)) - touched


def pattern_complete_digraph(k: int) -> PatternDigraph:
    """All k(k-1) ordered pairs."""
    if k < 1:
        raise ValueError("k must be positive")
    return PatternDigraph(k, tuple((u, v) for u in range(k) for v in range(k) if u != v))


def pattern_transitive(k: int) -> PatternDigraph:
    """The k(k-1)/2 forward pairs of a linear order."""
    if k < 1:
        raise ValueError("k must be positive")
    return PatternDigraph(k, tuple((u, v) for u in range(k) for v in range(u + 1, k)))


def parse_pattern(spec: str) -> PatternDigraph:
    """Parse a CLI pattern spec: complete:K, transitive:K, cycle:K or
    edges:0>1,1>2,..."""
    kind, _, arg = spec.partition(":")
    if kind == "complete":
        return pattern_complete_digraph(int(arg))
    if kind == "transitive":
        return pattern_transitive(int(arg))
    if kind == "cycle":
        k = int(arg)
        if k < 2:
            raise ValueError("cycle needs k >= 2")
        return PatternDigraph(k, tuple((i, (i + 1) % k) for i in range(k)))
    if kind == "edges":
        pairs = []
        for item in arg.split(","):
            a, _, b = item.partition(">")
            pairs.append((int(a), int(b)))
        k = max(max(u, v) for u, v in pairs) + 1
        return PatternDigraph(k, tuple(pairs))
    raise ValueError(f"unknown pattern spec {spec!r}")


@dataclass(frozen=True)
class PathWitness:
    """A directed path between two branch vertices; internals may be empty."""

    from_v: int
    to_v: int
    internals: Tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.internals) + 1

    def hops(self) -> Iterable[Tuple[int, int]]:
        seq = (self.from_v, *self.internals, self.to_v)
        return zip(seq, seq[1:])


@dataclass(frozen=True)
class Subdivision:
    pattern: PatternDigraph
    branch: Tuple[int, ...]
    paths: Dict[Tuple[int, int], PathWitness]

    @property
    def l1(self) -> int:
        """Number of paths of length 2."""
        return sum(1 for p in self.paths.values() if p.length == 2)

    @property
    def l2(self) -> int:
        """Number of paths of length 3."""
        return sum(1 for p in self.paths.values() if p.length == 3)

    @property
    def span(self) -> int:
        return len(self.branch) + sum(len(p.internals) for p in self.paths.values())

    def internal_vertices(self) -> list:
        out = []
        for key in sorted(self.paths):
            out.extend(self.paths[key].internals)
        return out


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    violations: Tuple[str, ...]
    l1: int
    l2: int
    span: int

    def __bool__(self) -> bool:
        return self.valid


def verify(
    t: Tournament,
    sub: Subdivision,
    max_len: int,
    exact_len: Optional[int] = None,
) -> VerifyReport:
    """Check a subdivision witness against its host tournament.

    Collects every violation: branch collisions, wrong/missing paths, broken
    hops, reused internal vertices and length-cap breaches.  ``exact_len``
    switches from "length at most max_len" to "length exactly exact_len"
    (the 1-subdivision regime when exact_len=2).
    """
    bad = []
    k = sub.pattern.k
    if len(sub.branch) != k:
        bad.append(f"branch has {len(sub.branch)} vertices, pattern needs {k}")
    branch_set = set()
    for i, v in enumerate(sub.branch):
        if not (0 <= v < t.n):
            bad.append(f"branch vertex {i} -> {v} out of range")
        elif v in branch_set:
            bad.append(f"branch collision: host vertex {v} used twice")
        branch_set.add(v)

    for edge in sub.pattern.edges:
        if edge not in sub.paths:
            bad.append(f"pattern edge {edge} has no path")
    for edge in sub.paths:
        if edge not in sub.pattern.edges:
            bad.append(f"path for {edge} is not a pattern edge")

    seen_internal: Dict[int, Tuple[int, int]] = {}
    for edge in sorted(sub.paths):
        path = sub.paths[edge]
        u, v = edge
        if u < k and v < k and len(sub.branch) == k:
            if path.from_v != sub.branch[u]:
                bad.append(f"path {edge} starts at {path.from_v}, branch maps {u} -> {sub.branch[u]}")
            if path.to_v != sub.branch[v]:
                bad.append(f"path {edge} ends at {path.to_v}, branch maps {v} -> {sub.branch[v]}")
        if exact_len is not None:
            if path.length != exact_len:
                bad.append(f"path {edge} has length {path.length}, cap is exactly {exact_len}")
        elif path.length > max_len:
            bad.append(f"path {edge} has length {path.length} > cap {max_len}")
        for w in path.internals:
            if not (0 <= w < t.n):
                bad.append(f"path {edge}: internal {w} out of range")
                continue
            if w in branch_set:
                bad.append(f"path {edge}: internal {w} is a branch vertex")
            if w in seen_internal and seen_internal[w] != edge:
                bad.append(f"internal {w} reused by {seen_internal[w]} and {edge}")
            seen_internal[w] = edge
        if len(set(path.internals)) != len(path.internals):
            bad.append(f"path {edge} repeats an internal vertex")
        for a, b in path.hops():
            if not (0 <= a < t.n and 0 <= b < t.n):
                continue
            if a == b:
                bad.append(f"path {edge}: degenerate hop at {a}")
            elif not t.has_edge(a, b):
                bad.append(f"path {edge}: missing edge hop {a} -> {b}")

    return VerifyReport(
        valid=not bad,
        violations=tuple(bad),
        l1=sub.l1,
        l2=sub.l2,
        span=sub.span,
    )


def min_span(pattern: PatternDigraph, host_is_tournament: bool = True) -> int:
    """Lower bound on the vertex count of any subdivision of ``pattern``.

    In a tournament one direction of every complete-pattern pair must be
    subdivided, giving k(k-1)/2 + k; other patterns get the trivial bound k.
    """
    if pattern.is_complete and host_is_tournament:
        k = pattern.k
        return k * (k - 1) // 2 + k
    return pattern.k


def witness_to_json(t: Tournament, sub: Subdivision) -> dict:
    """Witness document: pattern, branch map, per-edge internals, host hash."""
    paths = []
    for edge in sorted(sub.paths):
        p = sub.paths[edge]
        paths.append({"from": p.from_v, "to": p.to_v, "internals": list(p.internals)})
    return {
        "pattern": {"k": sub.pattern.k, "edges": [list(e) for e in sub.pattern.edges]},
        "branch": list(sub.branch),
        "paths": paths,
        "host_hash": tournament_hash(t),
    }


def witness_from_json(doc: dict) -> Tuple[Subdivision, str]:
    """Reconstruct a subdivision and the recorded host hash.

    Path endpoints are host vertices; the pattern edge each path realizes is
    recovered through the (injective) branch map.
    """
    pattern = PatternDigraph(
        doc["pattern"]["k"], tuple(tuple(e) for e in doc["pattern"]["edges"])
    )
    branch = tuple(doc["branch"])
    inverse = {v: i for i, v in enumerate(branch)}
    if len(inverse) != len(branch):
        raise ValueError("branch map is not injective")
    paths = {}
    for entry in doc["paths"]:
        u = inverse.get(entry["from"])
        v = inverse.get(entry["to"])
        if u is None or v is None:
            raise ValueError(f"path endpoints {entry['from']},{entry['to']} not in branch")
        if (u, v) in paths:
            raise ValueError(f"duplicate path for pattern edge ({u},{v})")
        paths[(u, v)] = PathWitness(entry["from"], entry["to"], tuple(entry["internals"]))
    return Subdivision(pattern, branch, paths), doc.get("host_hash", "")


def dump_witness(t: Tournament, sub: Subdivision) -> str:
    return json.dumps(witness_to_json(t, sub), indent=2, sort_keys=True) + "\n"
