"""Tournament representation, generators, degree statistics and cut primitives.

Vertices are dense 0-based integers.  Orientation is stored as one bitset row
per vertex: bit j of ``out_mask(i)`` is set iff the edge between i and j is
directed i -> j.  Since a tournament orients every pair, the in-neighbourhood
is the complement row, and all set operations used by the finders reduce to
integer bit arithmetic.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Iterator, Optional, Sequence

__all__ = [
    "Tournament",
    "DegreeProfile",
    "CutSplit",
    "generate",
    "random_tournament",
    "transitive_tournament",
    "rotational_tournament",
    "blowup_cyclic_triangle",
    "degree_profile",
    "low_in_degree_vertices",
    "low_out_degree_vertices",
    "induced",
    "strong_components",
    "split_by_cut",
    "format_tournament",
    "parse_tournament",
    "tournament_hash",
    "mask_of",
    "bits_of",
]


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_of(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Tournament:
    """Immutable tournament on n vertices.

    ``labels`` maps local vertex ids to coordinates of the root tournament
    this instance was induced from (identity for freshly built tournaments),
    so witnesses can always be reported in root coordinates.
    """

    __slots__ = ("n", "_out", "labels")

    def __init__(self, out_masks: Sequence[int], labels: Optional[Sequence[int]] = None):
        self.n = len(out_masks)
        self._out = tuple(out_masks)
        self.labels = tuple(labels) if labels is not None else tuple(range(self.n))
        if len(self.labels) != self.n:
            raise ValueError("labels length must match vertex count")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def out_mask(self, v: int) -> int:
        return self._out[v]

    def in_mask(self, v: int) -> int:
        # Exactly one direction per pair, so N^-(v) is the complement row.
        return self.full_mask & ~self._out[v] & ~(1 << v)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._out[u] >> v) & 1)

    def out_degree(self, v: int) -> int:
        return self._out[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_mask(v).bit_count()

    def vertices(self) -> range:
        return range(self.n)

    def validate(self) -> None:
        """Check the orientation invariants; raises ValueError on violation."""
        for i in range(self.n):
            if (self._out[i] >> i) & 1:
                raise ValueError(f"self-loop at vertex {i}")
            if self._out[i] >> self.n:
                raise ValueError(f"row {i} has bits beyond vertex count")
        for i in range(self.n):
            for j in bits_of(self._out[i]):
                if (self._out[j] >> i) & 1:
                    raise ValueError(f"both directions present between {i} and {j}")
        total = sum(r.bit_count() for r in self._out)
        if total != self.n * (self.n - 1) // 2:
            raise ValueError("orientation is not total")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Tournament) and self._out == other._out

    def __hash__(self) -> int:
        return hash(self._out)

    def __repr__(self) -> str:
        return f"Tournament(n={self.n})"


def random_tournament(n: int, seed: int) -> Tournament:
    """Uniformly random orientation of each pair, deterministic per seed."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    out = [0] * n
    for i in range(n - 1):
        width = n - 1 - i
        row = rng.getrandbits(width) if width else 0
        out[i] |= (row << (i + 1))
        back = ~row & ((1 << width) - 1)
        for off in bits_of(back):
            out[i + 1 + off] |= 1 << i
    return Tournament(out)


def transitive_tournament(n: int) -> Tournament:
    if n < 1:
        raise ValueError("n must be positive")
    full = (1 << n) - 1
    return Tournament([full & ~((1 << (i + 1)) - 1) for i in range(n)])


def rotational_tournament(n: int) -> Tournament:
    """The ((n-1)/2)-regular tournament i -> i+1, ..., i+(n-1)/2 (mod n)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n % 2 == 0:
        raise ValueError("rotational tournament needs odd n")
    h = (n - 1) // 2
    full = (1 << n) - 1
    base = ((1 << h) - 1) << 1  # bits 1..h
    out = []
    for i in range(n):
        out.append(((base << i) | (base >> (n - i))) & full)
    return Tournament(out)


def blowup_cyclic_triangle(class_size: int) -> Tournament:
    """Three transitive classes A -> B -> C -> A, each of the given size."""
    if class_size < 1:
        raise ValueError("class_size must be positive")
    s = class_size
    n = 3 * s
    out = []
    for v in range(n):
        c, p = divmod(v, s)
        within = 0
        for q in range(p + 1, s):
            within |= 1 << (c * s + q)
        nxt = (c + 1) % 3
        cross = ((1 << s) - 1) << (nxt * s)
        out.append(within | cross)
    return Tournament(out)


def generate(kind: str, n: int, seed: Optional[int] = None) -> Tournament:
    """Dispatching generator.

    ``kind`` is one of random / transitive / rotational /
    blowup_cyclic_triangle; for the blow-up, ``n`` is the class size.
    Randomized kinds require an explicit seed.
    """
    if kind == "random":
        if seed is None:
            raise ValueError("random tournaments require an explicit seed")
        return random_tournament(n, seed)
    if kind == "transitive":
        return transitive_tournament(n)
    if kind == "rotational":
        return rotational_tournament(n)
    if kind == "blowup_cyclic_triangle":
        return blowup_cyclic_triangle(n)
    raise ValueError(f"unknown tournament kind: {kind!r}")


@dataclass(frozen=True)
class DegreeProfile:
    out_degrees: tuple
    in_degrees: tuple
    min_out: int
    min_in: int


def degree_profile(t: Tournament) -> DegreeProfile:
    outs = tuple(t.out_degree(v) for v in t.vertices())
    ins = tuple(t.n - 1 - d for d in outs)
    return DegreeProfile(outs, ins, min(outs), min(ins))


def low_in_degree_vertices(t: Tournament, bound: int) -> frozenset:
    """All vertices of in-degree at most ``bound`` (at most 2*bound+1 exist)."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    return frozenset(v for v in t.vertices() if t.in_degree(v) <= bound)


def low_out_degree_vertices(t: Tournament, bound: int) -> frozenset:
    if bound < 0:
        raise ValueError("bound must be non-negative")
    return frozenset(v for v in t.vertices() if t.out_degree(v) <= bound)


def induced(t: Tournament, vertices: Iterable[int]) -> Tournament:
    """Subtournament on the given vertices, labels composed back to the root."""
    sub = sorted(set(vertices))
    if not sub:
        raise ValueError("induced subtournament needs at least one vertex")
    if sub[0] < 0 or sub[-1] >= t.n:
        raise ValueError("vertex out of range")
    pos = {v: i for i, v in enumerate(sub)}
    out = []
    for v in sub:
        row = 0
        mv = t.out_mask(v)
        for w in sub:
            if (mv >> w) & 1:
                row |= 1 << pos[w]
        out.append(row)
    return Tournament(out, labels=[t.labels[v] for v in sub])


def strong_components(t: Tournament, universe: Optional[int] = None) -> list:
    """Strong components of the subtournament on ``universe`` (a bitmask),
    as frozensets ordered by condensation position, source side first.

    The condensation of a tournament is a transitive tournament, so the
    component order is total.
    """
    uni = t.full_mask if universe is None else universe
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = 0
    for root in bits_of(uni):
        if root in index:
            continue
        work = [(root, None)]
        while work:
            v, it = work[-1]
            if it is None:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
                it = bits_of(t.out_mask(v) & uni)
                work[-1] = (v, it)
            advanced = False
            for w in it:
                if w not in index:
                    work.append((w, None))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))

    def beats(a: frozenset, b: frozenset) -> int:
        x = next(iter(a))
        y = next(iter(b))
        return -1 if t.has_edge(x, y) else 1

    comps.sort(key=cmp_to_key(beats))
    return comps


@dataclass(frozen=True)
class CutSplit:
    """A disconnecting set with the source/sink decomposition it induces."""

    cut: frozenset
    source: frozenset
    sink: frozenset


def split_by_cut(t: Tournament, cut: Iterable[int], prefix: int = 1) -> Optional[CutSplit]:
    """Source/sink decomposition of T minus ``cut``.

    Returns None iff the remainder is strongly connected.  The source is the
    union of the top ``prefix`` strong components of the condensation order.
    """
    cut_set = frozenset(cut)
    uni = t.full_mask & ~mask_of(cut_set)
    if uni.bit_count() < 2:
        raise ValueError("need at least two vertices outside the cut")
    comps = strong_components(t, uni)
    if len(comps) == 1:
        return None
    prefix = max(1, min(prefix, len(comps) - 1))
    source = frozenset().union(*comps[:prefix])
    sink = frozenset().union(*comps[prefix:])
    return CutSplit(cut=cut_set, source=source, sink=sink)


FORMAT_HEADER = "tournament v1"


def format_tournament(t: Tournament) -> str:
    lines = [FORMAT_HEADER, str(t.n)]
    for i in range(t.n):
        row = []
        for j in range(t.n):
            if i == j:
                row.append("-")
            elif t.has_edge(i, j):
                row.append("1")
            else:
                row.append("0")
        lines.append("".join(row))
    return "\n".join(lines) + "\n"


def parse_tournament(text: str) -> Tournament:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != FORMAT_HEADER:
        raise ValueError(f"missing {FORMAT_HEADER!r} header")
    try:
        n = int(lines[1])
    except (IndexError, ValueError) as exc:
        raise ValueError("bad vertex count line") from exc
    if n < 1:
        raise ValueError("vertex count must be positive")
    if len(lines) != n + 2:
        raise ValueError(f"expected {n} matrix rows, found {len(lines) - 2}")
    rows = [ln.strip() for ln in lines[2:]]
    out = [0] * n
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"row {i} has length {len(row)}, expected {n}")
        for j, ch in enumerate(row):
            if i == j:
                if ch != "-":
                    raise ValueError(f"diagonal entry ({i},{j}) must be '-'")
            elif ch == "1":
                out[i] |= 1 << j
            elif ch != "0":
                raise ValueError(f"bad character {ch!r} at ({i},{j})")
    t = Tournament(out)
    t.validate()
    return t


def tournament_hash(t: Tournament) -> str:
    return hashlib.sha256(format_tournament(t).encode()).hexdigest()
