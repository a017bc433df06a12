"""Sweep harness: seeded host families, finder sweeps, CSV artifacts.

Reproducibility contract: all randomness flows from one base seed through
``instance_seed`` (a splitmix64 step keyed by instance index), so sweeps are
byte-identical for a fixed config regardless of worker count.  CSV bodies are
deterministic; the ``# generated`` header line is the only timestamped field.
"""

from __future__ import annotations

import csv
import io
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .complete_finder import find_complete_subdivision_ex
from .core import (
    Tournament,
    blowup_cyclic_triangle,
    random_tournament,
    rotational_tournament,
)
from .errors import FailureTrace, ToursubError
from .params import FinderParams
from .subdivision import verify
from .transitive_finder import find_one_subdivision, find_tt_len3

__all__ = [
    "instance_seed",
    "stacked_triangles",
    "stacked_clusters",
    "build_host",
    "SWEEP_KINDS",
    "ChainRecord",
    "sweep_complete",
    "sweep_tt3",
    "sweep_onesub",
    "rows_to_csv",
    "write_csv",
    "csv_body",
]

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def instance_seed(base: int, index: int) -> int:
    """Per-instance seed: splitmix64 finalizer of base + (index+1) * gamma."""
    z = (base + (index + 1) * _GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


# ---------------------------------------------------------------------------
# host families


def stacked_triangles(layers: int, flip: float, reach: int, seed: int) -> Tournament:
    """Cyclic triangles stacked transitively (layer 0 on top); a lower vertex
    beats an upper one only within ``reach`` layers, with probability
    ``flip``.  Sparse flips keep backward routes scarce, which is what drives
    the finder into its cut iteration."""
    rng = random.Random(seed)
    n = 3 * layers
    out = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            li, lj = i // 3, j // 3
            if li == lj:
                if (j - i) % 3 == 1:
                    out[i] |= 1 << j
                else:
                    out[j] |= 1 << i
            elif lj - li <= reach and rng.random() < flip:
                out[j] |= 1 << i
            else:
                out[i] |= 1 << j
    return Tournament(out)


def stacked_clusters(width: int, layers: int, flip: float, reach: int, seed: int) -> Tournament:
    """Rotational clusters of odd ``width`` stacked transitively with
    short-range flips; wider clusters give occasional larger cut sets."""
    rng = random.Random(seed)
    rot = rotational_tournament(width)
    n = width * layers
    out = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            li, lj = i // width, j // width
            if li == lj:
                if rot.has_edge(i % width, j % width):
                    out[i] |= 1 << j
                else:
                    out[j] |= 1 << i
            elif lj - li <= reach and rng.random() < flip:
                out[j] |= 1 << i
            else:
                out[i] |= 1 << j
    return Tournament(out)


def build_host(kind: str, n: int, seed: int) -> Tournament:
    """Instantiate a sweep host of roughly n vertices."""
    if kind == "random":
        return random_tournament(n, seed)
    if kind == "rotational":
        return rotational_tournament(n | 1)
    if kind == "blowup":
        return blowup_cyclic_triangle(max(1, n // 3))
    if kind == "triangles_sparse":
        return stacked_triangles(max(2, n // 3), 0.05, 2, seed)
    if kind == "triangles_local":
        return stacked_triangles(max(2, n // 3), 0.15, 1, seed)
    if kind == "clusters5":
        return stacked_clusters(5, max(2, n // 5), 0.1, 1, seed)
    raise ValueError(f"unknown sweep host kind {kind!r}")


SWEEP_KINDS = (
    "random",
    "triangles_sparse",
    "rotational",
    "triangles_local",
    "blowup",
    "clusters5",
)

TT_KINDS = ("random", "rotational", "blowup", "random", "triangles_sparse", "random")


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class ChainRecord:
    """One certified cut-chain stage observed during a sweep."""

    instance: int
    kind: str
    stage: int
    cut: frozenset
    source: frozenset
    u_prime: frozenset
    u_dprime: frozenset
    m_prime: dict
    m_dprime: dict
    host_seed: int
    host_kind: str
    host_n: int


def _complete_instance(args) -> Tuple[dict, List[ChainRecord], Optional[str]]:
    index, kind, n, k, scale_str, base_seed = args
    scale = Fraction(scale_str)
    seed = instance_seed(base_seed, index)
    host = build_host(kind, n, seed)
    params = FinderParams(k=k, scale=scale)
    row = {
        "instance": index,
        "kind": kind,
        "n": host.n,
        "seed": seed,
        "k": k,
        "scale": scale_str,
        "outcome": "",
        "stage": "",
        "verify_ok": "",
        "l1": "",
        "l2": "",
        "span": "",
        "chain_stages": 0,
        "max_cut": 0,
    }
    chains: List[ChainRecord] = []
    unsound: Optional[str] = None
    try:
        outcome, diag = find_complete_subdivision_ex(host, k, params)
    except ToursubError as exc:
        row["outcome"] = "error"
        row["stage"] = type(exc).__name__
        return row, chains, unsound
    stages = diag.chain.stages if diag.chain else ()
    row["chain_stages"] = len(stages)
    row["max_cut"] = max((len(s.cut) for s in stages), default=0)
    for i, st in enumerate(stages):
        chains.append(
            ChainRecord(
                instance=index,
                kind=kind,
                stage=i,
                cut=st.cut,
                source=st.source,
                u_prime=st.u_prime,
                u_dprime=st.u_dprime,
                m_prime=dict(st.m_prime),
                m_dprime=dict(st.m_dprime),
                host_seed=seed,
                host_kind=kind,
                host_n=host.n,
            )
        )
    if isinstance(outcome, FailureTrace):
        row["outcome"] = "failure"
        row["stage"] = outcome.stage
        return row, chains, unsound
    report = verify(host, outcome, max_len=3)
    two_internals = all(len(p.internals) <= 2 for p in outcome.paths.values())
    row["outcome"] = "witness"
    row["verify_ok"] = int(report.valid and two_internals)
    row["l1"] = report.l1
    row["l2"] = report.l2
    row["span"] = report.span
    if not (report.valid and two_internals):
        unsound = f"instance {index}: {report.violations[:3]}"
    return row, chains, unsound


COMPLETE_COLUMNS = [
    "instance", "kind", "n", "seed", "k", "scale", "outcome", "stage",
    "verify_ok", "l1", "l2", "span", "chain_stages", "max_cut",
]


def sweep_complete(
    k: int,
    trials: int,
    n: int,
    scale: Fraction,
    seed: int,
    kinds: Sequence[str] = SWEEP_KINDS,
    workers: int = 1,
) -> Tuple[List[dict], List[ChainRecord], List[str]]:
    """Run the complete-digraph finder across a seeded host mix.

    Returns (csv rows, certified chain stages, soundness violations); the
    violations list must come back empty.
    """
    jobs = [
        (i, kinds[i % len(kinds)], n, k, str(scale), seed)
        for i in range(trials)
    ]
    results = _run_jobs(_complete_instance, jobs, workers)
    rows = [r for r, _, _ in results]
    chains = [c for _, cs, _ in results for c in cs]
    bad = [b for _, _, b in results if b]
    return rows, chains, bad


def _tt3_instance(args) -> Tuple[dict, Optional[str]]:
    index, kind, n, k, scale_str, base_seed = args
    scale = Fraction(scale_str)
    seed = instance_seed(base_seed, index)
    host = build_host(kind, n, seed)
    params = FinderParams(k=k, scale=scale)
    row = {
        "instance": index, "kind": kind, "n": host.n, "seed": seed, "k": k,
        "scale": scale_str, "outcome": "", "stage": "", "verify_ok": "",
        "l1": "", "l2": "", "span": "",
    }
    try:
        outcome = find_tt_len3(host, k, params)
    except ToursubError as exc:
        row["outcome"] = "error"
        row["stage"] = type(exc).__name__
        return row, None
    if isinstance(outcome, FailureTrace):
        row["outcome"] = "failure"
        row["stage"] = outcome.stage
        return row, None
    report = verify(host, outcome, max_len=3)
    row["outcome"] = "witness"
    row["verify_ok"] = int(report.valid)
    row["l1"] = report.l1
    row["l2"] = report.l2
    row["span"] = report.span
    return row, (None if report.valid else f"instance {index}: {report.violations[:3]}")


def _onesub_instance(args) -> Tuple[dict, Optional[str]]:
    index, kind, n, k, scale_str, base_seed = args
    scale = Fraction(scale_str)
    seed = instance_seed(base_seed, index)
    host = build_host(kind, n, seed)
    params = FinderParams(k=k, scale=scale)
    row = {
        "instance": index, "kind": kind, "n": host.n, "seed": seed, "k": k,
        "scale": scale_str, "outcome": "", "stage": "", "verify_ok": "",
        "l1": "", "l2": "", "span": "",
    }
    try:
        outcome = find_one_subdivision(host, k, params)
    except ToursubError as exc:
        row["outcome"] = "error"
        row["stage"] = type(exc).__name__
        return row, None
    if isinstance(outcome, FailureTrace):
        row["outcome"] = "failure"
        row["stage"] = outcome.stage
        return row, None
    report = verify(host, outcome, max_len=2, exact_len=2)
    row["outcome"] = "witness"
    row["verify_ok"] = int(report.valid)
    row["l1"] = report.l1
    row["l2"] = report.l2
    row["span"] = report.span
    return row, (None if report.valid else f"instance {index}: {report.violations[:3]}")


TT_COLUMNS = [
    "instance", "kind", "n", "seed", "k", "scale", "outcome", "stage",
    "verify_ok", "l1", "l2", "span",
]


def sweep_tt3(
    k: int,
    trials: int,
    n: int,
    scale: Fraction,
    seed: int,
    kinds: Sequence[str] = TT_KINDS,
    workers: int = 1,
) -> Tuple[List[dict], List[str]]:
    jobs = [(i, kinds[i % len(kinds)], n, k, str(scale), seed) for i in range(trials)]
    results = _run_jobs(_tt3_instance, jobs, workers)
    rows = [r for r, _ in results]
    bad = [b for _, b in results if b]
    return rows, bad


def sweep_onesub(
    k: int,
    trials: int,
    n: int,
    scale: Fraction,
    seed: int,
    kinds: Sequence[str] = TT_KINDS,
    workers: int = 1,
) -> Tuple[List[dict], List[str]]:
    jobs = [(i, kinds[i % len(kinds)], n, k, str(scale), seed) for i in range(trials)]
    results = _run_jobs(_onesub_instance, jobs, workers)
    rows = [r for r, _ in results]
    bad = [b for _, b in results if b]
    return rows, bad


def _run_jobs(fn, jobs, workers: int):
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(fn, jobs))
    return results  # pool.map preserves job order, so rows stay index-sorted


# ---------------------------------------------------------------------------
# CSV artifacts


def csv_body(rows: List[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: row.get(c, "") for c in columns})
    return buf.getvalue()


def rows_to_csv(
    schema: str,
    config: Dict,
    rows: List[dict],
    columns: Sequence[str],
    timestamp: bool = True,
) -> str:
    header = [f"# schema: {schema}"]
    header.append("# config: " + json.dumps(config, sort_keys=True, default=str))
    if timestamp:
        header.append("# generated: " + datetime.now(timezone.utc).isoformat())
    return "\n".join(header) + "\n" + csv_body(rows, columns)


def write_csv(path, schema, config, rows, columns) -> None:
    with open(path, "w") as fh:
        fh.write(rows_to_csv(schema, config, rows, columns))


SCAN_DK_COLUMNS = ["n", "seed", "delta_plus", "contains", "nodes", "millis"]
