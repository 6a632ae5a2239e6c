"""Tree-scan harness: machine-checks, at desk scale, that no tree on more
than three vertices admits perfect state transfer, and that the support-gap
bound holds with equality only on P3.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Optional

from . import __version__
from .gapcert import SQRT2, certify_gap
from .pst import decide_pst
from .spectra import is_cospectral, is_strongly_cospectral, vertex_deleted_charpoly
from .trees import enumerate_trees

SCHEMA_VERSION = 1


class ScanInvariantError(RuntimeError):
    pass


@dataclass
class TreeResult:
    order: int
    index: int
    cospectral_pairs: list[tuple[int, int]]
    strongly_cospectral_pairs: list[tuple[int, int]]
    pst_pairs: list[dict]
    gap_violations: list[dict]
    gap_certificates: list[dict]


def analyze_tree(args: tuple[int, int, object]) -> TreeResult:
    n, index, T = args
    deleted = [vertex_deleted_charpoly(T, v) for v in range(n)]
    cosp = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if deleted[i] == deleted[j]
    ]
    strong = [(i, j) for i, j in cosp if is_strongly_cospectral(T, i, j)]
    pst, violations, gaps = [], [], []
    for i, j in strong:
        cert = decide_pst(T, i, j)
        if cert.result == "PST":
            pst.append({"pair": [i, j], "certificate": cert.to_json()})
        gc = certify_gap(T, i, j)
        gaps.append(gc.to_json())
        if gc.hypotheses_ok:
            if gc.achieved_gap is not None and gc.achieved_gap > SQRT2 + 1e-9:
                violations.append(gc.to_json())
            if gc.equality_detected and n != 3:
                violations.append(gc.to_json())
    return TreeResult(n, index, cosp, strong, pst, violations, gaps)


@dataclass
class ScanReport:
    max_n: int
    per_order: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "toolkit_version": __version__,
            "max_n": self.max_n,
            "per_order": self.per_order,
            "wall_time_seconds": self.wall_time,
        }


def check_invariants(report: ScanReport) -> None:
    """Raise ScanInvariantError if the scan finds state transfer on a tree with
    more than three vertices, or a gap-bound violation."""
    for entry in report.per_order:
        n = entry["n"]
        if entry["gap_violations"]:
            raise ScanInvariantError(f"gap-bound violation at n={n}")
        pst = entry["pst_pairs"]
        if n >= 4 and pst:
            raise ScanInvariantError(f"unexpected PST pair on a tree with n={n}")
        if n == 2 and len(pst) != 1:
            raise ScanInvariantError("P2 must admit exactly one PST pair")
        if n == 3 and len(pst) != 1:
            raise ScanInvariantError("P3 must admit exactly one PST pair")


def scan_trees(max_n: int, jobs: int = 1) -> ScanReport:
    """Enumerate all free trees up to max_n and aggregate cospectrality, PST,
    and gap-certificate results; deterministic output independent of jobs."""
    if not (2 <= max_n <= 16):
        raise ValueError("max_n must be in 2..16")
    start = time.monotonic()
    report = ScanReport(max_n=max_n)
    for n in range(2, max_n + 1):
        tasks = [(n, idx, T) for idx, T in enumerate(enumerate_trees(n))]
        if jobs > 1 and len(tasks) > 1:
            with Pool(jobs) as pool:
                results = pool.map(analyze_tree, tasks)
        else:
            results = [analyze_tree(t) for t in tasks]
        results.sort(key=lambda r: r.index)
        entry = {
            "n": n,
            "tree_count": len(tasks),
            "cospectral_pairs": sum(len(r.cospectral_pairs) for r in results),
            "strongly_cospectral_pairs": sum(
                len(r.strongly_cospectral_pairs) for r in results
            ),
            "pst_pairs": [
                {"tree_index": r.index, **p} for r in results for p in r.pst_pairs
            ],
            "gap_violations": [
                {"tree_index": r.index, **v}
                for r in results
                for v in r.gap_violations
            ],
        }
        report.per_order.append(entry)
    report.wall_time = time.monotonic() - start
    return report
