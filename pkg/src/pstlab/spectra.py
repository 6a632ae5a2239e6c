"""Cospectrality deciders, eigenvalue supports, and the signed support
partition.

All yes/no decisions here are exact polynomial algebra; floating point only
shows up in diagnostic projector tables and refined root midpoints.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .graphs import Graph, delete_vertices
from .polys import (
    Poly,
    RatFunc,
    RootBox,
    box_has_root,
    charpoly,
    isolate_real_roots,
    path_sum_poly,
    poly_gcd,
    square_free_part,
)


class SpectraError(ValueError):
    pass


def vertex_deleted_charpoly(G: Graph, i: int) -> Poly:
    return charpoly(delete_vertices(G, {i}))


def is_cospectral(G: Graph, i: int, j: int) -> bool:
    """phi^{G\\i} == phi^{G\\j}, exactly."""
    if i == j:
        raise SpectraError("need distinct vertices")
    return vertex_deleted_charpoly(G, i) == vertex_deleted_charpoly(G, j)


@lru_cache(maxsize=100_000)
def is_strongly_cospectral(G: Graph, i: int, j: int) -> bool:
    """Cospectral and all poles of phi^{G\\{i,j}}/phi^G are simple."""
    if not is_cospectral(G, i, j):
        return False
    f = RatFunc.make(charpoly(delete_vertices(G, {i, j})), charpoly(G))
    den = f.den
    return den.degree == 0 or square_free_part(den) == den


@lru_cache(maxsize=100_000)
def support_poly(G: Graph, i: int) -> Poly:
    """Monic square-free polynomial whose roots are the eigenvalue support of
    i: phi^G / gcd(phi^G, phi^{G\\i})."""
    phi = charpoly(G)
    g = poly_gcd(phi, vertex_deleted_charpoly(G, i))
    return phi.exact_div(g).monic()


def support_size(G: Graph, i: int) -> int:
    return support_poly(G, i).degree


@lru_cache(maxsize=100_000)
def signed_path_sum(G: Graph, i: int, j: int) -> Poly:
    """The path-sum polynomial S with its sign pinned so the largest element
    of the support of i lands in the plus part of the partition (Perron
    consistency).  Requires cospectral i, j for the sign check to be
    meaningful; for the positive-leading-coefficient default this is a no-op
    on unit-weight connected graphs."""
    s = path_sum_poly(G, i, j)
    if s.is_zero():
        return s
    phi = charpoly(G)
    sup = support_poly(G, i)
    plus = phi.exact_div(poly_gcd(phi, vertex_deleted_charpoly(G, i) + s))
    top = isolate_real_roots(sup)[-1]
    if not box_has_root(plus.monic(), top):
        return -s
    return s


@dataclass(frozen=True)
class SupportPartition:
    """Eigenvalue support of i split into the plus/minus classes of a
    strongly cospectral pair, as exact square-free polynomials plus certified
    root boxes."""

    support: Poly
    plus: Poly
    minus: Poly
    support_roots: tuple[RootBox, ...]
    plus_roots: tuple[RootBox, ...]
    minus_roots: tuple[RootBox, ...]

    def sigma(self, box: RootBox) -> int:
        """+1 for a support root in the plus class, -1 in the minus class."""
        if box_has_root(self.plus, box):
            return +1
        if box_has_root(self.minus, box):
            return -1
        raise SpectraError("root box not classified")

    def to_json(self) -> dict:
        return {
            "support": self.support.to_json(),
            "plus": self.plus.to_json(),
            "minus": self.minus.to_json(),
            "support_roots": [b.to_json() for b in self.support_roots],
            "plus_roots": [b.to_json() for b in self.plus_roots],
            "minus_roots": [b.to_json() for b in self.minus_roots],
        }


@lru_cache(maxsize=100_000)
def support_partition(G: Graph, i: int, j: int) -> SupportPartition:
    """Split the support of i into plus/minus parts for a strongly cospectral
    pair, verifying all structural invariants exactly before returning."""
    if not is_strongly_cospectral(G, i, j):
        raise SpectraError("vertices are not strongly cospectral")
    phi = charpoly(G)
    phi_i = vertex_deleted_charpoly(G, i)
    s = signed_path_sum(G, i, j)
    plus = phi.exact_div(poly_gcd(phi, phi_i + s)).monic()
    minus = phi.exact_div(poly_gcd(phi, phi_i - s)).monic()
    sup = support_poly(G, i)
    if plus * minus != sup:
        raise SpectraError("partition does not multiply back to the support")
    if poly_gcd(plus, minus).degree != 0:
        raise SpectraError("plus and minus parts are not disjoint")
    sup_roots = tuple(isolate_real_roots(sup))
    if not box_has_root(plus, sup_roots[-1]):
        raise SpectraError("largest support root missing from the plus part")
    return SupportPartition(
        support=sup,
        plus=plus,
        minus=minus,
        support_roots=sup_roots,
        plus_roots=tuple(isolate_real_roots(plus)),
        minus_roots=tuple(isolate_real_roots(minus)) if minus.degree else (),
    )


@dataclass(frozen=True)
class ProjectorRow:
    theta: float
    e_ii: float
    e_ij: float
    sigma: Optional[int]


@dataclass(frozen=True)
class ProjectorTable:
    """Numeric eigenprojector entries on the support of i.  Diagnostic
    output; no algebraic decision reads these floats."""

    pair: tuple[int, int]
    rows: tuple[ProjectorRow, ...]

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "rows": [
                {
                    "theta": r.theta,
                    "e_ii": r.e_ii,
                    "e_ij": r.e_ij,
                    "sigma": r.sigma,
                }
                for r in self.rows
            ],
        }


def projector_entries(G: Graph, i: int, j: int) -> ProjectorTable:
    """Residues of phi^{G\\i}/phi^G and S/phi^G at each support eigenvalue.

    Signs are only assigned when i, j are strongly cospectral (or i == j,
    where every sigma is +1).
    """
    phi = charpoly(G)
    diag = RatFunc.make(vertex_deleted_charpoly(G, i), phi)
    dden = diag.den.derivative()
    if i == j:
        off = diag
        partition = None
    else:
        s = signed_path_sum(G, i, j)
        off = RatFunc.make(s, phi) if not s.is_zero() else None
        partition = (
            support_partition(G, i, j) if is_strongly_cospectral(G, i, j) else None
        )
    rows = []
    for box in isolate_real_roots(diag.den):
        theta = box.midpoint
        e_ii = float(diag.num(theta)) / float(dden(theta))
        if i == j:
            e_ij, sigma = e_ii, +1
        else:
            if off is not None and box_has_root(square_free_part(off.den), box):
                e_ij = float(off.num(theta)) / float(off.den.derivative()(theta))
            else:
                e_ij = 0.0
            sigma = partition.sigma(box) if partition is not None else None
        rows.append(ProjectorRow(theta, e_ii, e_ij, sigma))
    return ProjectorTable((i, j), tuple(rows))


def min_support_gap(G: Graph, i: int) -> float:
    """Minimum distance between consecutive support eigenvalues of i."""
    roots = isolate_real_roots(support_poly(G, i))
    if len(roots) < 2:
        raise SpectraError("support has fewer than two eigenvalues")
    mids = [b.midpoint for b in roots]
    return min(b - a for a, b in zip(mids, mids[1:]))
