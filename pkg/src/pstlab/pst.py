"""Polynomial-time perfect-state-transfer decider with verifiable
certificates.

The decision runs entirely in exact arithmetic: floating point proposes the
quadratic-field shape of the support spectrum, and every proposal is accepted
only after exact polynomial reconstruction.  Each positive verdict is
cross-checked against the numeric walk oracle before being returned.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import walk
from .graphs import Graph, GraphError, laplacian_form
from .polys import (
    Poly,
    divisors,
    isolate_real_roots,
    rational_roots_monic_integer,
    squarefree_part_int,
)
from .spectra import support_partition, support_poly, is_strongly_cospectral

NOT_STRONGLY_COSPECTRAL = "not_strongly_cospectral"
RATIO_CONDITION_B = "ratio_condition_b"
PARITY_CONDITION_C = "parity_condition_c"


class PstError(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticSpectrum:
    """Support eigenvalues written as (a + b_r sqrt(delta)) / 2, largest
    first."""

    a: int
    delta: int
    b: tuple[int, ...]

    def theta(self, r: int) -> float:
        return (self.a + self.b[r] * math.sqrt(self.delta)) / 2

    def to_json(self) -> dict:
        return {"a": self.a, "delta": self.delta, "b": list(self.b)}


@dataclass(frozen=True)
class PstCertificate:
    pair: tuple[int, int]
    model: str
    result: str  # "PST" | "NO_PST"
    failing_condition: Optional[str] = None
    spectrum: Optional[QuadraticSpectrum] = None
    sigmas: tuple[int, ...] = ()
    g: Optional[int] = None
    k: tuple[int, ...] = ()
    t_min: Optional[float] = None
    phase: Optional[complex] = None

    def to_json(self) -> dict:
        out = {
            "pair": list(self.pair),
            "model": self.model,
            "result": self.result,
        }
        if self.result == "NO_PST":
            out["failing_condition"] = self.failing_condition
            return out
        out["spectrum"] = self.spectrum.to_json()
        out["sigmas"] = list(self.sigmas)
        out["g"] = self.g
        out["k"] = list(self.k)
        out["t_min"] = self.t_min
        out["t_min_symbolic"] = f"pi/({self.g}*sqrt({self.delta}))"
        out["phase"] = [self.phase.real, self.phase.imag]
        return out

    @property
    def delta(self) -> Optional[int]:
        return self.spectrum.delta if self.spectrum else None


def _expand_quadratic_product(
    a: int, delta: int, bs: list[int]
) -> Optional[Poly]:
    """Exactly expand prod_r (t - (a + b_r sqrt(delta))/2) over Q(sqrt(delta));
    None if an irrational part survives."""
    # coefficients are pairs (x, y) standing for x + y*sqrt(delta)
    coeffs: list[tuple[Fraction, Fraction]] = [(Fraction(1), Fraction(0))]
    for b in bs:
        rx, ry = Fraction(a, 2), Fraction(b, 2)
        new = [(Fraction(0), Fraction(0))] * (len(coeffs) + 1)
        for k, (x, y) in enumerate(coeffs):
            nx, ny = new[k + 1]
            new[k + 1] = (nx + x, ny + y)
            # subtract root * coeff: (rx + ry*sqrt(d)) * (x + y*sqrt(d))
            px = rx * x + delta * ry * y
            py = rx * y + ry * x
            nx, ny = new[k]
            new[k] = (nx - px, ny - py)
        coeffs = new
    if any(y != 0 for _, y in coeffs):
        return None
    return Poly(tuple(x for x, _ in coeffs))


def fit_quadratic_spectrum(support: Poly) -> Optional[QuadraticSpectrum]:
    """Exact fit of the support roots to (a + b_r sqrt(delta))/2, or None when
    the ratio condition fails.

    Numeric root boxes only propose candidates; acceptance is exact expansion
    and comparison over the rationals.
    """
    if support.degree < 1:
        raise PstError("support polynomial must be nonconstant")
    if support.leading != 1 or any(c.denominator != 1 for c in support.coeffs):
        return None  # eigenvalues are not algebraic integers
    int_roots = [
        z for z in rational_roots_monic_integer(support)
        if support(Fraction(z)) == 0
    ]
    q = support
    for z in int_roots:
        q = q.exact_div(Poly.linear(z))
    if q.degree == 0:
        a, delta = 0, 1
        thetas = sorted(int_roots, reverse=True)
        bs = [2 * z for z in thetas]
        return QuadraticSpectrum(a, delta, tuple(bs))
    if q.degree % 2:
        return None
    # all conjugate pairs sum to a, so a = 2 * (root sum) / deg
    root_sum = -q.coeffs[q.degree - 1]
    a2 = Fraction(2) * root_sum / q.degree
    if a2.denominator != 1:
        return None
    a = int(a2)
    if len(int_roots) > 1:
        return None  # at most one rational support root (= a/2) is possible
    if int_roots and 2 * int_roots[0] != a:
        return None
    boxes = isolate_real_roots(q)
    first = 2 * boxes[-1].midpoint - a
    d2 = round(first * first)
    if d2 <= 0:
        return None
    delta = squarefree_part_int(d2)
    sqd = math.sqrt(delta)
    bs_irrational = []
    for box in boxes:
        b = round((2 * box.midpoint - a) / sqd)
        if b == 0:
            return None
        bs_irrational.append(b)
    bs = bs_irrational + [0] * len(int_roots)
    parities = {abs(b) % 2 for b in bs} | {abs(a) % 2}
    if len(parities) > 1:
        return None
    rebuilt = _expand_quadratic_product(a, delta, bs)
    if rebuilt is None or rebuilt != support:
        return None
    order = sorted(bs, reverse=True)
    return QuadraticSpectrum(a, delta, tuple(order))


def _prepare_model(G: Graph, model: str) -> Graph:
    if model == "adjacency":
        return G
    if model == "laplacian":
        if not G.is_integer_weighted():
            raise GraphError("Laplacian model requires integer weights")
        return laplacian_form(G)
    raise PstError(f"unknown model: {model}")


def decide_pst(G: Graph, i: int, j: int, model: str = "adjacency") -> PstCertificate:
    """Full characterization-based PST decision for the pair (i, j)."""
    if i == j:
        raise PstError("need distinct vertices")
    H = _prepare_model(G, model)
    if not is_strongly_cospectral(H, i, j):
        return PstCertificate((i, j), model, "NO_PST", NOT_STRONGLY_COSPECTRAL)
    spectrum = fit_quadratic_spectrum(support_poly(H, i))
    if spectrum is None:
        return PstCertificate((i, j), model, "NO_PST", RATIO_CONDITION_B)
    partition = support_partition(H, i, j)
    # support roots ascending; spectrum.b is descending in theta
    boxes = list(reversed(partition.support_roots))
    sigmas = tuple(partition.sigma(box) for box in boxes)
    if sigmas[0] != +1:
        raise PstError("largest support eigenvalue must carry sigma = +1")
    b0 = spectrum.b[0]
    deltas = [(b0 - br) // 2 for br in spectrum.b]
    if any(2 * d != b0 - br for d, br in zip(deltas, spectrum.b)):
        raise PstError("b values with mixed parity survived the exact fit")
    g0 = 0
    for d in deltas:
        g0 = math.gcd(g0, d)
    if g0 == 0:
        return PstCertificate((i, j), model, "NO_PST", PARITY_CONDITION_C)
    for g in sorted(divisors(g0), reverse=True):
        ks = [d // g for d in deltas]
        if all((k % 2 == 0) == (s == +1) for k, s in zip(ks, sigmas)):
            t_min = math.pi / (g * math.sqrt(spectrum.delta))
            cert = PstCertificate(
                (i, j),
                model,
                "PST",
                spectrum=spectrum,
                sigmas=sigmas,
                g=g,
                k=tuple(ks),
                t_min=t_min,
                phase=walk.amplitude(H, i, j, t_min),
            )
            if not walk.verify_certificate(H, cert):
                raise PstError(
                    "internal error: algebraic PST verdict failed the walk oracle"
                )
            return cert
    return PstCertificate((i, j), model, "NO_PST", PARITY_CONDITION_C)


def pst_pairs(
    G: Graph, model: str = "adjacency"
) -> list[tuple[int, int, PstCertificate]]:
    """All unordered pairs admitting PST, in lexicographic order."""
    out = []
    for i in range(G.n):
        for j in range(i + 1, G.n):
            cert = decide_pst(G, i, j, model)
            if cert.result == "PST":
                out.append((i, j, cert))
    return out
