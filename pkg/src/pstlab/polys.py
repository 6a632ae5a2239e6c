"""Exact polynomial arithmetic over the rationals.

Characteristic polynomials, gcd and square-free machinery, exact square
roots, path-sum polynomials, and Sturm-sequence real-root isolation.  All
coefficients are Fractions; floating point appears only in refined root
midpoints.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable

from .graphs import Graph, delete_vertices

#: refined root boxes are bisected below this width
BOX_WIDTH = Fraction(1, 2**40)


class PolyError(ValueError):
    pass


class NotASquareError(PolyError):
    pass


class Poly:
    """Dense univariate polynomial, Fraction coefficients, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((1,))

    @staticmethod
    def x() -> "Poly":
        return Poly((0, 1))

    @staticmethod
    def constant(c) -> "Poly":
        return Poly((c,))

    @staticmethod
    def linear(r) -> "Poly":
        """t - r"""
        return Poly((-Fraction(r), Fraction(1)))

    # -- basics ------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    def __setattr__(self, *args):
        raise AttributeError("Poly is immutable")

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero() or other.is_zero():
                return Poly.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for k, a in enumerate(self.coeffs):
                if a:
                    for m, b in enumerate(other.coeffs):
                        out[k + m] += a * b
            return Poly(out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly(tuple(a * c for a in self.coeffs))

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c:
                for m, b in enumerate(other.coeffs):
                    rem[k + m] -= c * b
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise PolyError("division is not exact")
        return q

    def derivative(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, Fraction) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Fraction) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @staticmethod
    def from_json(data: Iterable[str]) -> "Poly":
        return Poly(Fraction(s) for s in data)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; gcd(p, 0) = monic p."""
    if p.is_zero() and q.is_zero():
        raise PolyError("gcd of two zero polynomials")
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def square_free_part(p: Poly) -> Poly:
    if p.is_zero():
        raise PolyError("square-free part of zero")
    if p.degree == 0:
        return Poly.one()
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: [(f_m, m)] with p = lead * prod f_m^m, f_m square-free,
    pairwise coprime, monic, nonconstant."""
    if p.is_zero():
        raise PolyError("decomposition of zero")
    p = p.monic()
    if p.degree == 0:
        return []
    out: list[tuple[Poly, int]] = []
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return [(p, 1)]
    w = p.exact_div(g)
    y = p.derivative().exact_div(g)
    z = y - w.derivative()
    m = 1
    while not z.is_zero():
        f = poly_gcd(w, z)
        if f.degree > 0:
            out.append((f.monic(), m))
        w = w.exact_div(f)
        y = z.exact_div(f)
        z = y - w.derivative()
        m += 1
    if w.degree > 0:
        out.append((w.monic(), m))
    return out


def _fraction_sqrt(c: Fraction) -> Fraction:
    if c < 0:
        raise NotASquareError("negative leading coefficient")
    np_, dp = isqrt(c.numerator), isqrt(c.denominator)
    if np_ * np_ != c.numerator or dp * dp != c.denominator:
        raise NotASquareError(f"{c} is not a rational square")
    return Fraction(np_, dp)


def poly_sqrt(p: Poly) -> Poly:
    """Exact square root with positive leading coefficient, or
    NotASquareError."""
    if p.is_zero():
        raise PolyError("square root of zero polynomial is ambiguous")
    if p.degree % 2:
        raise NotASquareError("odd degree")
    m = p.degree // 2
    lead = _fraction_sqrt(p.leading)
    q = [Fraction(0)] * (m + 1)
    q[m] = lead
    # solve p_{m+k} = sum_{i+j=m+k} q_i q_j for q_k, k = m-1 .. 0
    for k in range(m - 1, -1, -1):
        acc = Fraction(0)
        for i in range(k + 1, m + 1):
            j = m + k - i
            if k < j <= m:
                acc += q[i] * q[j]
        target = p.coeffs[m + k] if m + k <= p.degree else Fraction(0)
        q[k] = (target - acc) / (2 * lead)
    root = Poly(q)
    if root * root != p:
        raise NotASquareError("polynomial is not a perfect square")
    return root


# ---------------------------------------------------------------------------
# characteristic polynomial (Berkowitz, division-free)


def _berkowitz(rows: list[list]) -> list:
    """Coefficients of det(tI - A), high degree first."""
    n = len(rows)
    coeffs = [1]
    for k in range(1, n + 1):
        a = rows[k - 1][k - 1]
        R = rows[k - 1][:k - 1]
        C = [rows[m][k - 1] for m in range(k - 1)]
        col = [1, -a]
        v = C
        for step in range(k - 1):
            col.append(-sum(x * y for x, y in zip(R, v)))
            if step < k - 2:
                v = [
                    sum(rows[p][q] * v[q] for q in range(k - 1))
                    for p in range(k - 1)
                ]
        new = []
        for i in range(k + 1):
            acc = 0
            for j in range(max(0, i - k), min(i, k - 1) + 1):
                acc += col[i - j] * coeffs[j]
            new.append(acc)
        coeffs = new
    return coeffs


@lru_cache(maxsize=200_000)
def charpoly(G: Graph) -> Poly:
    """Monic characteristic polynomial det(tI - A(G)), exactly.

    The empty graph gets the constant 1.
    """
    if G.n == 0:
        return Poly.one()
    rows = G.adjacency_rows()
    if G.is_integer_weighted():
        rows = [[int(w) for w in row] for row in rows]
    high_first = _berkowitz(rows)
    return Poly(tuple(reversed(high_first)))


# ---------------------------------------------------------------------------
# path-sum polynomial


@lru_cache(maxsize=100_000)
def path_sum_poly(G: Graph, i: int, j: int) -> Poly:
    """Signed square root of phi^{G\\i} phi^{G\\j} - phi^{G\\{i,j}} phi^G,
    normalized to positive leading coefficient.  Zero when i and j sit in
    different components."""
    if i == j:
        raise PolyError("need distinct vertices")
    w = charpoly(delete_vertices(G, {i})) * charpoly(delete_vertices(G, {j})) \
        - charpoly(delete_vertices(G, {i, j})) * charpoly(G)
    if w.is_zero():
        return Poly.zero()
    try:
        return poly_sqrt(w)
    except NotASquareError as exc:  # identity guarantees squareness
        raise PolyError(f"Wronskian is not a perfect square: {exc}") from exc


def path_sum_bruteforce(G: Graph, i: int, j: int) -> Poly:
    """Oracle: sum over simple i-j paths P of rho_P * charpoly(G \\ P)."""
    if i == j:
        raise PolyError("need distinct vertices")
    if G.n > 14:
        raise PolyError("brute-force guard: n <= 14")
    total = Poly.zero()
    stack: list[tuple[int, list[int], Fraction]] = [(i, [i], Fraction(1))]
    while stack:
        v, pathv, rho = stack.pop()
        if v == j:
            total = total + rho * charpoly(delete_vertices(G, set(pathv)))
            continue
        for u in G.neighbors(v):
            if u not in pathv:
                stack.append((u, pathv + [u], rho * G.weight(v, u)))
    return total


# ---------------------------------------------------------------------------
# rational functions


@dataclass(frozen=True)
class RatFunc:
    """Reduced rational function with monic denominator."""

    num: Poly
    den: Poly

    @staticmethod
    def make(num: Poly, den: Poly) -> "RatFunc":
        if den.is_zero():
            raise PolyError("zero denominator")
        if num.is_zero():
            return RatFunc(Poly.zero(), Poly.one())
        g = poly_gcd(num, den)
        num, den = num.exact_div(g), den.exact_div(g)
        lead = den.leading
        return RatFunc(num.scale(1 / lead), den.scale(1 / lead))

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0


# ---------------------------------------------------------------------------
# real-root isolation (Sturm sequences)


@dataclass(frozen=True)
class RootBox:
    """Isolating interval [lo, hi] with exact rational endpoints.

    lo == hi means the root is known exactly.  The enclosed polynomial has
    exactly ``multiplicity`` roots (with multiplicity) in the box.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int

    @property
    def midpoint(self) -> float:
        return float((self.lo + self.hi) / 2)

    def contains_value(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def to_json(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "multiplicity": self.multiplicity,
            "midpoint": self.midpoint,
        }


def _int_primitive(p: Poly) -> tuple[int, ...]:
    """Integer coefficient vector with the same sign behavior as p (scaled
    by a positive rational, content removed)."""
    if p.is_zero():
        return ()
    scale = 1
    for c in p.coeffs:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    ints = [int(c * scale) for c in p.coeffs]
    content = 0
    for c in ints:
        content = gcd(content, c)
    return tuple(c // content for c in ints)


def _int_sign_at(ic: tuple[int, ...], xn: int, xd: int) -> int:
    """Sign of the integer polynomial at the rational xn/xd (xd > 0)."""
    acc = 0
    power = 1
    for c in reversed(ic):
        acc = acc * xn + c * power
        power *= xd
    return (acc > 0) - (acc < 0)


def _sturm_chain_int(f: Poly) -> list[tuple[int, ...]]:
    chain = [f, f.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
    if chain[-1].is_zero():
        chain.pop()
    return [_int_primitive(q) for q in chain]


def _variations(chain: list[tuple[int, ...]], x: Fraction) -> int:
    xn, xd = x.numerator, x.denominator
    signs = [_int_sign_at(ic, xn, xd) for ic in chain]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def _root_bound(f: Poly) -> Fraction:
    lead = abs(f.leading)
    m = max((abs(c) for c in f.coeffs[:-1]), default=Fraction(0))
    return 1 + m / lead


def _refine(fi: tuple[int, ...], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect a sign-change interval of square-free f down to BOX_WIDTH."""
    slo = _int_sign_at(fi, lo.numerator, lo.denominator)
    while hi - lo >= BOX_WIDTH:
        mid = (lo + hi) / 2
        sm = _int_sign_at(fi, mid.numerator, mid.denominator)
        if sm == 0:
            return mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


@lru_cache(maxsize=100_000)
def isolate_real_roots(p: Poly) -> tuple[RootBox, ...]:
    """Disjoint boxes covering all real roots of p, with multiplicities,
    sorted by position; boxes refined below width 2^-40."""
    if p.is_zero():
        raise PolyError("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return ()
    factors = squarefree_decomposition(p)
    f = Poly.one()
    for fac, _ in factors:
        f = f * fac
    fi = _int_primitive(f)
    chain = _sturm_chain_int(f)
    bound = _root_bound(f)
    lo, hi = -bound, bound
    total = _variations(chain, lo) - _variations(chain, hi)
    intervals: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi, total)]
    while stack:
        a, b, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            intervals.append((a, b))
            continue
        mid = (a + b) / 2
        while _int_sign_at(fi, mid.numerator, mid.denominator) == 0:
            # nudge off an exact root so counts stay clean
            mid = (a + mid) / 2
        left = _variations(chain, a) - _variations(chain, mid)
        stack.append((a, mid, left))
        stack.append((mid, b, cnt - left))
    boxes: list[RootBox] = []
    for a, b in intervals:
        rlo, rhi = _refine(fi, a, b)
        mult = 1
        if len(factors) > 1 or factors[0][1] != 1:
            for fac, m in factors:
                if rlo == rhi:
                    hit = fac(rlo) == 0
                else:
                    hit = fac.sign_at(rlo) * fac.sign_at(rhi) < 0
                if hit:
                    mult = m
                    break
        boxes.append(RootBox(rlo, rhi, mult))
    boxes.sort(key=lambda box: box.lo)
    return tuple(boxes)


def box_has_root(p: Poly, box: RootBox) -> bool:
    """Whether p vanishes inside an isolating box produced for a polynomial
    whose roots include those of p (square-free p)."""
    if box.lo == box.hi:
        return p(box.lo) == 0
    return p.sign_at(box.lo) * p.sign_at(box.hi) < 0


def rational_roots_monic_integer(p: Poly) -> list[int]:
    """Integer roots of a monic integer polynomial (its only rational roots)."""
    if any(c.denominator != 1 for c in p.coeffs) or p.leading != 1:
        raise PolyError("expected a monic integer polynomial")
    c0 = p.coeffs[0].numerator
    if c0 == 0:
        roots = [0]
        q = p
        while q(Fraction(0)) == 0:
            q = q.exact_div(Poly.x())
        cands = _divisors(abs(q.coeffs[0].numerator)) if q.degree > 0 else []
    else:
        roots = []
        cands = _divisors(abs(c0))
    for d in cands:
        for r in (d, -d):
            if p(Fraction(r)) == 0 and r not in roots:
                roots.append(r)
    return sorted(roots)


def _divisors(m: int) -> list[int]:
    if m == 0:
        return []
    out = set()
    for d in range(1, isqrt(m) + 1):
        if m % d == 0:
            out.add(d)
            out.add(m // d)
    return sorted(out)


def squarefree_part_int(m: int) -> int:
    """Square-free part of a positive integer (trial division)."""
    if m <= 0:
        raise ValueError("need a positive integer")
    out = 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            cnt = 0
            while m % d == 0:
                m //= d
                cnt += 1
            if cnt % 2:
                out *= d
        d += 1
    return out * m


def divisors(m: int) -> list[int]:
    return _divisors(abs(m))


def simple_pole_residues(f: RatFunc) -> list[tuple[RootBox, float]]:
    """Residues num(r)/den'(r) at the (simple) poles of a reduced rational
    function, evaluated at refined midpoints."""
    if f.den.degree == 0:
        return []
    if square_free_part(f.den) != f.den.monic():
        raise PolyError("repeated poles")
    dden = f.den.derivative()
    out = []
    for box in isolate_real_roots(f.den):
        r = box.midpoint
        out.append((box, float(f.num(r)) / float(dden(r))))
    return out
