"""The M-triangle of a downward-closed point poset and its transmutation.

Every interval [p, q] in such a poset is a full box, so the Mobius value is
(-1)^(number of coordinates where q exceeds p) when q - p is 0/1-valued and
zero otherwise.  A recursive Mobius computation is kept as an independent
cross-check for small posets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import SupportError
from .points import enumerate_points, maximal_elements
from .polynomials import BiPoly


class MTriangle:
    """Bivariate rank-graded Mobius polynomial; support 0 <= a <= b <= n."""

    __slots__ = ("poly", "n")

    def __init__(self, poly, n):
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "n", n)
        for a in range(poly.deg1 + 1):
            for b in range(poly.deg2 + 1):
                c = poly.coefficient(a, b)
                if c and not (a <= b <= n):
                    raise SupportError(f"coefficient at ({a},{b}) outside support")
        assert poly.coefficient(0, 0) == 1, "constant term must be 1"

    def __setattr__(self, name, value):
        raise AttributeError("MTriangle is immutable")

    def __reduce__(self):
        return (MTriangle, (self.poly, self.n))

    def __eq__(self, other):
        if not isinstance(other, MTriangle):
            return NotImplemented
        return self.n == other.n and self.poly == other.poly


def m_triangle(P):
    """Sum of mu(p, q) x^|p| y^|q| over pairs p <= q of the point poset."""
    n = P.n
    rows = [[0] * (n + 1) for _ in range(n + 1)]
    for q in P.points:
        rq = sum(q)
        support = [e for e in range(n) if q[e]]
        for size in range(len(support) + 1):
            sign = -1 if size % 2 else 1
            for _combo in combinations(support, size):
                rows[rq - size][rq] += sign
    return MTriangle(BiPoly(rows), n)


def mobius_recursive(P, a, b):
    """Mobius value by the defining recursion inside P (test oracle route)."""
    a, b = tuple(a), tuple(b)
    if not P.leq(a, b):
        return 0
    interval = [p for p in P.points if P.leq(a, p) and P.leq(p, b)]
    memo = {a: 1}

    def mu(c):
        if c in memo:
            return memo[c]
        total = 0
        for p in interval:
            if p != c and P.leq(a, p) and P.leq(p, c):
                total += mu(p)
        memo[c] = -total
        return memo[c]

    return mu(b)


def m_triangle_recursive(P):
    """M-triangle via the recursive Mobius function; quadratic, small posets only."""
    n = P.n
    rows = [[0] * (n + 1) for _ in range(n + 1)]
    for a in P.points:
        for b in P.points:
            if P.leq(a, b):
                rows[sum(a)][sum(b)] += mobius_recursive(P, a, b)
    return MTriangle(BiPoly(rows), n)


_SUBST_CACHE = {}


def transmute(M):
    """Substitute x <- (1-y)/(1-xy), y <- 1-xy; polynomial on the support a <= b.

    Each monomial x^a y^b expands to (1-y)^a (1-xy)^(b-a).
    """
    one_minus_y = BiPoly([[1, -1]])
    one_minus_xy = BiPoly([[1, 0], [0, -1]])
    out = BiPoly()
    for a in range(M.poly.deg1 + 1):
        for b in range(M.poly.deg2 + 1):
            c = M.poly.coefficient(a, b)
            if not c:
                continue
            if a > b:
                raise SupportError(f"coefficient at ({a},{b}) outside support")
            key = (a, b - a)
            term = _SUBST_CACHE.get(key)
            if term is None:
                term = (one_minus_y**a) * (one_minus_xy ** (b - a))
                _SUBST_CACHE[key] = term
            out = out + term * c
    return out


def transmute_triangle(M):
    return MTriangle(transmute(M), M.n)


def m_duality_identity(Mbar, n):
    """(xy)^n Mbar(1/x, 1/y) == Mbar(y, x), coefficientwise."""
    for a in range(n + 1):
        for b in range(n + 1):
            if Mbar.coefficient(n - a, n - b) != Mbar.coefficient(b, a):
                return False
    return True


def m_duality_check(tau, P=None):
    """Whether the transmuted M-triangle has the flip symmetry."""
    if P is None:
        P = enumerate_points(tau, 1, 0)
    M = m_triangle(P)
    return m_duality_identity(transmute(M), M.n)


def corner_maximal_check(tau, P=None):
    """Transmuted corner coefficient equals the signed count of maximal points."""
    if P is None:
        P = enumerate_points(tau, 1, 0)
    M = m_triangle(P)
    Mbar = transmute(M)
    n = M.n
    sign = -1 if n % 2 else 1
    return Mbar.coefficient(0, n) == sign * len(maximal_elements(P))


def display_rows(poly, n):
    """Integer rows for reports: index b = 0..n, entries a = 0..b.

    Printed bottom row is b = 0, matching the bottom-left-origin layout.
    """
    rows = []
    for b in range(n + 1):
        row = []
        for a in range(b + 1):
            c = poly.coefficient(a, b)
            assert isinstance(c, Fraction) and c.denominator == 1
            row.append(c.numerator)
        rows.append(row)
    return rows


def format_triangle(rows):
    """Text block, top line = highest rank, bottom-left = constant term."""
    width = max(len(str(v)) for row in rows for v in row)
    lines = []
    for row in reversed(rows):
        lines.append(" ".join(f"{v:>{width}}" for v in row))
    return "\n".join(lines)
