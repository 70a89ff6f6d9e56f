"""Exact polynomial algebra over the rationals.

Coefficients are fractions.Fraction throughout.  The single exception is
roots_on_critical_line, which is an explicitly approximate diagnostic; every
other routine in this module is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .errors import ConvergenceFailure, DegreeOverflow, DuplicateNode, NonIntegralHStar


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class UniPoly:
    """Univariate polynomial, coefficients ascending by degree, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    def __reduce__(self):
        return (UniPoly, (self.coeffs,))

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def x(cls):
        return cls([0, 1])

    @property
    def degree(self):
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UniPoly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return UniPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = _frac(scalar)
        return UniPoly([c / s for c in self.coeffs])

    def __pow__(self, k):
        out = UniPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        x = _frac(x) if isinstance(x, int) else x
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other):
        """Substitute `other` for the variable."""
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly([c])
        return acc

    def coefficient(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.leading()
        while len(rem) - 1 >= d and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            shift = len(rem) - 1 - d
            factor = rem[-1] / lead
            q[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= factor * c
            rem.pop()
        return UniPoly(q), UniPoly(rem)

    def reverse(self, n):
        """t^n * p(1/t) for deg(p) <= n."""
        if self.degree > n:
            raise ValueError("degree exceeds reversal bound")
        out = [Fraction(0)] * (n + 1)
        for i, c in enumerate(self.coeffs):
            out[n - i] = c
        return UniPoly(out)

    def is_palindromic(self, n):
        """Coefficients symmetric about n/2 (degree at most n)."""
        if self.degree > n:
            return False
        return all(self.coefficient(i) == self.coefficient(n - i) for i in range(n + 1))

    def int_coeffs(self, n=None):
        """Coefficient list as ints, padded to degree n; raises if non-integral."""
        top = self.degree if n is None else n
        out = []
        for i in range(top + 1):
            c = self.coefficient(i)
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c}")
            out.append(c.numerator)
        return out

    def serialize(self):
        return [format_rational(c) for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*t^{i}" if i else f"{c}")
        return "UniPoly(" + " + ".join(terms) + ")"


def format_rational(c):
    c = _frac(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def parse_rational(s):
    return Fraction(s)


def interpolate(points):
    """Exact Lagrange interpolation through distinct nodes."""
    if not points:
        raise DuplicateNode("need at least one point")
    xs = [_frac(x) for x, _ in points]
    ys = [_frac(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise DuplicateNode("interpolation nodes must be pairwise distinct")
    result = UniPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        num = UniPoly([yi])
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                num = num * UniPoly([-xj, 1])
                den *= xi - xj
        result = result + num / den
    return result


def binom_poly(a, shift):
    """Degree-a binomial basis polynomial.

    "rising" gives t(t+1)...(t+a-1)/a!, i.e. C(t+a-1, a);
    "upper"  gives (t+1)(t+2)...(t+a)/a!, i.e. C(t+a, a).
    """
    if a < 0:
        raise ValueError("a must be nonnegative")
    if shift not in ("rising", "upper"):
        raise ValueError(f"unknown shift {shift!r}")
    p = UniPoly([1])
    lo = 0 if shift == "rising" else 1
    for i in range(lo, lo + a):
        p = p * UniPoly([i, 1])
    return p / factorial(a)


def binom_in_t(c, n):
    """C(t + c, n) as a degree-n polynomial in t."""
    p = UniPoly([1])
    for i in range(n):
        p = p * UniPoly([c - i, 1])
    return p / factorial(n)


def hstar_from_ehrhart(ehr, n):
    """Numerator of the lattice-point generating series over (1-t)^(n+1).

    Solves ehr(t) = sum_i h_i * C(t + n - i, n) by forward substitution;
    the system is unitriangular at the nodes t = 0..n.
    """
    if ehr.degree != n:
        raise ValueError(f"expected degree {n}, got {ehr.degree}")
    if ehr(0) != 1:
        raise ValueError("constant term must be 1")
    h = []
    for j in range(n + 1):
        val = ehr(j)
        for i in range(j):
            val -= h[i] * comb(j + n - i, n)
        if val.denominator != 1 or val < 0:
            raise NonIntegralHStar(f"coefficient h_{j} = {val}")
        h.append(val)
    return UniPoly(h)


def gamma_vector(h, n):
    """Expansion of a palindromic h in the basis t^i (1+t)^(n-2i).

    Returns the tuple (gamma_0, ..., gamma_{n//2}), or None when h is not
    palindromic with center n/2.
    """
    if not h.is_palindromic(n):
        return None
    rem = h
    gammas = []
    for i in range(n // 2 + 1):
        g = rem.coefficient(i)
        gammas.append(g)
        if g:
            rem = rem - UniPoly([0] * i + [g]) * (UniPoly([1, 1]) ** (n - 2 * i))
    if rem:
        raise AssertionError("palindromic expansion left a remainder")
    return tuple(gammas)


def gamma_expand(gammas, n):
    """Inverse of gamma_vector."""
    out = UniPoly()
    for i, g in enumerate(gammas):
        out = out + UniPoly([0] * i + [g]) * (UniPoly([1, 1]) ** (n - 2 * i))
    return out


def magic_coefficients(p, d):
    """Expansion of p in the basis t^i (1+t)^(d-i), i = 0..d.

    The basis change is unitriangular, so the coefficients are unique;
    nonnegativity is up to the caller.
    """
    if p.degree > d:
        raise ValueError("degree exceeds basis bound")
    rem = p
    cs = []
    for i in range(d + 1):
        c = rem.coefficient(i)
        cs.append(c)
        if c:
            rem = rem - UniPoly([0] * i + [c]) * (UniPoly([1, 1]) ** (d - i))
    if rem:
        raise AssertionError("basis change left a remainder")
    return tuple(cs)


def magic_expand(cs, d):
    out = UniPoly()
    for i, c in enumerate(cs):
        out = out + UniPoly([0] * i + [c]) * (UniPoly([1, 1]) ** (d - i))
    return out


def _poly_gcd(a, b):
    while b:
        _, r = a.divmod(b)
        a, b = b, r
    if a:
        a = a / a.leading()
    return a


def _sign_changes(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x * y < 0)


def sturm_chain(p):
    chain = [p, p.derivative()]
    while chain[-1]:
        _, r = chain[-2].divmod(chain[-1])
        if not r:
            break
        # scale to keep numerators small; positive factor preserves signs
        lead = abs(r.leading())
        chain.append(-r / lead)
    return chain


def count_real_roots(p):
    """Number of distinct real roots, by Sturm's rule over the rationals."""
    if not p:
        raise ValueError("zero polynomial")
    sf = p.divmod(_poly_gcd(p, p.derivative()))[0]
    if sf.degree == 0:
        return 0
    chain = sturm_chain(sf)
    at_pos = [1 if q.leading() > 0 else -1 for q in chain if q]
    at_neg = [
        (1 if q.leading() > 0 else -1) * (-1 if q.degree % 2 else 1)
        for q in chain
        if q
    ]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def is_real_rooted(p):
    """True iff every complex root of p is real (multiplicities allowed)."""
    if not p:
        raise ValueError("zero polynomial")
    sf = p.divmod(_poly_gcd(p, p.derivative()))[0]
    if sf.degree <= 0:
        return True
    return count_real_roots(sf) == sf.degree


def macaulay_pseudo_power(value, i):
    """i-th Macaulay pseudo power value^<i> via the binomial representation."""
    if value < 0 or i < 1:
        raise ValueError("need value >= 0 and i >= 1")
    if value == 0:
        return 0
    total = 0
    v, j = value, i
    while v > 0:
        a = j
        while comb(a + 1, j) <= v:
            a += 1
        total += comb(a + 1, j + 1)
        v -= comb(a, j)
        j -= 1
    return total


def is_m_sequence(g):
    """Macaulay growth test for a sequence starting at g_0 = 1."""
    if not g or g[0] != 1:
        return False
    if any(x < 0 for x in g):
        return False
    for i in range(1, len(g) - 1):
        if g[i + 1] > macaulay_pseudo_power(g[i], i):
            return False
    return True


def is_polytopal_h(h):
    """Whether h is the h-vector of a simplicial polytope of dimension len(h)-1.

    Necessary and sufficient by the g-theorem: palindromic, with the
    difference sequence g an M-sequence.
    """
    h = list(h)
    if not h or h[0] != 1:
        return False
    n = len(h) - 1
    if any(h[i] != h[n - i] for i in range(n + 1)):
        return False
    g = [1]
    for i in range(1, n // 2 + 1):
        d = h[i] - h[i - 1]
        if d < 0:
            return False
        g.append(d)
    return is_m_sequence(g)


def coefficient_polynomial(h_ints):
    """Polynomial whose value at m is the m-th coefficient of
    (sum h_i t^i) / (1-t)^(n+1), where n = len(h_ints) - 1."""
    n = len(h_ints) - 1
    out = UniPoly()
    for i, hi in enumerate(h_ints):
        if hi:
            out = out + binom_in_t(n - i, n) * hi
    return out


def roots_on_critical_line(p, tol=1e-9):
    """Numeric diagnostic: do all complex roots z satisfy Re(z) = -1/2?

    Uses floating-point companion-matrix roots; every other routine in this
    module is exact.
    """
    import numpy as np

    if not p:
        raise ValueError("zero polynomial")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p.degree == 0:
        return True
    coeffs = [float(c) for c in reversed(p.coeffs)]
    roots = np.roots(coeffs)
    if not np.all(np.isfinite(roots)):
        raise ConvergenceFailure("non-finite roots returned")
    for z in roots:
        if abs(z.real + 0.5) > tol * max(1.0, abs(z)):
            return False
    return True


class BiPoly:
    """Bivariate polynomial; rows indexed by degree in the first variable."""

    __slots__ = ("rows",)

    def __init__(self, rows=()):
        mat = [[_frac(c) for c in row] for row in rows]
        # trim zero border rows/columns
        while mat and all(c == 0 for c in mat[-1]):
            mat.pop()
        width = 0
        for row in mat:
            w = len(row)
            while w and row[w - 1] == 0:
                w -= 1
            width = max(width, w)
        mat = [tuple(row[:width]) + (Fraction(0),) * (width - len(row[:width])) for row in mat]
        object.__setattr__(self, "rows", tuple(mat))

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    def __reduce__(self):
        return (BiPoly, (self.rows,))

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def monomial(cls, i, j, c=1):
        rows = [[0] * (j + 1) for _ in range(i + 1)]
        rows[i][j] = c
        return cls(rows)

    @classmethod
    def from_outer(cls, p, q):
        """Product p(first variable) * q(second variable)."""
        return cls([[cp * cq for cq in q.coeffs] for cp in p.coeffs])

    def coefficient(self, i, j):
        if 0 <= i < len(self.rows) and 0 <= j < len(self.rows[i]):
            return self.rows[i][j]
        return Fraction(0)

    @property
    def deg1(self):
        return len(self.rows) - 1

    @property
    def deg2(self):
        return (len(self.rows[0]) - 1) if self.rows else -1

    def __bool__(self):
        return bool(self.rows)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        nr = max(len(self.rows), len(other.rows))
        nc = max(self.deg2, other.deg2) + 1
        rows = [
            [self.coefficient(i, j) + other.coefficient(i, j) for j in range(nc)]
            for i in range(nr)
        ]
        return BiPoly(rows)

    def __neg__(self):
        return BiPoly([[-c for c in row] for row in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly([[c * other for c in row] for row in self.rows])
        if not self.rows or not other.rows:
            return BiPoly()
        nr = self.deg1 + other.deg1 + 1
        nc = self.deg2 + other.deg2 + 1
        rows = [[Fraction(0)] * nc for _ in range(nr)]
        for i, r1 in enumerate(self.rows):
            for j, c1 in enumerate(r1):
                if c1:
                    for k, r2 in enumerate(other.rows):
                        for l, c2 in enumerate(r2):
                            if c2:
                                rows[i + k][j + l] += c1 * c2
        return BiPoly(rows)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = BiPoly([[1]])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, u, v):
        u, v = _frac(u), _frac(v)
        total = Fraction(0)
        for i, row in enumerate(self.rows):
            acc = Fraction(0)
            for c in reversed(row):
                acc = acc * v + c
            total += acc * u**i
        return total

    def transpose(self):
        if not self.rows:
            return self
        nr, nc = len(self.rows), len(self.rows[0])
        return BiPoly([[self.rows[i][j] for i in range(nr)] for j in range(nc)])

    def substitute_first(self, scale, shift):
        """Replace the first variable by scale*var + shift."""
        scale, shift = _frac(scale), _frac(shift)
        out = BiPoly()
        for i, row in enumerate(self.rows):
            if all(c == 0 for c in row):
                continue
            rp = BiPoly([row])  # row as polynomial in the second variable
            # (scale*u + shift)^i expanded over u-powers
            for j in range(i + 1):
                c = comb(i, j) * scale**j * shift ** (i - j)
                if c:
                    out = out + BiPoly.monomial(j, 0, c) * rp
        return out

    def substitute_second(self, scale, shift):
        return self.transpose().substitute_first(scale, shift).transpose()

    def eval_first(self, u):
        """Substitute a number for the first variable; UniPoly in the second."""
        u = _frac(u)
        out = UniPoly()
        for i, row in enumerate(self.rows):
            out = out + UniPoly(row) * u**i
        return out

    def eval_second(self, v):
        return self.transpose().eval_first(v)

    def diagonal(self):
        """UniPoly p(t) = self(t, t)."""
        out = [Fraction(0)] * (self.deg1 + self.deg2 + 2)
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                out[i + j] += c
        return UniPoly(out)

    def total_degree(self):
        best = -1
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                if c:
                    best = max(best, i + j)
        return best

    def serialize(self):
        return [[format_rational(c) for c in row] for row in self.rows]

    def __repr__(self):
        return f"BiPoly({[list(map(str, r)) for r in self.rows]})"


def zeta_degree_guard(poly, bound):
    if poly.degree > bound:
        raise DegreeOverflow(f"interpolant degree {poly.degree} exceeds bound {bound}")
    return poly
