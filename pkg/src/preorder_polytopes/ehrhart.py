"""Ehrhart polynomials, zeta polynomials and their duality checks.

Two independent routes to the Ehrhart polynomial are kept deliberately
separate: a closed formula summing products of rising binomials over the
lattice points of the dual polytope, and plain interpolation of dilate
counts.  Their agreement is one of the proven identities the test harness
gates on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import BadParameters, DegreeOverflow, NodeCollision
from .points import count_points, enumerate_points, maximal_elements, multichain_counts_upto
from .polynomials import BiPoly, UniPoly, binom_poly, hstar_from_ehrhart, interpolate
from .preorder import dual

DEFAULT_Q_SAMPLES = (
    Fraction(2),
    Fraction(3),
    Fraction(1, 2),
    Fraction(5, 3),
    Fraction(7),
)


@dataclass(frozen=True)
class EhrhartRecord:
    tau_key: str
    ehr: UniPoly
    hstar: UniPoly
    normalized_volume: int
    route: str

    def validate(self, n, point_count=None):
        assert self.ehr.degree == n
        assert self.ehr(0) == 1
        if point_count is not None:
            assert self.ehr(1) == point_count
        lead = self.ehr.leading()
        assert self.normalized_volume == lead * factorial(n)
        assert sum(self.hstar.coeffs) == self.normalized_volume
        return self

    def to_json(self):
        return {
            "ehr": self.ehr.serialize(),
            "hstar": self.hstar.int_coeffs(self.ehr.degree),
            "nvol": str(self.normalized_volume),
            "route": self.route,
        }


def _rising_product(point, cache):
    key = tuple(sorted(c for c in point if c))
    got = cache.get(key)
    if got is None:
        got = UniPoly([1])
        for a in key:
            got = got * binom_poly(a, "rising")
        cache[key] = got
    return got


def ehrhart_dual_formula(tau, dual_points=None):
    """Ehrhart polynomial as a sum over lattice points of the dual polytope."""
    if dual_points is None:
        dual_points = enumerate_points(dual(tau), 1, 0)
    cache = {}
    total = UniPoly()
    for p in dual_points.points:
        total = total + _rising_product(p, cache)
    return total


def ehrhart_interpolation(tau, r, s):
    """Ehrhart polynomial of Q(tau, r, s) by interpolating dilate counts."""
    if r == 0 and s == 0:
        raise BadParameters("(r, s) = (0, 0) is not full-dimensional")
    n = tau.n
    pts = [(m, count_points(tau, m * r, m * s)) for m in range(n + 1)]
    ehr = interpolate(pts)
    if ehr.degree != n:
        raise DegreeOverflow(f"expected degree {n}, got {ehr.degree}")
    return ehr


def ehrhart_record(tau, route="dual_formula"):
    n = tau.n
    if route == "dual_formula":
        ehr = ehrhart_dual_formula(tau)
    elif route == "interpolation":
        ehr = ehrhart_interpolation(tau, 1, 0)
    else:
        raise BadParameters(f"unknown route {route!r}")
    hstar = hstar_from_ehrhart(ehr, n)
    nvol = ehr.leading() * factorial(n)
    assert nvol.denominator == 1
    rec = EhrhartRecord(tau.canonical_key, ehr, hstar, nvol.numerator, route)
    return rec.validate(n, point_count=count_points(tau, 1, 0))


def normalized_volume(tau):
    """n! times the leading Ehrhart coefficient."""
    ehr = ehrhart_dual_formula(tau)
    nvol = ehr.leading() * factorial(tau.n)
    assert nvol.denominator == 1
    return nvol.numerator


def zeta_polynomial(P):
    """Unique polynomial whose value at m+1 counts m-multichains of P."""
    rank = P.rank
    counts = multichain_counts_upto(P, rank + 1)
    z = interpolate([(m + 1, c) for m, c in enumerate(counts)])
    if z.degree > rank:
        raise DegreeOverflow(
            f"zeta interpolant degree {z.degree} exceeds poset rank {rank}"
        )
    return z


def _q_integer(q, m):
    """1 + q + ... + q^(m-1)."""
    total = Fraction(0)
    power = Fraction(1)
    for _ in range(m):
        total += power
        power *= q
    return total


def qzeta_sides(tau, q0, P=None):
    """Both sides of the rank-weighted zeta evaluation at the q-analog of -1.

    Left: interpolate the weighted multichain sums V(m) over the nodes
    [m]_q for m = 2..n+2 and evaluate at [-1]_q = -1/q.  Right: signed sum of
    q^(-cov(a)) over the maximal points a.
    """
    q0 = Fraction(q0)
    if q0 <= 0 or q0 == 1:
        raise BadParameters("q samples must be positive and distinct from 1")
    if P is None:
        P = enumerate_points(tau, 1, 0)
    n = tau.n
    weights = [q0 ** sum(p) for p in P.points]
    nodes = []
    values = []
    vals = list(weights)
    for m in range(2, n + 3):
        if m > 2:
            vals = P.downset_sums(vals)
            vals = [w * v for w, v in zip(weights, vals)]
        nodes.append(_q_integer(q0, m))
        values.append(sum(vals))
    if len(set(nodes)) != len(nodes):
        raise NodeCollision(f"coincident q-integer nodes for q = {q0}")
    poly = interpolate(list(zip(nodes, values)))
    lhs = poly(Fraction(-1) / q0)
    sign = -1 if n % 2 else 1
    rhs = sign * sum(q0 ** -sum(1 for c in p if c) for p in maximal_elements(P))
    return lhs, rhs


def qzeta_check(tau, q_samples=None, P=None):
    """Whether the rank-weighted evaluation identity holds at every sample."""
    samples = DEFAULT_Q_SAMPLES if q_samples is None else tuple(q_samples)
    if len(set(map(Fraction, samples))) != len(samples):
        raise BadParameters("q samples must be pairwise distinct")
    if P is None:
        P = enumerate_points(tau, 1, 0)
    return all(lhs == rhs for lhs, rhs in (qzeta_sides(tau, q, P) for q in samples))


@dataclass(frozen=True)
class NablaBlock:
    """Multichain counts of the point posets of successive dilates.

    entries[k][l] counts the k-multichains among lattice points of the l-th
    dilate; row k=1 reproduces the Ehrhart values and column l=1 the zeta
    values.
    """

    tau_key: str
    K: int
    L: int
    entries: tuple

    def transpose_equal(self, other):
        if self.K != other.L or self.L != other.K:
            return False
        return all(
            self.entries[k][l] == other.entries[l][k]
            for k in range(self.K + 1)
            for l in range(self.L + 1)
        )


def nabla_block(tau, K, L):
    if K < 0 or L < 0:
        raise BadParameters("block bounds must be nonnegative")
    cols = []
    for ell in range(L + 1):
        P = enumerate_points(tau, ell, 0)
        cols.append(multichain_counts_upto(P, K))
    entries = tuple(tuple(cols[ell][k] for ell in range(L + 1)) for k in range(K + 1))
    assert all(entries[k][0] == 1 for k in range(K + 1))
    assert all(entries[0][ell] == 1 for ell in range(L + 1))
    return NablaBlock(tau.canonical_key, K, L, entries)


def double_ehrhart(tau, dual_points=None):
    """Bivariate point counter of Q(tau, r, s), rows indexed by r-degree."""
    n = tau.n
    if dual_points is None:
        dual_points = enumerate_points(dual(tau), 1, 0)
    cache = {}
    upper_cache = {}
    total = BiPoly()
    for p in dual_points.points:
        u_part = _rising_product(p, cache)
        slack = n - sum(p)
        v_part = upper_cache.get(slack)
        if v_part is None:
            v_part = binom_poly(slack, "upper")
            upper_cache[slack] = v_part
        total = total + BiPoly.from_outer(u_part, v_part)
    return total


def double_reciprocity_check(tau, E=None):
    """Exact identity E(-u,-v) = (-1)^n E(u-1, v-1)."""
    if E is None:
        E = double_ehrhart(tau)
    n = tau.n
    lhs = E.substitute_first(-1, 0).substitute_second(-1, 0)
    rhs = E.substitute_first(1, -1).substitute_second(1, -1)
    if n % 2:
        rhs = -rhs
    return lhs == rhs
