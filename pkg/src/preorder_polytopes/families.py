"""Named example families, their closed forms and generating-function checks.

Golden point counts and h-vectors for the tabulated families are frozen here;
OEIS ids are noted where the counting sequences are catalogued.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb as binom

from .errors import BadParameters
from .points import enumerate_points, h_vector
from .polynomials import UniPoly
from .preorder import build_preorder, combine, preorder_from_sizes
from .series import (
    LaurentPoly,
    TruncSeries,
    series_compose,
    series_exp,
    series_mul,
)

FAMILY_NAMES = (
    "zigzag",
    "antichain_sum",
    "grid",
    "grid_open",
    "grid_half",
    "double_chain",
    "k_chain",
    "comb",
)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    n: int
    m: int | None = None
    k: int | None = None


def antichain(m):
    return preorder_from_sizes((1,) * m, tuple(1 << i for i in range(m)))


def single_vertex(size):
    return preorder_from_sizes((size,), (1,))


def zigzag(n):
    """Fence with covers 1<2, 3<2, 3<4, 5<4, ..."""
    pairs = []
    for i in range(1, n):
        if i % 2:
            pairs.append((i - 1, i))
        else:
            pairs.append((i, i - 1))
    return build_preorder([(e,) for e in range(1, n + 1)], pairs)


def antichain_sum(m, n):
    return combine("ordinal_sum", antichain(m), antichain(n))


def _product_chain2(rows, removed):
    """Poset on {1..rows} x {1,2} minus `removed`, as a preorder."""
    cells = [
        (i, j) for i in range(1, rows + 1) for j in (1, 2) if (i, j) not in removed
    ]
    index = {cell: pos for pos, cell in enumerate(cells)}
    pairs = []
    for (i, j), pos in index.items():
        for other, qos in index.items():
            if (i, j) != other and i <= other[0] and j <= other[1]:
                pairs.append((pos, qos))
    return build_preorder([(pos + 1,) for pos in range(len(cells))], pairs)


def grid(n):
    return _product_chain2(n, removed=())


def grid_open(n):
    """Product of an (n+1)-chain with a 2-chain, minus its minimum and maximum."""
    return _product_chain2(n + 1, removed={(1, 1), (n + 1, 2)})


def grid_half(n):
    """Product of an n-chain with a 2-chain, minus its maximum."""
    return _product_chain2(n, removed={(n, 2)})


def k_chain(n, k):
    up = tuple(((1 << n) - 1) & ~((1 << i) - 1) for i in range(n))
    return preorder_from_sizes((k,) * n, up)


def double_chain(n):
    return k_chain(n, 2)


def comb(n):
    """Recursively: disjoint union with a point, then a new minimum below all."""
    tau = combine("ordinal_sum", single_vertex(1), single_vertex(1))
    for _ in range(n - 1):
        tau = combine(
            "ordinal_sum", single_vertex(1), combine("disjoint_union", tau, single_vertex(1))
        )
    return tau


def build_family(spec, n=None, m=None, k=None):
    """Build a named family member; accepts a FamilySpec or name plus params."""
    if isinstance(spec, FamilySpec):
        name, n, m, k = spec.name, spec.n, spec.m, spec.k
    else:
        name = spec
    if name not in FAMILY_NAMES:
        raise BadParameters(f"unknown family {name!r}")
    if n is None or n < 1:
        raise BadParameters("n must be a positive integer")
    if name == "zigzag":
        return zigzag(n)
    if name == "antichain_sum":
        if m is None or m < 1:
            raise BadParameters("antichain_sum needs m >= 1")
        return antichain_sum(m, n)
    if name == "grid":
        return grid(n)
    if name == "grid_open":
        return grid_open(n)
    if name == "grid_half":
        return grid_half(n)
    if name == "double_chain":
        return double_chain(n)
    if name == "k_chain":
        if k is None or k < 1:
            raise BadParameters("k_chain needs k >= 1")
        return k_chain(n, k)
    if name == "comb":
        return comb(n)
    raise AssertionError


def family_h_poly(name, j, k=None):
    """h-polynomial of the j-th member; j = 0 is the empty member (h = 1)."""
    if j == 0:
        return UniPoly([1])
    tau = build_family(name, n=j, k=k)
    return UniPoly(h_vector(enumerate_points(tau, 1, 0)))


# ---------------------------------------------------------------------------
# closed forms


def delannoy(n):
    """d_n = (1+t) d_(n-1) + t d_(n-2), d_0 = 1, d_1 = 1+t.  A008288."""
    if n < 0:
        raise BadParameters("n must be nonnegative")
    a, b = UniPoly([1]), UniPoly([1, 1])
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, UniPoly([1, 1]) * b + UniPoly([0, 1]) * a
    return b


def narayana(kind, n):
    """Rank generating polynomials of the two classical lattice families."""
    if n < 0:
        raise BadParameters("n must be nonnegative")
    if kind == "A":
        coeffs = [Fraction(binom(n, i) * binom(n + 1, i), i + 1) for i in range(n + 1)]
    elif kind == "B":
        coeffs = [binom(n, i) ** 2 for i in range(n + 1)]
    else:
        raise BadParameters(f"unknown type {kind!r}")
    return UniPoly(coeffs)


def antichain_sum_h(m, n):
    """Closed form for the ordinal sum of two antichains.

    Double sum over (k, l); internally re-derived from its nonnegative
    expansion in the basis t^i (1+t)^(m+n-2i) as a consistency assertion.
    """
    if m < 1 or n < 1:
        raise BadParameters("need m, n >= 1")
    total = UniPoly()
    for k in range(m + 1):
        for l in range(n + 1):
            c = binom(k + l, k) * binom(m, k) * binom(n, l)
            if c:
                total = total + UniPoly([0] * (m - k + l) + [c])
    gamma_form = UniPoly()
    for i in range(min(m, n) + 1):
        g = binom(m, i) * binom(n, i)
        gamma_form = gamma_form + UniPoly([0] * i + [g]) * (UniPoly([1, 1]) ** (m + n - 2 * i))
    assert total == gamma_form, "antichain-sum closed forms disagree"
    return total


# ---------------------------------------------------------------------------
# golden tables (point count, h-vector) per family index

GRID_TABLE = {  # counts: A158266
    1: (5, (1, 3, 1)),
    2: (38, (1, 9, 18, 9, 1)),
    3: (352, (1, 18, 86, 142, 86, 18, 1)),
    4: (3659, (1, 30, 260, 882, 1313, 882, 260, 30, 1)),
}

GRID_OPEN_TABLE = {  # counts: A370955
    1: (4, (1, 2, 1)),
    2: (29, (1, 7, 13, 7, 1)),
    3: (265, (1, 15, 65, 103, 65, 15, 1)),
    4: (2745, (1, 26, 206, 659, 961, 659, 206, 26, 1)),
}

GRID_HALF_TABLE = {  # counts: A000888
    1: (2, (1, 1)),
    2: (12, (1, 5, 5, 1)),
    3: (100, (1, 12, 37, 37, 12, 1)),
    4: (980, (1, 22, 138, 329, 329, 138, 22, 1)),
}

DOUBLE_CHAIN_TABLE = {  # counts: A066357
    1: (6, (1, 4, 1)),
    2: (53, (1, 12, 27, 12, 1)),
    3: (554, (1, 24, 134, 236, 134, 24, 1)),
    4: (6362, (1, 40, 410, 1540, 2380, 1540, 410, 40, 1)),
}

COMB_TABLE = {  # counts: A034015
    1: (5, (1, 3, 1)),
    2: (33, (1, 8, 15, 8, 1)),
    3: (249, (1, 15, 61, 95, 61, 15, 1)),
    4: (2033, (1, 24, 166, 484, 683, 484, 166, 24, 1)),
}

_TABLES = {
    "grid": GRID_TABLE,
    "grid_open": GRID_OPEN_TABLE,
    "grid_half": GRID_HALF_TABLE,
    "double_chain": DOUBLE_CHAIN_TABLE,
    "comb": COMB_TABLE,
}


def family_table_check(names=None, zigzag_max=10, antichain_max=7):
    """Compare enumerated counts/h-vectors against the frozen tables and
    closed forms.  Returns a list of row dicts; mismatches carry both values.
    """
    rows = []
    names = tuple(names) if names else ("grid", "grid_open", "grid_half", "double_chain", "comb", "zigzag", "antichain_sum")
    for name in names:
        table = _TABLES.get(name)
        if table:
            for j, (count, hvec) in sorted(table.items()):
                P = enumerate_points(build_family(name, n=j), 1, 0)
                got_count, got_h = len(P), tuple(h_vector(P))
                ok = got_count == count and got_h == hvec
                if name == "grid_half":
                    closed = narayana("A", j - 1) * narayana("B", j)
                    ok = ok and UniPoly(got_h) == closed
                rows.append(
                    {
                        "family": name,
                        "n": j,
                        "expected": (count, hvec),
                        "got": (got_count, got_h),
                        "ok": ok,
                    }
                )
        elif name == "zigzag":
            for j in range(1, zigzag_max + 1):
                got = family_h_poly("zigzag", j)
                expected = delannoy(j)
                rows.append(
                    {
                        "family": "zigzag",
                        "n": j,
                        "expected": tuple(expected.int_coeffs()),
                        "got": tuple(got.int_coeffs()),
                        "ok": got == expected,
                    }
                )
        elif name == "antichain_sum":
            for m in range(1, antichain_max):
                for j in range(1, antichain_max - m + 1):
                    tau = antichain_sum(m, j)
                    got = UniPoly(h_vector(enumerate_points(tau, 1, 0)))
                    expected = antichain_sum_h(m, j)
                    rows.append(
                        {
                            "family": "antichain_sum",
                            "n": (m, j),
                            "expected": tuple(expected.int_coeffs()),
                            "got": tuple(got.int_coeffs()),
                            "ok": got == expected,
                        }
                    )
    return rows


# ---------------------------------------------------------------------------
# generating-function identities

SERIES_NAMES = (
    "grid_inverse",
    "grid_exp",
    "double_chain_inverse",
    "k_chain_exp",
    "comb_compositional",
)

_MAX_FAMILY_SIZE = 12


def _family_series(name, order, sign=1, lead_one=True):
    """1 (optional) + sum_j sign * t^(1-j) h(F_(j-1)) x^j up to the order."""
    coeffs = [LaurentPoly.const(1 if lead_one else 0)]
    for j in range(1, order + 1):
        h = family_h_poly(name, j - 1)
        coeffs.append(LaurentPoly.from_unipoly(h, shift=-(j - 1)) * sign)
    return TruncSeries(order, coeffs)


def _check_family_order(name, order, size_per_index):
    largest = size_per_index(order)
    if largest > _MAX_FAMILY_SIZE:
        raise BadParameters(
            f"order {order} needs a size-{largest} {name} member; too large"
        )


def series_identity_check(name, order, k=None):
    """Verify one of the catalogued generating-function identities exactly."""
    if order < 1:
        raise BadParameters("order must be positive")
    if name == "grid_inverse":
        _check_family_order("grid", order, lambda K: 2 * (K - 1))
        F = _family_series("grid", order)
        G = _family_series("grid_open", order, sign=-1)
        return series_mul(F, G) == TruncSeries.one(order)
    if name == "grid_exp":
        _check_family_order("grid", order, lambda K: 2 * (K - 1))
        F = _family_series("grid", order)
        scoeffs = [LaurentPoly()]
        for j in range(1, order + 1):
            # s_j(t) * s_j(1/t) / j
            s = LaurentPoly.from_unipoly(
                UniPoly([binom(j, i) * binom(j - 1, i) for i in range(j)])
            )
            rev = LaurentPoly([(-e, c) for e, c in s.terms])
            scoeffs.append((s * rev) / j)
        S = TruncSeries(order, scoeffs)
        return series_exp(S) == F
    if name == "double_chain_inverse":
        _check_family_order("double_chain", order, lambda K: 2 * (K - 1))
        F = _family_series("double_chain", order)
        gcoeffs = [LaurentPoly.const(1)]
        for j in range(1, order + 1):
            gcoeffs.append(
                LaurentPoly.from_unipoly(narayana("A", 2 * j - 2), shift=-(j - 1)) * -1
            )
        G = TruncSeries(order, gcoeffs)
        return series_mul(F, G) == TruncSeries.one(order)
    if name == "k_chain_exp":
        if k is None or k < 1:
            raise BadParameters("k_chain_exp needs k >= 1")
        if order * k > _MAX_FAMILY_SIZE:
            raise BadParameters(f"order {order} at width {k} is too large")
        lhs = [LaurentPoly.const(1)]
        rhs = [LaurentPoly()]
        for j in range(1, order + 1):
            h = family_h_poly("k_chain", j, k=k)
            lhs.append(LaurentPoly.from_unipoly(h, shift=-j * k, stretch=2))
            nb = narayana("B", k * j)
            rhs.append(LaurentPoly.from_unipoly(nb, shift=-k * j, stretch=2) / j)
        return TruncSeries(order, lhs) == series_exp(TruncSeries(order, rhs))
    if name == "comb_compositional":
        _check_family_order("comb", order, lambda K: 2 * (K - 1))
        A = _family_series("comb", order, lead_one=False)
        bcoeffs = [LaurentPoly()]
        for j in range(1, order + 1):
            geom = UniPoly([1] * (j - 1))  # 1 + t + ... + t^(j-2)
            inner = UniPoly([1, 1]) ** j * geom
            term = LaurentPoly.const(1) + LaurentPoly.from_unipoly(inner, shift=-(j - 1))
            bcoeffs.append(term * (1 if j % 2 else -1))
        B = TruncSeries(order, bcoeffs)
        return series_compose(B, A) == TruncSeries.x(order)
    raise BadParameters(f"unknown series identity {name!r}")
