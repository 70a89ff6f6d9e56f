"""Lattice points of the budget polytope of a preorder.

Q(tau, r, s) is cut out by x >= 0 together with one budget inequality
sum_{e in I} x_e <= r|I| + s per order ideal I.  For s = 0 the inequalities
of ideals that are disconnected in the Hasse diagram are implied by their
connected components and are skipped; for s > 0 every nonempty ideal is
enforced.
"""

from __future__ import annotations

from .errors import PointNotInPoset, PrecondError
from .preorder import order_ideals


def _constraints(tau, r, s):
    fam = order_ideals(tau)
    cons = fam.nonempty(connected_only=(s == 0))
    per_elem = [[] for _ in range(tau.n)]
    budgets = []
    for ci, (mask, size) in enumerate(cons):
        budgets.append(r * size + s)
        for e in range(tau.n):
            if mask >> e & 1:
                per_elem[e].append(ci)
    return per_elem, budgets


def enumerate_points(tau, r, s):
    """PointPoset of all integer points of Q(tau, r, s), lex sorted."""
    if r < 0 or s < 0:
        raise PrecondError("dilation parameters must be nonnegative")
    per_elem, budgets = _constraints(tau, r, s)
    n = tau.n
    out = []
    coords = [0] * n
    remaining = list(budgets)

    def rec(e):
        if e == n:
            out.append(tuple(coords))
            return
        cs = per_elem[e]
        ub = min(remaining[c] for c in cs)
        for x in range(ub + 1):
            coords[e] = x
            if x > 0:
                for c in cs:
                    remaining[c] -= 1
            rec(e + 1)
        coords[e] = 0
        for c in cs:
            remaining[c] += ub

    rec(0)
    return PointPoset(tau, r, s, out)


def count_points(tau, r, s):
    """Number of integer points of Q(tau, r, s), without materializing them."""
    if r < 0 or s < 0:
        raise PrecondError("dilation parameters must be nonnegative")
    per_elem, budgets = _constraints(tau, r, s)
    n = tau.n
    remaining = list(budgets)
    last = n - 1

    def rec(e):
        cs = per_elem[e]
        ub = min(remaining[c] for c in cs)
        if e == last:
            return ub + 1
        total = 0
        for x in range(ub + 1):
            if x > 0:
                for c in cs:
                    remaining[c] -= 1
            total += rec(e + 1)
        for c in cs:
            remaining[c] += ub
        return total

    return rec(0)


class PointPoset:
    """Deduplicated lex-sorted lattice points under componentwise order."""

    def __init__(self, tau, r, s, points):
        self.tau = tau
        self.r = r
        self.s = s
        self.n = tau.n
        self.points = tuple(points)
        self.index = {p: i for i, p in enumerate(self.points)}
        self._pred = None
        self._maximal = None

    @property
    def tau_key(self):
        return self.tau.canonical_key

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return tuple(p) in self.index

    @property
    def ranks(self):
        return [sum(p) for p in self.points]

    @property
    def rank(self):
        """Top rank; the poset is graded by coordinate sum."""
        return max(sum(p) for p in self.points)

    def predecessors(self):
        """pred[e][i]: index of points[i] minus a unit in coordinate e, or -1."""
        if self._pred is None:
            pred = []
            for e in range(self.n):
                col = []
                for p in self.points:
                    if p[e]:
                        q = p[:e] + (p[e] - 1,) + p[e + 1 :]
                        col.append(self.index[q])
                    else:
                        col.append(-1)
                pred.append(col)
            self._pred = pred
        return self._pred

    def downset_sums(self, values):
        """For each point q, the sum of values over all points p <= q.

        Uses a per-coordinate prefix-sum pass; valid because the point set is
        downward closed, so the region below any point is a full box.
        """
        out = list(values)
        for col in self.predecessors():
            for i, j in enumerate(col):
                if j >= 0:
                    out[i] += out[j]
        return out

    def leq(self, p, q):
        return all(a <= b for a, b in zip(p, q))

    def maximal_mask(self):
        if self._maximal is None:
            flags = []
            for p in self.points:
                flags.append(
                    not any(
                        p[:e] + (p[e] + 1,) + p[e + 1 :] in self.index
                        for e in range(self.n)
                    )
                )
            self._maximal = flags
        return self._maximal


def h_vector(P):
    """Counts of points by number of nonzero coordinates; context must be (1,0)."""
    if (P.r, P.s) != (1, 0):
        raise PrecondError("h-vector is defined for the (1,0) point poset")
    h = [0] * (P.n + 1)
    for p in P.points:
        h[sum(1 for c in p if c)] += 1
    return h


def maximal_elements(P):
    return [p for p, flag in zip(P.points, P.maximal_mask()) if flag]


def upper_boundary_complement(P):
    """Points satisfying every nonempty ideal budget strictly; context (1,0)."""
    if (P.r, P.s) != (1, 0):
        raise PrecondError("upper boundary is defined for the (1,0) point poset")
    fam = order_ideals(P.tau)
    cons = fam.nonempty()
    out = []
    for p in P.points:
        ok = True
        for mask, size in cons:
            total = 0
            for e in range(P.n):
                if mask >> e & 1:
                    total += p[e]
            if total >= size:
                ok = False
                break
        if ok:
            out.append(p)
    return out


def cover_count(P, p):
    """Number of elements covered by p; equals its nonzero-coordinate count."""
    p = tuple(p)
    if p not in P.index:
        raise PointNotInPoset(f"{p} not in the poset")
    return sum(1 for c in p if c)


def cover_count_adjacent(P, p):
    """Cover count by explicit adjacency lookups (cross-check route)."""
    p = tuple(p)
    if p not in P.index:
        raise PointNotInPoset(f"{p} not in the poset")
    return sum(
        1
        for e in range(P.n)
        if p[e] and p[:e] + (p[e] - 1,) + p[e + 1 :] in P.index
    )


def multichain_count(P, k):
    """Number of weakly increasing k-tuples of points; k = 0 gives 1."""
    if k < 0:
        raise PrecondError("k must be nonnegative")
    if k == 0:
        return 1
    vals = [1] * len(P)
    for _ in range(k - 1):
        vals = P.downset_sums(vals)
    return sum(vals)


def multichain_counts_upto(P, kmax):
    """All multichain counts for k = 0..kmax in one run."""
    counts = [1]
    if kmax == 0:
        return counts
    vals = [1] * len(P)
    counts.append(sum(vals))
    for _ in range(2, kmax + 1):
        vals = P.downset_sums(vals)
        counts.append(sum(vals))
    return counts


def points_csv(P):
    """CSV dump: one row per point with rank and maximal flag."""
    header = [f"x_{e + 1}" for e in range(P.n)] + ["rank", "is_maximal"]
    lines = [",".join(header)]
    for p, flag in zip(P.points, P.maximal_mask()):
        lines.append(",".join(map(str, p)) + f",{sum(p)},{int(flag)}")
    return "\n".join(lines) + "\n"
