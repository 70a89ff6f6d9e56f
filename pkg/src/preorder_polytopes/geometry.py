"""Exact H-to-V conversion, f-vectors and the reflexive polytope pair.

Vertex enumeration solves every n-subset of inequalities; fine for the desk
scale here (<= ~20 inequalities, dimension <= 6).  The polar-dual polytope is
handled through its vertex list and a support-function membership test, so no
second hull computation is needed.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial

from .errors import BadParameters, NotPalindromicHStar, UnboundedError
from .ehrhart import EhrhartRecord
from .points import enumerate_points
from .polynomials import hstar_from_ehrhart, interpolate
from .preorder import order_ideals


class HPolytope:
    """Intersection of half-spaces a . x <= b with integer data."""

    __slots__ = ("n", "normals", "bounds")

    def __init__(self, n, normals, bounds):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "normals", tuple(tuple(a) for a in normals))
        object.__setattr__(self, "bounds", tuple(bounds))

    def __setattr__(self, name, value):
        raise AttributeError("HPolytope is immutable")

    def __reduce__(self):
        return (HPolytope, (self.n, self.normals, self.bounds))

    def __len__(self):
        return len(self.normals)


class VPolytope:
    __slots__ = ("vertices",)

    def __init__(self, vertices):
        object.__setattr__(self, "vertices", tuple(sorted(tuple(v) for v in vertices)))

    def __setattr__(self, name, value):
        raise AttributeError("VPolytope is immutable")

    def __reduce__(self):
        return (VPolytope, (self.vertices,))

    def __len__(self):
        return len(self.vertices)

    def serialize(self):
        from .polynomials import format_rational

        return [[format_rational(c) for c in v] for v in self.vertices]


def q_h_polytope(tau, r, s):
    """H-description of Q(tau, r, s): nonnegativity plus ideal budgets."""
    n = tau.n
    fam = order_ideals(tau)
    normals = []
    bounds = []
    for e in range(n):
        normals.append(tuple(-1 if i == e else 0 for i in range(n)))
        bounds.append(0)
    for mask, size in fam.nonempty(connected_only=(s == 0)):
        normals.append(tuple(1 if mask >> i & 1 else 0 for i in range(n)))
        bounds.append(r * size + s)
    return HPolytope(n, normals, bounds)


def reflexive_h_polytope(tau):
    """The translate of Q(tau,1,1) centered at the origin: x_e >= -1 and
    ideal sums <= 1."""
    n = tau.n
    fam = order_ideals(tau)
    normals = []
    bounds = []
    for e in range(n):
        normals.append(tuple(-1 if i == e else 0 for i in range(n)))
        bounds.append(1)
    for mask, _ in fam.nonempty():
        normals.append(tuple(1 if mask >> i & 1 else 0 for i in range(n)))
        bounds.append(1)
    return HPolytope(n, normals, bounds)


def _solve_square(rows, rhs):
    n = len(rows)
    A = [[Fraction(c) for c in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if A[r][col]:
                piv = r
                break
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [c / pv for c in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [c - f * d for c, d in zip(A[r], A[col])]
    return tuple(A[i][n] for i in range(n))


def _rank(rows):
    mat = [list(map(Fraction, row)) for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [c / pv for c in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [c - f * d for c, d in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def _kernel_direction(rows, n):
    """A nonzero kernel vector of an (n-1)-row system of full row rank, else None."""
    mat = [list(map(Fraction, row)) for row in rows]
    pivots = []
    rank = 0
    for col in range(n):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [c / pv for c in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [c - f * d for c, d in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    if rank != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivots)
    d = [Fraction(0)] * n
    d[free] = Fraction(1)
    for r, col in enumerate(pivots):
        d[col] = -mat[r][free]
    return tuple(d)


def _dot(a, x):
    return sum(Fraction(c) * x[i] for i, c in enumerate(a))


def _check_bounded(H):
    # recession cone {d : A d <= 0} must be {0}
    if _rank(H.normals) < H.n:
        raise UnboundedError("normals do not span; recession direction exists")
    for subset in combinations(range(len(H)), H.n - 1):
        d = _kernel_direction([H.normals[i] for i in subset], H.n)
        if d is None:
            continue
        for cand in (d, tuple(-c for c in d)):
            if all(_dot(a, cand) <= 0 for a in H.normals):
                raise UnboundedError(f"recession direction {cand}")


def vertex_enumeration(H):
    """Exact vertex set by solving every n-subset of tight inequalities."""
    _check_bounded(H)
    n = H.n
    seen = set()
    for subset in combinations(range(len(H)), n):
        rows = [H.normals[i] for i in subset]
        rhs = [H.bounds[i] for i in subset]
        x = _solve_square(rows, rhs)
        if x is None:
            continue
        if all(_dot(a, x) <= b for a, b in zip(H.normals, H.bounds)):
            seen.add(x)
    return VPolytope(seen)


def _affine_dim(points):
    pts = list(points)
    if not pts:
        return -1
    if len(pts) == 1:
        return 0
    base = pts[0]
    rows = [[c - b for c, b in zip(p, base)] for p in pts[1:]]
    return _rank(rows)


def f_vector(H):
    """(f_-1, f_0, ..., f_n) via the vertex-facet incidence lattice."""
    V = vertex_enumeration(H).vertices
    n = _affine_dim(V)
    tight_sets = set()
    for a, b in zip(H.normals, H.bounds):
        tight = frozenset(i for i, v in enumerate(V) if _dot(a, v) == b)
        if tight and _affine_dim([V[i] for i in tight]) == n - 1:
            tight_sets.add(tight)
    facets = list(tight_sets)
    top = frozenset(range(len(V)))
    faces = {top}
    queue = [top]
    while queue:
        face = queue.pop()
        for facet in facets:
            g = face & facet
            if g and g not in faces:
                faces.add(g)
                queue.append(g)
    counts = [0] * (n + 1)
    for face in faces:
        counts[_affine_dim([V[i] for i in face])] += 1
    return tuple([1] + counts)  # f_-1 = 1, then f_0..f_n


def euler_relation_holds(fvec):
    """Alternating sum over the full face lattice (empty face included)."""
    return sum((-1) ** i * f for i, f in enumerate(fvec)) == 0


def dual_vertex_set(tau):
    """Vertices of the polar dual: negated units and ideal indicator vectors."""
    n = tau.n
    fam = order_ideals(tau)
    verts = []
    for e in range(n):
        verts.append(tuple(-1 if i == e else 0 for i in range(n)))
    for mask, _ in fam.nonempty():
        verts.append(tuple(1 if mask >> i & 1 else 0 for i in range(n)))
    return verts


def _certify_extreme(verts, n):
    """Each listed point uniquely maximizes an explicit linear functional."""
    vset = list(verts)
    for v in vset:
        if sum(v) < 0:
            # negated unit -e: maximize -(n+1) on e, +1 on the others
            e = v.index(-1)
            w = tuple(-(n + 1) if i == e else 1 for i in range(n))
        else:
            # indicator of a set S: maximize (n+1) on S, -1 off S
            w = tuple((n + 1) if c else -1 for c in v)
        best = _dot(w, v)
        for u in vset:
            if u != v and _dot(w, u) >= best:
                raise AssertionError(f"{v} is not extreme among the dual vertices")


def reflexive_pair(tau):
    """The centered reflexive polytope and its polar dual's vertex list.

    Asserts that the origin is the unique interior lattice point and that
    every listed dual vertex is extreme.
    """
    R = reflexive_h_polytope(tau)
    verts = dual_vertex_set(tau)
    _certify_extreme(verts, tau.n)
    fam = order_ideals(tau)
    cons = fam.nonempty()
    interior = []
    for p in enumerate_points(tau, 1, 1).points:
        if any(c < 1 for c in p):
            continue
        ok = True
        for mask, size in cons:
            if sum(p[e] for e in range(tau.n) if mask >> e & 1) > size:
                ok = False
                break
        if ok:
            interior.append(p)
    assert interior == [(1,) * tau.n], "interior lattice point is not unique"
    return R, VPolytope(verts)


def _dilate_count(W, n, m):
    """Lattice points x in [-m, m]^n with <x, w> <= m for every row w of W."""
    if m == 0:
        return 1
    import numpy as np

    Wmat = np.asarray(W, dtype=np.int64)
    total = 0
    side = np.arange(-m, m + 1, dtype=np.int64)
    if n == 1:
        grid = side.reshape(-1, 1)
        return int(np.count_nonzero((grid @ Wmat.T <= m).all(axis=1)))
    rest = np.stack(
        np.meshgrid(*([side] * (n - 1)), indexing="ij"), axis=-1
    ).reshape(-1, n - 1)
    for x0 in side:
        dots = x0 * Wmat[:, 0] + rest @ Wmat[:, 1:].T
        total += int(np.count_nonzero((dots <= m).all(axis=1)))
    return total


def ehrhart_Rvee(tau):
    """Ehrhart record of the polar dual, via support-function box scans."""
    n = tau.n
    if n > 6:
        raise BadParameters("polar-dual scans support size at most 6")
    R, Rvee = reflexive_pair(tau)
    rverts = vertex_enumeration(R).vertices
    W = []
    for v in rverts:
        row = []
        for c in v:
            assert c.denominator == 1, "reflexive polytope vertex must be integral"
            row.append(c.numerator)
        W.append(row)
    counts = [(m, _dilate_count(W, n, m)) for m in range(n + 1)]
    ehr = interpolate(counts)
    if ehr.degree != n:
        raise NotPalindromicHStar(f"polar dual Ehrhart degree {ehr.degree} != {n}")
    hstar = hstar_from_ehrhart(ehr, n)
    if not hstar.is_palindromic(n):
        raise NotPalindromicHStar(f"polar dual h* not palindromic: {hstar}")
    nvol = ehr.leading() * factorial(n)
    assert nvol.denominator == 1
    rec = EhrhartRecord(tau.canonical_key, ehr, hstar, nvol.numerator, "support_scan")
    return rec.validate(n, point_count=len(Rvee) + 1)


def reflexive_conjecture_checks(tau, split=None):
    """Dual-invariance of the polar dual's h*, and the ordinal-sum product law.

    split, when given, is a pair of sub-preorders whose ordinal sum is tau;
    the second verdict is None when no split applies.
    """
    from .preorder import dual

    mine = ehrhart_Rvee(tau).hstar
    rtau_a = mine == ehrhart_Rvee(dual(tau)).hstar
    rtau_b = None
    if split is not None:
        t1, t2 = split
        rtau_b = mine == ehrhart_Rvee(t1).hstar * ehrhart_Rvee(t2).hstar
    return rtau_a, rtau_b
