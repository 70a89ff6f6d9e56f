"""Word statistics behind the h* formulas.

The admissible words of length n over the ground set (each ideal I must
receive at least |I| letters) are never generated one by one: they split into
content classes indexed by the top-rank lattice points of the dual polytope,
and each class carries a multiset-permutation descent polynomial computed by
an insertion recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .errors import NoMinimumVertex
from .points import enumerate_points
from .polynomials import UniPoly, interpolate
from .preorder import dual, relabel_elements


@dataclass(frozen=True)
class WordClass:
    content: tuple  # letter multiplicities over the ground set
    count: int
    descent_polynomial: UniPoly


_DESC_CACHE = {}


def descent_polynomial(content):
    """Descent generating polynomial of the permutations of a multiset.

    Insertion recurrence: with the letters added in increasing order, a block
    of k equal copies of a new maximum letter lands in j chosen gaps; gaps at
    existing descents or at the end keep the count, the others add one.
    Depends only on the multiset of multiplicities.
    """
    key = tuple(sorted(c for c in content if c))
    got = _DESC_CACHE.get(key)
    if got is not None:
        return got
    cur = {0: 1}
    length = 0
    for c in key:
        new = {}
        for d, cnt in cur.items():
            neutral = d + 1  # descent gaps plus the end gap
            plus = length - d  # ascent gaps plus the beginning gap
            for j2 in range(0, min(plus, c) + 1):
                for j1 in range(0, min(neutral, c - j2) + 1):
                    j = j1 + j2
                    if j == 0:
                        continue
                    ways = comb(neutral, j1) * comb(plus, j2) * comb(c - 1, j - 1)
                    if ways:
                        new[d + j2] = new.get(d + j2, 0) + cnt * ways
        cur = new
        length += c
    poly = UniPoly([cur.get(i, 0) for i in range(max(cur) + 1)]) if cur else UniPoly([1])
    _DESC_CACHE[key] = poly
    return poly


def multiset_permutations(content):
    """All distinct words with the given letter multiplicities, letters 1-based."""
    counts = [(e + 1, c) for e, c in enumerate(content) if c]
    total = sum(c for _, c in counts)
    word = []

    def rec():
        if len(word) == total:
            yield tuple(word)
            return
        for i, (letter, c) in enumerate(counts):
            if c:
                counts[i] = (letter, c - 1)
                word.append(letter)
                yield from rec()
                word.pop()
                counts[i] = (letter, c)

    yield from rec()


def descent_polynomial_bruteforce(content):
    """Oracle route: explicit generation (use only for small contents)."""
    counts = {}
    for w in multiset_permutations(content):
        d = sum(1 for i in range(len(w) - 1) if w[i] > w[i + 1])
        counts[d] = counts.get(d, 0) + 1
    return UniPoly([counts.get(i, 0) for i in range(max(counts) + 1)])


def descent_polynomial_via_series(content):
    """Cross-check route: clear the denominators of the box-count series.

    The series sum_m prod_e C(m + c_e, c_e) t^m equals D(t)/(1-t)^(|c|+1),
    so D falls out of a unitriangular solve against the binomial basis.
    """
    cs = [c for c in content if c]
    total = sum(cs)
    if total == 0:
        return UniPoly([1])

    def box(m):
        v = 1
        for c in cs:
            v *= comb(m + c, c)
        return v

    vals = [(m, box(m)) for m in range(total + 1)]
    poly = interpolate(vals)
    d = []
    for j in range(total + 1):
        val = poly(j)
        for i in range(j):
            val -= d[i] * comb(j + total - i, total)
        d.append(val)
    return UniPoly(d)


def word_contents(tau, dual_points=None):
    """Contents of admissible length-n words: top-rank points of the dual poset."""
    if dual_points is None:
        dual_points = enumerate_points(dual(tau), 1, 0)
    n = tau.n
    return [p for p in dual_points.points if sum(p) == n]


def words_W(tau, dual_points=None):
    """Admissible length-n words, one class per content vector."""
    n = tau.n
    classes = []
    for content in word_contents(tau, dual_points):
        count = factorial(n)
        for c in content:
            count //= factorial(c)
        classes.append(WordClass(content, count, descent_polynomial(content)))
    return classes


def word_count(tau, dual_points=None):
    return sum(wc.count for wc in words_W(tau, dual_points))


def hstar_words_descent(tau, dual_points=None):
    """Candidate h*: sum of t^(n-1-des(w)) over admissible words."""
    n = tau.n
    total = UniPoly()
    for wc in words_W(tau, dual_points):
        total = total + wc.descent_polynomial.reverse(n - 1)
    return total


def hstar_filter_formula(tau, dual_points=None):
    """h* from the short-word expansion over all dual lattice points.

    (1-t)^(n+1) + t * sum over dual points a of (1-t)^(n-|a|) D_a(t), where
    D_a is the descent polynomial of the words with content a.  The leading
    factor t is required: without it the size-1 instance already disagrees
    with the series definition of h*.
    """
    if dual_points is None:
        dual_points = enumerate_points(dual(tau), 1, 0)
    n = tau.n
    one_minus_t = UniPoly([1, -1])
    powers = [one_minus_t**i for i in range(n + 2)]
    acc = powers[n + 1]
    t = UniPoly([0, 1])
    for p in dual_points.points:
        acc = acc + t * powers[n - sum(p)] * descent_polynomial(p)
    return acc


def _modified_ascents(word):
    """Ascent count with a phantom initial letter 1."""
    prev = 1
    total = 0
    for w in word:
        if prev < w:
            total += 1
        prev = w
    return total


def hstar_asc_star(tau):
    """h* as the modified-ascent enumerator of admissible words.

    Requires a minimum vertex; labels are normalized so that 1 lies in it.
    """
    mv = tau.min_vertex()
    if mv is None:
        raise NoMinimumVertex("no vertex lies below all others")
    lowest = min(tau.vertices[mv])
    if lowest != 1:
        perm = list(range(tau.n + 1))
        perm[1], perm[lowest] = lowest, 1
        tau = relabel_elements(tau, perm)
    counts = {}
    for content in word_contents(tau):
        for w in multiset_permutations(content):
            a = _modified_ascents(w)
            counts[a] = counts.get(a, 0) + 1
    return UniPoly([counts.get(i, 0) for i in range(max(counts) + 1)])


def total_order_independence(tau, orders):
    """Whether the descent-based h* is unchanged under relabelings of E."""
    if len(orders) < 2:
        raise ValueError("need at least two sampled orders")
    base = None
    for order in orders:
        perm = [0] + list(order)
        poly = hstar_words_descent(relabel_elements(tau, perm))
        if base is None:
            base = poly
        elif poly != base:
            return False
    return True


def sample_orders(n, count=5, seed=0):
    """Deterministic sample of label permutations (identity always included)."""
    import random

    rng = random.Random(seed)
    out = [tuple(range(1, n + 1))]
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        if tuple(perm) not in out:
            out.append(tuple(perm))
        attempts += 1
    return out
