"""Preorders on a finite ground set.

A preorder is stored as a partial order on the blocks (vertices) of a set
partition of {1..n}.  The relation is kept as reflexive-transitive
reachability bitmasks over vertex indices; vertices are kept sorted by their
smallest element so that structurally equal objects compare equal.
"""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import permutations, product

from .errors import (
    BadParameters,
    CycleError,
    OverlapError,
    SchemaError,
    SizeLimit,
)

MAX_ENUM_SIZE = 7


def _bits(mask):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def _popcount(mask):
    return bin(mask).count("1")


class Preorder:
    __slots__ = ("n", "vertices", "up", "_cache")

    def __init__(self, vertices, up):
        # internal constructor: inputs already normalized and closed
        object.__setattr__(self, "vertices", tuple(tuple(v) for v in vertices))
        object.__setattr__(self, "up", tuple(up))
        object.__setattr__(self, "n", sum(len(v) for v in vertices))
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Preorder is immutable")

    def __reduce__(self):
        return (Preorder, (self.vertices, self.up))

    @property
    def k(self):
        """Number of vertices."""
        return len(self.vertices)

    def leq(self, i, j):
        """Whether vertex i is below vertex j."""
        return bool(self.up[i] >> j & 1)

    @property
    def downs(self):
        """Bitmask of vertices below each vertex (reflexive)."""
        if "downs" not in self._cache:
            downs = [0] * self.k
            for i, mask in enumerate(self.up):
                for j in _bits(mask):
                    downs[j] |= 1 << i
            self._cache["downs"] = tuple(downs)
        return self._cache["downs"]

    @property
    def covers(self):
        """Transitive reduction as a sorted tuple of (lower, upper) pairs."""
        if "covers" not in self._cache:
            out = []
            for i in range(self.k):
                for j in _bits(self.up[i]):
                    if j == i:
                        continue
                    between = self.up[i] & self.downs[j] & ~(1 << i) & ~(1 << j)
                    if not between:
                        out.append((i, j))
            self._cache["covers"] = tuple(sorted(out))
        return self._cache["covers"]

    @property
    def element_masks(self):
        """Element bitmask (bit e-1 for element e) per vertex."""
        if "emasks" not in self._cache:
            ems = []
            for v in self.vertices:
                m = 0
                for e in v:
                    m |= 1 << (e - 1)
                ems.append(m)
            self._cache["emasks"] = tuple(ems)
        return self._cache["emasks"]

    @property
    def vertex_of_element(self):
        if "voe" not in self._cache:
            voe = [None] * (self.n + 1)
            for i, v in enumerate(self.vertices):
                for e in v:
                    voe[e] = i
            self._cache["voe"] = tuple(voe)
        return self._cache["voe"]

    @property
    def canonical_key(self):
        if "key" not in self._cache:
            sizes = tuple(len(v) for v in self.vertices)
            szs, bits = _canonical_form(sizes, self.up)
            self._cache["key"] = f"{len(szs)}|{','.join(map(str, szs))}|{bits:x}"
        return self._cache["key"]

    def min_vertex(self):
        """Index of the vertex below all others, or None."""
        full = (1 << self.k) - 1
        for i in range(self.k):
            if self.up[i] == full:
                return i
        return None

    def __eq__(self, other):
        if not isinstance(other, Preorder):
            return NotImplemented
        return self.vertices == other.vertices and self.up == other.up

    def __hash__(self):
        return hash((self.vertices, self.up))

    def __repr__(self):
        vs = ",".join("{" + ",".join(map(str, v)) + "}" for v in self.vertices)
        cov = ",".join(f"{i}<{j}" for i, j in self.covers)
        return f"Preorder(n={self.n}, vertices=[{vs}], covers=[{cov}])"


def _close_and_check(k, up):
    up = list(up)
    for m in range(k):
        bit = 1 << m
        for i in range(k):
            if up[i] & bit:
                up[i] |= up[m]
    for i in range(k):
        for j in _bits(up[i]):
            if j != i and up[j] >> i & 1:
                raise CycleError(f"vertices {i} and {j} lie on a cycle")
    return up


def _normalize(vertex_sets, up):
    order = sorted(range(len(vertex_sets)), key=lambda i: min(vertex_sets[i]))
    pos = {old: new for new, old in enumerate(order)}
    verts = [tuple(sorted(vertex_sets[i])) for i in order]
    new_up = []
    for i in order:
        m = 0
        for j in _bits(up[i]):
            m |= 1 << pos[j]
        new_up.append(m)
    return Preorder(verts, new_up)


def build_preorder(vertex_sets, relation_pairs=()):
    """Build a normalized preorder from vertex element sets and relation pairs.

    Elements are integer labels; the sets must partition {1..n}.  Relation
    pairs are (lower, upper) indices into vertex_sets; any acyclic set of
    pairs is accepted and closed transitively.
    """
    sets = [tuple(sorted(set(v))) for v in vertex_sets]
    if not sets or any(not v for v in sets):
        raise OverlapError("vertex sets must be nonempty")
    seen = set()
    for v in sets:
        for e in v:
            if not isinstance(e, int) or e < 1:
                raise OverlapError(f"bad element label {e!r}")
            if e in seen:
                raise OverlapError(f"element {e} appears in two vertices")
            seen.add(e)
    n = sum(len(v) for v in sets)
    if seen != set(range(1, n + 1)):
        raise OverlapError("vertex sets must partition {1..n}")
    k = len(sets)
    up = [1 << i for i in range(k)]
    for a, b in relation_pairs:
        if not (0 <= a < k and 0 <= b < k):
            raise BadParameters(f"relation pair ({a},{b}) out of range")
        up[a] |= 1 << b
    up = _close_and_check(k, up)
    return _normalize(sets, up)


def preorder_from_sizes(sizes, up):
    """Preorder with consecutive element labels and a pre-closed relation."""
    sets = []
    start = 1
    for s in sizes:
        sets.append(tuple(range(start, start + s)))
        start += s
    return _normalize(sets, _close_and_check(len(sizes), up))


def dual(tau):
    """Same vertices, reversed relation; an involution."""
    return Preorder(tau.vertices, tau.downs)


def combine(kind, a, b):
    """Disjoint union or ordinal sum; b's elements are relabeled above a's."""
    if kind not in ("disjoint_union", "ordinal_sum"):
        raise BadParameters(f"unknown combination {kind!r}")
    shift = a.n
    verts = list(a.vertices) + [tuple(e + shift for e in v) for v in b.vertices]
    ka, kb = a.k, b.k
    up = list(a.up) + [m << ka for m in b.up]
    if kind == "ordinal_sum":
        high = ((1 << kb) - 1) << ka
        for i in range(ka):
            up[i] |= high
    return Preorder(verts, up)


def restrict(tau, vertex_indices):
    """Induced sub-preorder on the given vertices, elements relabeled 1..m."""
    idx = sorted(vertex_indices)
    elems = sorted(e for i in idx for e in tau.vertices[i])
    label = {e: j + 1 for j, e in enumerate(elems)}
    sets = [tuple(label[e] for e in tau.vertices[i]) for i in idx]
    pos = {old: new for new, old in enumerate(idx)}
    up = []
    for i in idx:
        m = 0
        for j in _bits(tau.up[i]):
            if j in pos:
                m |= 1 << pos[j]
        up.append(m)
    return _normalize(sets, up)


def relabel_elements(tau, perm):
    """Apply a permutation of element labels (perm[old] = new, 1-based)."""
    sets = [tuple(sorted(perm[e] for e in v)) for v in tau.vertices]
    return _normalize(sets, tau.up)


def ordinal_split(tau):
    """A proper split (lower, upper vertex indices) if tau is an ordinal sum."""
    k = tau.k
    full = (1 << k) - 1
    for size in range(1, k):
        for lower in _subsets_of_size(full, size):
            rest = full & ~lower
            if all(tau.up[i] & rest == rest for i in _bits(lower)):
                return tuple(_bits(lower)), tuple(_bits(rest))
    return None


def _subsets_of_size(mask, size):
    idx = list(_bits(mask))
    from itertools import combinations

    for combo in combinations(idx, size):
        m = 0
        for i in combo:
            m |= 1 << i
        yield m


class IdealFamily:
    """All order ideals of a preorder, as element bitmasks."""

    __slots__ = ("n", "masks", "connected", "sizes", "vertex_masks")

    def __init__(self, n, masks, connected, vertex_masks):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "masks", tuple(masks))
        object.__setattr__(self, "connected", tuple(connected))
        object.__setattr__(self, "sizes", tuple(_popcount(m) for m in masks))
        object.__setattr__(self, "vertex_masks", tuple(vertex_masks))

    def __setattr__(self, name, value):
        raise AttributeError("IdealFamily is immutable")

    def __reduce__(self):
        return (IdealFamily, (self.n, self.masks, self.connected, self.vertex_masks))

    def __len__(self):
        return len(self.masks)

    def nonempty(self, connected_only=False):
        """(mask, size) pairs for nonempty ideals, optionally connected only."""
        out = []
        for mask, conn, size in zip(self.masks, self.connected, self.sizes):
            if size == 0:
                continue
            if connected_only and not conn:
                continue
            out.append((mask, size))
        return out


def order_ideals(tau):
    """Every order ideal, flagged connected/disconnected in the Hasse diagram."""
    k = tau.k
    downs = tau.downs
    emasks = tau.element_masks
    cover_adj = [0] * k
    for i, j in tau.covers:
        cover_adj[i] |= 1 << j
        cover_adj[j] |= 1 << i
    found = []
    for vs in range(1 << k):
        ok = True
        for j in _bits(vs):
            if downs[j] & ~vs:
                ok = False
                break
        if not ok:
            continue
        emask = 0
        for j in _bits(vs):
            emask |= emasks[j]
        found.append((emask, vs, _is_connected(vs, cover_adj)))
    found.sort()
    return IdealFamily(
        tau.n,
        [f[0] for f in found],
        [f[2] for f in found],
        [f[1] for f in found],
    )


def _is_connected(vs, adj):
    if vs == 0:
        return False
    start = vs & -vs
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for j in _bits(frontier):
            nxt |= adj[j] & vs & ~seen
        seen |= nxt
        frontier = nxt
    return seen == vs


# ---------------------------------------------------------------------------
# canonical forms and enumeration


def _refine_profiles(sizes, up):
    k = len(sizes)
    downs = [0] * k
    for i in range(k):
        for j in _bits(up[i]):
            downs[j] |= 1 << i
    up_list = [tuple(j for j in _bits(up[i]) if j != i) for i in range(k)]
    down_list = [tuple(j for j in _bits(downs[i]) if j != i) for i in range(k)]
    prof = [(sizes[i], len(up_list[i]), len(down_list[i])) for i in range(k)]
    ranks = _rank_compress(prof)
    for _ in range(k):
        new = [
            (
                ranks[i],
                tuple(sorted(ranks[j] for j in down_list[i])),
                tuple(sorted(ranks[j] for j in up_list[i])),
            )
            for i in range(k)
        ]
        new_ranks = _rank_compress(new)
        if new_ranks == ranks:
            break
        ranks = new_ranks
    return ranks


def _rank_compress(values):
    order = {v: r for r, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


def _canonical_form(sizes, up):
    k = len(sizes)
    ranks = _refine_profiles(sizes, up)
    blocks = {}
    for i, r in enumerate(ranks):
        blocks.setdefault(r, []).append(i)
    block_lists = [blocks[r] for r in sorted(blocks)]
    best = None
    for parts in product(*(permutations(b) for b in block_lists)):
        perm = [i for part in parts for i in part]  # position -> original index
        szs = tuple(sizes[i] for i in perm)
        bits = 0
        at = 0
        for pi in perm:
            row = up[pi]
            for jpos, pj in enumerate(perm):
                if row >> pj & 1:
                    bits |= 1 << (at + jpos)
            at += k
        cand = (szs, bits)
        if best is None or cand < best:
            best = cand
    return best


def _form_to_up(k, bits):
    return tuple(
        sum(1 << j for j in range(k) if bits >> (i * k + j) & 1) for i in range(k)
    )


@lru_cache(maxsize=None)
def _poset_classes(k):
    """Canonical relation matrices of all k-vertex partial orders."""
    if k == 1:
        return ((1,),)
    out = {}
    for up in _poset_classes(k - 1):
        downs = [0] * (k - 1)
        for i in range(k - 1):
            for j in _bits(up[i]):
                downs[j] |= 1 << i
        for vs in range(1 << (k - 1)):
            # new maximal vertex whose strict down-set is the ideal vs
            if any(downs[j] & ~vs for j in _bits(vs)):
                continue
            new_up = [m | (1 << (k - 1)) if (vs >> i & 1) else m for i, m in enumerate(up)]
            new_up.append(1 << (k - 1))
            form = _canonical_form((1,) * k, tuple(new_up))
            out[form] = None
    return tuple(_form_to_up(k, bits) for _, bits in sorted(out))


def _compositions(n, k):
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def enumerate_preorders(n, limit=MAX_ENUM_SIZE):
    """One representative per isomorphism class of preorders of size n."""
    if n < 1:
        raise BadParameters("size must be positive")
    if n > limit:
        raise SizeLimit(f"size {n} exceeds the configured maximum {limit}")
    found = {}
    for k in range(1, n + 1):
        for up in _poset_classes(k):
            for comp in _compositions(n, k):
                pre = preorder_from_sizes(comp, up)
                key = pre.canonical_key
                if key not in found:
                    found[key] = pre
    return [found[key] for key in sorted(found)]


def canonical_key(tau):
    return tau.canonical_key


# ---------------------------------------------------------------------------
# JSON interface


def parse_preorder(data):
    """Parse the JSON preorder format.

    Element names are arbitrary strings; numeric labels 1..n are assigned in
    lexicographic element-name order.  Returns (preorder, element_names) where
    element_names[label-1] is the original name.
    """
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    vdefs = data.get("vertices")
    if not isinstance(vdefs, list) or not vdefs:
        raise SchemaError('"vertices" must be a nonempty array')
    ids = []
    element_lists = []
    for entry in vdefs:
        if not isinstance(entry, dict) or "id" not in entry or "elements" not in entry:
            raise SchemaError('each vertex needs "id" and "elements"')
        vid = entry["id"]
        elems = entry["elements"]
        if not isinstance(vid, str) or not isinstance(elems, list) or not elems:
            raise SchemaError(f"bad vertex entry {entry!r}")
        if any(not isinstance(e, str) for e in elems):
            raise SchemaError("element names must be strings")
        if vid in ids:
            raise SchemaError(f"duplicate vertex id {vid!r}")
        ids.append(vid)
        element_lists.append(elems)
    all_names = [e for elems in element_lists for e in elems]
    if len(set(all_names)) != len(all_names):
        raise OverlapError("element names must be distinct")
    names = sorted(all_names)
    label = {name: i + 1 for i, name in enumerate(names)}
    sets = [tuple(label[e] for e in elems) for elems in element_lists]
    pairs = []
    rels = data.get("relations", [])
    if not isinstance(rels, list):
        raise SchemaError('"relations" must be an array')
    vindex = {vid: i for i, vid in enumerate(ids)}
    for pair in rels:
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"bad relation entry {pair!r}")
        a, b = pair
        if a not in vindex or b not in vindex:
            raise SchemaError(f"relation references unknown vertex {pair!r}")
        pairs.append((vindex[a], vindex[b]))
    return build_preorder(sets, pairs), tuple(names)


def load_preorder(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    return parse_preorder(data)


def preorder_to_json(tau, element_names=None):
    """Dump to the JSON preorder format, with cover pairs as relations."""
    if element_names is None:
        width = len(str(tau.n))
        element_names = tuple(f"e{e:0{width}d}" for e in range(1, tau.n + 1))
    vertices = [
        {"id": f"V{i + 1}", "elements": [element_names[e - 1] for e in v]}
        for i, v in enumerate(tau.vertices)
    ]
    relations = [[f"V{i + 1}", f"V{j + 1}"] for i, j in tau.covers]
    return {"vertices": vertices, "relations": relations}
