import itertools
import json

import pytest

from preorder_polytopes.errors import (
    BadParameters,
    CycleError,
    OverlapError,
    SchemaError,
    SizeLimit,
)
from preorder_polytopes.preorder import (
    build_preorder,
    combine,
    dual,
    enumerate_preorders,
    order_ideals,
    ordinal_split,
    parse_preorder,
    preorder_from_sizes,
    preorder_to_json,
    relabel_elements,
    restrict,
)


def antichain(n):
    return build_preorder([(e,) for e in range(1, n + 1)], [])


def singleton_chain(n):
    return build_preorder(
        [(e,) for e in range(1, n + 1)], [(i, i + 1) for i in range(n - 1)]
    )


class TestBuild:
    def test_sample_shape(self, sample5):
        assert sample5.n == 5
        assert sample5.k == 4
        assert sample5.vertices == ((1, 3), (2,), (4,), (5,))

    def test_antichain(self):
        tau = antichain(3)
        assert tau.covers == ()
        assert all(tau.up[i] == 1 << i for i in range(3))

    def test_transitive_closure_idempotent(self):
        a = build_preorder([(1,), (2,), (3,)], [(0, 1), (1, 2), (0, 2)])
        b = build_preorder([(1,), (2,), (3,)], [(0, 1), (1, 2)])
        assert a == b
        assert a.covers == ((0, 1), (1, 2))

    def test_overlap_errors(self):
        with pytest.raises(OverlapError):
            build_preorder([(1, 2), (2, 3)], [])
        with pytest.raises(OverlapError):
            build_preorder([(1,), (3,)], [])  # gap: not a partition of 1..n
        with pytest.raises(OverlapError):
            build_preorder([], [])

    def test_cycle_error(self):
        with pytest.raises(CycleError):
            build_preorder([(1,), (2,)], [(0, 1), (1, 0)])
        with pytest.raises(CycleError):
            build_preorder([(1,), (2,), (3,)], [(0, 1), (1, 2), (2, 0)])

    def test_bad_pair_index(self):
        with pytest.raises(BadParameters):
            build_preorder([(1,), (2,)], [(0, 5)])


class TestIdeals:
    def test_antichain_all_subsets(self):
        fam = order_ideals(antichain(3))
        assert len(fam) == 8

    def test_chain_ideals(self):
        fam = order_ideals(singleton_chain(3))
        assert list(fam.masks) == [0b000, 0b001, 0b011, 0b111]

    def test_sample_connected_members(self, sample5):
        fam = order_ideals(sample5)
        connected = {
            m for m, c, s in zip(fam.masks, fam.connected, fam.sizes) if c and s
        }
        # element sets {a,c}, {b}, {b,d}, {a,b,c,e}, {a,b,c,d,e} as bitmasks
        assert connected == {0b00101, 0b00010, 0b01010, 0b10111, 0b11111}

    def test_union_intersection_closed(self, classes_by_size):
        for tau in classes_by_size[4]:
            masks = set(order_ideals(tau).masks)
            for a in masks:
                for b in masks:
                    assert a | b in masks and a & b in masks

    def test_contains_empty_and_full(self, sample5):
        fam = order_ideals(sample5)
        assert 0 in fam.masks and (1 << sample5.n) - 1 in fam.masks


class TestDual:
    def test_antichain_self_dual(self):
        tau = antichain(4)
        assert dual(tau) == tau

    def test_chain_reversal(self):
        tau = singleton_chain(3)
        d = dual(tau)
        assert d.covers == ((1, 0), (2, 1))

    def test_involution_identical(self, sample5, classes_by_size):
        assert dual(dual(sample5)) == sample5
        for tau in classes_by_size[4]:
            assert dual(dual(tau)) == tau

    def test_ideals_complement(self, sample5):
        full = (1 << sample5.n) - 1
        mine = set(order_ideals(sample5).masks)
        theirs = set(order_ideals(dual(sample5)).masks)
        assert theirs == {full ^ m for m in mine}

    def test_ideal_count_matches_dual(self, classes_by_size):
        for n in (3, 4):
            for tau in classes_by_size[n]:
                assert len(order_ideals(tau)) == len(order_ideals(dual(tau)))


class TestCombine:
    def test_disjoint_union_of_singles(self):
        tau = combine("disjoint_union", antichain(1), antichain(1))
        assert tau == antichain(2)

    def test_ordinal_sum_gives_two_layer(self):
        tau = combine("ordinal_sum", antichain(2), antichain(3))
        assert tau.n == 5
        assert all(tau.leq(i, j) for i in (0, 1) for j in (2, 3, 4))
        assert not tau.leq(2, 3)

    def test_iterated_ordinal_sum_is_chain(self):
        tau = antichain(1)
        for _ in range(3):
            tau = combine("ordinal_sum", tau, antichain(1))
        assert tau.canonical_key == singleton_chain(4).canonical_key

    def test_unknown_kind(self):
        with pytest.raises(BadParameters):
            combine("product", antichain(1), antichain(1))


class TestCanonicalKey:
    def test_relabeling_equal(self):
        a = singleton_chain(2)
        b = build_preorder([(1,), (2,)], [(1, 0)])  # 2 below 1
        assert a.canonical_key == b.canonical_key

    def test_chain_vs_antichain_distinct(self):
        assert singleton_chain(2).canonical_key != antichain(2).canonical_key

    def test_double_dual_key(self, sample5):
        assert dual(dual(sample5)).canonical_key == sample5.canonical_key

    def test_key_separates_size3(self):
        keys = {tau.canonical_key for tau in enumerate_preorders(3)}
        assert len(keys) == 9


def _labeled_preorder_classes(n):
    """Brute-force oracle: all reflexive-transitive relations on n labeled
    points, condensed to preorders, counted up to isomorphism."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    labeled = 0
    keys = set()
    for bits in range(1 << len(pairs)):
        rel = [[i == j for j in range(n)] for i in range(n)]
        for idx, (i, j) in enumerate(pairs):
            if bits >> idx & 1:
                rel[i][j] = True
        if any(
            rel[i][k] and rel[k][j] and not rel[i][j]
            for i in range(n)
            for j in range(n)
            for k in range(n)
        ):
            continue
        labeled += 1
        # condense mutually related points into vertices
        cls = {}
        for i in range(n):
            root = next(j for j in range(n) if rel[i][j] and rel[j][i])
            cls.setdefault(root, []).append(i + 1)
        roots = sorted(cls)
        vpairs = [
            (a, b)
            for a, ra in enumerate(roots)
            for b, rb in enumerate(roots)
            if a != b and rel[ra][rb]
        ]
        tau = build_preorder([tuple(cls[r]) for r in roots], vpairs)
        keys.add(tau.canonical_key)
    return labeled, keys


class TestEnumerate:
    def test_small_counts(self):
        assert len(enumerate_preorders(1)) == 1
        assert len(enumerate_preorders(2)) == 2 + 1
        assert len(enumerate_preorders(3)) == 9

    def test_size2_contents(self):
        keys = {tau.canonical_key for tau in enumerate_preorders(2)}
        expected = {
            antichain(2).canonical_key,
            singleton_chain(2).canonical_key,
            preorder_from_sizes((2,), (1,)).canonical_key,
        }
        assert keys == expected

    @pytest.mark.parametrize("n,labeled", [(1, 1), (2, 4), (3, 29), (4, 355)])
    def test_against_labeled_oracle(self, n, labeled):
        count, keys = _labeled_preorder_classes(n)
        assert count == labeled
        mine = {tau.canonical_key for tau in enumerate_preorders(n)}
        assert mine == keys

    def test_size5_class_count(self):
        assert len(enumerate_preorders(5)) == 139

    def test_size_limit(self):
        with pytest.raises(SizeLimit):
            enumerate_preorders(8)
        with pytest.raises(BadParameters):
            enumerate_preorders(0)

    def test_deterministic(self):
        a = [t.canonical_key for t in enumerate_preorders(4)]
        b = [t.canonical_key for t in enumerate_preorders(4)]
        assert a == b == sorted(a)


class TestHelpers:
    def test_restrict(self):
        tau = combine("ordinal_sum", antichain(2), antichain(1))
        split = ordinal_split(tau)
        assert split is not None
        lower, upper = split
        assert restrict(tau, lower).canonical_key == antichain(2).canonical_key
        assert restrict(tau, upper).canonical_key == antichain(1).canonical_key

    def test_no_split_for_antichain(self):
        assert ordinal_split(antichain(3)) is None

    def test_relabel_preserves_key(self, sample5):
        for perm in itertools.islice(itertools.permutations(range(1, 6)), 6):
            relabeled = relabel_elements(sample5, (0,) + perm)
            assert relabeled.canonical_key == sample5.canonical_key


SAMPLE_JSON = {
    "vertices": [
        {"id": "V1", "elements": ["a", "c"]},
        {"id": "V2", "elements": ["b"]},
        {"id": "V3", "elements": ["d"]},
        {"id": "V4", "elements": ["e"]},
    ],
    "relations": [["V1", "V4"], ["V2", "V4"], ["V2", "V3"]],
}


class TestJson:
    def test_parse_sample(self, sample5):
        tau, names = parse_preorder(SAMPLE_JSON)
        assert names == ("a", "b", "c", "d", "e")
        assert tau == sample5

    def test_roundtrip(self, sample5):
        blob = preorder_to_json(sample5)
        tau, _ = parse_preorder(json.loads(json.dumps(blob)))
        assert tau == sample5

    def test_schema_errors(self):
        with pytest.raises(SchemaError):
            parse_preorder([])
        with pytest.raises(SchemaError):
            parse_preorder({"vertices": []})
        with pytest.raises(SchemaError):
            parse_preorder(
                {"vertices": [{"id": "V1", "elements": ["a"]}], "relations": [["V1", "V9"]]}
            )
        with pytest.raises(OverlapError):
            parse_preorder(
                {
                    "vertices": [
                        {"id": "V1", "elements": ["a"]},
                        {"id": "V2", "elements": ["a"]},
                    ],
                    "relations": [],
                }
            )
