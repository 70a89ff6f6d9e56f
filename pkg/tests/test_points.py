import pytest

from preorder_polytopes.errors import PointNotInPoset, PrecondError
from preorder_polytopes.points import (
    count_points,
    cover_count,
    cover_count_adjacent,
    enumerate_points,
    h_vector,
    maximal_elements,
    multichain_count,
    points_csv,
    upper_boundary_complement,
)
from preorder_polytopes.preorder import (
    build_preorder,
    combine,
    dual,
    order_ideals,
    preorder_from_sizes,
)


def antichain(n):
    return build_preorder([(e,) for e in range(1, n + 1)], [])


def chain2():
    return build_preorder([(1,), (2,)], [(0, 1)])


class TestEnumerate:
    def test_sample_count(self, sample5):
        assert len(enumerate_points(sample5, 1, 0)) == 92

    def test_cube(self):
        for n in (1, 2, 3, 4):
            P = enumerate_points(antichain(n), 1, 0)
            assert len(P) == 2**n
            assert set(P.points) == {
                tuple((m >> i) & 1 for i in range(n)) for m in range(2**n)
            }

    def test_sample_budget_one(self, sample5):
        assert len(enumerate_points(sample5, 1, 1)) == 234

    def test_zero_dilate(self, sample5):
        P = enumerate_points(sample5, 0, 0)
        assert P.points == ((0, 0, 0, 0, 0),)

    def test_lex_sorted_dedup(self, sample5):
        P = enumerate_points(sample5, 1, 0)
        assert list(P.points) == sorted(set(P.points))

    def test_count_matches_enumerate(self, sample5, classes_by_size):
        for tau in classes_by_size[3] + [sample5]:
            for r, s in [(1, 0), (2, 0), (1, 1), (0, 1), (2, 1)]:
                assert count_points(tau, r, s) == len(enumerate_points(tau, r, s))

    def test_all_ideals_respected(self, classes_by_size):
        # postcondition quantified over every ideal, not just the pruning set
        for tau in classes_by_size[4]:
            fam = order_ideals(tau)
            cons = fam.nonempty()
            for r, s in [(1, 0), (1, 1)]:
                for p in enumerate_points(tau, r, s).points:
                    for mask, size in cons:
                        total = sum(p[e] for e in range(tau.n) if mask >> e & 1)
                        assert total <= r * size + s

    def test_disconnected_budgets_matter_when_shifted(self):
        # ideal {1,2} of the 2-antichain is disconnected but its budget
        # binds as soon as s > 0
        P = enumerate_points(antichain(2), 0, 1)
        assert set(P.points) == {(0, 0), (1, 0), (0, 1)}

    def test_negative_parameters(self, sample5):
        with pytest.raises(PrecondError):
            enumerate_points(sample5, -1, 0)


class TestHVector:
    def test_sample(self, sample5):
        assert h_vector(enumerate_points(sample5, 1, 0)) == [1, 11, 34, 34, 11, 1]

    def test_square(self):
        assert h_vector(enumerate_points(antichain(2), 1, 0)) == [1, 2, 1]

    def test_doubleton_vertex(self):
        tau = preorder_from_sizes((2,), (1,))
        assert h_vector(enumerate_points(tau, 1, 0)) == [1, 4, 1]

    def test_context_guard(self, sample5):
        with pytest.raises(PrecondError):
            h_vector(enumerate_points(sample5, 1, 1))


class TestMaximal:
    def test_sample(self, sample5):
        assert len(maximal_elements(enumerate_points(sample5, 1, 0))) == 18

    def test_square(self):
        assert maximal_elements(enumerate_points(antichain(2), 1, 0)) == [(1, 1)]

    def test_chain_brute_force(self):
        P = enumerate_points(chain2(), 1, 0)
        assert set(P.points) == {(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)}
        assert set(maximal_elements(P)) == {(1, 1), (0, 2)}

    def test_maximal_points_have_full_rank(self, sample5, classes_by_size):
        for tau in classes_by_size[4] + [sample5]:
            P = enumerate_points(tau, 1, 0)
            assert all(sum(p) == tau.n for p in maximal_elements(P))


class TestUpperBoundary:
    def test_square(self):
        P = enumerate_points(antichain(2), 1, 0)
        assert upper_boundary_complement(P) == [(0, 0)]

    def test_chain(self):
        P = enumerate_points(chain2(), 1, 0)
        assert set(upper_boundary_complement(P)) == {(0, 0), (0, 1)}

    def test_interior_of_double_dilate(self, sample5, classes_by_size):
        # strict-point count equals the interior count of the doubled polytope,
        # via the all-ones translation
        for tau in classes_by_size[3] + [sample5]:
            fam = order_ideals(tau)
            cons = fam.nonempty()
            interior = 0
            for p in enumerate_points(tau, 2, 0).points:
                if any(c < 1 for c in p):
                    continue
                if all(
                    sum(p[e] for e in range(tau.n) if mask >> e & 1) < 2 * size
                    for mask, size in cons
                ):
                    interior += 1
            assert interior == len(upper_boundary_complement(enumerate_points(tau, 1, 0)))


class TestCovers:
    def test_zero_point(self, sample5):
        P = enumerate_points(sample5, 1, 0)
        assert cover_count(P, (0, 0, 0, 0, 0)) == 0

    def test_square_corner(self):
        P = enumerate_points(antichain(2), 1, 0)
        assert cover_count(P, (1, 1)) == 2

    def test_missing_point(self):
        P = enumerate_points(antichain(2), 1, 0)
        with pytest.raises(PointNotInPoset):
            cover_count(P, (2, 2))

    def test_matches_adjacency(self, classes_by_size):
        for tau in classes_by_size[4]:
            P = enumerate_points(tau, 1, 0)
            for p in P.points:
                assert cover_count(P, p) == cover_count_adjacent(P, p)


class TestMultichains:
    def test_empty_chain(self, sample5):
        P = enumerate_points(sample5, 1, 0)
        assert multichain_count(P, 0) == 1

    def test_two_element_chain(self):
        P = enumerate_points(build_preorder([(1,)], []), 1, 0)  # points 0, 1
        for k in range(6):
            assert multichain_count(P, k) == k + 1

    def test_one_chains_count_points(self, sample5):
        P = enumerate_points(sample5, 1, 0)
        assert multichain_count(P, 1) == 92

    def test_against_bruteforce(self, classes_by_size):
        import itertools

        for tau in classes_by_size[2]:
            P = enumerate_points(tau, 1, 0)
            for k in (1, 2, 3):
                brute = sum(
                    1
                    for combo in itertools.product(P.points, repeat=k)
                    if all(P.leq(combo[i], combo[i + 1]) for i in range(k - 1))
                )
                assert multichain_count(P, k) == brute


class TestStructure:
    def test_downward_closure(self, sample5, classes_by_size):
        for tau in classes_by_size[4] + [sample5]:
            P = enumerate_points(tau, 1, 0)
            for p in P.points:
                for e in range(tau.n):
                    if p[e]:
                        assert p[:e] + (p[e] - 1,) + p[e + 1 :] in P

    def test_product_law(self, classes_by_size):
        for n1 in (1, 2):
            for n2 in (1, 2):
                for t1 in classes_by_size[n1]:
                    for t2 in classes_by_size[n2]:
                        tau = combine("disjoint_union", t1, t2)
                        P = set(enumerate_points(tau, 1, 0).points)
                        P1 = enumerate_points(t1, 1, 0).points
                        P2 = enumerate_points(t2, 1, 0).points
                        assert P == {a + b for a in P1 for b in P2}

    def test_dual_counts_match(self, sample5, classes_by_size):
        for tau in classes_by_size[4] + [sample5]:
            assert count_points(tau, 1, 0) == count_points(dual(tau), 1, 0)

    def test_csv_dump(self):
        P = enumerate_points(antichain(2), 1, 0)
        text = points_csv(P)
        lines = text.strip().splitlines()
        assert lines[0] == "x_1,x_2,rank,is_maximal"
        assert len(lines) == 5
        assert "1,1,2,1" in lines
