from fractions import Fraction as F
from math import factorial

import pytest

from preorder_polytopes.errors import BadParameters
from preorder_polytopes.ehrhart import (
    DEFAULT_Q_SAMPLES,
    double_ehrhart,
    double_reciprocity_check,
    ehrhart_dual_formula,
    ehrhart_interpolation,
    ehrhart_record,
    nabla_block,
    normalized_volume,
    qzeta_check,
    qzeta_sides,
    zeta_polynomial,
)
from preorder_polytopes.points import count_points, enumerate_points
from preorder_polytopes.polynomials import UniPoly, binom_in_t
from preorder_polytopes.preorder import build_preorder, dual, preorder_from_sizes

SAMPLE_EHR = [F(c, 120) for c in (120, 900, 2660, 3860, 2740, 760)]
SAMPLE_EHR_11 = [F(c, 120) for c in (120, 1174, 4645, 9240, 9215, 3686)]


def antichain(n):
    return build_preorder([(e,) for e in range(1, n + 1)], [])


def single(n=1):
    return preorder_from_sizes((n,), (1,))


class TestDualFormula:
    def test_square(self):
        assert ehrhart_dual_formula(antichain(2)) == UniPoly([1, 2, 1])

    def test_sample(self, sample5):
        assert list(ehrhart_dual_formula(sample5).coeffs) == SAMPLE_EHR

    def test_single_element(self):
        assert ehrhart_dual_formula(single()) == UniPoly([1, 1])

    def test_coefficients_nonnegative(self, classes_by_size):
        for tau in classes_by_size[4]:
            assert all(c >= 0 for c in ehrhart_dual_formula(tau).coeffs)


class TestInterpolationRoute:
    def test_doubleton_vertex(self):
        # counts 1, 6, 15 at m = 0, 1, 2 hit C(2m+2, 2)
        tau = single(2)
        assert [count_points(tau, m, 0) for m in range(3)] == [1, 6, 15]
        assert ehrhart_interpolation(tau, 1, 0) == UniPoly([1, 3, 2])

    def test_sample_budget_one(self, sample5):
        assert list(ehrhart_interpolation(sample5, 1, 1).coeffs) == SAMPLE_EHR_11

    def test_simplex(self, sample5, classes_by_size):
        for tau in classes_by_size[3] + [sample5]:
            n = tau.n
            assert ehrhart_interpolation(tau, 0, 1) == binom_in_t(n, n)

    def test_degenerate_rejected(self, sample5):
        with pytest.raises(BadParameters):
            ehrhart_interpolation(sample5, 0, 0)

    def test_route_agreement(self, sample5, classes_by_size):
        for tau in classes_by_size[4] + [sample5]:
            assert ehrhart_dual_formula(tau) == ehrhart_interpolation(tau, 1, 0)


class TestRecord:
    def test_sample_record(self, sample5):
        rec = ehrhart_record(sample5)
        assert rec.normalized_volume == 760
        assert sum(rec.hstar.int_coeffs()) == 760
        assert rec.ehr(1) == 92

    def test_routes(self, sample5):
        a = ehrhart_record(sample5, "dual_formula")
        b = ehrhart_record(sample5, "interpolation")
        assert a.ehr == b.ehr and a.hstar == b.hstar


class TestZeta:
    def test_two_chain(self):
        P = enumerate_points(single(), 1, 0)
        assert zeta_polynomial(P) == UniPoly([0, 1])

    def test_sample_minus_one(self, sample5):
        z = zeta_polynomial(enumerate_points(sample5, 1, 0))
        assert z(-1) == -18

    def test_duality_with_ehrhart(self, sample5, classes_by_size):
        for tau in classes_by_size[4] + [sample5]:
            z = zeta_polynomial(enumerate_points(dual(tau), 1, 0))
            assert ehrhart_dual_formula(tau) == z.compose(UniPoly([1, 1]))

    def test_leading_coefficient_counts_maximal_chains(self, sample5):
        # degree-n coefficient times n! equals the admissible word count
        from preorder_polytopes.words import word_count

        z = zeta_polynomial(enumerate_points(dual(sample5), 1, 0))
        assert z.leading() * factorial(5) == word_count(sample5)


class TestQZeta:
    def test_single_element(self):
        for q in DEFAULT_Q_SAMPLES:
            lhs, rhs = qzeta_sides(single(), q)
            assert lhs == rhs == -1 / F(q)

    def test_square(self):
        for q in DEFAULT_Q_SAMPLES:
            lhs, rhs = qzeta_sides(antichain(2), q)
            assert lhs == rhs == 1 / F(q) ** 2

    def test_sample_closed_form(self, sample5):
        for q in DEFAULT_Q_SAMPLES:
            q = F(q)
            lhs, rhs = qzeta_sides(sample5, q)
            assert lhs == rhs == -(2 * q + 1) * (q * q + 4 * q + 1) / q**5

    def test_check_api(self, sample5):
        assert qzeta_check(sample5)
        assert qzeta_check(sample5, (F(2), F(3)))

    def test_bad_samples(self, sample5):
        with pytest.raises(BadParameters):
            qzeta_check(sample5, (F(1),))
        with pytest.raises(BadParameters):
            qzeta_check(sample5, (F(-2),))
        with pytest.raises(BadParameters):
            qzeta_check(sample5, (F(2), F(2)))


class TestNabla:
    def test_margins(self, classes_by_size):
        for tau in classes_by_size[3]:
            blk = nabla_block(tau, 3, 3)
            assert all(blk.entries[k][0] == 1 for k in range(4))
            assert all(blk.entries[0][l] == 1 for l in range(4))

    def test_first_row_is_ehrhart(self, classes_by_size):
        for tau in classes_by_size[3]:
            blk = nabla_block(tau, 2, 3)
            ehr = ehrhart_dual_formula(tau)
            assert [ehr(l) for l in range(4)] == list(blk.entries[1])

    def test_first_column_is_zeta(self, sample5):
        blk = nabla_block(sample5, 3, 1)
        z = zeta_polynomial(enumerate_points(sample5, 1, 0))
        assert [z(k + 1) for k in range(4)] == [blk.entries[k][1] for k in range(4)]

    def test_transpose_conjecture_small(self, classes_by_size):
        for tau in classes_by_size[3]:
            assert nabla_block(tau, 3, 3).transpose_equal(nabla_block(dual(tau), 3, 3))


class TestDoubleEhrhart:
    def test_sample_display(self, sample5):
        E = double_ehrhart(sample5)
        expected = {
            (5, 0): 760, (4, 1): 1680, (3, 2): 990, (2, 3): 230, (1, 4): 25,
            (0, 5): 1, (4, 0): 2740, (3, 1): 4350, (2, 2): 1830, (1, 3): 280,
            (0, 4): 15, (3, 0): 3860, (2, 1): 4180, (1, 2): 1115, (0, 3): 85,
            (2, 0): 2660, (1, 1): 1760, (0, 2): 225, (1, 0): 900, (0, 1): 274,
            (0, 0): 120,
        }
        for (i, j), num in expected.items():
            assert E.coefficient(i, j) == F(num, 120)

    def test_specialization_to_ehrhart(self, classes_by_size):
        for tau in classes_by_size[4]:
            E = double_ehrhart(tau)
            assert E.eval_second(0) == ehrhart_dual_formula(tau)

    def test_simplex_slice(self, classes_by_size):
        for tau in classes_by_size[3]:
            E = double_ehrhart(tau)
            assert E.eval_first(0) == binom_in_t(tau.n, tau.n)

    def test_diagonal_matches_interpolation(self, sample5, classes_by_size):
        for tau in classes_by_size[3] + [sample5]:
            assert double_ehrhart(tau).diagonal() == ehrhart_interpolation(tau, 1, 1)

    def test_counts_at_small_parameters(self, classes_by_size):
        for tau in classes_by_size[3]:
            E = double_ehrhart(tau)
            for r in range(3):
                for s in range(3):
                    assert E(r, s) == count_points(tau, r, s)


class TestReciprocity:
    def test_single_element_by_hand(self):
        E = double_ehrhart(single())
        # E = 1 + u + v; -(1 - u - v) vs 1 + (u-1) + (v-1): both u + v - 1
        assert E(0, 0) == 1 and E.coefficient(1, 0) == 1 and E.coefficient(0, 1) == 1
        assert double_reciprocity_check(single())

    def test_sample(self, sample5):
        assert double_reciprocity_check(sample5)

    def test_square_bruteforce_interpolation(self):
        from preorder_polytopes.polynomials import interpolate

        tau = antichain(2)
        # independent bivariate build: interpolate counts over a 4x4 grid,
        # row by row in s, then reconstruct coefficients in r
        rows = []
        for r in range(4):
            rows.append(interpolate([(s, count_points(tau, r, s)) for s in range(4)]))
        E = double_ehrhart(tau)
        for r in range(4):
            assert E.eval_first(r) == rows[r]
        assert double_reciprocity_check(tau)


class TestNormalizedVolume:
    def test_sample(self, sample5):
        assert normalized_volume(sample5) == 760

    def test_cube(self):
        for n in (1, 2, 3, 4):
            assert normalized_volume(antichain(n)) == factorial(n)

    def test_simplex_power(self):
        for n in (1, 2, 3, 4):
            assert normalized_volume(single(n)) == n**n


class TestRecordJson:
    def test_schema(self, sample5):
        blob = ehrhart_record(sample5).to_json()
        assert blob["nvol"] == "760"
        assert blob["route"] == "dual_formula"
        assert blob["ehr"][0] == "1" and blob["ehr"][5] == "19/3"
        assert blob["hstar"] == [1, 86, 393, 260, 20, 0]


def bipartite_constrained_sequences(tau):
    """Test oracle: summation domain of the closed Ehrhart formula, enumerated
    straight from the subset-union inequalities of the filter system.

    The system has one part I_e = up(e) + {0} per element e plus a full part
    I_0; a padded sequence (a_0, a) with total n qualifies iff
    1 + sum over any nonempty part-subset A of a is at most |union of I_a|.
    """
    import itertools

    n = tau.n
    voe = tau.vertex_of_element
    ups = []
    for e in range(1, n + 1):
        mask = {0}
        vi = voe[e]
        for j in range(tau.k):
            if tau.leq(vi, j):
                mask.update(tau.vertices[j])
        ups.append(frozenset(mask))
    parts = [frozenset(range(0, n + 1))] + ups  # index 0 is the full part
    out = set()
    for a in itertools.product(range(n + 1), repeat=n + 1):
        if sum(a) != n:
            continue
        ok = True
        for size in range(1, n + 2):
            for sub in itertools.combinations(range(n + 1), size):
                union = set()
                for i in sub:
                    union |= parts[i]
                if 1 + sum(a[i] for i in sub) > len(union):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(a)
    return out


class TestClosedFormDomainOracle:
    def test_matches_dual_points_small(self, classes_by_size):
        for n in (1, 2, 3):
            for tau in classes_by_size[n]:
                oracle = bipartite_constrained_sequences(tau)
                Pd = enumerate_points(dual(tau), 1, 0)
                mine = {(tau.n - sum(p),) + p for p in Pd.points}
                assert mine == oracle


class TestReciprocitySpot:
    def test_negative_two_counts_double_interior(self, classes_by_size):
        from preorder_polytopes.points import upper_boundary_complement

        for n in (1, 2, 3, 4):
            for tau in classes_by_size[n]:
                ehr = ehrhart_dual_formula(tau)
                sign = -1 if tau.n % 2 else 1
                strict = len(upper_boundary_complement(enumerate_points(tau, 1, 0)))
                assert sign * ehr(-2) == strict


class TestDiagnosticCounterexample:
    def test_size9_two_level_family_off_line(self):
        from preorder_polytopes.points import h_vector
        from preorder_polytopes.polynomials import (
            coefficient_polynomial,
            roots_on_critical_line,
        )

        # four doubleton vertices under a common maximum: smallest known
        # instance whose coefficient polynomial leaves the Re = -1/2 line
        tau = build_preorder(
            [(1, 2), (3, 4), (5, 6), (7, 8), (9,)], [(0, 4), (1, 4), (2, 4), (3, 4)]
        )
        h = h_vector(enumerate_points(tau, 1, 0))
        assert h == [1, 25, 220, 908, 1870, 1870, 908, 220, 25, 1]
        assert not roots_on_critical_line(coefficient_polynomial(h), 1e-9)
