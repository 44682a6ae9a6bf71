import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domcount.bounds import (
    EQUALITY,
    FAILS,
    HOLDS,
    HOLDS_NUMERIC,
    NOT_APPLICABLE,
    builtin_conditions,
    check_background_bounds,
    check_ds_bound,
    check_fomin,
    check_galvin_tetali,
    check_kahn_zhao,
    check_legal_bounds,
    check_moon_moser,
    check_polynomial_bounds,
    check_power_inequality,
    check_prorain_bounds,
    cycle_extremal_check,
    cycle_extremal_sweep,
    ds_bound_sweep,
    entropy_bits,
    labeled_cycle_type_count,
    legal_bound_sweep,
    moon_moser_bound,
    partitions_min,
    shearer_report,
    tree_extremal_sweep,
    two_regular_classes,
)
from domcount.conditions import Activation, ColoringCondition
from domcount.counting import ImageGraph, count_dominating_sets
from domcount.errors import GraphError, NotRegularError
from domcount.graph import (
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    empty,
    enumerate_labeled_regular,
    hypercube,
    path,
    petersen,
    star,
)

H_IND = ImageGraph.h_ind()


class TestPowerInequality:
    def test_verdicts(self):
        assert check_power_inequality(7, 3, 7, 3).verdict == EQUALITY
        assert check_power_inequality(11, 3, 7, 4).verdict == HOLDS
        assert check_power_inequality(8, 1, 2, 2).verdict == FAILS

    def test_fractions_are_exact(self):
        r = check_power_inequality(Fraction(1, 3), 3, Fraction(1, 27), 1)
        assert r.verdict == EQUALITY and r.to_record()["lhs"] == "1/27"

    def test_bad_exponent(self):
        with pytest.raises(ValueError):
            check_power_inequality(2, 0, 3, 1)

    @given(st.integers(0, 50), st.integers(1, 6), st.integers(0, 50), st.integers(1, 6))
    def test_recheck_reproduces(self, a, p, b, q):
        r = check_power_inequality(a, p, b, q)
        assert r.recheck() == r.verdict
        assert (r.verdict == FAILS) == (a**p > b**q)


class TestDsBound:
    def test_c4(self):
        r = check_ds_bound(cycle(4))
        assert (r.lhs, r.rhs, r.verdict) == (1331, 2401, HOLDS)

    @pytest.mark.parametrize("r", range(0, 6))
    def test_clique_equality(self, r):
        assert check_ds_bound(complete(r + 1)).verdict == EQUALITY
        assert check_ds_bound(disjoint_union(complete(r + 1), complete(r + 1))).verdict == EQUALITY

    def test_irregular_rejected(self):
        with pytest.raises(NotRegularError):
            check_ds_bound(path(3))
        with pytest.raises(NotRegularError):
            check_legal_bounds(star(3), ColoringCondition.proper(2))

    def test_small_sweep(self):
        s = ds_bound_sweep(max_n=6, max_r=3)
        assert not s.violations and s.details["equality_iff_clique_union"]
        assert s.equalities > 0


class TestLegalBounds:
    def test_empty_graph_open_not_applicable(self):
        open_r, closed_r = check_legal_bounds(empty(3), ColoringCondition.dominating())
        assert open_r.verdict == NOT_APPLICABLE
        assert closed_r.verdict == EQUALITY

    def test_unit_weights_match_unweighted(self):
        for G in (cycle(5), petersen(), hypercube(3)):
            for cond in builtin_conditions():
                plain = check_legal_bounds(G, cond)
                weighted = check_legal_bounds(G, cond, Activation.ones(cond.k))
                assert [r.verdict for r in plain] == [r.verdict for r in weighted]
                assert [r.lhs for r in plain] == [r.lhs for r in weighted]

    def test_weighted_clique_equality(self):
        lam = Activation.parse("2/3,7/5")
        _, closed = check_legal_bounds(complete(4), ColoringCondition.dominating(), lam)
        assert closed.verdict == EQUALITY

    def test_biclique_open_equality(self):
        open_r, _ = check_legal_bounds(complete_bipartite(3, 3), ColoringCondition.dominating())
        assert open_r.verdict == EQUALITY


class TestPolynomialBounds:
    @pytest.mark.parametrize("mu", [Fraction(1), Fraction(1, 2), Fraction(7, 3)])
    def test_extremal_cases(self, mu):
        closed, _ = check_polynomial_bounds(complete(3), mu)
        assert closed.verdict == EQUALITY
        _, strong = check_polynomial_bounds(complete_bipartite(2, 2), mu)
        assert strong.verdict == EQUALITY

    def test_c6_strong(self):
        _, strong = check_polynomial_bounds(cycle(6), 1)
        assert strong.lhs_base == count_dominating_sets(cycle(6), strong=True)
        assert (strong.lhs_exp, strong.rhs_base, strong.rhs_exp) == (4, 9, 6)
        assert strong.verdict == HOLDS


class TestProrain:
    def test_k3_two_colors(self):
        reps = {r.name: r for r in check_prorain_bounds(complete(3), 2)}
        assert reps["proper-closed"].verdict == EQUALITY
        assert reps["proper-closed"].rhs_base == 6

    def test_c5_one_color(self):
        reps = {r.name: r for r in check_prorain_bounds(cycle(5), 1)}
        rc = reps["rainbow-closed"]
        assert (rc.lhs_base, rc.rhs_base, rc.verdict) == (0, 0, EQUALITY)

    def test_c6_three_colors(self):
        reps = check_prorain_bounds(cycle(6), 3)
        assert len(reps) == 4 and all(r.verdict in (HOLDS, EQUALITY) for r in reps)


class TestBackground:
    def test_moon_moser_values(self):
        assert [moon_moser_bound(n) for n in range(2, 10)] == [2, 3, 4, 6, 9, 12, 18, 27]
        two_triangles = disjoint_union(complete(3), complete(3))
        assert check_moon_moser(two_triangles).verdict == EQUALITY
        assert check_moon_moser(empty(1)).verdict == NOT_APPLICABLE

    def test_kahn_zhao(self):
        assert check_kahn_zhao(cycle(4)).verdict == EQUALITY
        assert check_kahn_zhao(cycle(5)).verdict == HOLDS
        assert check_kahn_zhao(path(3)).verdict == NOT_APPLICABLE

    def test_galvin_tetali(self):
        assert check_galvin_tetali(cycle(4), H_IND).verdict == EQUALITY
        assert check_galvin_tetali(cycle(6), H_IND).verdict == HOLDS
        w = check_galvin_tetali(hypercube(3), ImageGraph.complete(3), Activation.parse("1,2,1/2"))
        assert w.verdict == HOLDS and w.name.endswith("weighted")
        assert check_galvin_tetali(cycle(5), H_IND).verdict == NOT_APPLICABLE

    def test_fomin(self):
        r = check_fomin(cycle(4))
        assert r.verdict == HOLDS_NUMERIC and r.lhs_base == 6
        assert float(r.margin) == pytest.approx(4 * math.log(1.7159) - math.log(6))

    def test_bundle(self):
        names = [r.name for r in check_background_bounds(cycle(4), H_IND, Activation.parse("1,3"))]
        assert names == ["moon-moser", "kahn-zhao", "galvin-tetali", "galvin-tetali-weighted", "fomin"]


class TestCycleExtremal:
    def test_c6_equality(self):
        assert cycle_extremal_check(cycle(6)).verdict == EQUALITY

    def test_two_triangles(self):
        r = cycle_extremal_check(disjoint_union(cycle(3), cycle(3)))
        assert r.lhs_base == 4 and r.lhs == 4096 and r.rhs == 20**6 and r.verdict == HOLDS

    def test_c12(self):
        r = cycle_extremal_check(cycle(12))
        assert r.lhs_base == 324 and r.verdict == HOLDS

    def test_sweep(self):
        s = cycle_extremal_sweep(12)
        assert not s.violations
        # equality exactly on unions of hexagons
        assert s.equalities == 2

    def test_requires_two_regular(self):
        with pytest.raises(NotRegularError):
            cycle_extremal_check(complete(4))


class TestShearer:
    def test_k3_tight(self):
        rep = shearer_report(complete(3))
        assert rep.k == 3 and rep.family_size == 7
        assert abs(rep.slack) < 1e-12

    def test_c4(self):
        rep = shearer_report(cycle(4))
        assert rep.total_entropy == pytest.approx(math.log2(11))
        assert rep.holds

    def test_p3_cover_multiplicity(self):
        assert shearer_report(path(3)).k == 2

    def test_condition_family(self):
        rep = shearer_report(cycle(5), ColoringCondition.proper(3), "open")
        assert rep.holds and rep.k == 2

    def test_strong_isolated_vertex(self):
        with pytest.raises((GraphError, ValueError)):
            shearer_report(disjoint_union(complete(2), empty(1)), "strong_dominating", "open")

    def test_entropy_bits(self):
        assert entropy_bits([1, 1, 1, 1]) == pytest.approx(2)
        assert entropy_bits([5]) == 0


class TestTrees:
    def test_n4(self):
        rep = tree_extremal_sweep(4)
        assert (rep.trees, rep.equality_count, rep.path_count) == (16, 12, 12)
        assert rep.equality_exactly_on_paths and not rep.violations

    def test_n2(self):
        rep = tree_extremal_sweep(2)
        assert rep.trees == 1 and rep.bound == 2 and rep.equality_exactly_on_paths

    def test_rejects_n1(self):
        with pytest.raises(GraphError):
            tree_extremal_sweep(1)


class TestTwoRegularClasses:
    def test_partitions(self):
        assert list(partitions_min(9)) == [(9,), (6, 3), (5, 4), (3, 3, 3)]
        assert list(partitions_min(5)) == [(5,)]

    @pytest.mark.parametrize("n", range(3, 9))
    def test_multiplicity_matches_enumeration(self, n):
        seen = Counter()
        for G in enumerate_labeled_regular(n, 2):
            seen[tuple(sorted(c.bit_count() for c in G.components()))] += 1
        expected = {tuple(sorted(lengths)): mult for lengths, _, mult in two_regular_classes(n)}
        assert dict(seen) == expected

    def test_known_totals(self):
        totals = [sum(m for *_, m in two_regular_classes(n)) for n in range(3, 13)]
        assert totals[:7] == [1, 3, 12, 70, 465, 3507, 30016]
        assert labeled_cycle_type_count((3, 3)) == 10

    def test_labeled_walk_agrees(self):
        a = legal_bound_sweep(7, labeled=True)
        b = legal_bound_sweep(7, labeled=False)
        assert (a.instances, a.equalities, len(a.violations)) == (b.instances, b.equalities, len(b.violations))
        assert a.details["graphs"] == b.details["graphs"]
