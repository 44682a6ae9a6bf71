import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from domcount.conditions import (
    Activation,
    ColoringCondition,
    blowup,
    compositions,
    legal_function_count,
    load_activation,
    load_condition,
    multinomial,
    weighted_legal_function_count,
)
from domcount.errors import ConditionError

from oracles import functions_with_legal_image


def builtins(k):
    conds = [ColoringCondition.proper(k), ColoringCondition.rainbow(k)]
    if k >= 2:
        conds += [ColoringCondition.dominating(k), ColoringCondition.at_least(k, 1, 2)]
    return conds


class TestMultinomial:
    def test_worked_example(self):
        assert multinomial(5, (2, 2, 1)) == 30

    def test_single_color(self):
        assert multinomial(7, (0, 7, 0)) == 1

    def test_two_two(self):
        assert multinomial(4, (2, 2)) == 6

    def test_mismatch(self):
        with pytest.raises(ConditionError):
            multinomial(3, (1, 1))

    @given(st.integers(0, 6), st.integers(1, 4))
    def test_sums_to_power(self, r, k):
        assert sum(multinomial(r, ms) for ms in compositions(r, k)) == k**r


class TestLegalFunctionCount:
    def test_dominating(self):
        assert legal_function_count(3, ColoringCondition.dominating()) == 7

    @pytest.mark.parametrize("q", range(1, 7))
    def test_rainbow_pairs(self, q):
        assert legal_function_count(2, ColoringCondition.rainbow(q)) == q * (q - 1)

    def test_proper_two_colors(self):
        assert legal_function_count(3, ColoringCondition.proper(2)) == 6

    @pytest.mark.parametrize("k", [1, 2, 3])
    @pytest.mark.parametrize("r", range(0, 6))
    def test_brute_force_equivalence(self, r, k):
        for cond in builtins(k):
            assert legal_function_count(r, cond) == functions_with_legal_image(r, k, cond.accepts)

    def test_empty_family(self):
        cond = ColoringCondition.explicit(2, [])
        assert all(legal_function_count(r, cond) == 0 for r in range(4))

    def test_empty_multiset_only(self):
        cond = ColoringCondition.explicit(2, [(0, 0)])
        assert legal_function_count(0, cond) == 1
        assert legal_function_count(1, cond) == 0

    def test_monotone_in_family(self):
        small = ColoringCondition.at_least(2, 1, 2)
        big = ColoringCondition.dominating()
        for r in range(6):
            assert legal_function_count(r, small) <= legal_function_count(r, big)

    @given(st.integers(1, 3), st.integers(0, 4), st.data())
    def test_monotone_explicit(self, k, r, data):
        family = list(compositions(r, k))
        sub = data.draw(st.lists(st.sampled_from(family), unique=True))
        extra = data.draw(st.lists(st.sampled_from(family), unique=True))
        a = ColoringCondition.explicit(k, sub)
        b = ColoringCondition.explicit(k, sub + extra)
        assert legal_function_count(r, a) <= legal_function_count(r, b)


class TestWeighted:
    def test_unit_weights(self):
        lam = Activation.parse("1,1")
        assert weighted_legal_function_count(3, ColoringCondition.dominating(), lam) == 7

    def test_weight_two(self):
        lam = Activation.parse("1,2")
        assert weighted_legal_function_count(3, ColoringCondition.dominating(), lam) == 26

    def test_rainbow_symbolic_pair(self):
        a, b = Fraction(3, 2), Fraction(5)
        lam = Activation((a, b))
        assert weighted_legal_function_count(2, ColoringCondition.rainbow(2), lam) == 2 * a * b

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_unit_weights_collapse(self, k):
        for cond in builtins(k):
            for r in range(5):
                assert weighted_legal_function_count(r, cond, Activation.ones(k)) == legal_function_count(r, cond)

    def test_against_brute_force(self):
        lam = Activation.parse("1/2,3")
        ws = lam.weights
        for cond in builtins(2):
            for r in range(5):
                expected = functions_with_legal_image(r, 2, cond.accepts, ws)
                assert weighted_legal_function_count(r, cond, lam) == expected

    def test_length_mismatch(self):
        with pytest.raises(ConditionError):
            weighted_legal_function_count(2, ColoringCondition.dominating(), Activation.parse("1"))


class TestActivation:
    def test_parse(self):
        assert Activation.parse("1, 3/2").weights == (Fraction(1), Fraction(3, 2))

    @pytest.mark.parametrize("bad", ["0,1", "-1", "x", "1/0"])
    def test_bad(self, bad):
        with pytest.raises(ConditionError):
            Activation.parse(bad)

    def test_scaled(self):
        assert Activation.parse("1/2,2/3").scaled_integers() == (6, (3, 4))


class TestBlowup:
    def test_identity(self):
        cond = ColoringCondition.dominating()
        k2, cond2 = blowup(cond, Activation.parse("1,1"))
        assert k2 == 2
        for r in range(5):
            assert cond2.legal_multisets(r) == cond.legal_multisets(r)

    def test_singleton(self):
        k2, cond2 = blowup(ColoringCondition.dominating(), Activation.parse("1,2"))
        assert k2 == 3
        assert legal_function_count(1, cond2) == 2
        assert weighted_legal_function_count(1, ColoringCondition.dominating(), Activation.parse("1,2")) == 2

    def test_pairs(self):
        lam = Activation.parse("1,2")
        _, cond2 = blowup(ColoringCondition.dominating(), lam)
        assert legal_function_count(2, cond2) == 8
        assert weighted_legal_function_count(2, ColoringCondition.dominating(), lam) == 8

    def test_identity_exhaustive(self):
        for k in (1, 2):
            for cond in builtins(k) + [ColoringCondition.explicit(k, [(1,) * k, (0,) * (k - 1) + (2,)])]:
                for weights in _integer_weights(k, 3):
                    lam = Activation(weights)
                    _, cond2 = blowup(cond, lam)
                    for s in range(5):
                        assert legal_function_count(s, cond2) == weighted_legal_function_count(s, cond, lam)

    def test_non_integer(self):
        with pytest.raises(ConditionError):
            blowup(ColoringCondition.dominating(), Activation.parse("1,1/2"))


def _integer_weights(k, top):
    import itertools

    return list(itertools.product(range(1, top + 1), repeat=k))


class TestFiles:
    def test_load_condition(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"colors": 2, "sizes": {"2": [[1, 1]], "3": [[2, 1], [1, 2]]}}))
        cond = load_condition(p)
        assert cond.accepts((1, 1)) and not cond.accepts((2, 0))
        assert legal_function_count(3, cond) == 6

    def test_load_condition_bad_size(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"colors": 2, "sizes": {"2": [[1, 2]]}}))
        with pytest.raises(ConditionError):
            load_condition(p)

    def test_load_condition_wrong_width(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"colors": 3, "sizes": {"2": [[1, 1]]}}))
        with pytest.raises(ConditionError):
            load_condition(p)

    def test_load_activation(self, tmp_path):
        p = tmp_path / "w.json"
        p.write_text('["1", "5/2"]')
        assert load_activation(p).weights == (1, Fraction(5, 2))
