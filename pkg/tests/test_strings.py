from fractions import Fraction

import pytest

from plumbcalc.errors import DomainError
from plumbcalc.intmat import is_perfect_square
from plumbcalc.sl2 import MonodromyWord, word_to_matrix
from plumbcalc.strings import (
    FamilyParams,
    cf_value,
    dual_string,
    family_string,
    format_int_string,
    parse_family_params,
    parse_int_string,
    recognize_family,
    split_relabel,
)

from conftest import all_strings, family_parameter_space


def dual_corpus():
    return [s for s in all_strings(6, 2, 6)]


class TestCfValue:
    def test_examples(self):
        assert cf_value((3,)) == Fraction(3, 1)
        assert cf_value((2, 2)) == Fraction(3, 2)
        assert cf_value((3, 2)) == Fraction(5, 2)

    def test_reduced_with_p_greater_than_q(self):
        for b in all_strings(5, 2, 5):
            pq = cf_value(b)
            assert pq.numerator > pq.denominator >= 1

    def test_empty_rejected(self):
        with pytest.raises(DomainError) as err:
            cf_value(())
        assert err.value.code == "empty-string"

    def test_entries_below_two_rejected(self):
        with pytest.raises(DomainError):
            cf_value((3, 1))


class TestDualString:
    def test_all_twos(self):
        assert dual_string((2, 2, 2)) == (4,)

    def test_single_three(self):
        assert dual_string((3,)) == (2, 2)

    def test_palindrome(self):
        assert dual_string((2, 3, 2)) == (3, 3)

    def test_all_twos_family(self):
        for k in range(1, 21):
            assert dual_string((2,) * k) == (k + 1,)

    def test_involution_exhaustive(self):
        for b in dual_corpus():
            assert dual_string(dual_string(b)) == b

    def test_cf_duality_exhaustive(self):
        for b in dual_corpus():
            p, q = cf_value(b).numerator, cf_value(b).denominator
            assert cf_value(dual_string(b)) == Fraction(p, p - q)

    def test_length_identity(self):
        # len(dual(b)) = sum(b) - 2 len(b) + 1
        assert dual_string((3,)) == (2, 2) and 3 - 2 * 1 + 1 == 2
        assert dual_string((2, 2, 2)) == (4,) and 6 - 2 * 3 + 1 == 1
        assert dual_string((2, 3)) == (3, 2) and 5 - 2 * 2 + 1 == 2
        for b in dual_corpus():
            assert len(dual_string(b)) == sum(b) - 2 * len(b) + 1

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            dual_string(())


class TestFamilyString:
    def test_base(self):
        assert family_string(FamilyParams(0, (0,))) == (3,)

    def test_single_twist(self):
        assert family_string(FamilyParams(0, (1,))) == (4, 2)

    def test_k_one_zero(self):
        assert family_string(FamilyParams(1, (0, 0, 0))) == (3, 3, 3)

    def test_k_one_mixed(self):
        assert family_string(FamilyParams(1, (0, 0, 1))) == (3, 4, 3, 2)

    def test_param_validation(self):
        with pytest.raises(DomainError):
            FamilyParams(1, (0, 0))
        with pytest.raises(DomainError):
            FamilyParams(0, (-1,))

    def test_entries_hyperbolic_form(self):
        for params in family_parameter_space(2, 2):
            s = family_string(params)
            assert all(x >= 2 for x in s)
            assert any(x >= 3 for x in s)


class TestRecognizeFamily:
    def test_examples(self):
        assert recognize_family((3, 3, 3)) == FamilyParams(1, (0, 0, 0))
        assert recognize_family((2, 4)) == FamilyParams(0, (1,))
        assert recognize_family((2, 2, 2)) is None

    def test_non_member(self):
        assert recognize_family((2, 2, 3)) is None
        assert recognize_family((3, 3)) is None
        assert recognize_family((1, 3)) is None

    def test_roundtrip_is_exact(self):
        for params in family_parameter_space(2, 3):
            assert recognize_family(family_string(params)) == params

    def test_membership_is_rotation_insensitive(self):
        s = family_string(FamilyParams(1, (1, 0, 2)))
        for r in range(len(s)):
            recovered = recognize_family(s[r:] + s[:r])
            assert recovered is not None
            # any recovered parameterization regenerates a rotation of s
            b = family_string(recovered)
            assert any(b[t:] + b[:t] == s for t in range(len(s)))


class TestSplitRelabel:
    def test_single_block(self):
        assert split_relabel((4, 2)) == ((2,), (2,))

    def test_three_threes(self):
        assert split_relabel((3, 3, 3)) == ((2, 2), (3,))

    def test_special_case_rejected(self):
        with pytest.raises(DomainError) as err:
            split_relabel((3,))
        assert err.value.code == "special-case"

    def test_non_member_rejected(self):
        with pytest.raises(DomainError) as err:
            split_relabel((2, 2, 3))
        assert err.value.code == "not-in-family"

    def test_duality_across_family(self):
        for params in family_parameter_space(2, 3):
            if params.k == 0 and params.xs == (0,):
                continue
            d, e = split_relabel(family_string(params))
            assert dual_string(d) == e
            assert all(x >= 2 for x in d)


class TestFamilyTraceShadow:
    def test_spot_values(self):
        expected = {(3,): 1, (4, 2): 4, (5, 2, 2): 9, (3, 3, 3): 16}
        for a, value in expected.items():
            t = word_to_matrix(MonodromyWord(a)).trace
            assert t - 2 == value

    def test_trace_minus_two_is_square(self):
        for params in family_parameter_space(2, 3):
            a = family_string(params)
            t = word_to_matrix(MonodromyWord(a)).trace
            assert t > 2
            assert is_perfect_square(t - 2), a

    def test_squared_trace_is_never_square(self):
        for params in family_parameter_space(2, 3):
            a = family_string(params)
            t = word_to_matrix(MonodromyWord(a)).trace
            assert not is_perfect_square(t * t - 4), a


class TestSyntax:
    def test_string_roundtrip(self):
        assert parse_int_string("3,2,2") == (3, 2, 2)
        assert format_int_string((3, 2, 2)) == "3,2,2"

    def test_family_params(self):
        assert parse_family_params("k=1;x=0,0,0") == FamilyParams(1, (0, 0, 0))

    def test_bad_params(self):
        with pytest.raises(DomainError):
            parse_family_params("k=1")
        with pytest.raises(DomainError):
            parse_family_params("k=1;x=0")
