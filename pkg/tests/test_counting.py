import math

import pytest

from conftest import PBOTH, catalan
from permscheme import oracle
from permscheme.counting import (
    SchemeIntegrityError,
    count,
    count_class,
    layer_key_counts,
    sequence,
)
from permscheme.reasoning import GapSet
from permscheme.scheme import ExpaEntry, ReduEntry, Scheme


def reference_count(scheme, sigma, n, values):
    # Plain unmemoized recursion, kept independent of the library's two
    # evaluators on purpose.
    if sigma in scheme.zero:
        return 0
    entry = scheme.expa.get(sigma)
    rentry = scheme.redu.get(sigma)
    gaps = entry.gaps if entry is not None else rentry.gaps
    ext = (0,) + values + (n + 1,)
    if any(ext[j + 1] != ext[j] + 1 for j in gaps.forced):
        return 0
    if n == len(sigma):
        return 1
    if entry is not None:
        total = 0
        for j in range(1, len(sigma) + 2):
            child = entry.children[j - 1]
            for r in range(ext[j - 1] + 1, ext[j]):
                total += reference_count(scheme, child, n, values[: j - 1] + (r,) + values[j - 1 :])
        return total
    reduced = values[: rentry.rank - 1] + tuple(v - 1 for v in values[rentry.rank :])
    from permscheme.perms import delete_rank

    return reference_count(scheme, delete_rank(sigma, rentry.rank), n - 1, reduced)


class TestCount:
    def test_catalan_values(self, scheme123):
        assert count(scheme123, 3) == 5
        assert count(scheme123, 0) == 1
        assert sequence(scheme123, 8) == [1, 2, 5, 14, 42, 132, 429, 1430]

    def test_factorials(self, scheme_empty):
        assert count(scheme_empty, 10) == 3628800
        assert sequence(scheme_empty, 5) == [1, 2, 6, 24, 120]

    def test_all_ones(self, scheme12):
        assert sequence(scheme12, 9) == [1] * 9

    def test_wilf_pair_small_count(self, scheme_both):
        assert count(scheme_both, 3) == 4
        assert sequence(scheme_both, 6) == [1, 2, 4, 8, 16, 32]

    def test_big_values_exact(self, scheme_empty):
        assert count(scheme_empty, 21) == math.factorial(21)

    def test_input_validation(self, scheme123):
        with pytest.raises(ValueError):
            count(scheme123, -1)
        with pytest.raises(ValueError):
            sequence(scheme123, 0)


class TestCountClass:
    def test_closed_form_for_single_start(self, scheme123):
        for n in range(1, 13):
            for i in range(1, n + 1):
                expect = math.comb(n + i - 2, n - 1) - math.comb(n + i - 2, n)
                assert count_class(scheme123, (1,), n, (i,)) == expect

    def test_partition_identity_at_root(self, scheme123):
        for n in range(1, 11):
            parts = sum(count_class(scheme123, (1,), n, (i,)) for i in range(1, n + 1))
            assert parts == count(scheme123, n)

    def test_gap_violating_tuple_is_zero(self, scheme123):
        # Class 12 forces its larger value to be n.
        assert count_class(scheme123, (1, 2), 4, (1, 3)) == 0
        assert count_class(scheme123, (1, 2), 4, (1, 4)) > 0

    def test_absent_class_is_integrity_error(self, scheme123):
        with pytest.raises(SchemeIntegrityError):
            count_class(scheme123, (3, 1, 2), 4, (1, 2, 3))

    def test_malformed_keys_rejected(self, scheme123):
        with pytest.raises(ValueError):
            count_class(scheme123, (1, 2), 4, (3,))
        with pytest.raises(ValueError):
            count_class(scheme123, (1, 2), 4, (3, 3))
        with pytest.raises(ValueError):
            count_class(scheme123, (1, 2), 4, (3, 5))


class TestEvaluatorAgreement:
    def test_layered_matches_recursive_and_reference(self, scheme123, scheme_both):
        for scheme in (scheme123, scheme_both):
            for n in range(0, 8):
                layered = count(scheme, n)
                recursive = count_class(scheme, (), n, ())
                reference = reference_count(scheme, (), n, ())
                assert layered == recursive == reference

    def test_matches_oracle(self, scheme_three):
        seq = sequence(scheme_three, 8)
        assert seq == [oracle.count_avoiders(n, scheme_three.patterns) for n in range(1, 9)]


class TestPolynomialGrowth:
    def test_key_count_is_quadratic_for_123(self, scheme123):
        for n, keys in enumerate(layer_key_counts(scheme123, 30)):
            assert keys <= 2 * max(n, 1) ** 2


class TestZeroClasses:
    def test_zero_class_counts_zero(self):
        # Hand-built scheme for the single-point pattern: every class of
        # length >= 1 is empty.
        scheme = Scheme(
            patterns=((1,),),
            expa={(): ExpaEntry(GapSet(0, frozenset({0})), ((1,),))},
            redu={},
            zero=frozenset({(1,)}),
            mode="certified",
        )
        assert count(scheme, 0) == 1
        assert sequence(scheme, 4) == [0, 0, 0, 0]
        assert count_class(scheme, (1,), 3, (2,)) == 0
