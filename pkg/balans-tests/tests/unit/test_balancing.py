"""
Unit tests for (a,b) balancing / cobalancing search, the successor map and the residue scans.
"""

import pytest

from balancing import (BalanceSolution, CoeffPair, ResidueHit, Variant, balancer_of,
                       cobalancing_orbit, find_all, first_failure, is_balanced, next_cobalancing,
                       scan_residue, scan_residue_conjecture, square_balancer_of)
from exceptions import (CoprimalityError, DomainError, NotCobalancingError,
                        UnsupportedCoefficientError)

ONE_ONE = CoeffPair(1, 1)


@pytest.mark.unit
def test_coeff_pair_validation():
    with pytest.raises(CoprimalityError):
        CoeffPair(2, 4)
    with pytest.raises(CoprimalityError):
        CoeffPair(0, 1)
    assert CoeffPair.reduced(2, 4) == CoeffPair(1, 2)
    assert str(CoeffPair(3, 1)) == "(3,1)"


@pytest.mark.unit
def test_balancer_of_worked_examples():
    """1+...+5 = 7+8 and 1+...+34 = 36+...+49."""
    assert balancer_of(6, ONE_ONE, Variant.BALANCING) == 2
    assert balancer_of(35, ONE_ONE, Variant.BALANCING) == 14
    assert balancer_of(7, ONE_ONE, Variant.BALANCING) is None
    assert balancer_of(1, ONE_ONE, Variant.BALANCING) is None


@pytest.mark.unit
def test_balancer_of_rejects_nonpositive_n():
    with pytest.raises(DomainError):
        balancer_of(0, ONE_ONE, Variant.BALANCING)


@pytest.mark.unit
def test_find_all_balancing_one_one():
    found = find_all(ONE_ONE, Variant.BALANCING, 1500)
    assert [s.n for s in found] == [6, 35, 204, 1189]
    assert [s.r for s in found] == [2, 14, 84, 492]
    assert all(isinstance(s, BalanceSolution) and s.power == 1 for s in found)


@pytest.mark.unit
def test_find_all_cobalancing_one_one():
    found = find_all(ONE_ONE, Variant.COBALANCING, 1000)
    assert [s.n for s in found] == [2, 14, 84, 492]
    assert [s.r for s in found] == [1, 6, 35, 204]


@pytest.mark.unit
def test_find_all_solutions_satisfy_the_sum_identity():
    """CRITICAL: every solution is checked by direct summation."""
    for pair in (ONE_ONE, CoeffPair(1, 2), CoeffPair(2, 3), CoeffPair(3, 1)):
        for variant in Variant:
            for s in find_all(pair, variant, 300):
                assert is_balanced(s.n, s.r, pair, variant)


@pytest.mark.unit
def test_find_all_same_result_for_chunked_scans():
    """The chunk split used for parallel runs does not change the answer."""
    from balancing import _scan_task
    from workers import split_range
    whole = find_all(CoeffPair(1, 2), Variant.COBALANCING, 5000)
    pieces = [sol for lo, hi in split_range(1, 5000, 7)
              for sol in _scan_task((1, 2, "cobalancing", 1, lo, hi))]
    assert pieces == whole


@pytest.mark.unit
def test_three_one_every_n_balances():
    pair = CoeffPair(3, 1)
    for n in range(2, 60):
        assert balancer_of(n, pair, Variant.BALANCING) == n - 1
    assert first_failure(pair, Variant.BALANCING, 2, 200) is None


@pytest.mark.unit
def test_first_failure():
    assert first_failure(ONE_ONE, Variant.BALANCING, 1, 10) == 1
    assert first_failure(ONE_ONE, Variant.BALANCING, 6, 10) == 7


@pytest.mark.unit
def test_eight_one_has_no_small_balancing_numbers():
    assert find_all(CoeffPair(8, 1), Variant.BALANCING, 2000) == []


@pytest.mark.unit
def test_square_balancers():
    assert square_balancer_of(1, CoeffPair(5, 7), Variant.BALANCING) == 0
    assert square_balancer_of(2, CoeffPair(9, 1), Variant.BALANCING) == 1
    assert square_balancer_of(1, CoeffPair(4, 1), Variant.COBALANCING) == 1
    assert square_balancer_of(2, ONE_ONE, Variant.BALANCING) is None


@pytest.mark.unit
def test_square_scan_matches_single_lookups():
    pair = CoeffPair(9, 1)
    found = find_all(pair, Variant.BALANCING, 400, power=2)
    assert (found[0].n, found[0].r) == (1, 0)
    assert any((s.n, s.r) == (2, 1) for s in found)
    for s in found:
        assert s.power == 2
        assert square_balancer_of(s.n, pair, Variant.BALANCING) == s.r
        assert is_balanced(s.n, s.r, pair, Variant.BALANCING, power=2)


@pytest.mark.unit
def test_find_all_rejects_other_powers():
    with pytest.raises(DomainError):
        find_all(ONE_ONE, Variant.BALANCING, 10, power=3)


@pytest.mark.unit
def test_next_cobalancing():
    assert next_cobalancing(0, ONE_ONE) == 2
    assert next_cobalancing(2, ONE_ONE) == 14
    assert next_cobalancing(14, ONE_ONE) == 84
    assert cobalancing_orbit(CoeffPair(1, 2), 500) == [4, 44, 440]


@pytest.mark.unit
def test_next_cobalancing_rejects_bad_input():
    with pytest.raises(NotCobalancingError):
        next_cobalancing(3, ONE_ONE)
    with pytest.raises(NotCobalancingError):
        next_cobalancing(-2, ONE_ONE)
    with pytest.raises(UnsupportedCoefficientError):
        next_cobalancing(0, CoeffPair(3, 1))


@pytest.mark.unit
def test_orbit_matches_scan_for_a_in_one_two():
    for pair in (ONE_ONE, CoeffPair(1, 3), CoeffPair(2, 1), CoeffPair(2, 5)):
        scanned = [s.n for s in find_all(pair, Variant.COBALANCING, 20000)]
        assert cobalancing_orbit(pair, 20000) == scanned


@pytest.mark.unit
def test_residue_two_family():
    """x = 4y + 2 solves at n = y with m = 8y^2 + 8y + 1."""
    hits = scan_residue(2, 3, 50)
    for y in (1, 2, 3):
        assert ResidueHit(4 * y + 2, y, 8 * y * y + 8 * y + 1) in hits


@pytest.mark.unit
def test_residue_scan_empty_below_first_counterexample():
    assert scan_residue_conjecture(5, 300) == []
    assert scan_residue(3, 0, 100) == []


@pytest.mark.unit
def test_residue_three_counterexample():
    """4 * 35^2 * 1 * 2 + 1 = 9801 = 99^2."""
    assert ResidueHit(35, 1, 99) in scan_residue(3, 8, 5)
