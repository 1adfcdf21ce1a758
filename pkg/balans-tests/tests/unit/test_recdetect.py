"""
Unit tests for exact recurrence detection.
"""

from fractions import Fraction

import pytest

from exceptions import ArityError
from recdetect import detect_fixed, detect_minimal, detect_table_form, parse_tuple, render_tuple
from sequences import Recurrence, balancing_rec, cobalancing_rec, terms

BALANCING = [6, 35, 204, 1189, 6930, 40391, 235416]
COBALANCING_11 = [2, 14, 84, 492, 2870, 16730]


@pytest.mark.unit
def test_detect_fixed_fibonacci():
    found = detect_fixed([0, 1, 1, 2, 3, 5, 8, 13], 2)
    assert found.coeffs == (1, 1)
    assert found.constant is None
    assert found.verified_terms == 4
    assert render_tuple(found) == "(1, 1)"


@pytest.mark.unit
def test_detect_fixed_with_constant():
    found = detect_fixed(COBALANCING_11, 2, with_constant=True)
    assert render_tuple(found) == "(6, -1, _2)"
    assert found.verified_terms == 1


@pytest.mark.unit
def test_detect_fixed_needs_twice_the_unknowns():
    with pytest.raises(ArityError):
        detect_fixed(COBALANCING_11[:5], 2, with_constant=True)
    with pytest.raises(ArityError):
        detect_fixed([1, 2, 3], 2, with_constant=True)
    with pytest.raises(ArityError):
        detect_fixed([1, 2, 3], 2)


@pytest.mark.unit
def test_detect_fixed_rejects_depth_zero():
    with pytest.raises(ArityError):
        detect_fixed([1, 2, 3, 4, 5, 6], 0)


@pytest.mark.unit
def test_detect_fixed_drops_zero_constant():
    """A constant term that solves to zero is not rendered."""
    found = detect_fixed([0, 1, 1, 2, 3, 5, 8, 13], 2, with_constant=True)
    assert found.constant is None
    assert not found.has_constant
    assert render_tuple(found) == "(1, 1)"


@pytest.mark.unit
def test_detect_fixed_rejects_held_out_mismatch():
    assert detect_fixed([0, 1, 1, 2, 3, 5, 8, 14], 2) is None


@pytest.mark.unit
def test_depth_five_solve_is_singular_for_shallow_sequences():
    """A depth-two sequence leaves the unconstrained depth-five system singular."""
    assert detect_fixed(terms(balancing_rec(), 1, 12), 5) is None


@pytest.mark.unit
def test_detect_minimal_prefers_shallowest():
    found = detect_minimal(BALANCING, 5)
    assert render_tuple(found) == "(6, -1)"
    assert found.form == "minimal"
    assert render_tuple(detect_minimal(COBALANCING_11, 2)) == "(6, -1, _2)"


@pytest.mark.unit
def test_detect_minimal_none_for_primes():
    assert detect_minimal([2, 3, 5, 7, 11, 13, 17, 19, 23, 29], 2) is None


@pytest.mark.unit
def test_table_form_balancing():
    found = detect_table_form(BALANCING)
    assert render_tuple(found) == "(1, 34, -34, -1, 1)"
    assert found.form == "table"
    assert detect_table_form(BALANCING[:6]) is None


@pytest.mark.unit
def test_table_form_cobalancers():
    """(1,1) cobalancers 1, 6, 35, ... satisfy the same table tuple."""
    assert render_tuple(detect_table_form([1, 6, 35, 204, 1189, 6930, 40391, 235416])) == "(1, 34, -34, -1, 1)"


@pytest.mark.unit
def test_parse_tuple():
    assert parse_tuple("(10,-1,_4)") == ((Fraction(10), Fraction(-1)), Fraction(4))
    assert parse_tuple("(1/2,3)") == ((Fraction(1, 2), Fraction(3)), None)


@pytest.mark.unit
@pytest.mark.property
def test_detect_regenerates_random_recurrences(rng):
    """Whatever detect_minimal returns regenerates the terms it was given."""
    for _ in range(200):
        depth = rng.randint(1, 3)
        coeffs = [rng.randint(-5, 5) for _ in range(depth - 1)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        initial = [0] * (depth - 1) + [1]
        values = terms(Recurrence(tuple(coeffs), 0, tuple(initial)), 0, 12)
        found = detect_minimal(values, 3, allow_constant=True)
        assert found is not None
        rebuilt = Recurrence(found.coeffs, found.constant or 0, tuple(values[:found.depth]))
        assert terms(rebuilt, 0, 12) == values


@pytest.mark.unit
@pytest.mark.property
def test_detect_fixed_recovers_exact_coefficients(rng):
    """At the true depth the solve returns the generating coefficients, whatever the window offset."""
    for _ in range(100):
        depth = rng.randint(1, 3)
        coeffs = [rng.randint(-5, 5) for _ in range(depth - 1)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        rec = Recurrence(tuple(coeffs), 0, tuple([0] * (depth - 1) + [1]))
        for offset in range(4):
            found = detect_fixed(terms(rec, offset, 10), depth)
            assert found is not None
            assert found.coeffs == tuple(coeffs)
            assert found.constant is None


@pytest.mark.unit
def test_detect_is_offset_invariant():
    rec = cobalancing_rec(1, 1)
    for offset in range(5):
        window_terms = terms(rec, rec.base + offset, 8)
        assert render_tuple(detect_minimal(window_terms, 3)) == "(6, -1, _2)"
    for offset in range(4):
        assert render_tuple(detect_minimal(terms(balancing_rec(), 1 + offset, 8), 3)) == "(6, -1)"
