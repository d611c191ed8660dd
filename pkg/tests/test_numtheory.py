from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kummerlat.errors import EvenModulus, InputTooLarge, LatticeError, ZeroInput
from kummerlat.numtheory import (
    INFINITY,
    Place,
    factorize,
    hilbert_symbol,
    is_local_square,
    jacobi_symbol,
    relevant_primes,
    squarefree_part,
)

from oracles import hilbert_by_search, is_prime, jacobi_by_factoring, trial_factor

nonzero = st.integers(-10**6, 10**6).filter(bool)
small_nonzero = st.integers(-60, 60).filter(bool)


def test_factorize_examples():
    f = factorize(1)
    assert (f.sign, f.factors) == (1, {})
    f = factorize(-12)
    assert (f.sign, f.factors) == (-1, {2: 2, 3: 1})
    assert factorize(42).factors == trial_factor(42)


def test_factorize_errors():
    with pytest.raises(ZeroInput):
        factorize(0)
    with pytest.raises(InputTooLarge):
        factorize(2**62 + 1)


@given(nonzero)
def test_factorize_reconstructs(n):
    f = factorize(n)
    assert f.value() == n
    assert all(is_prime(p) for p in f.factors)
    assert f.factors == trial_factor(n)


def test_jacobi_examples():
    assert jacobi_symbol(17, 1) == 1
    assert jacobi_symbol(2, 7) == 1
    assert jacobi_symbol(3, 5) == -1
    with pytest.raises(EvenModulus):
        jacobi_symbol(3, 8)


@given(st.integers(-500, 500), st.integers(0, 300))
def test_jacobi_matches_factoring(a, k):
    n = 2 * k + 1
    assert jacobi_symbol(a, n) == jacobi_by_factoring(a, n)


def test_place_validation():
    assert Place(7).p == 7
    assert INFINITY.is_infinite
    with pytest.raises(LatticeError):
        Place(9)


def test_squarefree_examples():
    assert squarefree_part(12) == 3
    assert squarefree_part(Fraction(4, 9)) == 1
    assert squarefree_part(-18) == -2
    with pytest.raises(ZeroInput):
        squarefree_part(0)


@given(nonzero, st.integers(1, 50), st.integers(1, 50))
def test_squarefree_part_is_square_class(n, num, den):
    q = Fraction(n) * Fraction(num, den) ** 2
    s = squarefree_part(q)
    ratio = q / s
    assert ratio > 0
    assert all(e % 2 == 0 for e in trial_factor(ratio.numerator).values())
    assert all(e % 2 == 0 for e in trial_factor(ratio.denominator).values())
    assert all(e == 1 for e in trial_factor(s).values())


def test_hilbert_examples():
    for v in (INFINITY, 2, 3, 5):
        assert hilbert_symbol(1, 7, v) == 1
    assert hilbert_symbol(-1, -1, INFINITY) == -1
    assert hilbert_symbol(2, 3, 3) == -1
    assert hilbert_symbol(-1, -1, 2) == -1


@given(small_nonzero, small_nonzero, st.sampled_from([2, 3, 5, 7, 11]))
def test_hilbert_symmetric_and_square_invariant(a, b, p):
    assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
    assert hilbert_symbol(a * 9, b, p) == hilbert_symbol(a, b, p)
    assert hilbert_symbol(Fraction(a, 4), b, p) == hilbert_symbol(a, b, p)


@given(small_nonzero, small_nonzero, small_nonzero, st.sampled_from([2, 3, 5, 7]))
def test_hilbert_bimultiplicative(a, a2, b, p):
    assert hilbert_symbol(a * a2, b, p) == hilbert_symbol(a, b, p) * hilbert_symbol(a2, b, p)


@given(st.integers(-10**4, 10**4).filter(bool), st.integers(-10**4, 10**4).filter(bool))
def test_hilbert_product_formula(a, b):
    total = hilbert_symbol(a, b, INFINITY)
    for p in relevant_primes(a, b):
        total *= hilbert_symbol(a, b, p)
    assert total == 1


@settings(max_examples=150, deadline=None)
@given(st.integers(-30, 30).filter(bool), st.integers(-30, 30).filter(bool), st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_hilbert_matches_search(a, b, p):
    assert hilbert_symbol(a, b, p) == hilbert_by_search(a, b, p)


@given(nonzero, st.sampled_from([2, 3, 5, 7, 13]))
def test_local_square_is_square_class_invariant(n, p):
    assert is_local_square(n * 25 * p * p, p) == is_local_square(n, p)
    assert is_local_square(n * n, p)
