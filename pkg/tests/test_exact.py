import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hilbert_brute, hilbert_real
from orthoint.exact import (INFINITY, as_rat, factorize, finite, hilbert_symbol, rat_str,
                            rational_sqrt, relevant_places, squarefree_part, squarefree_split)

nonzero = st.integers(-10**6, 10**6).filter(lambda n: n != 0)


def test_as_rat_accepts_exact_forms():
    assert as_rat("3/2") == Fraction(3, 2)
    assert as_rat(7) == 7
    assert as_rat(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize("bad", [1.5, "1.5", "2e3", "", True])
def test_as_rat_rejects_inexact(bad):
    with pytest.raises((TypeError, ValueError)):
        as_rat(bad)


def test_rat_str():
    assert rat_str(Fraction(6, 4)) == "3/2"
    assert rat_str(Fraction(-8, 2)) == "-4"


@given(st.integers(1, 10**9))
def test_factorize_roundtrip(n):
    fs = factorize(n)
    assert math.prod(p ** e for p, e in fs) == n
    ps = [p for p, _ in fs]
    assert ps == sorted(set(ps))


@given(st.integers(1, 10**9))
def test_squarefree_split(n):
    s = squarefree_split(n)
    assert s.d * s.k ** 2 == n
    assert all(e == 1 for _, e in factorize(s.d))


def test_squarefree_part_examples():
    assert squarefree_part(3267) == 3
    assert squarefree_part(-12) == -3
    assert squarefree_part(1295) == 1295


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(2) is None


@pytest.mark.parametrize("a", range(-6, 7))
@pytest.mark.parametrize("b", [-10, -7, -3, -1, 2, 5, 6, 12])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_hilbert_matches_brute_force(a, b, p):
    if a == 0:
        return
    assert hilbert_symbol(a, b, finite(p)) == hilbert_brute(a, b, p)


def test_hilbert_real_place():
    for a in (-3, 2):
        for b in (-5, 7):
            assert hilbert_symbol(a, b, INFINITY) == hilbert_real(a, b)


@settings(max_examples=1000, deadline=None)
@given(nonzero, nonzero)
def test_hilbert_reciprocity(a, b):
    assert math.prod(hilbert_symbol(a, b, v) for v in relevant_places(a, b)) == 1


@settings(max_examples=200, deadline=None)
@given(nonzero, nonzero, nonzero)
def test_hilbert_bimultiplicative(a, b, c):
    for v in relevant_places(a * b, c):
        assert hilbert_symbol(a * b, c, v) == hilbert_symbol(a, c, v) * hilbert_symbol(b, c, v)
