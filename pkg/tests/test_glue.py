from fractions import Fraction

import pytest

from orthoint.glue import (incommensurability_witness, lambda_orbit_integral, lambda_orbit_report,
                           xn_stats)


def test_xn_ratios():
    assert [xn_stats(n).ratio for n in range(1, 6)] == [
        Fraction(4, 3), Fraction(5, 3), Fraction(11, 6), Fraction(23, 12), Fraction(47, 24)]
    ratios = [xn_stats(n).ratio for n in range(1, 31)]
    assert all(a < b < 2 for a, b in zip(ratios, ratios[1:]))
    assert incommensurability_witness(1, 2)
    assert not incommensurability_witness(3, 3)
    with pytest.raises(ValueError):
        xn_stats(0)


@pytest.mark.parametrize("a", [2, 3])
def test_orbit_small_depth(a):
    assert lambda_orbit_integral(a, 6)
    r1 = lambda_orbit_report(a, 4, backend="numpy")
    r2 = lambda_orbit_report(a, 4, backend="exact")
    assert r1.orbit_size == r2.orbit_size and r1.integral and r2.integral


def test_orbit_rejects_out_of_scope():
    with pytest.raises(ValueError):
        lambda_orbit_report(5, 3)
