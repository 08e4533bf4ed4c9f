import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import unpruned_tree
from orthoint.geometry import OrthoTriple, eta_sequence
from orthoint.golden import pants_list, tori_list
from orthoint.orbit import (IDENTITY, ORTHOGONAL_BASES, MonotonicityError, Spectrum, SpectrumEntry,
                            apply_word, basmajian_sums, boundary_reflections, commute_masks,
                            cosh_distance_sq, enumerate_spectrum, gram_matrix, lattice_orbit_check,
                            orthotree, pants_generators, preserves_form, seed_vectors,
                            special_vectors, torus_generators, word_matrix)

cosh_val = st.fractions(min_value=Fraction(11, 10), max_value=40, max_denominator=12)
triples = st.builds(OrthoTriple.of, cosh_val, cosh_val, cosh_val)


@settings(max_examples=50, deadline=None)
@given(triples)
def test_generators_preserve_form_and_are_involutions(t):
    q = gram_matrix(t)
    for g in pants_generators(t) + torus_generators(t) + boundary_reflections(t):
        assert preserves_form(g, q)
        assert g @ g == IDENTITY


@settings(max_examples=50, deadline=None)
@given(triples)
def test_pants_and_boundary_reflections_commute_off_diagonal(t):
    f, r = pants_generators(t), boundary_reflections(t)
    for x in range(3):
        for y in range(3):
            if x != y:
                assert f[x] @ r[y] == r[y] @ f[x]
    assert commute_masks(list(f) + list(r)) == [48, 40, 24, 6, 5, 3]


@settings(max_examples=30, deadline=None)
@given(triples)
def test_orthogonal_bases(t):
    q = gram_matrix(t)
    sv = special_vectors(t)
    for basis in ORTHOGONAL_BASES:
        vs = [sv[n] if isinstance(n, str) else n for n in basis]
        assert all(q.B(vs[i], vs[j]) == 0 for i in range(3) for j in range(i + 1, 3))


def test_seeds_are_special_vectors():
    t = OrthoTriple.of(2, 3, 5)
    assert seed_vectors(t) == ((-1, 5, 3), (5, -1, 2), (3, 2, -1))


def test_cosh_distance_example():
    t = OrthoTriple.of(2, 2, 2)
    u = seed_vectors(t)[0]
    f = pants_generators(t)[0]
    assert cosh_distance_sq(u, f @ u, gram_matrix(t)) == 289


def test_word_convention_rightmost_first():
    t = OrthoTriple.of(2, 3, 5)
    f = pants_generators(t)
    assert word_matrix("ab", f) == f[0] @ f[1]
    u = seed_vectors(t)[1]
    assert apply_word("ab", f, u) == f[0] @ (f[1] @ u)


@pytest.mark.parametrize("trip", pants_list())
def test_eta_path(trip):
    t = OrthoTriple.of(*trip)
    f = pants_generators(t)
    u = seed_vectors(t)[2]
    eta = eta_sequence(t, 20)
    for k in range(21):
        assert apply_word("gb" * k + "g", f, u)[2] == eta[k]
    nodes = {n.word: n.value for n in orthotree(t, "pants", "gamma", 10**6)}
    for k in range(21):
        if eta[k] <= 10**6:
            assert nodes["gb" * k + "g"] == eta[k]


@pytest.mark.parametrize("kind,trip", [("pants", p) for p in pants_list()]
                         + [("torus", p) for p in tori_list()[:8]] + [("torus", (6, 29, 36))])
def test_pruned_tree_contains_unpruned_walk(kind, trip):
    t = OrthoTriple.of(*trip)
    gens = torus_generators(t) if kind == "torus" else pants_generators(t)
    for i in range(3):
        got = sorted(n.value for n in orthotree(t, kind, i, 3000))
        want = unpruned_tree(gens, seed_vectors(t)[i], i, 10, 3000)
        missing = [v for v in set(want) if want.count(v) > got.count(v)]
        assert not missing


@pytest.mark.parametrize("trip", [(2, 2, 5), (2, 2, 17), (3, 3, 7)])
def test_growth_assumption_fails_and_is_reported(trip):
    with pytest.raises(MonotonicityError):
        orthotree(OrthoTriple.of(*trip), "pants", "gamma", 10**4, pruning="monotone")
    with pytest.raises(MonotonicityError):
        enumerate_spectrum(OrthoTriple.of(*trip), "pants", "all", 10**4, pruning="monotone")


def test_torus_child_below_parent():
    t = OrthoTriple.of(6, 29, 36)
    nodes = {n.word: n.value for n in orthotree(t, "torus", "alpha", 10**4)}
    assert nodes["a"] == 846 and nodes["ga"] == 839 and nodes["bga"] == 456
    assert 64 in enumerate_spectrum(t, "torus", "beta", 100)


@pytest.mark.parametrize("backend", ["numba", "numpy", "exact"])
@pytest.mark.parametrize("kind,trip", [("pants", (3, 3, 7)), ("torus", (6, 29, 36)),
                                       ("torus", (2, 3, 6))])
def test_backends_agree(backend, kind, trip):
    t = OrthoTriple.of(*trip)
    ref = enumerate_spectrum(t, kind, "all", 10**5, backend="exact")
    got = enumerate_spectrum(t, kind, "all", 10**5, backend=backend)
    assert got.entries == ref.entries


def test_rational_triple_uses_exact_path():
    # first value is s - 1 with s = 2(3a^2+2a^3-1)/(a^2-1) = 20 at a = 3/2
    s = enumerate_spectrum(OrthoTriple.of("3/2", "3/2", "3/2"), "pants", "alpha", 10**3)
    assert s.values()[0] == 19
    assert not s.is_integral()
    assert all(v.denominator in (1, 2) for v in s.values())


def test_spectrum_examples():
    s = enumerate_spectrum(OrthoTriple.of(2, 2, 2), "pants", "alpha", 100)
    assert 17 in s
    s = enumerate_spectrum(OrthoTriple.of(2, 2, 2), "torus", "gamma", 20)
    assert 17 in s


def test_spectrum_validation():
    with pytest.raises(ValueError):
        Spectrum((SpectrumEntry(Fraction(5), 1, "a"), SpectrumEntry(Fraction(5), 1, "b")),
                 Fraction(10), "pants", "alpha", OrthoTriple.of(2, 2, 2), {})
    with pytest.raises(ValueError):
        enumerate_spectrum(OrthoTriple.of(2, 2, 2), "pants", "alpha", 1)
    with pytest.raises(ValueError):
        enumerate_spectrum(OrthoTriple.of(2, 2, 2), "klein", "alpha", 10)


@pytest.mark.parametrize("kind", ["pants", "torus"])
def test_basmajian_monotone_convergence(kind):
    t = OrthoTriple.of(2, 2, 2)
    prev = None
    for cut in (10**2, 10**3, 10**4, 10**5):
        rows = basmajian_sums(t, kind, cut)
        for r in rows:
            assert r.partial_sum <= r.target_length * (1 + 1e-9)
        if prev is not None:
            for a, b in zip(prev, rows):
                assert b.partial_sum >= a.partial_sum
                assert b.relative_error <= a.relative_error
        prev = rows
    assert all(r.relative_error <= 1e-2 for r in basmajian_sums(t, kind, 10**4))


@pytest.mark.parametrize("backend", ["numba", "numpy", "exact"])
def test_lattice_orbit_backends(backend):
    t = OrthoTriple.of(2, 2, 2)
    gens = list(pants_generators(t)) + list(boundary_reflections(t))
    rep = lattice_orbit_check(gens, seed_vectors(t), 5, backend=backend)
    ref = lattice_orbit_check(gens, seed_vectors(t), 5, backend="exact")
    assert rep.integral and rep.visited == ref.visited


def test_lattice_orbit_detects_escape():
    t = OrthoTriple.of("3/2", "3/2", "3/2")
    rep = lattice_orbit_check(list(pants_generators(t)), seed_vectors(t), 3, scale=1)
    assert not rep.integral
    assert lattice_orbit_check(list(pants_generators(t)), seed_vectors(t), 3, scale=2).integral
