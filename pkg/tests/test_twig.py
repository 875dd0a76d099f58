from fractions import Fraction

import pytest

import oracles
from growthbounds.lattice import edge_cofaces, face_edges
from growthbounds.manifolds import ManifoldClass, enumerate_fixed
from growthbounds.polyalg import BivariatePoly, diagonal_series
from growthbounds.twig import (activation_poly, generating_numerator,
                               level1_twigs, level_polynomial, next_level,
                               twig_bound, twig_bound_report, twig_polynomial)


def _poly(expr_terms):
    return BivariatePoly(dict(expr_terms))


X = BivariatePoly.monomial(1, 0)
Y = BivariatePoly.monomial(0, 1)
ONE = BivariatePoly.monomial(0, 0)


def _pow(p, n):
    out = ONE
    for _ in range(n):
        out = out * p
    return out


def test_p1_d2():
    # one dead cell with three free neighbors: y (1+x)^3
    assert level_polynomial(2, 1) == Y * _pow(ONE + X, 3)


def test_p1_d3():
    # one dead plaquette; each of 3 usable edges takes 0..3 new plaquettes
    assert level_polynomial(3, 1) == Y * _pow(ONE + 3 * X, 3)


def test_p2_d2_closed_form():
    # resolve the level-1 twig by the number of activated neighbors
    want = (Y
            + 3 * X * Y * Y * _pow(ONE + X, 3)
            + X * X * _pow(Y, 3) * (2 * _pow(ONE + X, 5) + _pow(ONE + X, 6))
            + _pow(X, 3) * _pow(Y, 4) * _pow(ONE + X, 7))
    assert level_polynomial(2, 2) == want


def test_level_sizes_and_carried():
    ts2 = next_level(level1_twigs(2))
    assert len(ts2.active) == 7 and ts2.carried == Y
    ts3 = next_level(level1_twigs(3))
    assert len(ts3.active) == 63 and ts3.carried == Y


def test_streamed_matches_materialized():
    for d, level in [(2, 2), (2, 3), (3, 2)]:
        ts = level1_twigs(d)
        for _ in range(level - 1):
            ts = next_level(ts)
        assert level_polynomial(d, level) == twig_polynomial(ts)


def test_activation_grouped_equals_explicit():
    for d in (2, 3):
        ts = next_level(level1_twigs(d))
        for twig in ts.active:
            if len(twig.whites) > 14:
                continue
            g = activation_poly(twig, "grouped")
            e = activation_poly(twig, "explicit")
            # trailing zeros aside, the coefficient lists agree
            n = max(len(g), len(e))
            assert list(g) + [0] * (n - len(g)) == list(e) + [0] * (n - len(e))


def test_twigs_stay_self_avoiding():
    # every edge of the growing cluster carries at most 2 dead faces
    for d, depth in [(2, 3), (3, 2)]:
        ts = level1_twigs(d)
        for _ in range(depth - 1):
            ts = next_level(ts)
        for twig in ts.active:
            for b in twig.blacks:
                for e in face_edges(b):
                    assert sum(f in twig.blacks for f in edge_cofaces(e)) <= 2


def test_monomial_degrees():
    # every twig contributes x^(Nb-1+|S|) y^Nb, so dx >= dy - 1 >= 0
    for d, level in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]:
        p = level_polynomial(d, level)
        assert p
        for (dx, dy), c in p.terms.items():
            assert dy >= 1 and dx >= dy - 1 and c > 0


def test_diagonal_dominates_counts_d2():
    want = oracles.naive_fixed_polyomino_counts(8)
    for level in (1, 2):
        ser = diagonal_series(generating_numerator(2),
                              level_polynomial(2, level), 8)
        assert all(s >= w for s, w in zip(ser, want))
    # level 1 has the closed form C(3n, n-1)
    from math import comb
    ser1 = diagonal_series(generating_numerator(2), level_polynomial(2, 1), 6)
    assert ser1 == [comb(3 * n, n - 1) for n in range(1, 7)]


def test_diagonal_dominates_counts_d3():
    mc = ManifoldClass("sam", 3, 2)
    want = [enumerate_fixed(mc, n) for n in range(1, 6)]
    ser = diagonal_series(generating_numerator(3), level_polynomial(3, 1), 5)
    # the series fixes the first-face orientation; fixed counts do not
    assert all(3 * s >= w for s, w in zip(ser, want))


def test_bounds_level1_exact():
    assert twig_bound(2, 1) == Fraction(27, 4)
    assert twig_bound(3, 1) == Fraction(81, 4)


def test_bounds_level2():
    b2 = twig_bound(2, 2)
    assert float(b2) < 27 / 4
    assert str(b2) == "6.47525"
    rep = twig_bound_report(3, 2)
    assert rep["bound"] == "18.23447"
    assert float(rep["bound"]) < 81 / 4
    assert all(a["roots_converged"] for a in rep["audits"])


def test_report_shape():
    rep = twig_bound_report(2, 2)
    assert rep["d"] == 2 and rep["level"] == 2
    assert rep["initial_condition"] == "27/4"
    assert len(rep["audits"]) == 2
    assert rep["audits"][0]["exact"] == Fraction(27, 4)


def test_numerator_variants():
    assert generating_numerator(2) == X
    assert generating_numerator(3, first_face_constrained=False) == X
    q = generating_numerator(3)
    assert q == X * Y * _pow(ONE + 3 * X, 4)


def test_validation():
    with pytest.raises(ValueError):
        level1_twigs(4)
    with pytest.raises(ValueError):
        level_polynomial(2, 0)
    with pytest.raises(ValueError):
        activation_poly(next(iter(level1_twigs(2).active)), method="bogus")
