from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from piexp import linalg as la

small = st.integers(-4, 4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=max_rows))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    n = len(rows[0])
    assert la.rank(rows, n) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_is_canonical_and_matches_sympy(rows):
    n = len(rows[0])
    basis, pivots = la.rref(rows, n)
    R, piv = sympy.Matrix(rows).rref()
    assert list(piv) == pivots
    for i, row in enumerate(basis):
        assert [Fraction(int(x.p), int(x.q)) for x in R.row(i)] == list(row)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_nullspace_annihilates_and_has_right_dimension(rows):
    n = len(rows[0])
    kernel = la.nullspace(rows, n)
    assert len(kernel) == n - la.rank(rows, n)
    for x in kernel:
        assert all(sum(Fraction(a) * b for a, b in zip(r, x)) == 0 for r in rows)


def test_solve_consistent_and_inconsistent():
    x = la.solve([({0: 1, 1: 1}, 3), ({0: 1, 1: -1}, 1)], 2)
    assert x == (2, 1)
    assert la.solve([({0: 1}, 1), ({0: 2}, 3)], 1) is None


def test_inverse_roundtrip_and_singular():
    M = ((2, 1), (1, 1))
    inv = la.inverse(M)
    assert la.mat_mul(M, inv) == la.identity(2)
    assert la.inverse(((1, 2), (2, 4))) is None


def test_echelon_coordinates_and_membership():
    e = la.Echelon(3, [(1, 1, 0), (0, 1, 1)])
    assert e.contains((1, 2, 1))
    assert not e.contains((0, 0, 1))
    c = e.coordinates((2, 3, 1))
    assert la.lincomb(c, e.basis(), 3) == la.vec((2, 3, 1))


def test_integer_scale_and_format():
    assert la.integer_scale((Fraction(1, 2), Fraction(-3, 4))) == (2, -3)
    assert la.format_fraction(Fraction(-6, 4)) == "-3/2"
    assert la.format_fraction(Fraction(5)) == "5"
