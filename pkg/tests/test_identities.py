import math
import random
from fractions import Fraction
from itertools import permutations, product

import pytest

from piexp import linalg as la
from piexp.algebra import change_basis
from piexp.constructions import (Grading, StructuredAlgebra, field, full_matrix, grassmann_truncated, group_algebra,
                                 matrix_algebra, tensor_product, ut, zero)
from piexp.identities import (BudgetExceeded, IdentityError, MultilinearMonomial, MultilinearPolynomial,
                              codimension, commutator, containment_at_degree, envelope_codimension, evaluate,
                              evaluation_matrix, is_identity, monomial, parse_polynomial, regev_bound_check,
                              standard_polynomial, variable)

from conftest import conjugate

X = variable()
COMM = commutator(X, X)
COMM2 = COMM * COMM


def brute_codimension(S, m, tags=(None,)):
    """Oracle: rank of all decorated monomials evaluated on all basis tuples, via direct evaluation."""
    A = S.algebra
    d = A.dim
    monos = [MultilinearPolynomial({MultilinearMonomial(tuple(v + 1 for v in sigma),
                                                        tuple(tau[v] for v in sigma)): 1})
             for tau in product(tags, repeat=m) for sigma in permutations(range(m))]
    cols = []
    for t in product(range(d), repeat=m):
        subs = [A.e(i) for i in t]
        vals = [evaluate(f, subs, S) for f in monos]
        for k in range(d):
            cols.append([v[k] for v in vals])
    return la.rank(cols, len(monos))


def test_evaluate_examples():
    A = ut(2).algebra
    assert evaluate(COMM, [A.e(0), A.e(1)], ut(2)) == A.e(1)
    for m in (2, 3):
        f = monomial(*range(1, m + 1))
        assert not any(evaluate(f, [(1, 2, 3)] * m, zero(3)))
    G = group_algebra(1, graded=True)
    assert evaluate(variable((1,)), [(1, 0)], G) == (0, 0)
    assert evaluate(variable((0,)), [(1, 0)], G) == (1, 0)


def test_evaluate_rejects_mismatched_decorations():
    with pytest.raises(IdentityError):
        evaluate(variable("*"), [(1, 0, 0)], ut(2))
    with pytest.raises(IdentityError):
        evaluate(variable((1,)), [(1, 0, 0)], ut(2))


def test_evaluate_is_multilinear(rng):
    S = full_matrix(2)
    f = COMM2
    subs = [tuple(Fraction(rng.randint(-3, 3)) for _ in range(4)) for _ in range(4)]
    other = tuple(Fraction(rng.randint(-3, 3)) for _ in range(4))
    c = Fraction(rng.randint(-3, 3))
    mixed = list(subs)
    mixed[2] = la.add(subs[2], la.scale(c, other))
    swapped = list(subs)
    swapped[2] = other
    assert evaluate(f, mixed, S) == la.add(evaluate(f, subs, S), la.scale(c, evaluate(f, swapped, S)))


@pytest.mark.parametrize("S,m", [(ut(2), 2), (ut(2), 3), (full_matrix(2), 2), (full_matrix(2), 3),
                                 (StructuredAlgebra(grassmann_truncated(3).algebra), 3), (ut(3), 3)],
                         ids=["ut2_2", "ut2_3", "m2_2", "m2_3", "g3_3", "ut3_3"])
def test_codimension_matches_brute_force(S, m):
    assert codimension(S, m) == brute_codimension(S, m)


def test_graded_and_involution_codimension_match_brute_force():
    S = ut(2, elementary=(0, 1))
    for m in (1, 2, 3):
        assert codimension(S, m) == brute_codimension(S, m, tags=((0,), (1,)))
    T = full_matrix(2, involution="transpose")
    for m in (1, 2):
        assert codimension(T, m) == brute_codimension(T, m, tags=(None, "*"))


def test_codimension_examples():
    assert [codimension(field(), m) for m in range(1, 7)] == [1] * 6
    assert [codimension(zero(3), m) for m in range(1, 6)] == [1, 0, 0, 0, 0]
    assert [codimension(ut(2), m) for m in (2, 3, 4)] == [2, 6, 18]
    assert [codimension(grassmann_truncated(m), m, ordinary=True) for m in (2, 3, 4)] == [2, 4, 8]


def test_grassmann_truncation_invariance():
    for m in (2, 3):
        assert codimension(grassmann_truncated(m), m, ordinary=True) == \
            codimension(grassmann_truncated(m + 1), m, ordinary=True)


def test_envelope_codimension_of_trivially_graded_field_is_commutative():
    F = field().with_structure(Grading((2,), ((0,),)))
    assert [envelope_codimension(F, m) for m in (1, 2, 3)] == [1, 1, 1]


@pytest.mark.parametrize("S,ms", [(ut(2), (1, 2, 3, 4)), (full_matrix(2), (1, 2, 3)),
                                  (StructuredAlgebra(grassmann_truncated(3).algebra), (1, 2, 3)),
                                  (ut(2, elementary=(0, 1)), (1, 2, 3)),
                                  (full_matrix(2, involution="transpose"), (1, 2, 3))],
                         ids=["ut2", "m2", "g3", "ut2_gr", "m2_t"])
def test_sampled_agrees_with_exact(S, ms):
    for m in ms:
        exact = codimension(S, m)
        for seed in (0, 1, 2):
            assert codimension(S, m, "sampled", seed=seed) == exact


def test_sampled_is_monotone_lower_bound():
    S = matrix_algebra(ut(2), 2)
    exact = codimension(S, 3)
    ranks = [codimension(S, 3, "sampled", samples=n, seed=5) for n in (1, 2, 3, 5, 8, 20)]
    assert ranks == sorted(ranks)
    assert ranks[-1] <= exact


def test_plain_codimension_bounds():
    for S in (ut(2), ut(3), full_matrix(2), tensor_product(ut(2), ut(2))):
        assert codimension(S, 1) == 1
        for m in (2, 3):
            assert codimension(S, m) <= math.factorial(m)


def test_codimension_basis_invariance(rng):
    for S in (ut(2), ut(3), tensor_product(ut(2), ut(2)), full_matrix(2), matrix_algebra(ut(2), 2)):
        T = conjugate(S, rng)
        for m in (2, 3):
            assert codimension(T, m) == codimension(S, m)


def test_codimension_permutation_invariance():
    S = ut(3)
    perm = list(range(S.dim))
    random.Random(1).shuffle(perm)
    P = tuple(tuple(Fraction(int(j == perm[i])) for j in range(S.dim)) for i in range(S.dim))
    T = StructuredAlgebra(change_basis(S.algebra, P))
    assert [codimension(T, m) for m in (2, 3, 4)] == [codimension(S, m) for m in (2, 3, 4)]


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        codimension(full_matrix(3), 6, budget=10**6)


def test_identity_examples():
    assert is_identity(COMM, field())
    assert is_identity(standard_polynomial(4), full_matrix(2))
    assert not is_identity(standard_polynomial(3), full_matrix(2))
    assert is_identity(COMM2, ut(2))
    res = is_identity(COMM2, matrix_algebra(ut(2), 2))
    assert not res.holds
    assert evaluate(COMM2, res.witness, matrix_algebra(ut(2), 2)) == res.value and any(res.value)


def test_graded_and_star_identities():
    # odd elements of UT2 with elementary grading (0,1) square to zero
    S = ut(2, elementary=(0, 1))
    odd = (1,)
    assert is_identity(monomial(1, 2, tags=(odd, odd)), S)
    assert not is_identity(monomial(1, 2, tags=((0,), odd)), S)
    T = full_matrix(2, involution="transpose")
    sym_comm = parse_polynomial("x1 x2' - x2' x1")
    assert not is_identity(sym_comm, T)
    # [x1 - x1*, x2 - x2*]: skew 2x2 matrices are multiples of one matrix, so they commute
    skew_sq = parse_polynomial("x1 x2 - x1' x2 - x1 x2' + x1' x2' - x2 x1 + x2' x1 + x2 x1' - x2' x1'")
    assert is_identity(skew_sq, T)


def test_kernel_vectors_are_identities():
    rng = random.Random(11)
    for S, m in ((ut(2), 3), (ut(2), 4), (matrix_algebra(ut(2), 2), 3), (ut(2, elementary=(0, 1)), 3),
                 (full_matrix(2, involution="transpose"), 3)):
        E = evaluation_matrix(S, m)
        for pattern in E.patterns():
            kernel = E.kernel(pattern)
            if not kernel:
                continue
            coeffs = la.lincomb([Fraction(rng.randint(-3, 3)) for _ in kernel], kernel, math.factorial(m))
            assert is_identity(E.polynomial(pattern, coeffs), S)
            # a vector outside the kernel is not an identity
            for j in range(math.factorial(m)):
                probe = la.unit_vector(math.factorial(m), j)
                if not E.annihilates(pattern, probe):
                    assert not is_identity(E.polynomial(pattern, probe), S)
                    break


def test_containment():
    big, small = matrix_algebra(ut(2), 2), ut(2)
    for m in (1, 2, 3):
        assert containment_at_degree(big, small, m)
    res = containment_at_degree(small, big, 4)
    assert not res.holds
    f = res.counterexample
    assert is_identity(f, small) and not is_identity(f, big)
    assert f == COMM2
    assert containment_at_degree(ut(3), ut(3), 3)


def test_containment_requires_same_kind():
    with pytest.raises(IdentityError):
        containment_at_degree(ut(2), ut(2, elementary=(0, 1)), 2)


def test_corner_embedding_inherits_identities():
    # M_1(UT2) sits in M_2(UT2) as the (1,1) corner, so identities of M_2(UT2) hold in UT2
    big = matrix_algebra(ut(2), 2)
    E = evaluation_matrix(big, 3)
    for pattern in E.patterns():
        for k in E.kernel(pattern):
            assert is_identity(E.polynomial(pattern, k), ut(2))


def test_regev_bound():
    r = regev_bound_check(ut(2), ut(2), 3)
    assert r.rhs == 36 and r.lhs <= 36 and r.holds
    for m in (1, 2, 3):
        r = regev_bound_check(field(), ut(2), m)
        assert r.lhs == r.rhs == codimension(ut(2), m)
        r = regev_bound_check(zero(2), ut(2), m + 1)
        assert (r.lhs, r.rhs) == (0, 0)


def test_parser_roundtrip_and_errors():
    f = parse_polynomial("3/2 * x1^g0 x3 x2 - x2 x1 x3")
    assert f.degree == 3 and parse_polynomial(str(f)) == f
    g = parse_polynomial("x1^g(0,1) x2' + -2 x2 x1")
    assert parse_polynomial(str(g)) == g
    assert parse_polynomial("x1 x2 − x2 x1") == COMM
    for bad in ("", "x1 x1", "x1 +", "3", "x1 x2 x3 - x1 x2", "y1"):
        with pytest.raises(IdentityError):
            parse_polynomial(bad)


def test_polynomial_algebra_helpers():
    assert str(COMM) == "x1 x2 - x2 x1"
    assert standard_polynomial(2) == COMM
    assert len(standard_polynomial(4).terms) == 24
    assert (COMM - COMM).terms == {}
    star = MultilinearPolynomial({MultilinearMonomial((1,), ("+",)): 1}).star_form()
    assert star == parse_polynomial("1/2 x1 + 1/2 x1'")
