import random

import pytest

from piexp import linalg as la
from piexp.algebra import Algebra, Subspace, is_ideal, is_subalgebra, multiply, power_chain, subspace_product
from piexp.constructions import (StructuredAlgebra, direct_sum, exchange, full_matrix, grassmann_truncated,
                                 group_algebra, matrix_algebra, tensor_product, ut, zero)
from piexp.structure import (ActionSet, NonSplit, RadicalNotInvariant, analyze, central_idempotents,
                             check_radical, is_action_simple, nilpotency_index, radical, wedderburn_malcev)

from conftest import CORPUS, CORPUS_IDS, conjugate


def q_z3():
    """Q[Z_3]: semisimple but not split over Q."""
    table = {(a, b): {(a + b) % 3: 1} for a in range(3) for b in range(3)}
    return Algebra(3, table, ("1", "g", "g2"), (1, 0, 0))


def test_radical_examples():
    A = ut(2).algebra
    assert radical(A) == Subspace.span([A.e(1)], 3)
    assert radical(full_matrix(2).algebra).dim == 0
    assert radical(zero(3).algebra).dim == 3
    assert radical(grassmann_truncated(3).algebra).dim == 7


@pytest.mark.parametrize("name,S,ss", CORPUS, ids=CORPUS_IDS)
def test_radical_dimension_oracle(name, S, ss):
    J = radical(S.algebra)
    assert J.dim == S.dim - ss
    assert check_radical(J, S.algebra) == []


def random_algebras(count, seed):
    rng = random.Random(seed)
    pool = [S for _, S, _ in CORPUS]
    ss = {id(S): s for _, S, s in CORPUS}
    out = []
    while len(out) < count:
        a, b = rng.sample(pool, 2)
        if rng.random() < 0.5 and a.dim + b.dim <= 16:
            S = direct_sum(StructuredAlgebra(a.algebra), StructuredAlgebra(b.algebra))
            s = ss[id(a)] + ss[id(b)]
        elif a.dim * b.dim <= 16:
            S = tensor_product(StructuredAlgebra(a.algebra), StructuredAlgebra(b.algebra))
            s = ss[id(a)] * ss[id(b)]
        else:
            S, s = a, ss[id(a)]
        if S.dim <= 12:
            S = conjugate(S, rng)
        out.append((S, s))
    return out


def test_radical_postconditions_on_random_algebras():
    algebras = random_algebras(24, 7)
    assert len(algebras) >= 20
    for S, s in algebras:
        A = S.algebra
        J = radical(A)
        assert J.dim == A.dim - s, S.name
        assert is_ideal(J, A)
        assert nilpotency_index(J, A) is not None
        assert check_radical(J, A) == []


def _assert_complement(S, C, J):
    A = S.algebra
    assert C.dim + J.dim == A.dim
    assert C.intersection(J).dim == 0
    assert is_subalgebra(C, A)
    ops = ActionSet.from_structure(S)
    for idx in ops.nontrivial:
        for v in C.basis:
            assert C.contains(ops.apply(idx, v))


@pytest.mark.parametrize("S", [ut(3), matrix_algebra(ut(2), 2), tensor_product(ut(2), ut(2)),
                               direct_sum(ut(2), full_matrix(2)), ut(2, elementary=(0, 1)),
                               tensor_product(ut(2, degrees=[[0], [1], [0]]), full_matrix(2, elementary=(0, 1))),
                               exchange(ut(2)), ut(3, involution="reflection")],
                         ids=["ut3", "m2ut2", "ut2xut2", "ut2+m2", "ut2_gr", "graded_tensor", "exchange", "ut3_refl"])
def test_wedderburn_malcev_complement(S):
    J = radical(S.algebra)
    C = wedderburn_malcev(S, J)
    _assert_complement(S, C, J)


def test_wedderburn_malcev_after_random_conjugation(rng):
    for S in (ut(3), tensor_product(ut(2), ut(2)), matrix_algebra(ut(2), 2)):
        T = conjugate(S, rng)
        J = radical(T.algebra)
        _assert_complement(T, wedderburn_malcev(T, J), J)
        assert sorted(analyze(T).component_dims) == sorted(analyze(S).component_dims)


def test_central_idempotents():
    Q = group_algebra(2).algebra
    idems = central_idempotents(Q)
    assert len(idems) == 4
    one = la.vec((1, 0, 0, 0))
    total = la.zeros(4)
    for i, e in enumerate(idems):
        assert multiply(e, e, Q) == e
        for f in idems[i + 1:]:
            assert not any(multiply(e, f, Q))
        total = la.add(total, e)
    assert total == one


def test_non_split_detected():
    with pytest.raises(NonSplit):
        central_idempotents(q_z3())
    with pytest.raises(NonSplit):
        analyze(q_z3())


@pytest.mark.parametrize("S,dims", [
    (ut(2), [1, 1]), (tensor_product(ut(2), ut(2)), [1, 1, 1, 1]), (full_matrix(2), [4]), (zero(3), []),
    (group_algebra(1, graded=True), [2]), (group_algebra(1), [1, 1]), (matrix_algebra(ut(2), 2), [4, 4]),
    (ut(2, degrees=[[0], [1], [0]]), [1, 1]), (exchange(ut(2)), [2, 2]),
    (tensor_product(exchange(ut(2)), full_matrix(2, involution="transpose")), [8, 8]),
], ids=["ut2", "ut2xut2", "m2", "zero3", "z2_graded", "z2_plain", "m2ut2", "ut2_gr", "exchange", "exchange_x_m2t"])
def test_component_dims(S, dims):
    rep = analyze(S)
    assert rep.component_dims == dims
    assert all(c.certified for c in rep.certificates)
    assert sum(dims) == rep.complement.dim
    for i, B in enumerate(rep.components):
        for j, C in enumerate(rep.components):
            if i != j:
                assert subspace_product(B, C, S.algebra).dim == 0


def test_nilpotency_index_of_ut2_squared():
    T = tensor_product(ut(2), ut(2))
    rep = analyze(T)
    assert rep.nilpotency_index == 3
    assert [P.dim for P in power_chain(rep.radical, T.algebra)] == [5, 1, 0]


def test_simplicity_certificates():
    res = is_action_simple(tensor_product(full_matrix(2, elementary=(0, 1)), full_matrix(2)))
    assert res.certified and res.span_dim == 256
    assert is_action_simple(full_matrix(2)).span_dim == 16
    assert is_action_simple(group_algebra(1, graded=True)).certified
    plain = is_action_simple(group_algebra(1))
    assert plain.verdict == "no" and plain.witness.dim == 1


@pytest.mark.parametrize("S", [ut(2), ut(2, elementary=(0, 1)), ut(2, degrees=[[0], [1], [0]]),
                               ut(2, involution="reflection")], ids=["plain", "elementary", "degrees", "reflection"])
def test_ut2_is_not_simple_under_any_structure(S):
    res = is_action_simple(S)
    A = S.algebra
    assert res.verdict == "no"
    assert res.witness == Subspace.span([A.e(1)], 3)


def test_radical_not_invariant_under_foreign_operator():
    swap = ((0, 1, 0), (1, 0, 0), (0, 0, 1))  # exchanges e11 and e12
    with pytest.raises(RadicalNotInvariant):
        analyze(ut(2), ActionSet.with_identity(3, [swap], "custom"))
