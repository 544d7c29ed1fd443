import random
from fractions import Fraction

import pytest

from piexp import linalg as la
from piexp.algebra import change_basis
from piexp.constructions import (StructuredAlgebra, direct_sum, exchange, field, full_matrix, grassmann_truncated,
                                 group_algebra, incidence, matrix_algebra, tensor_product, ut, zero)

POSET_X = [(1, 2), (1, 3), (2, 4), (3, 4)]


def corpus():
    """Small algebras with known dimension of the semisimple part (radical oracle)."""
    return [
        ("field", field(), 1),
        ("zero3", zero(3), 0),
        ("ut2", ut(2), 2),
        ("ut3", ut(3), 3),
        ("ut4", ut(4), 4),
        ("m2", full_matrix(2), 4),
        ("m3", full_matrix(3), 9),
        ("grassmann3", grassmann_truncated(3), 1),
        ("group_z2", group_algebra(1), 2),
        ("group_z2^2", group_algebra(2), 4),
        ("ut2xut2", tensor_product(ut(2), ut(2)), 4),
        ("incidence_X", incidence(POSET_X), 4),
        ("chain_poset", incidence([(1, 2), (2, 3), (2, 4)]), 4),
        ("m2(ut2)", matrix_algebra(ut(2), 2), 8),
        ("ut2+m2", direct_sum(ut(2), full_matrix(2)), 6),
        ("ut2+zero2", direct_sum(ut(2), zero(2)), 2),
        ("ut2xm2", tensor_product(ut(2), full_matrix(2)), 8),
        ("grassmann2xut2", tensor_product(grassmann_truncated(2), StructuredAlgebra(ut(2).algebra)), 2),
        ("exchange_ut2", StructuredAlgebra(exchange(ut(2)).algebra), 4),
    ]


CORPUS = corpus()
CORPUS_IDS = [c[0] for c in CORPUS]


def random_invertible(n, rng, lo=-2, hi=2):
    while True:
        P = tuple(tuple(Fraction(rng.randint(lo, hi)) for _ in range(n)) for _ in range(n))
        if la.inverse(P) is not None:
            return P


def conjugate(S, rng):
    """Plain algebra isomorphic to ``S`` in a random rational basis."""
    S = S if isinstance(S, StructuredAlgebra) else StructuredAlgebra(S)
    P = random_invertible(S.dim, rng)
    return StructuredAlgebra(change_basis(S.algebra, P), None, S.name + "'")


@pytest.fixture
def rng():
    return random.Random(20240611)
