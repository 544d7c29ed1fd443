"""PI-exponent of finite-dimensional algebras via admissible sequences.

A sequence of distinct components ``(i_1, ..., i_s)`` is admissible when
``B_{i_1} J B_{i_2} J ... J B_{i_s} != 0``; the exponent is the largest total
dimension of an admissible sequence.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .algebra import Algebra, Subspace, center, find_unit, multiply, subspace_product
from .constructions import as_structured, matrix_algebra, tensor_product
from .structure import StructureError, StructureReport, analyze, is_action_simple


class SNotCentralSimple(StructureError):
    """The second tensor factor is not unital, central and action-simple."""


@dataclass(frozen=True, eq=False)
class ExponentReport:
    value: int
    witness_sequence: tuple = ()
    witness_chain: tuple = ()
    component_dims: tuple = ()
    chain_labels: tuple = ()
    structure: StructureReport | None = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "witness_sequence": list(self.witness_sequence),
            "witness_chain": list(self.chain_labels),
            "component_dims": list(self.component_dims),
        }


def _step(V: Subspace, J: Subspace, B: Subspace, A: Algebra) -> Subspace:
    return subspace_product(subspace_product(V, J, A), B, A)


def _max_value(components, J, A) -> int:
    dims = [c.dim for c in components]
    order = sorted(range(len(components)), key=lambda i: (-dims[i], i))
    best = 0

    def dfs(V, used, total, remaining):
        nonlocal best
        best = max(best, total)
        if total + remaining <= best:
            return
        VJ = subspace_product(V, J, A)
        if VJ.dim == 0:
            return
        for i in order:
            if i in used:
                continue
            if total + remaining <= best:
                return
            W = subspace_product(VJ, components[i], A)
            if W.dim:
                dfs(W, used | {i}, total + dims[i], remaining - dims[i])

    total_dims = sum(dims)
    for i in order:
        if components[i].dim and dims[i] + (total_dims - dims[i]) > best:
            dfs(components[i], frozenset([i]), dims[i], total_dims - dims[i])
    return best


def _lex_witness(components, J, A, value: int) -> tuple:
    dims = [c.dim for c in components]
    n = len(components)

    def dfs(V, seq, total, remaining):
        if total == value:
            return seq
        if total + remaining < value:
            return None
        VJ = subspace_product(V, J, A)
        if VJ.dim == 0:
            return None
        for i in range(n):
            if i in seq:
                continue
            W = subspace_product(VJ, components[i], A)
            if W.dim:
                found = dfs(W, seq + (i,), total + dims[i], remaining - dims[i])
                if found is not None:
                    return found
        return None

    total_dims = sum(dims)
    for i in range(n):
        if components[i].dim:
            found = dfs(components[i], (i,), dims[i], total_dims - dims[i])
            if found is not None:
                return found
    return ()


def witness_chain(seq: Sequence[int], components, J: Subspace, A: Algebra) -> tuple:
    """Elements b_1, u_1, ..., u_{s-1}, b_s (basis vectors) with nonzero product."""
    if not seq:
        return ()
    blocks = [components[i] for i in seq]
    s = len(blocks)
    # suffix[k] = B_k J B_{k+1} ... J B_s
    suffix = [None] * s
    suffix[-1] = blocks[-1]
    for k in range(s - 2, -1, -1):
        suffix[k] = subspace_product(subspace_product(blocks[k], J, A), suffix[k + 1], A)

    def hits(x, space: Subspace) -> bool:
        return any(any(multiply(x, w, A)) for w in space.basis)

    def tail(k) -> Subspace:
        return subspace_product(J, suffix[k + 1], A)

    chain = []
    if s == 1:
        x = blocks[0].basis[0]
        return (x,)
    x = next(b for b in blocks[0].basis if hits(b, tail(0)))
    chain.append(x)
    for k in range(s - 1):
        u = next(u for u in J.basis if hits(multiply(x, u, A), suffix[k + 1]))
        xu = multiply(x, u, A)
        if k + 1 == s - 1:
            b = next(b for b in blocks[k + 1].basis if any(multiply(xu, b, A)))
        else:
            T = tail(k + 1)
            b = next(b for b in blocks[k + 1].basis if hits(multiply(xu, b, A), T))
        chain.extend([u, b])
        x = multiply(xu, b, A)
    return tuple(chain)


def chain_product(chain: Sequence, A: Algebra):
    x = chain[0]
    for y in chain[1:]:
        x = multiply(x, y, A)
    return x


def admissible_max(components: Sequence[Subspace], J: Subspace, A) -> ExponentReport:
    """Branch-and-bound search for the heaviest admissible sequence.

    The value search visits components by decreasing dimension; the reported
    witness is the lexicographically smallest sequence attaining the value
    (1-based indices).
    """
    A = getattr(A, "algebra", A)
    components = list(components)
    dims = tuple(c.dim for c in components)
    value = _max_value(components, J, A)
    if value == 0:
        return ExponentReport(0, (), (), dims)
    seq = _lex_witness(components, J, A, value)
    chain = witness_chain(seq, components, J, A)
    return ExponentReport(
        value,
        tuple(i + 1 for i in seq),
        chain,
        dims,
        tuple(A.label(v) for v in chain),
    )


def admissible_bruteforce(components: Sequence[Subspace], J: Subspace, A) -> int:
    """Exhaustive evaluation of every distinct-index sequence, without pruning."""
    A = getattr(A, "algebra", A)
    best = 0
    n = len(components)
    for r in range(1, n + 1):
        for seq in permutations(range(n), r):
            V = components[seq[0]]
            for i in seq[1:]:
                V = _step(V, J, components[i], A)
            if V.dim:
                best = max(best, sum(components[i].dim for i in seq))
    return best


def pi_exponent(A) -> ExponentReport:
    """radical -> complement -> action-simple components -> admissible search."""
    S = as_structured(A)
    report = analyze(S)
    res = admissible_max(report.components, report.radical, S.algebra)
    return ExponentReport(res.value, res.witness_sequence, res.witness_chain, res.component_dims,
                          res.chain_labels, report)


def envelope_exponent(B) -> ExponentReport:
    """Exponent of the Grassmann envelope of a Z_2-graded algebra, from its graded components."""
    B = as_structured(B)
    if B.grading is None or B.grading.group != (2,):
        raise ValueError("envelope_exponent needs a Z_2-graded algebra")
    return pi_exponent(B)


# -- theorem checks ----------------------------------------------------------


@dataclass(frozen=True)
class MatrixRow:
    n: int
    lhs: int | None
    rhs: int | None
    equal: bool | None
    skipped: bool = False

    def to_dict(self) -> dict:
        return {"n": self.n, "lhs": self.lhs, "rhs": self.rhs, "equal": self.equal, "skipped": self.skipped}


def _matrix_row(args) -> MatrixRow:
    A, n, base, max_dim = args
    if max_dim is not None and n * n * A.dim > max_dim:
        return MatrixRow(n, None, None, None, True)
    lhs = pi_exponent(matrix_algebra(A, n)).value
    rhs = n * n * base
    return MatrixRow(n, lhs, rhs, lhs == rhs)


def matrix_theorem_check(A, n_max: int, *, max_dim: int | None = None, threads: int = 1) -> list[MatrixRow]:
    """Rows (n, exp(M_n(A)), n^2 exp(A), equal?) with each side from its own pipeline run."""
    A = as_structured(A)
    base = pi_exponent(A).value
    jobs = [(A, n, base, max_dim) for n in range(1, n_max + 1)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(_matrix_row, jobs))
    return [_matrix_row(j) for j in jobs]


@dataclass(frozen=True)
class TensorCheck:
    lhs: int
    dim_s: int
    exp_a: int

    @property
    def rhs(self) -> int:
        return self.dim_s * self.exp_a

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "dim_S": self.dim_s, "exp_A": self.exp_a, "equal": self.equal}


def check_central_simple(S) -> None:
    S = as_structured(S)
    if find_unit(S.algebra) is None:
        raise SNotCentralSimple("S is not unital")
    if center(S.algebra).dim != 1:
        raise SNotCentralSimple("the center of S is not one-dimensional")
    res = is_action_simple(S)
    if not res.certified:
        raise SNotCentralSimple(f"S is not certified action-simple ({res.verdict})")


def tensor_theorem_check(A, S, *, grading_mode: str = "product") -> TensorCheck:
    """exp of A (x) S under the product action against dim S * exp(A)."""
    A = as_structured(A)
    S = as_structured(S)
    check_central_simple(S)
    lhs = pi_exponent(tensor_product(A, S, grading_mode=grading_mode)).value
    return TensorCheck(lhs, S.dim, pi_exponent(A).value)
