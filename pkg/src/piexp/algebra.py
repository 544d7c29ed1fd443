"""Finite-dimensional associative algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg as la
from .linalg import ZERO, ONE, Vector, Echelon


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """Why :func:`validate` rejected a table."""

    kind: str  # "associativity" | "unit"
    indices: tuple
    left: Vector
    right: Vector

    def __str__(self):
        def show(v):
            return "(" + ", ".join(la.format_fraction(x) for x in v) + ")"

        return f"{self.kind} violation at {self.indices}: {show(self.left)} != {show(self.right)}"


@dataclass(frozen=True, eq=False)
class Algebra:
    """Structure-constant algebra: ``e_i e_j = sum_k table[(i, j)][k] e_k``.

    ``table`` is sparse: only nonzero products are stored, each as a mapping
    ``{k: Fraction}``.
    """

    dim: int
    table: dict
    basis_labels: tuple = ()
    unit: Vector | None = None

    def __post_init__(self):
        if not self.basis_labels:
            object.__setattr__(self, "basis_labels", tuple(f"e{i + 1}" for i in range(self.dim)))
        if len(self.basis_labels) != self.dim:
            raise DimensionError("basis label count does not match dim")
        clean = {}
        for (i, j), out in self.table.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise DimensionError(f"table index {(i, j)} out of range")
            items = out.items() if isinstance(out, dict) else enumerate(out)
            row = {}
            for k, c in items:
                c = la.as_fraction(c)
                if c:
                    if not 0 <= k < self.dim:
                        raise DimensionError(f"output index {k} out of range")
                    row[k] = c
            if row:
                clean[(i, j)] = row
        object.__setattr__(self, "table", clean)
        if self.unit is not None:
            object.__setattr__(self, "unit", la.vec(self.unit))

    # -- products -------------------------------------------------------
    def basis_product(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def basis_product_vector(self, i: int, j: int) -> Vector:
        return la.to_dense(self.table.get((i, j), {}), self.dim)

    def multiply(self, a: Sequence, b: Sequence) -> Vector:
        return multiply(a, b, self)

    def e(self, i: int) -> Vector:
        return la.unit_vector(self.dim, i)

    def basis(self) -> list[Vector]:
        return [self.e(i) for i in range(self.dim)]

    def left_matrix(self, a: Sequence) -> tuple:
        """Matrix of x -> a x (acting on column coordinate vectors)."""
        cols = [self.multiply(a, self.e(j)) for j in range(self.dim)]
        return la.transpose(cols)

    def right_matrix(self, a: Sequence) -> tuple:
        cols = [self.multiply(self.e(j), a) for j in range(self.dim)]
        return la.transpose(cols)

    @cached_property
    def is_zero_product(self) -> bool:
        return not self.table

    def structure_tensor(self) -> np.ndarray:
        """Dense ``gamma[i, j, k]`` as an object array of Fractions."""
        g = np.full((self.dim, self.dim, self.dim), ZERO, dtype=object)
        for (i, j), row in self.table.items():
            for k, c in row.items():
                g[i, j, k] = c
        return g

    def label(self, v: Sequence) -> str:
        terms = []
        for i, c in enumerate(v):
            if not c:
                continue
            name = self.basis_labels[i]
            if c == 1:
                terms.append(name)
            elif c == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{la.format_fraction(c)}*{name}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _check_len(v: Sequence, A: Algebra):
    if len(v) != A.dim:
        raise DimensionError(f"vector of length {len(v)} in algebra of dim {A.dim}")


def multiply(a: Sequence, b: Sequence, A: Algebra) -> Vector:
    _check_len(a, A)
    _check_len(b, A)
    out = [ZERO] * A.dim
    bs = [(j, y) for j, y in enumerate(b) if y]
    if not bs:
        return tuple(out)
    table = A.table
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in bs:
            row = table.get((i, j))
            if row:
                xy = x * y
                for k, c in row.items():
                    out[k] += xy * c
    return tuple(out)


def _sparse_times_basis(row: dict, k: int, A: Algebra, left: bool) -> dict:
    out: dict = {}
    for l, c in row.items():
        prod = A.table.get((l, k) if left else (k, l))
        if prod:
            for m, g in prod.items():
                v = out.get(m, ZERO) + c * g
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    return out


def validate(A: Algebra) -> Violation | None:
    """None if the table is associative and the unit (if any) is two-sided."""
    n = A.dim
    triples = set()
    for i, j in A.table:
        triples.update((i, j, k) for k in range(n))
        triples.update((h, i, j) for h in range(n))
    for i, j, k in sorted(triples):
        left = _sparse_times_basis(A.table.get((i, j), {}), k, A, left=True)
        right = _sparse_times_basis(A.table.get((j, k), {}), i, A, left=False)
        if left != right:
            return Violation("associativity", (i, j, k), la.to_dense(left, n), la.to_dense(right, n))
    if A.unit is not None:
        for i in range(n):
            ei = A.e(i)
            ue = multiply(A.unit, ei, A)
            eu = multiply(ei, A.unit, A)
            if ue != ei:
                return Violation("unit", (i,), ue, ei)
            if eu != ei:
                return Violation("unit", (i,), eu, ei)
    return None


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace stored by its canonical reduced echelon basis."""

    ambient_dim: int
    basis: tuple = ()
    pivots: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> "Subspace":
        e = Echelon(ambient_dim, vectors)
        return cls._from_echelon(e)

    @classmethod
    def _from_echelon(cls, e: Echelon) -> "Subspace":
        return cls(e.n, e.basis(), tuple(e.pivots()))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim)

    @classmethod
    def whole(cls, ambient_dim: int) -> "Subspace":
        return cls.span((la.unit_vector(ambient_dim, i) for i in range(ambient_dim)), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    @cached_property
    def echelon(self) -> Echelon:
        return Echelon(self.ambient_dim, self.basis)

    def contains(self, v) -> bool:
        return self.echelon.contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v) -> Vector:
        """Coordinates in ``basis``; the reduced form makes these the pivot entries."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return tuple(la.as_fraction(v[p]) for p in self.pivots)

    def reduce(self, v) -> Vector:
        return la.to_dense(self.echelon.reduce(v), self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        # x = sum a_i u_i = sum b_j v_j
        n = self.dim + other.dim
        rows = []
        for k in range(self.ambient_dim):
            rows.append([u[k] for u in self.basis] + [-v[k] for v in other.basis])
        sols = la.nullspace(rows, n)
        vecs = [la.lincomb(s[: self.dim], self.basis, self.ambient_dim) for s in sols]
        return Subspace.span(vecs, self.ambient_dim)

    def complement_coordinates(self) -> list[int]:
        """Standard basis indices spanning a vector complement (non-pivot columns)."""
        p = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in p]


def subspace_product(U: Subspace, V: Subspace, A: Algebra) -> Subspace:
    if U.ambient_dim != A.dim or V.ambient_dim != A.dim:
        raise DimensionError("subspace ambient dimension does not match algebra")
    e = Echelon(A.dim)
    for u in U.basis:
        for v in V.basis:
            e.add(multiply(u, v, A))
            if e.full:
                return Subspace._from_echelon(e)
    return Subspace._from_echelon(e)


def power_chain(J: Subspace, A: Algebra) -> list[Subspace]:
    """[J, J^2, ..., J^k] stopping at the first zero power or a fixed point."""
    chain = [J]
    while chain[-1].dim:
        nxt = subspace_product(chain[-1], J, A)
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain


def is_ideal(I: Subspace, A: Algebra) -> bool:
    for v in I.basis:
        for i in range(A.dim):
            ei = A.e(i)
            if not I.contains(multiply(ei, v, A)) or not I.contains(multiply(v, ei, A)):
                return False
    return True


def is_subalgebra(S: Subspace, A: Algebra) -> bool:
    return all(S.contains(multiply(u, v, A)) for u in S.basis for v in S.basis)


def center(A: Algebra) -> Subspace:
    # sum_j x_j (e_j e_i - e_i e_j) = 0 for all i
    rows = []
    for i in range(A.dim):
        for k in range(A.dim):
            rows.append([A.basis_product(j, i).get(k, ZERO) - A.basis_product(i, j).get(k, ZERO) for j in range(A.dim)])
    return Subspace.span(la.nullspace(rows, A.dim), A.dim)


def find_unit(A: Algebra) -> Vector | None:
    """Solve for a two-sided identity; None if there is none."""
    if A.unit is not None:
        return A.unit
    if A.dim == 0:
        return None
    eqs = []
    for i in range(A.dim):
        for k in range(A.dim):
            target = ONE if i == k else ZERO
            eqs.append(({j: A.basis_product(j, i).get(k, ZERO) for j in range(A.dim)}, target))
            eqs.append(({j: A.basis_product(i, j).get(k, ZERO) for j in range(A.dim)}, target))
    return la.solve(eqs, A.dim)


def unitization(A: Algebra) -> Algebra:
    """Adjoin an identity as the last basis vector; unital inputs are returned unchanged."""
    if find_unit(A) is not None:
        return A
    d = A.dim
    table = dict(A.table)
    for i in range(d):
        table[(d, i)] = {i: ONE}
        table[(i, d)] = {i: ONE}
    table[(d, d)] = {d: ONE}
    return Algebra(d + 1, table, tuple(A.basis_labels) + ("1",), la.unit_vector(d + 1, d))


def change_basis(A: Algebra, P: Sequence[Sequence]) -> Algebra:
    """Algebra in the basis f_a = sum_i P[a][i] e_i (rows of P)."""
    d = A.dim
    Pinv = la.inverse(P)
    if Pinv is None:
        raise ValueError("basis change matrix is singular")
    rows = [la.vec(r) for r in P]
    table = {}
    for a in range(d):
        for b in range(d):
            prod = multiply(rows[a], rows[b], A)
            if la.is_zero(prod):
                continue
            # coords c with sum_c c_a f_a = prod: c = prod . Pinv
            coords = tuple(sum((prod[i] * Pinv[i][c] for i in range(d) if prod[i]), ZERO) for c in range(d))
            table[(a, b)] = {k: c for k, c in enumerate(coords) if c}
    unit = None
    if A.unit is not None:
        unit = tuple(sum((A.unit[i] * Pinv[i][c] for i in range(d) if A.unit[i]), ZERO) for c in range(d))
    return Algebra(d, table, tuple(f"f{i + 1}" for i in range(d)), unit)


def transport_vector(v: Sequence, P: Sequence[Sequence]) -> Vector:
    """Old coordinates of the element with new coordinates ``v`` (basis rows of P)."""
    d = len(v)
    return tuple(sum((v[a] * P[a][i] for a in range(d) if v[a]), ZERO) for i in range(d))


def restrict(A: Algebra, S: Subspace, labels: Sequence[str] | None = None) -> Algebra:
    """The subalgebra ``S`` as an algebra in its echelon basis."""
    n = S.dim
    table = {}
    for a, u in enumerate(S.basis):
        for b, v in enumerate(S.basis):
            prod = multiply(u, v, A)
            if la.is_zero(prod):
                continue
            coords = S.coordinates(prod)
            table[(a, b)] = {k: c for k, c in enumerate(coords) if c}
    if labels is None:
        labels = tuple(A.label(u) for u in S.basis)
    return Algebra(n, table, tuple(labels))
