"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`.  Internally the row
reducer keeps sparse rows (``{column: Fraction}``) in fully reduced echelon
form, so the basis it produces is canonical: pivots are the leftmost
nonzero entries, each pivot is 1 and every pivot column is zero in all
other rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def vec(entries: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in entries)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def is_zero(v: Sequence) -> bool:
    return not any(v)


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    c = as_fraction(c)
    return tuple(c * a for a in v)


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for i, a in enumerate(v):
            if a:
                out[i] += c * a
    return tuple(out)


def to_sparse(v: Sequence) -> dict:
    return {i: as_fraction(a) for i, a in enumerate(v) if a}


def to_dense(row: dict, n: int) -> Vector:
    out = [ZERO] * n
    for i, a in row.items():
        out[i] = a
    return tuple(out)


class Echelon:
    """Incremental reduced row echelon form.

    ``add`` returns True when the vector enlarged the span.  Rows stay fully
    reduced after every insertion, which makes ``reduce`` a single pass over
    the pivot columns present in the input.
    """

    __slots__ = ("n", "rows", "pivot_row")

    def __init__(self, n: int, vectors: Iterable = ()):
        self.n = n
        self.rows: list[dict] = []
        self.pivot_row: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def full(self) -> bool:
        return len(self.rows) == self.n

    def _reduce_sparse(self, row: dict) -> dict:
        row = dict(row)
        for p in [c for c in row if c in self.pivot_row]:
            c = row.get(p)
            if not c:
                continue
            for j, a in self.rows[self.pivot_row[p]].items():
                b = row.get(j, ZERO) - c * a
                if b:
                    row[j] = b
                else:
                    row.pop(j, None)
        return row

    def reduce(self, v) -> dict:
        """Remainder of ``v`` modulo the span (sparse)."""
        row = v if isinstance(v, dict) else to_sparse(v)
        return self._reduce_sparse(row)

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def add(self, v) -> bool:
        row = self.reduce(v)
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p]
        if inv != 1:
            row = {j: a * inv for j, a in row.items()}
        for other in self.rows:
            c = other.get(p)
            if c:
                for j, a in row.items():
                    b = other.get(j, ZERO) - c * a
                    if b:
                        other[j] = b
                    else:
                        other.pop(j, None)
        self.pivot_row[p] = len(self.rows)
        self.rows.append(row)
        return True

    def sorted_rows(self) -> list[dict]:
        return [self.rows[self.pivot_row[p]] for p in sorted(self.pivot_row)]

    def pivots(self) -> list[int]:
        return sorted(self.pivot_row)

    def basis(self) -> tuple[Vector, ...]:
        return tuple(to_dense(r, self.n) for r in self.sorted_rows())

    def coordinates(self, v) -> Vector | None:
        """Coordinates of ``v`` in the sorted basis, or None if outside."""
        row = v if isinstance(v, dict) else to_sparse(v)
        if self.reduce(row):
            return None
        return tuple(row.get(p, ZERO) for p in self.pivots())


def rref(vectors: Iterable, n: int) -> tuple[tuple[Vector, ...], list[int]]:
    e = Echelon(n, vectors)
    return e.basis(), e.pivots()


def rank(vectors: Iterable, n: int) -> int:
    return Echelon(n, vectors).rank


def nullspace(rows: Iterable, n: int) -> list[Vector]:
    """Basis of {x : r.x = 0 for every row r}; free variables set to unit vectors."""
    e = Echelon(n, rows)
    pivots = set(e.pivot_row)
    out = []
    for f in range(n):
        if f in pivots:
            continue
        x = [ZERO] * n
        x[f] = ONE
        for p, idx in e.pivot_row.items():
            c = e.rows[idx].get(f)
            if c:
                x[p] = -c
        out.append(tuple(x))
    return out


def solve(equations: Iterable[tuple[dict, Fraction]], nvars: int) -> Vector | None:
    """One solution of a sparse system ``sum(coeffs[j] x_j) = rhs``.

    Free variables are set to zero.  Returns None if inconsistent.
    """
    e = Echelon(nvars + 1)
    for coeffs, rhs in equations:
        row = {j: as_fraction(a) for j, a in coeffs.items() if a}
        if rhs:
            row[nvars] = as_fraction(rhs)
        if row:
            e.add(row)
    if nvars in e.pivot_row:
        return None
    x = [ZERO] * nvars
    for p, idx in e.pivot_row.items():
        x[p] = e.rows[idx].get(nvars, ZERO)
    return tuple(x)


def mat_vec(M: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in M)


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    cols = list(zip(*B))
    return tuple(tuple(sum((a * b for a, b in zip(row, col) if a and b), ZERO) for col in cols) for row in A)


def identity(n: int) -> tuple:
    return tuple(unit_vector(n, i) for i in range(n))


def transpose(M: Sequence[Sequence]) -> tuple:
    return tuple(zip(*M))


def inverse(M: Sequence[Sequence]) -> tuple | None:
    n = len(M)
    e = Echelon(2 * n)
    for i, row in enumerate(M):
        r = to_sparse(row)
        r[n + i] = ONE
        e.add(r)
    if e.pivots()[:n] != list(range(n)) or e.rank < n:
        return None
    out = []
    for p in range(n):
        r = e.rows[e.pivot_row[p]]
        out.append(tuple(r.get(n + j, ZERO) for j in range(n)))
    return tuple(out)


def integer_scale(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector proportional to ``v`` (sign kept)."""
    den = 1
    for a in v:
        a = as_fraction(a)
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(as_fraction(a) * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g > 1:
        ints = [a // g for a in ints]
    return tuple(ints)


def format_fraction(x: Fraction) -> str:
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
