"""Builders for the algebra families used throughout the package.

Basis conventions are fixed so that equal constructions give equal tables:
matrix positions are row-major, Grassmann words are ordered by length and
then lexicographically, tensor bases are ``(a, b)`` with ``b`` varying fastest.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product as iproduct
from typing import Sequence

from . import linalg as la
from .algebra import Algebra, multiply, validate
from .linalg import ZERO, ONE


class ConstructionError(ValueError):
    pass


# -- structures ------------------------------------------------------------


def _norm_element(g, group: tuple) -> tuple:
    if isinstance(g, int):
        g = (g,)
    g = tuple(int(x) for x in g)
    if len(g) != len(group):
        raise ConstructionError(f"group element {g} does not match group {group}")
    return tuple(x % n for x, n in zip(g, group))


@dataclass(frozen=True)
class Grading:
    """Grading by a finite abelian group ``Z_{n_1} x ... x Z_{n_t}``.

    ``degrees[i]`` is the degree of basis vector ``i``; the basis must be
    homogeneous.
    """

    group: tuple
    degrees: tuple

    def __post_init__(self):
        group = tuple(int(n) for n in self.group)
        if any(n < 1 for n in group):
            raise ConstructionError("invariant factors must be positive")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "degrees", tuple(_norm_element(g, group) for g in self.degrees))

    def add(self, g: tuple, h: tuple) -> tuple:
        return tuple((a + b) % n for a, b, n in zip(g, h, self.group))

    def neg(self, g: tuple) -> tuple:
        return tuple((-a) % n for a, n in zip(g, self.group))

    @property
    def zero(self) -> tuple:
        return (0,) * len(self.group)

    def elements(self) -> list[tuple]:
        return list(iproduct(*(range(n) for n in self.group)))

    def support(self) -> list[tuple]:
        return sorted(set(self.degrees))

    def component(self, g) -> list[int]:
        g = _norm_element(g, self.group)
        return [i for i, d in enumerate(self.degrees) if d == g]

    def check(self, A: Algebra) -> str | None:
        if len(self.degrees) != A.dim:
            return "degree list length does not match dim"
        for (i, j), row in A.table.items():
            want = self.add(self.degrees[i], self.degrees[j])
            for k in row:
                if self.degrees[k] != want:
                    return f"product e{i}e{j} has a component e{k} of degree {self.degrees[k]}, expected {want}"
        return None


@dataclass(frozen=True)
class Involution:
    """Linear anti-automorphism of order two.

    ``matrix`` acts on column coordinates: column ``j`` holds the coordinates
    of ``e_j^*``.
    """

    matrix: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(la.vec(r) for r in self.matrix))

    def apply(self, v: Sequence) -> la.Vector:
        return la.mat_vec(self.matrix, v)

    def check(self, A: Algebra) -> str | None:
        d = A.dim
        if len(self.matrix) != d or any(len(r) != d for r in self.matrix):
            return "involution matrix has the wrong shape"
        if la.mat_mul(self.matrix, self.matrix) != la.identity(d):
            return "involution does not square to the identity"
        stars = [self.apply(A.e(i)) for i in range(d)]
        for i in range(d):
            for j in range(d):
                lhs = self.apply(A.basis_product_vector(i, j))
                rhs = multiply(stars[j], stars[i], A)
                if lhs != rhs:
                    return f"(e{i}e{j})* != e{j}* e{i}*"
        return None


@dataclass(frozen=True, eq=False)
class StructuredAlgebra:
    algebra: Algebra
    structure: Grading | Involution | None = None
    name: str = ""

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def grading(self) -> Grading | None:
        return self.structure if isinstance(self.structure, Grading) else None

    @property
    def involution(self) -> Involution | None:
        return self.structure if isinstance(self.structure, Involution) else None

    @property
    def kind(self) -> str:
        if self.grading is not None:
            return "grading"
        if self.involution is not None:
            return "involution"
        return "trivial"

    def check(self) -> str | None:
        v = validate(self.algebra)
        if v is not None:
            return str(v)
        if self.structure is not None:
            return self.structure.check(self.algebra)
        return None

    def with_structure(self, structure, name: str | None = None) -> "StructuredAlgebra":
        return StructuredAlgebra(self.algebra, structure, self.name if name is None else name)


def _plain(A: Algebra, name: str, structure=None) -> StructuredAlgebra:
    return StructuredAlgebra(A, structure, name)


def as_structured(A) -> StructuredAlgebra:
    return A if isinstance(A, StructuredAlgebra) else StructuredAlgebra(A)


# -- basic families --------------------------------------------------------


def _unit_label(i: int, j: int, n: int) -> str:
    return f"e{i + 1}{j + 1}" if n < 10 else f"e{i + 1},{j + 1}"


def _elementary_degrees(positions, elementary, group):
    gs = [_norm_element(g, group) for g in elementary]
    return [tuple((-a + b) % m for a, b, m in zip(gs[i], gs[j], group)) for i, j in positions]


def _positional(n: int, positions: list[tuple[int, int]], name: str, *, elementary=None, degrees=None,
                group=(2,), involution=None) -> StructuredAlgebra:
    index = {p: k for k, p in enumerate(positions)}
    table = {}
    for a, (i, j) in enumerate(positions):
        for b, (k, l) in enumerate(positions):
            if j == k and (i, l) in index:
                table[(a, b)] = {index[(i, l)]: ONE}
    unit = [ZERO] * len(positions)
    for i in range(n):
        unit[index[(i, i)]] = ONE
    A = Algebra(len(positions), table, tuple(_unit_label(i, j, n) for i, j in positions), tuple(unit))
    structure = None
    if elementary is not None and degrees is not None:
        raise ConstructionError("give either elementary or per-basis degrees, not both")
    if elementary is not None:
        if len(elementary) != n:
            raise ConstructionError("elementary grading needs one group element per row index")
        structure = Grading(tuple(group), tuple(_elementary_degrees(positions, elementary, tuple(group))))
    elif degrees is not None:
        structure = Grading(tuple(group), tuple(degrees))
    if involution is not None:
        if structure is not None:
            raise ConstructionError("a grading and an involution cannot be combined")
        structure = _matrix_involution(n, positions, index, involution)
    S = StructuredAlgebra(A, structure, name)
    err = S.check()
    if err:
        raise ConstructionError(err)
    return S


def _matrix_involution(n, positions, index, kind) -> Involution:
    d = len(positions)
    cols = []
    for (i, j) in positions:
        col = [ZERO] * d
        if kind == "transpose":
            col[index[(j, i)]] = ONE
        elif kind == "reflection":
            col[index[(n - 1 - j, n - 1 - i)]] = ONE
        elif kind == "symplectic":
            if n % 2:
                raise ConstructionError("symplectic involution needs even n")
            # X* = W X^T W^{-1} with W = [[0, I], [-I, 0]]
            h = n // 2
            def w(r):
                return (r + h, -ONE) if r < h else (r - h, ONE)
            # W E_ji W^T = (W e_j)(W e_i)^T
            (r, s1) = w(j)
            (c, s2) = w(i)
            col[index[(r, c)]] = s1 * s2
        else:
            raise ConstructionError(f"unknown involution {kind!r}")
        cols.append(col)
    return Involution(la.transpose(cols))


def ut(n: int, *, elementary=None, degrees=None, group=(2,), involution=None) -> StructuredAlgebra:
    """Upper triangular n x n matrices; basis e_ij (i <= j) row-major."""
    if n < 1:
        raise ConstructionError("n must be positive")
    positions = [(i, j) for i in range(n) for j in range(i, n)]
    if involution not in (None, "reflection"):
        raise ConstructionError("ut(n) only supports the reflection involution")
    return _positional(n, positions, f"UT{n}", elementary=elementary, degrees=degrees, group=group,
                       involution=involution)


def full_matrix(n: int, *, elementary=None, degrees=None, group=(2,), involution=None) -> StructuredAlgebra:
    if n < 1:
        raise ConstructionError("n must be positive")
    positions = [(i, j) for i in range(n) for j in range(n)]
    return _positional(n, positions, f"M{n}", elementary=elementary, degrees=degrees, group=group,
                       involution=involution)


def zero(d: int) -> StructuredAlgebra:
    return _plain(Algebra(d, {}, tuple(f"z{i + 1}" for i in range(d))), f"zero({d})")


def field() -> StructuredAlgebra:
    return _plain(Algebra(1, {(0, 0): {0: ONE}}, ("1",), (ONE,)), "F")


def group_algebra(k: int = 1, *, graded: bool = False) -> StructuredAlgebra:
    """Group algebra of Z_2^k; with ``graded`` it carries the canonical Z_2^k-grading."""
    if k < 1:
        raise ConstructionError("k must be positive")
    elems = list(iproduct((0, 1), repeat=k))
    index = {g: i for i, g in enumerate(elems)}
    table = {}
    for a, g in enumerate(elems):
        for b, h in enumerate(elems):
            table[(a, b)] = {index[tuple((x + y) % 2 for x, y in zip(g, h))]: ONE}
    if k == 1:
        labels = ("1", "c")
    else:
        labels = tuple("1" if not any(g) else "c" + "".join(map(str, g)) for g in elems)
    A = Algebra(len(elems), table, labels, la.unit_vector(len(elems), 0))
    structure = Grading((2,) * k, tuple(elems)) if graded else None
    return _plain(A, f"F[Z2^{k}]", structure)


def _poset_order(points, relations):
    idx = {p: i for i, p in enumerate(points)}
    n = len(points)
    le = [[i == j for j in range(n)] for i in range(n)]
    for x, y in relations:
        if x not in idx or y not in idx:
            raise ConstructionError(f"relation {x}<={y} mentions an unknown point")
        le[idx[x]][idx[y]] = True
    for k in range(n):
        for i in range(n):
            if le[i][k]:
                for j in range(n):
                    if le[k][j]:
                        le[i][j] = True
    for i in range(n):
        for j in range(n):
            if i != j and le[i][j] and le[j][i]:
                raise ConstructionError(f"poset relation has a cycle through {points[i]} and {points[j]}")
    return le


def incidence(relations, points=None) -> StructuredAlgebra:
    """Incidence algebra: basis e_xy for x <= y, e_xy e_zw = delta_yz e_xw.

    The order is the reflexive-transitive closure of ``relations``.
    """
    relations = [tuple(r) for r in relations]
    if points is None:
        points = []
        for r in relations:
            for p in r:
                if p not in points:
                    points.append(p)
        try:
            points = sorted(points)
        except TypeError:
            pass
    points = list(points)
    le = _poset_order(points, relations)
    n = len(points)
    positions = [(i, j) for i in range(n) for j in range(n) if le[i][j]]
    index = {p: k for k, p in enumerate(positions)}
    table = {}
    for a, (i, j) in enumerate(positions):
        for b, (k, l) in enumerate(positions):
            if j == k:
                table[(a, b)] = {index[(i, l)]: ONE}
    unit = [ZERO] * len(positions)
    for i in range(n):
        unit[index[(i, i)]] = ONE
    labels = tuple(f"e{points[i]}{points[j]}" for i, j in positions)
    A = Algebra(len(positions), table, labels, tuple(unit))
    return _plain(A, "I(X)")


def _words(k: int) -> list[tuple]:
    return [w for r in range(k + 1) for w in combinations(range(k), r)]


def _word_label(w: tuple) -> str:
    return "".join(f"g{i + 1}" for i in w) or "1"


def _word_product(u: tuple, v: tuple):
    """(sign, word) for the product of two Grassmann words, or None."""
    if set(u) & set(v):
        return None
    seq = list(u) + list(v)
    inversions = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-ONE if inversions % 2 else ONE), tuple(sorted(seq))


def grassmann_truncated(k: int) -> StructuredAlgebra:
    """Grassmann algebra on k generators, Z_2-graded by word length parity."""
    if k < 1:
        raise ConstructionError("grassmann truncation needs k >= 1")
    words = _words(k)
    index = {w: i for i, w in enumerate(words)}
    table = {}
    for a, u in enumerate(words):
        for b, v in enumerate(words):
            p = _word_product(u, v)
            if p is not None:
                table[(a, b)] = {index[p[1]]: p[0]}
    A = Algebra(len(words), table, tuple(_word_label(w) for w in words), la.unit_vector(len(words), 0))
    return _plain(A, f"G{k}", Grading((2,), tuple((len(w) % 2,) for w in words)))


# -- derived constructions --------------------------------------------------


def matrix_algebra(A, n: int) -> StructuredAlgebra:
    """M_n(A); basis E_pq (x) a with positions row-major, A-index fastest.

    The grading of E_pq (x) a is the degree of a; an involution extends as
    (X*)_pq = (X_qp)*.
    """
    A = as_structured(A)
    if n < 1:
        raise ConstructionError("n must be positive")
    B = A.algebra
    d = B.dim
    def idx(p, q, a):
        return (p * n + q) * d + a
    table = {}
    for (a, b), row in B.table.items():
        for p in range(n):
            for q in range(n):
                for s in range(n):
                    table[(idx(p, q, a), idx(q, s, b))] = {idx(p, s, k): c for k, c in row.items()}
    labels = tuple(f"{B.basis_labels[a]}@{p + 1},{q + 1}" for p in range(n) for q in range(n) for a in range(d))
    unit = None
    if B.unit is not None:
        u = [ZERO] * (n * n * d)
        for p in range(n):
            for a in range(d):
                u[idx(p, p, a)] = B.unit[a]
        unit = tuple(u)
    M = Algebra(n * n * d, table, labels, unit)
    structure = None
    if A.grading is not None:
        g = A.grading
        structure = Grading(g.group, tuple(g.degrees[a] for p in range(n) for q in range(n) for a in range(d)))
    elif A.involution is not None:
        star = A.involution.matrix
        D = n * n * d
        cols = []
        for p in range(n):
            for q in range(n):
                for a in range(d):
                    col = [ZERO] * D
                    for k in range(d):
                        if star[k][a]:
                            col[idx(q, p, k)] = star[k][a]
                    cols.append(col)
        structure = Involution(la.transpose(cols))
    name = f"M{n}({A.name})" if A.name else f"M{n}(A)"
    return StructuredAlgebra(M, structure, name)


def _kron(M, N):
    return tuple(
        tuple(a * b for a in row_m for b in row_n)
        for row_m in M for row_n in N
    )


def _is_commutative(A: Algebra) -> bool:
    return all(A.basis_product(i, j) == A.basis_product(j, i) for i in range(A.dim) for j in range(A.dim))


def tensor_product(A, B, *, grading_mode: str = "product") -> StructuredAlgebra:
    """A (x) B with basis (a, b), b fastest.

    Gradings combine over the direct product group (``grading_mode="product"``)
    or, for a common group, by adding degrees (``"sum"``).  Involutions combine
    as (a (x) s)* = a* (x) s*.
    """
    A = as_structured(A)
    B = as_structured(B)
    X, Y = A.algebra, B.algebra
    dy = Y.dim
    table = {}
    for (a1, a2), ra in X.table.items():
        for (b1, b2), rb in Y.table.items():
            table[(a1 * dy + b1, a2 * dy + b2)] = {ka * dy + kb: ca * cb for ka, ca in ra.items() for kb, cb in rb.items()}
    labels = tuple(f"{la_}⊗{lb}" for la_ in X.basis_labels for lb in Y.basis_labels)
    unit = None
    if X.unit is not None and Y.unit is not None:
        unit = tuple(a * b for a in X.unit for b in Y.unit)
    T = Algebra(X.dim * dy, table, labels, unit)

    structure = None
    ga, gb = A.grading, B.grading
    ia, ib = A.involution, B.involution
    if (ga or gb) and (ia or ib):
        raise ConstructionError("cannot combine a grading with an involution")
    if ga and gb:
        if grading_mode == "product":
            structure = Grading(ga.group + gb.group, tuple(x + y for x in ga.degrees for y in gb.degrees))
        elif grading_mode == "sum":
            if ga.group != gb.group:
                raise ConstructionError("sum grading needs a common group")
            structure = Grading(ga.group, tuple(ga.add(x, y) for x in ga.degrees for y in gb.degrees))
        else:
            raise ConstructionError(f"unknown grading mode {grading_mode!r}")
    elif ga:
        structure = Grading(ga.group, tuple(x for x in ga.degrees for _ in range(dy)))
    elif gb:
        structure = Grading(gb.group, tuple(y for _ in range(X.dim) for y in gb.degrees))
    elif ia or ib:
        def star(S, inv):
            if inv is not None:
                return inv.matrix
            if not _is_commutative(S.algebra):
                raise ConstructionError("an involution factor needs a commutative partner without one")
            return la.identity(S.dim)
        structure = Involution(_kron(star(A, ia), star(B, ib)))
    name = f"{A.name}⊗{B.name}" if A.name and B.name else ""
    return StructuredAlgebra(T, structure, name)


def grassmann_envelope(B, k: int) -> StructuredAlgebra:
    """Truncated envelope B_0 (x) G_0 + B_1 (x) G_1 with k Grassmann generators."""
    B = as_structured(B)
    g = B.grading
    if g is None or g.group != (2,):
        raise ConstructionError("the Grassmann envelope needs a Z_2-grading")
    if k < 1:
        raise ConstructionError("grassmann truncation needs k >= 1")
    X = B.algebra
    words = _words(k)
    basis = [(a, w) for a in range(X.dim) for w in words if len(w) % 2 == g.degrees[a][0]]
    index = {p: i for i, p in enumerate(basis)}
    table = {}
    for i, (a, u) in enumerate(basis):
        for j, (b, v) in enumerate(basis):
            row = X.basis_product(a, b)
            wp = _word_product(u, v)
            if not row or wp is None:
                continue
            sign, w = wp
            table[(i, j)] = {index[(c, w)]: sign * coef for c, coef in row.items()}
    labels = tuple(f"{X.basis_labels[a]}^{_word_label(w)}" for a, w in basis)
    name = f"G{k}({B.name})" if B.name else f"G{k}(B)"
    return StructuredAlgebra(Algebra(len(basis), table, labels), None, name)


def direct_sum(A, B) -> StructuredAlgebra:
    A = as_structured(A)
    B = as_structured(B)
    X, Y = A.algebra, B.algebra
    dx = X.dim
    table = dict(X.table)
    for (i, j), row in Y.table.items():
        table[(i + dx, j + dx)] = {k + dx: c for k, c in row.items()}
    unit = None
    if X.unit is not None and Y.unit is not None:
        unit = tuple(X.unit) + tuple(Y.unit)
    labels = _disjoint_labels(X.basis_labels, Y.basis_labels)
    S = Algebra(dx + Y.dim, table, labels, unit)
    if A.kind != B.kind:
        raise ConstructionError(f"incompatible structures for a direct sum: {A.kind} and {B.kind}")
    structure = None
    if A.grading is not None:
        if A.grading.group != B.grading.group:
            raise ConstructionError("graded summands must share the group")
        structure = Grading(A.grading.group, A.grading.degrees + B.grading.degrees)
    elif A.involution is not None:
        structure = Involution(_block_diag(A.involution.matrix, B.involution.matrix))
    name = f"{A.name}⊕{B.name}" if A.name and B.name else ""
    return StructuredAlgebra(S, structure, name)


def _disjoint_labels(a, b):
    if set(a) & set(b):
        return tuple(f"{x}.1" for x in a) + tuple(f"{x}.2" for x in b)
    return tuple(a) + tuple(b)


def _block_diag(M, N):
    m, n = len(M), len(N)
    rows = [tuple(r) + (ZERO,) * n for r in M]
    rows += [(ZERO,) * m + tuple(r) for r in N]
    return tuple(rows)


def opposite(A) -> StructuredAlgebra:
    A = as_structured(A)
    X = A.algebra
    table = {(j, i): row for (i, j), row in X.table.items()}
    name = f"{A.name}^op" if A.name else ""
    return StructuredAlgebra(Algebra(X.dim, table, X.basis_labels, X.unit), A.structure, name)


def exchange(A) -> StructuredAlgebra:
    """A + A^op with the exchange involution (a, b)* = (b, a)."""
    A = as_structured(A)
    S = direct_sum(A.with_structure(None), opposite(A).with_structure(None))
    d = A.dim
    cols = []
    for i in range(2 * d):
        col = [ZERO] * (2 * d)
        col[(i + d) % (2 * d)] = ONE
        cols.append(col)
    name = f"{A.name}⊕{A.name}^op" if A.name else ""
    return StructuredAlgebra(S.algebra, Involution(la.transpose(cols)), name)


# -- descriptors -------------------------------------------------------------

_MATRIX_KEYS = ("elementary", "degrees", "group", "involution")


def build(desc) -> StructuredAlgebra:
    """Build from a named-family descriptor (a dict with one family key).

    Families: ``ut``, ``full_matrix``, ``zero``, ``field``, ``group_algebra``,
    ``incidence``, ``grassmann`` plus the combinators ``matrix``, ``tensor``,
    ``direct_sum``, ``envelope``, ``exchange``, ``opposite`` and ``plain``
    (drops the structure).
    """
    if isinstance(desc, str):
        desc = {desc: True}
    if not isinstance(desc, dict):
        raise ConstructionError(f"descriptor must be an object, got {type(desc).__name__}")
    opts = {k: desc[k] for k in _MATRIX_KEYS if k in desc}
    if "group" in opts:
        opts["group"] = tuple(opts["group"]) if isinstance(opts["group"], (list, tuple)) else (opts["group"],)
    if "ut" in desc:
        S = ut(int(desc["ut"]), **opts)
    elif "full_matrix" in desc:
        S = full_matrix(int(desc["full_matrix"]), **opts)
    elif "zero" in desc:
        S = zero(int(desc["zero"]))
    elif "field" in desc:
        S = field()
    elif "group_algebra" in desc:
        S = group_algebra(int(desc["group_algebra"]), graded=bool(desc.get("graded", False)))
    elif "incidence" in desc:
        inc = desc["incidence"]
        if isinstance(inc, dict):
            S = incidence(inc["relations"], inc.get("points"))
        else:
            S = incidence(inc)
    elif "grassmann" in desc:
        S = grassmann_truncated(int(desc["grassmann"]))
    elif "matrix" in desc:
        inner, n = desc["matrix"]
        S = matrix_algebra(build(inner), int(n))
    elif "tensor" in desc:
        a, b = desc["tensor"]
        S = tensor_product(build(a), build(b), grading_mode=desc.get("grading_mode", "product"))
    elif "direct_sum" in desc:
        parts = [build(p) for p in desc["direct_sum"]]
        S = parts[0]
        for p in parts[1:]:
            S = direct_sum(S, p)
    elif "envelope" in desc:
        inner, k = desc["envelope"]
        S = grassmann_envelope(build(inner), int(k))
    elif "exchange" in desc:
        S = exchange(build(desc["exchange"]))
    elif "opposite" in desc:
        S = opposite(build(desc["opposite"]))
    elif "plain" in desc:
        S = build(desc["plain"]).with_structure(None)
    else:
        raise ConstructionError(f"unknown family in descriptor {desc!r}")
    if "name" in desc:
        S = StructuredAlgebra(S.algebra, S.structure, str(desc["name"]))
    return S
