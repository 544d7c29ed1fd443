"""Jacobson radical, Wedderburn-Malcev complement and simple components.

All routines work in exact rational arithmetic.  Closedness of the ground
field is replaced by a splitting requirement: whenever a step would need an
eigenvalue outside the rationals, :class:`NonSplit` is raised.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .algebra import (
    Algebra,
    Subspace,
    center,
    find_unit,
    is_ideal,
    multiply,
    power_chain,
    restrict,
    subspace_product,
)
from .constructions import StructuredAlgebra, as_structured
from .linalg import ZERO, ONE, Echelon, Vector


class StructureError(RuntimeError):
    """Base class for structural failures (CLI exit code 3)."""


class NonSplit(StructureError):
    """The semisimple quotient needs a field extension to split."""


class SimplicityUnverified(StructureError):
    """A candidate block failed the Burnside certificate."""


class RadicalNotInvariant(StructureError):
    """The radical is not stable under the action."""


class LiftingFailed(StructureError):
    """No multiplicative, action-compatible section was found."""


# -- action sets -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ActionSet:
    """Linear operators encoding a generalized action; ``operators[0]`` is the identity.

    Matrices act on column coordinate vectors.
    """

    dim: int
    operators: tuple
    kind: str = "trivial"  # trivial | grading | involution

    def __post_init__(self):
        ops = tuple(tuple(la.vec(r) for r in M) for M in self.operators)
        ident = la.identity(self.dim)
        if not ops or ops[0] != ident:
            ops = (ident,) + ops
        object.__setattr__(self, "operators", ops)
        cols = []
        for M in ops:
            cols.append(tuple({i: M[i][j] for i in range(self.dim) if M[i][j]} for j in range(self.dim)))
        object.__setattr__(self, "_cols", tuple(cols))

    @classmethod
    def with_identity(cls, dim: int, ops, kind: str) -> "ActionSet":
        """Identity followed by ``ops`` (kept even if one of them is also the identity)."""
        return cls(dim, (la.identity(dim),) + tuple(ops), kind)

    @classmethod
    def trivial(cls, dim: int) -> "ActionSet":
        return cls(dim, (la.identity(dim),), "trivial")

    @classmethod
    def from_structure(cls, S) -> "ActionSet":
        S = as_structured(S)
        d = S.dim
        if S.grading is not None:
            ops = []
            for g in S.grading.support():
                comp = set(S.grading.component(g))
                ops.append(tuple(tuple(ONE if (i == j and i in comp) else ZERO for j in range(d)) for i in range(d)))
            return cls.with_identity(d, ops, "grading")
        if S.involution is not None:
            return cls.with_identity(d, (S.involution.matrix,), "involution")
        return cls.trivial(d)

    @property
    def nontrivial(self) -> tuple:
        """Indices of operators other than the identity."""
        return tuple(range(1, len(self.operators)))

    def apply(self, idx: int, v: Sequence) -> Vector:
        out = [ZERO] * self.dim
        for j, x in enumerate(v):
            if x:
                for i, a in self._cols[idx][j].items():
                    out[i] += a * x
        return tuple(out)

    def restricted(self, basis: Sequence[Vector], sub: Subspace, apply_map=None) -> "ActionSet":
        """Operators restricted to an invariant subspace, in the coordinates of ``sub``."""
        n = sub.dim
        mats = []
        for idx in self.nontrivial:
            cols = []
            for v in basis:
                w = self.apply(idx, v) if apply_map is None else apply_map(idx, v)
                cols.append(sub.coordinates(w))
            mats.append(la.transpose(cols) if cols else ())
        return ActionSet.with_identity(n, mats, self.kind)


def _ops(S, ops: ActionSet | None) -> ActionSet:
    if ops is not None:
        return ops
    return ActionSet.from_structure(S)


# -- radical -----------------------------------------------------------------


def radical(A) -> Subspace:
    """Null space of the trace form tr(L_{xy}) on the unitization.

    In characteristic zero this is exactly the Jacobson radical.
    """
    A = getattr(A, "algebra", A)
    d = A.dim
    if d == 0:
        return Subspace.zero(0)
    # trace of left multiplication by e_k on the unitization
    t = [ZERO] * d
    for (k, i), row in A.table.items():
        c = row.get(i)
        if c:
            t[k] += c
    rows = []
    for i in range(d):
        r = []
        for j in range(d):
            r.append(sum((c * t[k] for k, c in A.basis_product(i, j).items()), ZERO))
        r.append(t[i])
        rows.append(r)
    rows.append(list(t) + [Fraction(d + 1)])
    null = la.nullspace(rows, d + 1)
    vecs = []
    for v in null:
        assert v[d] == 0
        vecs.append(v[:d])
    return Subspace.span(vecs, d)


def nilpotency_index(J: Subspace, A: Algebra) -> int | None:
    """Smallest k with J^k = 0, or None if the powers stabilise at a nonzero space."""
    chain = power_chain(J, A)
    if chain[-1].dim:
        return None
    return len(chain) if J.dim else 1


def action_invariance_check(J: Subspace, ops: ActionSet) -> int | None:
    """None if every operator maps J into J, else the first violating operator index."""
    for idx in ops.nontrivial:
        for v in J.basis:
            if not J.contains(ops.apply(idx, v)):
                return idx
    return None


# -- Wedderburn-Malcev lifting ----------------------------------------------


@dataclass(frozen=True, eq=False)
class SemisimpleLift:
    """A multiplicative, action-compatible section of A -> A/J.

    ``quotient`` is A/J in the basis of complement coordinates; ``sections[i]``
    is the lift of its i-th basis vector.
    """

    radical: Subspace
    quotient: Algebra
    sections: tuple
    quotient_ops: ActionSet
    coords: tuple

    @property
    def complement(self) -> Subspace:
        return Subspace.span(self.sections, self.radical.ambient_dim)

    def lift(self, q: Sequence) -> Vector:
        return la.lincomb(q, self.sections, self.radical.ambient_dim)


def _quotient_coords(v, J: Subspace, coords: Sequence[int]) -> Vector:
    r = J.reduce(v)
    return tuple(r[c] for c in coords)


def semisimple_lift(A, J: Subspace | None = None, ops: ActionSet | None = None) -> SemisimpleLift:
    S = as_structured(A)
    A = S.algebra
    ops = _ops(S, ops)
    if J is None:
        J = radical(A)
    coords = tuple(J.complement_coordinates())
    s = len(coords)
    sections = [A.e(c) for c in coords]

    qtable = {}
    for i in range(s):
        for j in range(s):
            q = _quotient_coords(multiply(sections[i], sections[j], A), J, coords)
            row = {k: c for k, c in enumerate(q) if c}
            if row:
                qtable[(i, j)] = row
    labels = tuple(A.basis_labels[c] for c in coords)
    Q = Algebra(s, qtable, labels)
    op_mats = []
    for idx in ops.nontrivial:
        cols = [_quotient_coords(ops.apply(idx, sections[i]), J, coords) for i in range(s)]
        op_mats.append(la.transpose(cols) if cols else ())
    qops = ActionSet.with_identity(s, op_mats, ops.kind)

    Jp = J
    while True:
        errs = _section_errors(A, Q, qops, ops, sections)
        if not any(any(e) for e in errs):
            break
        if Jp.dim == 0:
            raise LiftingFailed("section errors persist after the radical powers vanished")
        J2p = subspace_product(Jp, Jp, A)
        sections = _lift_step(A, Q, qops, ops, sections, Jp, J2p)
        Jp = J2p
    return SemisimpleLift(J, Q, tuple(sections), qops, coords)


def _section_errors(A, Q, qops, ops, sections):
    d = A.dim
    s = len(sections)
    out = []
    for i in range(s):
        for j in range(s):
            prod = multiply(sections[i], sections[j], A)
            want = la.lincomb([Q.basis_product(i, j).get(k, ZERO) for k in range(s)], sections, d)
            out.append(la.sub(prod, want))
    for n, idx in enumerate(ops.nontrivial, start=1):
        for i in range(s):
            img = ops.apply(idx, sections[i])
            want = la.lincomb([qops.operators[n][k][i] for k in range(s)], sections, d)
            out.append(la.sub(img, want))
    return out


def _lift_step(A, Q, qops, ops, sections, Jp: Subspace, J2p: Subspace):
    """Correct the section by elements of J^p so it is multiplicative modulo J^{2p}."""
    d = A.dim
    s = len(sections)
    U = Jp.basis
    R = len(U)
    mod_coords = J2p.complement_coordinates()

    def red(v):
        r = J2p.reduce(v)
        return {n: r[c] for n, c in enumerate(mod_coords) if r[c]}

    red_u = [red(u) for u in U]
    left = [[red(multiply(sections[i], u, A)) for u in U] for i in range(s)]
    right = [[red(multiply(u, sections[j], A)) for u in U] for j in range(s)]

    equations = []

    def emit(acc: dict, rhs_vec: dict):
        for c in set(acc) | set(rhs_vec):
            equations.append((acc.get(c, {}), -rhs_vec.get(c, ZERO)))

    def bump(acc, var, vec, coef=ONE):
        for c, a in vec.items():
            row = acc.setdefault(c, {})
            row[var] = row.get(var, ZERO) + coef * a

    for i in range(s):
        for j in range(s):
            acc: dict = {}
            for r in range(R):
                bump(acc, j * R + r, left[i][r])
                bump(acc, i * R + r, right[j][r])
            for k, q in Q.basis_product(i, j).items():
                for r in range(R):
                    bump(acc, k * R + r, red_u[r], -q)
            err = la.sub(multiply(sections[i], sections[j], A),
                         la.lincomb([Q.basis_product(i, j).get(k, ZERO) for k in range(s)], sections, d))
            emit(acc, red(err))
    for n, idx in enumerate(ops.nontrivial, start=1):
        op_u = [red(ops.apply(idx, u)) for u in U]
        T = qops.operators[n]
        for i in range(s):
            acc = {}
            for r in range(R):
                bump(acc, i * R + r, op_u[r])
            for k in range(s):
                if T[k][i]:
                    for r in range(R):
                        bump(acc, k * R + r, red_u[r], -T[k][i])
            err = la.sub(ops.apply(idx, sections[i]), la.lincomb([T[k][i] for k in range(s)], sections, d))
            emit(acc, red(err))
    x = la.solve(equations, s * R)
    if x is None:
        raise LiftingFailed("no action-compatible multiplicative section modulo the next radical power")
    return [la.add(sections[i], la.lincomb(x[i * R:(i + 1) * R], U, d)) for i in range(s)]


def wedderburn_malcev(A, J: Subspace | None = None, ops: ActionSet | None = None) -> Subspace:
    """Semisimple subalgebra S with A = S + J, stable under the action."""
    return semisimple_lift(A, J, ops).complement


# -- central idempotents -----------------------------------------------------


def _min_poly(w: Vector, e: Vector, Q: Algebra) -> list[Fraction]:
    """Monic minimal polynomial of w in the unital algebra with identity e (low degree first)."""
    powers = [e]
    ech = Echelon(Q.dim, [e])
    cur = e
    while True:
        cur = multiply(cur, w, Q) if len(powers) > 1 else w
        if ech.contains(cur):
            eqs = [({i: p[c] for i, p in enumerate(powers) if p[c]}, cur[c]) for c in range(Q.dim)]
            coef = la.solve(eqs, len(powers))
            return [-c for c in coef] + [ONE]
        ech.add(cur)
        powers.append(cur)


def _rational_roots(poly: list[Fraction]) -> list[Fraction]:
    """Roots of a squarefree polynomial that splits over Q; NonSplit otherwise."""
    import sympy

    x = sympy.Symbol("x")
    P = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(poly)], x, domain="QQ")
    _, factors = P.factor_list()
    roots = []
    for f, mult in factors:
        if f.degree() != 1 or mult != 1:
            factor = str(f.as_expr()) if mult == 1 else f"({f.as_expr()})^{mult}"
            raise NonSplit(f"a central element has minimal polynomial factor {factor}, which does not split over Q")
        a, b = f.all_coeffs()
        r = -sympy.Rational(b) / sympy.Rational(a)
        roots.append(Fraction(int(r.p), int(r.q)))
    return sorted(roots)


def central_idempotents(Q: Algebra) -> list[Vector]:
    """Primitive central idempotents of a split semisimple algebra."""
    if Q.dim == 0:
        return []
    u = find_unit(Q)
    if u is None:
        raise NonSplit("semisimple quotient has no identity")
    Z = center(Q)
    idems = [u]
    for z in Z.basis:
        nxt = []
        for e in idems:
            w = multiply(z, e, Q)
            poly = _min_poly(w, e, Q)
            if len(poly) == 2:
                nxt.append(e)
                continue
            roots = _rational_roots(poly)
            for lam in roots:
                f = e
                for mu in roots:
                    if mu != lam:
                        f = la.scale(1 / (lam - mu), multiply(f, la.sub(w, la.scale(mu, e)), Q))
                nxt.append(f)
        idems = nxt
    return idems


# -- simplicity certificate --------------------------------------------------


@dataclass(frozen=True)
class SimplicityResult:
    verdict: str  # certified-yes | no | inconclusive
    span_dim: int
    witness: Subspace | None = None
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.verdict == "certified-yes"


def _op_rows_from_cols(cols: list[dict], n: int) -> dict:
    rows: dict = {}
    for j, col in enumerate(cols):
        for i, a in col.items():
            rows.setdefault(i, {})[j] = a
    return rows


def _flatten(rows: dict, n: int) -> dict:
    return {i * n + j: a for i, r in rows.items() for j, a in r.items()}


def _unflatten(flat: dict, n: int) -> dict:
    rows: dict = {}
    for key, a in flat.items():
        rows.setdefault(key // n, {})[key % n] = a
    return rows


def _compose(G: dict, X: dict) -> dict:
    """Row-dict matrix product G X."""
    out: dict = {}
    for i, grow in G.items():
        acc: dict = {}
        for k, g in grow.items():
            xr = X.get(k)
            if xr:
                for j, x in xr.items():
                    acc[j] = acc.get(j, ZERO) + g * x
        acc = {j: a for j, a in acc.items() if a}
        if acc:
            out[i] = acc
    return out


def _generators(A: Algebra, ops: ActionSet) -> list[dict]:
    n = A.dim
    gens = []
    for i in range(n):
        gens.append(_op_rows_from_cols([A.basis_product(i, j) for j in range(n)], n))
        gens.append(_op_rows_from_cols([A.basis_product(j, i) for j in range(n)], n))
    for idx in ops.nontrivial:
        gens.append(_op_rows_from_cols(list(ops._cols[idx]), n))
    return gens


def burnside_span(A: Algebra, ops: ActionSet) -> int:
    """Dimension of the operator algebra generated by multiplications, the action and 1."""
    n = A.dim
    N = n * n
    ech = Echelon(N)
    ech.add({i * n + i: ONE for i in range(n)})
    # x -> a x b spans the multiplication algebra together with L_a, R_b
    for i in range(n):
        for j in range(n):
            cols = []
            for k in range(n):
                ik = A.basis_product(i, k)
                col: dict = {}
                for l, c in ik.items():
                    for m, g in A.basis_product(l, j).items():
                        col[m] = col.get(m, ZERO) + c * g
                cols.append({m: a for m, a in col.items() if a})
            ech.add(_flatten(_op_rows_from_cols(cols, n), n))
            if ech.full:
                return N
    gens = _generators(A, ops)
    for g in gens:
        ech.add(_flatten(g, n))
    if ech.full:
        return N
    queue = [r for r in ech.sorted_rows()]
    while queue and not ech.full:
        X = _unflatten(queue.pop(), n)
        for g in gens:
            Y = _flatten(_compose(g, X), n)
            if Y and ech.add(Y):
                queue.append(dict(ech.rows[-1]))
                if ech.full:
                    break
    return ech.rank


def generated_ideal(v: Vector, A: Algebra, ops: ActionSet) -> Subspace:
    """Smallest action-stable two-sided ideal containing v."""
    ech = Echelon(A.dim)
    if not ech.add(v):
        return Subspace.zero(A.dim)
    queue = [la.to_dense(ech.rows[-1], A.dim)]
    while queue:
        x = queue.pop()
        images = []
        for i in range(A.dim):
            ei = A.e(i)
            images.append(multiply(ei, x, A))
            images.append(multiply(x, ei, A))
        for idx in ops.nontrivial:
            images.append(ops.apply(idx, x))
        for y in images:
            if ech.add(y):
                queue.append(la.to_dense(ech.rows[-1], A.dim))
    return Subspace._from_echelon(ech)


def _structural_witness(A: Algebra, ops: ActionSet) -> Subspace | None:
    """A nonzero invariant radical, or the ideal of a central idempotent."""
    n = A.dim
    J = radical(A)
    if 0 < J.dim < n and action_invariance_check(J, ops) is None:
        return J
    if J.dim == 0:
        try:
            idems = central_idempotents(A)
        except NonSplit:
            return None
        for e in idems:
            I = generated_ideal(e, A, ops)
            if 0 < I.dim < n:
                return I
    return None


def is_action_simple(A, ops: ActionSet | None = None, *, budget: int = 16, seed: int = 0) -> SimplicityResult:
    """Burnside certificate for simplicity under the action.

    certified-yes when A^2 != 0 and the generated operator algebra is all of
    End(A); no with a proper invariant ideal when one is found among basis
    vectors, the radical, central idempotents or ``budget`` seeded random
    elements; inconclusive otherwise.
    """
    S = as_structured(A)
    A = S.algebra
    ops = _ops(S, ops)
    n = A.dim
    if n == 0:
        return SimplicityResult("no", 0, None, "zero algebra")
    if not A.table:
        wit = generated_ideal(A.e(0), A, ops)
        return SimplicityResult("no", 0, wit if 0 < wit.dim < n else None, "A^2 = 0")
    span = burnside_span(A, ops)
    if span == n * n:
        return SimplicityResult("certified-yes", span)
    best = None
    for i in range(n):
        I = generated_ideal(A.e(i), A, ops)
        if 0 < I.dim < n and (best is None or I.dim < best.dim):
            best = I
    if best is None:
        best = _structural_witness(A, ops)
    if best is None:
        rng = random.Random(seed)
        for _ in range(budget):
            v = tuple(Fraction(rng.randint(-9, 9)) for _ in range(n))
            I = generated_ideal(v, A, ops)
            if 0 < I.dim < n:
                best = I
                break
    if best is not None:
        return SimplicityResult("no", span, best, "proper invariant ideal")
    return SimplicityResult("inconclusive", span, None, "operator span below d^2 and no ideal found")


# -- components ------------------------------------------------------------


def _merge_by_action(Q: Algebra, qops: ActionSet, idems: list[Vector]):
    r = len(idems)
    parent = list(range(r))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    blocks = [Subspace.span([multiply(Q.e(i), e, Q) for i in range(Q.dim)], Q.dim) for e in idems]
    for idx in qops.nontrivial:
        for a in range(r):
            for v in blocks[a].basis:
                img = qops.apply(idx, v)
                for b in range(r):
                    if b != a and find(a) != find(b) and any(multiply(idems[b], img, Q)):
                        parent[find(b)] = find(a)
    groups: dict = {}
    for a in range(r):
        groups.setdefault(find(a), []).append(a)
    return [groups[k] for k in sorted(groups)], blocks


def quotient_components(lift: SemisimpleLift) -> list[tuple[Subspace, SimplicityResult]]:
    """Action-simple ideals of the quotient, each with its certificate."""
    Q, qops = lift.quotient, lift.quotient_ops
    idems = central_idempotents(Q)
    groups, blocks = _merge_by_action(Q, qops, idems)
    out = []
    for g in groups:
        B = Subspace.span([v for a in g for v in blocks[a].basis], Q.dim)
        for idx in qops.nontrivial:
            for v in B.basis:
                if not B.contains(qops.apply(idx, v)):
                    raise StructureError("merged block is not stable under the action")
        alg = restrict(Q, B)
        res = is_action_simple(alg, qops.restricted(B.basis, B))
        if not res.certified:
            raise SimplicityUnverified(f"block of dim {B.dim} is {res.verdict}: {res.reason}")
        out.append((B, res))
    return out


def simple_components(S: Subspace | SemisimpleLift, A=None, ops: ActionSet | None = None) -> list[Subspace]:
    """The action-simple components of a complement, as subspaces of A.

    Components are ordered by their leading pivot column.
    """
    if isinstance(S, SemisimpleLift):
        lift = S
    else:
        SA = as_structured(A)
        lift = semisimple_lift(SA, None, ops)
        if lift.complement != S:
            lift = _lift_from_complement(SA.algebra, S, _ops(SA, ops))
    comps = [Subspace.span([lift.lift(v) for v in B.basis], lift.radical.ambient_dim)
             for B, _ in quotient_components(lift)]
    return sorted(comps, key=lambda c: c.pivots)


def _lift_from_complement(A: Algebra, S: Subspace, ops: ActionSet) -> SemisimpleLift:
    """Rebuild the section data for a caller-supplied complement."""
    J = radical(A)
    coords = tuple(J.complement_coordinates())
    # section of e_c: the unique element of S congruent to e_c modulo J
    W = S + J
    if W.dim != A.dim or S.intersection(J).dim:
        raise ValueError("S is not a vector complement of the radical")
    sections = []
    for c in coords:
        eqs = []
        # x in S with x - e_c in J: solve sum a_i s_i + sum b_j u_j = e_c, keep S part
        n1, n2 = S.dim, J.dim
        for k in range(A.dim):
            row = {i: s[k] for i, s in enumerate(S.basis) if s[k]}
            row.update({n1 + j: u[k] for j, u in enumerate(J.basis) if u[k]})
            eqs.append((row, ONE if k == c else ZERO))
        x = la.solve(eqs, n1 + n2)
        sections.append(la.lincomb(x[:n1], S.basis, A.dim))
    base = semisimple_lift(StructuredAlgebra(A), J, ops)
    return SemisimpleLift(J, base.quotient, tuple(sections), base.quotient_ops, coords)


# -- report ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class StructureReport:
    radical: Subspace
    complement: Subspace
    components: tuple
    certificates: tuple = ()
    nilpotency_index: int | None = None
    kind: str = "trivial"

    @property
    def component_dims(self) -> list[int]:
        return [c.dim for c in self.components]


def analyze(A, ops: ActionSet | None = None) -> StructureReport:
    """radical -> Wedderburn-Malcev complement -> action-simple components."""
    S = as_structured(A)
    alg = S.algebra
    ops = _ops(S, ops)
    J = radical(alg)
    if action_invariance_check(J, ops) is not None:
        raise RadicalNotInvariant("the radical is not stable under the action")
    lift = semisimple_lift(S, J, ops)
    pairs = quotient_components(lift)
    comps = [(Subspace.span([lift.lift(v) for v in B.basis], alg.dim), res) for B, res in pairs]
    comps.sort(key=lambda p: p[0].pivots)
    return StructureReport(
        radical=J,
        complement=lift.complement,
        components=tuple(c for c, _ in comps),
        certificates=tuple(r for _, r in comps),
        nilpotency_index=nilpotency_index(J, alg),
        kind=ops.kind,
    )


def check_radical(J: Subspace, A: Algebra) -> list[str]:
    """Postcondition failures for a computed radical (empty list when all hold)."""
    problems = []
    if not is_ideal(J, A):
        problems.append("not a two-sided ideal")
    if nilpotency_index(J, A) is None:
        problems.append("not nilpotent")
    coords = J.complement_coordinates()
    qtable = {}
    for i, a in enumerate(coords):
        for j, b in enumerate(coords):
            q = _quotient_coords(multiply(A.e(a), A.e(b), A), J, coords)
            row = {k: c for k, c in enumerate(q) if c}
            if row:
                qtable[(i, j)] = row
    if radical(Algebra(len(coords), qtable)).dim:
        problems.append("quotient is not semisimple")
    return problems
