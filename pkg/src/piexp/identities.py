"""Multilinear identities and codimensions.

Everything is evaluated on a homogeneous frame of the algebra: the standard
basis (trivial structure or grading) or a basis of symmetric and skew
elements (involution).  Each frame vector carries a label and every tag a
variable can wear acts on a frame vector by a scalar, so a decorated
monomial evaluated on a frame tuple is a scalar times a word in the frame.
All words of length ``m`` are tabulated once, with integer entries after a
harmless rescaling; zero tests and ranks are unaffected by it.

Tags: ``None`` (plain), a group element tuple (graded projection), ``"*"``
(involution).  Internally the involution case also uses ``"+"``/``"-"`` for
the symmetric and skew projections, converted to star form on output.
"""

from __future__ import annotations

import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as _field
from fractions import Fraction
from itertools import permutations, product as iproduct

import numpy as np

from . import linalg as la
from .algebra import Subspace, multiply
from .constructions import StructuredAlgebra, as_structured, grassmann_envelope, tensor_product

DEFAULT_BUDGET = 10**8  # covers m = 4, d = 12 with two labels
_INT_LIMIT = 2**62
_CHUNK = 1 << 14


class IdentityError(ValueError):
    """Decoration/structure mismatch or malformed polynomial."""


class BudgetExceeded(RuntimeError):
    pass


# -- polynomials -------------------------------------------------------------


def _norm_tag(tag):
    if tag is None or tag in ("*", "+", "-"):
        return tag
    if isinstance(tag, int):
        return (tag,)
    if isinstance(tag, (tuple, list)):
        return tuple(int(x) for x in tag)
    raise IdentityError(f"unknown decoration {tag!r}")


@dataclass(frozen=True)
class MultilinearMonomial:
    """``x_{vars[0]}^{tags[0]} ... x_{vars[m-1]}^{tags[m-1]}``; variables 1-based."""

    vars: tuple
    tags: tuple = ()

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vars)
        tags = tuple(_norm_tag(t) for t in self.tags) if self.tags else (None,) * len(vs)
        if len(tags) != len(vs):
            raise IdentityError("one decoration per variable")
        if sorted(vs) != list(range(1, len(vs) + 1)):
            raise IdentityError(f"monomial {vs} is not multilinear in x1..x{len(vs)}")
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "tags", tags)

    @property
    def degree(self) -> int:
        return len(self.vars)

    def sort_key(self):
        return self.vars, tuple("" if t is None else repr(t) for t in self.tags)

    def __str__(self):
        return " ".join(_var_str(v, t) for v, t in zip(self.vars, self.tags))


def _var_str(v: int, t) -> str:
    if t is None:
        return f"x{v}"
    if t == "*":
        return f"x{v}'"
    if t in ("+", "-"):
        return f"x{v}^{t}"
    if len(t) == 1:
        return f"x{v}^g{t[0]}"
    return f"x{v}^g({','.join(map(str, t))})"


class MultilinearPolynomial:
    """Sparse combination of multilinear monomials of a common degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, terms=None, degree: int | None = None):
        clean: dict = {}
        for mono, c in (terms.items() if isinstance(terms, dict) else (terms or ())):
            if not isinstance(mono, MultilinearMonomial):
                mono = MultilinearMonomial(*mono) if isinstance(mono[0], tuple) else MultilinearMonomial(mono)
            c = la.as_fraction(c)
            clean[mono] = clean.get(mono, la.ZERO) + c
        clean = {k: v for k, v in clean.items() if v}
        degrees = {k.degree for k in clean}
        if len(degrees) > 1:
            raise IdentityError("monomials of different degrees")
        if degree is None:
            degree = degrees.pop() if degrees else 0
        elif degrees and degrees != {degree}:
            raise IdentityError("degree mismatch")
        self.degree = degree
        self.terms = dict(sorted(clean.items(), key=lambda kv: kv[0].sort_key()))

    def __eq__(self, other):
        return isinstance(other, MultilinearPolynomial) and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, la.ZERO) + c
        return MultilinearPolynomial(out, self.degree or other.degree)

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        c = la.as_fraction(c)
        return MultilinearPolynomial({k: c * v for k, v in self.terms.items()}, self.degree)

    def __mul__(self, other):
        """Product of polynomials in disjoint variables; ``other`` is shifted past ``self``."""
        if not isinstance(other, MultilinearPolynomial):
            return self.scaled(other)
        shift = self.degree
        out = {}
        for a, c in self.terms.items():
            for b, e in other.terms.items():
                mono = MultilinearMonomial(a.vars + tuple(v + shift for v in b.vars), a.tags + b.tags)
                out[mono] = out.get(mono, la.ZERO) + c * e
        return MultilinearPolynomial(out, self.degree + other.degree)

    __rmul__ = scaled

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.terms.items():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = str(mono) if a == 1 else f"{la.format_fraction(a)} * {mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("- " if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__

    def kind(self) -> str:
        kinds = set()
        for mono in self.terms:
            for t in mono.tags:
                if t is None:
                    continue
                kinds.add("involution" if t in ("*", "+", "-") else "grading")
        if len(kinds) > 1:
            raise IdentityError("mixed decoration kinds")
        return kinds.pop() if kinds else "trivial"

    def star_form(self) -> "MultilinearPolynomial":
        """Rewrite symmetric/skew projection tags as combinations of x and x*."""
        out: dict = {}
        half = Fraction(1, 2)
        for mono, c in self.terms.items():
            options = []
            for t in mono.tags:
                if t == "+":
                    options.append(((None, half), ("*", half)))
                elif t == "-":
                    options.append(((None, half), ("*", -half)))
                else:
                    options.append(((t, la.ONE),))
            for choice in iproduct(*options):
                coef = c
                for _, s in choice:
                    coef *= s
                key = MultilinearMonomial(mono.vars, tuple(t for t, _ in choice))
                out[key] = out.get(key, la.ZERO) + coef
        return MultilinearPolynomial(out, self.degree)


def monomial(*vars, tags=None) -> MultilinearPolynomial:
    return MultilinearPolynomial({MultilinearMonomial(tuple(vars), tuple(tags or ())): 1})


def variable(tag=None) -> MultilinearPolynomial:
    return monomial(1, tags=(tag,))


def commutator(f: MultilinearPolynomial, g: MultilinearPolynomial) -> MultilinearPolynomial:
    """``[f, g]`` with the variables of ``g`` shifted past those of ``f``."""
    fg = f * g
    shift = f.degree
    swapped = {}
    for mono, c in (g * f).terms.items():
        # g*f has g's variables first; rename so g keeps the shifted block
        ren = tuple(v + shift if v <= g.degree else v - g.degree for v in mono.vars)
        swapped[MultilinearMonomial(ren, mono.tags)] = c
    return fg - MultilinearPolynomial(swapped, fg.degree)


def standard_polynomial(m: int) -> MultilinearPolynomial:
    terms = {}
    for perm in permutations(range(1, m + 1)):
        inv = sum(1 for i in range(m) for j in range(i + 1, m) if perm[i] > perm[j])
        terms[MultilinearMonomial(perm)] = -1 if inv % 2 else 1
    return MultilinearPolynomial(terms, m)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+)(?P<dec>\^g(?:\((?P<tup>[^)]*)\)|(?P<cyc>\d+))|')?)"
    r"|(?P<op>[-+*−]))"
)


def parse_polynomial(text: str) -> MultilinearPolynomial:
    """Parse ``3/2 * x1^g0 x3 x2 - x2 x1 x3``; ``x1'`` is the involution, ``x1^g(0,1)`` a degree."""
    pos, tokens = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise IdentityError(f"cannot parse polynomial near {text[pos:pos + 12]!r}")
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", Fraction(m.group("num"))))
        elif m.group("var"):
            if m.group("dec") == "'":
                tag = "*"
            elif m.group("tup") is not None:
                tag = tuple(int(x) for x in m.group("tup").split(",") if x.strip())
            elif m.group("cyc") is not None:
                tag = (int(m.group("cyc")),)
            else:
                tag = None
            tokens.append(("var", (int(m.group("idx")), tag)))
        elif m.group("op"):
            op = m.group("op")
            tokens.append(("op", "-" if op == "−" else op))
        else:
            break
    terms: dict = {}
    i, sign, expect_term = 0, 1, True
    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "op" and val in "+-":
            sign *= -1 if val == "-" else 1
            expect_term = True
            i += 1
            continue
        if not expect_term:
            raise IdentityError("missing '+' or '-' between terms")
        coef = Fraction(sign)
        if kind == "num":
            coef *= val
            i += 1
            if i < len(tokens) and tokens[i] == ("op", "*"):
                i += 1
        vs, tags = [], []
        while i < len(tokens) and tokens[i][0] == "var":
            vs.append(tokens[i][1][0])
            tags.append(tokens[i][1][1])
            i += 1
        if not vs:
            raise IdentityError("a term needs at least one variable")
        mono = MultilinearMonomial(tuple(vs), tuple(tags))
        terms[mono] = terms.get(mono, la.ZERO) + coef
        sign, expect_term = 1, False
    if expect_term:
        raise IdentityError("empty polynomial or dangling operator")
    return MultilinearPolynomial(terms)


# -- direct evaluation -------------------------------------------------------


def _apply_tag(tag, v, S: StructuredAlgebra):
    if tag is None:
        return tuple(v)
    if tag in ("*", "+", "-"):
        inv = S.involution
        if inv is None:
            raise IdentityError("involution decoration on an algebra without involution")
        w = inv.apply(v)
        if tag == "*":
            return w
        half = Fraction(1, 2)
        return tuple(half * (a + b) if tag == "+" else half * (a - b) for a, b in zip(v, w))
    gr = S.grading
    if gr is None:
        raise IdentityError("graded decoration on an algebra without grading")
    if len(tag) != len(gr.group):
        raise IdentityError(f"degree {tag} does not belong to the group {gr.group}")
    g = tuple(x % n for x, n in zip(tag, gr.group))
    return tuple(a if gr.degrees[i] == g else la.ZERO for i, a in enumerate(v))


def evaluate(f: MultilinearPolynomial, subs, A) -> la.Vector:
    """Value of ``f`` at ``x_i = subs[i-1]``."""
    S = as_structured(A)
    d = S.dim
    if len(subs) != f.degree:
        raise IdentityError(f"expected {f.degree} substitutions, got {len(subs)}")
    subs = [la.vec(s) for s in subs]
    if any(len(s) != d for s in subs):
        raise IdentityError("substitution length does not match dim")
    total = [la.ZERO] * d
    for mono, c in f.terms.items():
        x = None
        for v, t in zip(mono.vars, mono.tags):
            y = _apply_tag(t, subs[v - 1], S)
            x = y if x is None else multiply(x, y, S.algebra)
            if not any(x):
                break
        if any(x):
            for k, a in enumerate(x):
                if a:
                    total[k] += c * a
    return tuple(total)


# -- homogeneous frame -------------------------------------------------------


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


class _Frame:
    """Homogeneous basis with integer coordinates and its word tables."""

    def __init__(self, S: StructuredAlgebra):
        A = S.algebra
        d = A.dim
        self.S, self.d, self.kind = S, d, S.kind
        if S.kind == "involution":
            sym = Subspace.span([la.add(A.e(i), S.involution.apply(A.e(i))) for i in range(d)], d)
            skew = Subspace.span([la.sub(A.e(i), S.involution.apply(A.e(i))) for i in range(d)], d)
            vectors = list(sym.basis) + list(skew.basis)
            labels = ["+"] * sym.dim + ["-"] * skew.dim
            self.label_values = ["+", "-"]
        elif S.kind == "grading":
            vectors = A.basis()
            labels = list(S.grading.degrees)
            self.label_values = S.grading.elements()
        else:
            vectors = A.basis()
            labels = [None] * d
            self.label_values = [None]
        self.vectors = [la.integer_scale(v) for v in vectors]
        self.rational = [tuple(Fraction(x) for x in v) for v in self.vectors]
        self.labels = labels
        self.label_index = {lab: i for i, lab in enumerate(self.label_values)}
        self.lab = np.array([self.label_index[l] for l in labels], dtype=np.int64)
        dens = [c.denominator for row in A.table.values() for c in row.values()]
        scale = _lcm(dens)
        gamma = np.zeros((d, d, d), dtype=object)
        for (i, j), row in A.table.items():
            for k, c in row.items():
                gamma[i, j, k] = int(c * scale)
        F = np.array(self.vectors, dtype=object).reshape(d, d)
        R = np.einsum("bj,ijk->bik", F, gamma) if d else np.zeros((0, 0, 0), dtype=object)
        self.F, self.R = F, R
        self.maxF = max((abs(int(x)) for x in F.flat), default=0)
        self.maxR = max((abs(int(x)) for x in R.flat), default=0)
        self.gamma = gamma
        self._words: dict[int, np.ndarray] = {}

    def word_bound(self, m: int) -> int:
        return self.maxF * (self.d * self.maxR) ** (m - 1)

    def dtype_for(self, bound: int):
        return np.int64 if bound < _INT_LIMIT else object

    def words(self, m: int) -> np.ndarray:
        """``W[w]`` = product of the frame word with base-d digits ``w`` (first letter most significant)."""
        if m in self._words:
            return self._words[m]
        d = self.d
        dtype = self.dtype_for(self.word_bound(m))
        W = self.F.astype(dtype)
        Rall = self.R.transpose(1, 0, 2).reshape(d, d * d).astype(dtype)
        for _ in range(m - 1):
            W = (W @ Rall).reshape(-1, d)
        self._words[m] = W
        return W

    def tag_factor(self, tag, label) -> int:
        if tag is None:
            return 1
        if self.kind == "involution":
            if tag == "*":
                return 1 if label == "+" else -1
            if tag in ("+", "-"):
                return 1 if tag == label else 0
        elif self.kind == "grading" and isinstance(tag, tuple):
            gr = self.S.grading
            if len(tag) == len(gr.group):
                return 1 if tuple(x % n for x, n in zip(tag, gr.group)) == label else 0
        raise IdentityError(f"decoration {tag!r} does not match a {self.kind} structure")

    def tag_of(self, label):
        return label if self.kind != "trivial" else None

    def digits(self, idx: np.ndarray, m: int) -> np.ndarray:
        T = np.empty((len(idx), m), dtype=np.int64)
        rest = idx.copy()
        for p in range(m - 1, -1, -1):
            T[:, p] = rest % self.d
            rest //= self.d
        return T


_FRAMES: dict[int, _Frame] = {}


def _frame(S: StructuredAlgebra) -> _Frame:
    fr = _FRAMES.get(id(S))
    if fr is None or fr.S is not S:
        fr = _Frame(S)
        if len(_FRAMES) > 64:
            _FRAMES.clear()
        _FRAMES[id(S)] = fr
    return fr


# -- evaluation matrices -----------------------------------------------------


def _normalize_rows(M: np.ndarray) -> np.ndarray:
    """Drop zero rows, make rows primitive with a positive leading entry, deduplicate."""
    if M.dtype == object:
        seen = set()
        for row in M:
            ints = [int(x) for x in row]
            if not any(ints):
                continue
            g = 0
            for x in ints:
                g = math.gcd(g, x)
            lead = next(x for x in ints if x)
            s = g if lead > 0 else -g
            seen.add(tuple(x // s for x in ints))
        return np.array(sorted(seen), dtype=object).reshape(len(seen), M.shape[1])
    M = M[np.any(M != 0, axis=1)]
    if not len(M):
        return M
    g = np.gcd.reduce(np.abs(M), axis=1)
    lead = M[np.arange(len(M)), np.argmax(M != 0, axis=1)]
    M = M // (g * np.sign(lead))[:, None]
    return np.unique(M, axis=0)


@dataclass
class EvaluationMatrix:
    """Column space of the evaluation map, one block per label pattern.

    Rows are decorated monomials ``(sigma, pattern)``; the column span of the
    block for a pattern is kept as an exact echelon form, so ``rank`` is the
    codimension (or a lower bound in sampled mode).
    """

    m: int
    kind: str
    label_values: list
    blocks: dict = _field(default_factory=dict)
    strategy: str = "exact"
    samples: int | None = None
    seed: int | None = None
    column_count: int = 0

    @property
    def perms(self) -> list[tuple]:
        return list(permutations(range(self.m)))

    @property
    def rank(self) -> int:
        return sum(e.rank for e in self.blocks.values())

    @property
    def row_count(self) -> int:
        return math.factorial(self.m) * len(self.label_values) ** self.m

    def patterns(self) -> list[tuple]:
        return list(iproduct(self.label_values, repeat=self.m))

    def block(self, pattern) -> la.Echelon:
        return self.blocks.get(tuple(pattern)) or la.Echelon(math.factorial(self.m))

    def kernel(self, pattern) -> list[la.Vector]:
        return la.nullspace(self.block(pattern).rows, math.factorial(self.m))

    def annihilates(self, pattern, coeffs) -> bool:
        e = self.block(pattern)
        return all(sum((c * row.get(j, la.ZERO) for j, c in enumerate(coeffs) if c), la.ZERO) == 0 for row in e.rows)

    def polynomial(self, pattern, coeffs) -> MultilinearPolynomial:
        """Decorated polynomial with coefficient vector ``coeffs`` on the rows of ``pattern``."""
        terms = {}
        tags = [None if self.kind == "trivial" else lab for lab in pattern]
        for sigma, c in zip(self.perms, coeffs):
            if c:
                mono = MultilinearMonomial(tuple(v + 1 for v in sigma), tuple(tags[v] for v in sigma))
                terms[mono] = c
        f = MultilinearPolynomial(terms, self.m)
        return f.star_form() if self.kind == "involution" else f


def _exact_chunk(fr: _Frame, m: int, W: np.ndarray, start: int, stop: int, perms) -> dict:
    d = fr.d
    idx = np.arange(start, stop, dtype=np.int64)
    T = fr.digits(idx, m)
    powers = d ** np.arange(m - 1, -1, -1, dtype=np.int64)
    L = len(fr.label_values)
    pat = np.zeros(len(idx), dtype=np.int64)
    for i in range(m):
        pat += fr.lab[T[:, i]] * L**i
    vals = np.stack([W[(T[:, list(s)] * powers).sum(axis=1)] for s in perms])  # (m!, n, d)
    cols = vals.transpose(1, 2, 0).reshape(len(idx) * d, len(perms))
    pat = np.repeat(pat, d)
    out = {}
    for p in np.unique(pat):
        out[int(p)] = _normalize_rows(cols[pat == p])
    return out


def _pattern_key(fr: _Frame, code: int, m: int) -> tuple:
    L = len(fr.label_values)
    return tuple(fr.label_values[(code // L**i) % L] for i in range(m))


def _cost(S: StructuredAlgebra, m: int) -> int:
    fr = _frame(S)
    return math.factorial(m) * fr.d ** (m + 1) * len(fr.label_values) ** m


def _residuals(e: la.Echelon, V: np.ndarray) -> np.ndarray:
    """Rows of ``V`` (integers) scaled so that zero rows are exactly those inside the span of ``e``."""
    piv = e.pivots()
    rows = e.sorted_rows()
    den = _lcm(c.denominator for r in rows for c in r.values())
    B = [[int(r.get(j, 0) * den) for j in range(e.n)] for r in rows]
    maxV = max((abs(int(x)) for x in V.flat), default=0)
    maxB = max((abs(x) for r in B for x in r), default=0)
    big = maxV * (den + maxB * len(piv)) >= _INT_LIMIT or V.dtype == object
    dtype = object if big else np.int64
    V = V.astype(dtype)
    return V * den - V[:, piv] @ np.array(B, dtype=dtype).reshape(len(piv), e.n)


def _feed(blocks: dict, key, rows: np.ndarray, nperm: int):
    """Grow the exact span by rows of ``rows``; membership is tested in bulk."""
    e = blocks.get(key)
    if e is None:
        e = blocks[key] = la.Echelon(nperm)
    V = rows
    while len(V) and not e.full:
        if e.rank:
            V = V[np.any(_residuals(e, V) != 0, axis=1)]
            if not len(V):
                break
        e.add({j: Fraction(int(x)) for j, x in enumerate(V[0]) if x})
        V = V[1:]


def _exact_matrix(S: StructuredAlgebra, m: int, budget: int, threads: int) -> EvaluationMatrix:
    fr = _frame(S)
    cost = _cost(S, m)
    if cost > budget:
        raise BudgetExceeded(f"exact evaluation needs about {cost} operations, budget is {budget}")
    perms = list(permutations(range(m)))
    out = EvaluationMatrix(m, fr.kind, fr.label_values, strategy="exact", column_count=fr.d**m * fr.d)
    if fr.d == 0:
        return out
    W = fr.words(m)
    total = fr.d**m
    ranges = [(s, min(s + _CHUNK, total)) for s in range(0, total, _CHUNK)]
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda r: _exact_chunk(fr, m, W, r[0], r[1], perms), ranges))
    else:
        parts = (_exact_chunk(fr, m, W, a, b, perms) for a, b in ranges)
    for part in parts:
        for code in sorted(part):
            _feed(out.blocks, _pattern_key(fr, code, m), part[code], len(perms))
    return out


def _sampled_matrix(S: StructuredAlgebra, m: int, samples: int, seed: int) -> EvaluationMatrix:
    if samples < 1:
        raise ValueError("sampled strategy needs at least one sample")
    fr = _frame(S)
    d = fr.d
    perms = list(permutations(range(m)))
    out = EvaluationMatrix(m, fr.kind, fr.label_values, strategy="sampled", samples=samples, seed=seed,
                           column_count=samples * d)
    if d == 0:
        return out
    groups = [[i for i in range(d) if fr.lab[i] == li] for li in range(len(fr.label_values))]
    maxg = max((abs(int(x)) for x in fr.gamma.flat), default=0)
    ybound = 9 * fr.maxF * d
    bound = ybound**m * (d * d * maxg) ** (m - 1)
    dtype = np.int64 if bound < _INT_LIMIT else object
    gamma = fr.gamma.astype(dtype).reshape(d, d * d)
    F = fr.F.astype(dtype)
    for code, pattern in enumerate(iproduct(range(len(fr.label_values)), repeat=m)):
        if any(not groups[li] for li in pattern):
            continue
        rng = np.random.default_rng([seed, code])
        widths = [len(groups[li]) for li in pattern]
        coeffs = rng.integers(-9, 10, size=(samples, sum(widths)), dtype=np.int64).astype(dtype)
        Y, off = [], 0
        for li, w in zip(pattern, widths):
            Y.append(coeffs[:, off:off + w] @ F[groups[li]])
            off += w
        cache = {}

        def prod(prefix):
            if prefix in cache:
                return cache[prefix]
            if len(prefix) == 1:
                val = Y[prefix[0]]
            else:
                left = prod(prefix[:-1])
                tmp = (left @ gamma).reshape(samples, d, d)
                val = np.einsum("njk,nj->nk", tmp, Y[prefix[-1]])
            cache[prefix] = val
            return val

        vals = np.stack([prod(s) for s in perms])
        cols = vals.transpose(1, 2, 0).reshape(samples * d, len(perms))
        key = tuple(fr.label_values[li] for li in pattern)
        _feed(out.blocks, key, _normalize_rows(cols), len(perms))
    return out


def evaluation_matrix(A, m: int, strategy: str = "exact", *, samples: int | None = None, seed: int = 0,
                      budget: int = DEFAULT_BUDGET, threads: int = 1, ordinary: bool = False) -> EvaluationMatrix:
    """Evaluation map of the decorated multilinear space; ``ordinary`` ignores any structure."""
    S = as_structured(A)
    if ordinary:
        S = StructuredAlgebra(S.algebra, None, S.name)
    if m < 1:
        raise ValueError("degree must be positive")
    if strategy == "exact":
        return _exact_matrix(S, m, budget, threads)
    if strategy == "sampled":
        if samples is None:
            samples = 2 * math.factorial(m) * max(S.dim, 1)
        return _sampled_matrix(S, m, samples, seed)
    raise ValueError(f"unknown strategy {strategy!r}")


def codimension(A, m: int, strategy: str = "exact", **kw) -> int:
    """``c_m``: exact rank of the evaluation map, or a lower bound when sampled."""
    return evaluation_matrix(A, m, strategy, **kw).rank


def envelope_codimension(B, m: int, **kw) -> int:
    """Codimension of the Grassmann envelope, truncated at ``k = m`` generators."""
    return codimension(grassmann_envelope(B, m), m, **kw)


# -- identities and containment ---------------------------------------------


@dataclass(frozen=True)
class IdentityResult:
    holds: bool
    witness: tuple | None = None
    value: la.Vector | None = None

    def __bool__(self):
        return self.holds


def is_identity(f: MultilinearPolynomial, A, *, budget: int = DEFAULT_BUDGET) -> IdentityResult:
    """Exhaustive test on all frame tuples; a failure comes with the tuple as witness."""
    S = as_structured(A)
    fr = _frame(S)
    m, d = f.degree, fr.d
    if not f.terms or d == 0:
        return IdentityResult(True)
    if math.factorial(m) * d ** (m + 1) > budget * 10:
        raise BudgetExceeded("identity check exceeds the budget")
    den = _lcm(c.denominator for c in f.terms.values())
    coefs = [(mono, int(c * den)) for mono, c in f.terms.items()]
    # validate decorations once
    for mono, _ in coefs:
        for t in mono.tags:
            fr.tag_factor(t, fr.label_values[0])
    bound = fr.word_bound(m) * sum(abs(c) for _, c in coefs)
    W = fr.words(m)
    dtype = fr.dtype_for(bound)
    W = W.astype(dtype)
    powers = d ** np.arange(m - 1, -1, -1, dtype=np.int64)
    factor_table = {}
    total = d**m
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        T = fr.digits(idx, m)
        acc = np.zeros((len(idx), d), dtype=dtype)
        for mono, c in coefs:
            fac = np.full(len(idx), c, dtype=dtype)
            for v, t in zip(mono.vars, mono.tags):
                if t is None:
                    continue
                key = t
                if key not in factor_table:
                    factor_table[key] = np.array([fr.tag_factor(t, lab) for lab in fr.labels], dtype=np.int64)
                fac = fac * factor_table[key][T[:, v - 1]].astype(dtype)
            words = (T[:, [v - 1 for v in mono.vars]] * powers).sum(axis=1)
            acc += fac[:, None] * W[words]
        bad = np.nonzero(np.any(acc != 0, axis=1))[0]
        if len(bad):
            t = T[bad[0]]
            subs = tuple(fr.rational[int(i)] for i in t)
            return IdentityResult(False, subs, evaluate(f, subs, S))
    return IdentityResult(True)


@dataclass(frozen=True)
class ContainmentResult:
    holds: bool
    m: int
    counterexample: MultilinearPolynomial | None = None

    def __bool__(self):
        return self.holds


def _compatible(SA: StructuredAlgebra, SB: StructuredAlgebra):
    if SA.kind != SB.kind:
        raise IdentityError(f"decoration kinds differ: {SA.kind} vs {SB.kind}")
    if SA.kind == "grading" and SA.grading.group != SB.grading.group:
        raise IdentityError("gradings by different groups")


def containment_at_degree(A, B, m: int, *, budget: int = DEFAULT_BUDGET, threads: int = 1) -> ContainmentResult:
    """Does every degree-``m`` multilinear identity of ``A`` hold in ``B``?"""
    SA, SB = as_structured(A), as_structured(B)
    _compatible(SA, SB)
    EA = evaluation_matrix(SA, m, budget=budget, threads=threads)
    EB = evaluation_matrix(SB, m, budget=budget, threads=threads)
    for pattern in EA.patterns():
        for f in EA.kernel(pattern):
            if not EB.annihilates(pattern, f):
                return ContainmentResult(False, m, EA.polynomial(pattern, f))
    return ContainmentResult(True, m)


@dataclass(frozen=True)
class RegevCheck:
    m: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def to_dict(self) -> dict:
        return {"m": self.m, "c_m(A(x)B)": self.lhs, "c_m(A)c_m(B)": self.rhs, "holds": self.holds}


def regev_bound_check(A, B, m: int, **kw) -> RegevCheck:
    """Ordinary codimensions: ``c_m(A (x) B)`` against ``c_m(A) c_m(B)``."""
    PA = StructuredAlgebra(as_structured(A).algebra)
    PB = StructuredAlgebra(as_structured(B).algebra)
    lhs = codimension(tensor_product(PA, PB), m, **kw)
    return RegevCheck(m, lhs, codimension(PA, m, **kw) * codimension(PB, m, **kw))
