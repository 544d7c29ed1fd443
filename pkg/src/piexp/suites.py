"""Verification suites shared by the CLI, the demos and the acceptance tests."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import power_chain
from .constructions import field, full_matrix, incidence, matrix_algebra, tensor_product, ut, zero
from .exponent import chain_product, pi_exponent
from .identities import codimension

# The poset 1 <= 2, 3 <= 4 (with 1 <= 4), whose incidence algebra matches UT2 (x) UT2.
POSET_X = [(1, 2), (1, 3), (2, 4), (3, 4)]

EXPECTED = {
    "exp(UT2)": 2,
    "exp(UT2 (x) UT2)": 3,
    "witness sequence": [1, 2, 4],
    "witness chain": ["e11", "e12", "e22", "e24", "e44"],
    "nilpotency index of J(UT2 (x) UT2)": 3,
    "semisimple component dims": [1, 1, 1, 1],
    "exp(M2(F))": 4,
    "exp(zero(2))": 0,
    "c_m(UT2), m = 1..4": [1, 2, 6, 18],
}


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "ok": self.ok}


_TENSOR_UNIT = re.compile(r"^e(\d)(\d)⊗e(\d)(\d)$")


def tensor_label_to_poset(label: str) -> str:
    """``e_ab (x) e_cd`` in UT2 (x) UT2 as ``e_xy`` on the poset points ``x = 2(a-1)+c``, ``y = 2(b-1)+d``."""
    m = _TENSOR_UNIT.match(label)
    if not m:
        return label
    a, b, c, d = map(int, m.groups())
    return f"e{2 * (a - 1) + c}{2 * (b - 1) + d}"


def invariants(S, m_max: int = 4) -> dict:
    """dim, radical dim, nilpotency index, component dims, exponent and c_1..c_m."""
    rep = pi_exponent(S)
    st = rep.structure
    return {
        "dim": S.dim,
        "radical dim": st.radical.dim,
        "nilpotency index": st.nilpotency_index,
        "component dims": sorted(rep.component_dims),
        "exponent": rep.value,
        "codimensions": [codimension(S, m, ordinary=True) for m in range(1, m_max + 1)],
    }


def paper_examples(expected: dict | None = None) -> list[Check]:
    exp = dict(EXPECTED if expected is None else expected)
    checks = [Check("exp(UT2)", exp["exp(UT2)"], pi_exponent(ut(2)).value)]
    T = tensor_product(ut(2), ut(2))
    rep = pi_exponent(T)
    st = rep.structure
    checks.append(Check("exp(UT2 (x) UT2)", exp["exp(UT2 (x) UT2)"], rep.value))
    checks.append(Check("witness sequence", exp["witness sequence"], list(rep.witness_sequence)))
    checks.append(Check("witness chain", exp["witness chain"], [tensor_label_to_poset(x) for x in rep.chain_labels]))
    checks.append(Check("witness chain product is nonzero", True, any(chain_product(rep.witness_chain, T.algebra))))
    chain = power_chain(st.radical, T.algebra)
    checks.append(Check("nilpotency index of J(UT2 (x) UT2)", exp["nilpotency index of J(UT2 (x) UT2)"],
                        st.nilpotency_index))
    checks.append(Check("J^2 != 0", True, len(chain) >= 2 and chain[1].dim > 0))
    checks.append(Check("semisimple component dims", exp["semisimple component dims"], list(st.component_dims)))
    checks.append(Check("I(X) matches UT2 (x) UT2", invariants(T), invariants(incidence(POSET_X))))
    ix = pi_exponent(incidence(POSET_X))
    checks.append(Check("I(X) witness chain", exp["witness chain"], list(ix.chain_labels)))
    checks.append(Check("exp(M2(F))", exp["exp(M2(F))"], pi_exponent(full_matrix(2)).value))
    checks.append(Check("exp(zero(2))", exp["exp(zero(2))"], pi_exponent(zero(2)).value))
    checks.append(Check("c_m(UT2), m = 1..4", exp["c_m(UT2), m = 1..4"], [codimension(ut(2), m) for m in range(1, 5)]))
    checks.append(Check("exp(M2(UT2)) = 4 exp(UT2)", 4 * pi_exponent(ut(2)).value,
                        pi_exponent(matrix_algebra(ut(2), 2)).value))
    checks.append(Check("exp(F) = 1", 1, pi_exponent(field()).value))
    return checks
