"""UT2 (x) UT2 and the incidence algebra of a four-point poset.

Walks through the structure pipeline on a 9-dimensional algebra: the
radical and its powers, the semisimple components, and the admissible
chain that realises the exponent.
"""

from piexp import incidence, pi_exponent, tensor_product, ut
from piexp.algebra import power_chain
from piexp.exponent import chain_product
from piexp.suites import POSET_X, invariants, tensor_label_to_poset

T = tensor_product(ut(2), ut(2))
A = T.algebra
rep = pi_exponent(T)
st = rep.structure

print(f"UT2 (x) UT2 has dimension {T.dim}")
print("radical basis:", ", ".join(A.label(v) for v in st.radical.basis))
print("dimensions of J, J^2, J^3:", [P.dim for P in power_chain(st.radical, A)])
print("semisimple components:", [[A.label(v) for v in B.basis] for B in st.components])

# The exponent is the heaviest chain B_i1 J B_i2 J ... J B_is that does not vanish.
print(f"\nexp = {rep.value}, attained by the components {rep.witness_sequence}")
print("chain:", " * ".join(rep.chain_labels))
print("same chain on the poset points:", " ".join(tensor_label_to_poset(x) for x in rep.chain_labels))
print("product:", A.label(chain_product(rep.witness_chain, A)))

# No isomorphism is constructed; the two algebras are compared by their invariants.
I = incidence(POSET_X)
print("\ninvariants of UT2 (x) UT2:", invariants(T))
print("invariants of I(X):       ", invariants(I))
