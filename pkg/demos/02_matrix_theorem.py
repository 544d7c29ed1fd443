"""exp(M_n(A)) = n^2 exp(A), plus the graded and involution tensor versions.

Both sides of every row come from separate runs of the full pipeline; the
right-hand side is never derived from the left.
"""

from piexp import exchange, field, full_matrix, matrix_theorem_check, tensor_product, tensor_theorem_check, ut, zero

for A in (field(), ut(2), ut(3), full_matrix(2), tensor_product(ut(2), ut(2)), zero(2)):
    rows = matrix_theorem_check(A, 3, max_dim=120)
    cells = ", ".join(f"n={r.n}: {r.lhs} vs {r.rhs}" for r in rows if not r.skipped)
    print(f"{A.name:>14}  {cells}")

# A Z2-graded algebra tensored with a graded-simple central algebra.
A = ut(2, degrees=[[0], [1], [0]])
S = full_matrix(2, elementary=(0, 1))
res = tensor_theorem_check(A, S)
print(f"\ngraded: exp(A (x) S) = {res.lhs}, dim S * exp(A) = {res.dim_s} * {res.exp_a}")

# UT2 has no involution that keeps the triangle, so pair it with its opposite.
A = exchange(ut(2))
S = full_matrix(2, involution="transpose")
res = tensor_theorem_check(A, S)
print(f"involution: exp(A (x) S) = {res.lhs}, dim S * exp(A) = {res.dim_s} * {res.exp_a}")
