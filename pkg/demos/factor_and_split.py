"""Three ways to count the blocks of F_q[x]/(f).

The number of primitive idempotents, the dimension of the Frobenius-fixed
subalgebra and the number of distinct irreducible factors of f all agree.

    python demos/factor_and_split.py
"""
from finalg import Polynomial, alg_poly_quotient, factor, ff_make, primitive_idempotents
from finalg.decomp import corner, frobenius_fixed_subalgebra

cases = [
    (ff_make(2, 1), [1, 0, 0, 1]),              # x^3 + 1
    (ff_make(2, 2), [1, 0, 0, 1]),              # x^3 + 1 over F_4
    (ff_make(3, 1), [2, 0, 0, 0, 0, 0, 0, 0, 1]),  # x^8 - 1
    (ff_make(2, 1), [1, 1, 0, 0, 1, 0, 1]),     # x^6 + x^4 + x + 1
]

for F, coeffs in cases:
    f = Polynomial(F, coeffs)
    fl = factor(f)
    A = alg_poly_quotient(F, f)
    idems = primitive_idempotents(A)
    print(f"{F!r}[x]/({f!r})")
    print("  factors:", " * ".join(f"({g!r})^{e}" for g, e in fl.factors))
    print(f"  distinct factors {len(fl.factors)}, fixed-subalgebra dim {frobenius_fixed_subalgebra(A).dim},"
          f" primitive idempotents {len(idems)}")
    for e in idems:
        print(f"    e = {e.to_json()}  corner dim {corner(A, e).dim}")
