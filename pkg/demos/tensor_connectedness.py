"""Connected algebras with an augmentation stay connected under tensor products.

Compares three small F_2-algebras: the dual numbers (connected, augmented),
F_4 (connected, no augmentation) and F_2[C_2] (connected, augmented).

    python demos/tensor_connectedness.py
"""
import itertools

from finalg import Polynomial, alg_cyclic_group_algebra, alg_poly_quotient, alg_tensor, ff_make, is_connected
from finalg.algebra import find_augmentations, induced_augmentation, nilpotent_set_bruteforce, nilradical_via_augmentation

F2 = ff_make(2, 1)
algebras = {
    "dual": alg_poly_quotient(F2, Polynomial(F2, [0, 0, 1])),
    "F4": alg_poly_quotient(F2, Polynomial(F2, [1, 1, 1])),
    "F2[C2]": alg_cyclic_group_algebra(2, F2),
}

for name, A in algebras.items():
    augs = find_augmentations(A)
    print(f"{name:7s} dim {A.dim}  connected={is_connected(A).connected}  augmentations={[a.to_json() for a in augs]}")
    if augs:
        N = nilradical_via_augmentation(A, augs[0])
        brute = nilpotent_set_bruteforce(A)
        print(f"        ker(phi) has {A.base.q ** N.dim} elements, nilpotent set has {len(brute)}")

print()
for (a, A), (b, B) in itertools.combinations_with_replacement(algebras.items(), 2):
    T = alg_tensor(A, B)
    v = is_connected(T)
    note = "" if v.witness is None else f" witness {v.witness.to_json()}"
    print(f"{a} (x) {b}: {v.status.value}{note}")

# psi(a (x) e) = phi(a) e; its kernel is nil, which is what keeps A (x) E connected
A, E = algebras["dual"], algebras["F4"]
T = alg_tensor(A, E)
psi = induced_augmentation(T, A.augmentations[0])
print(f"\nker psi on dual (x) F4: {[v.to_json() for v in psi.kernel().vectors]}")
