"""Walk through F_2[C_3]: two indecomposable blocks, one of which splits over F_4.

    python demos/counterexample_walkthrough.py
"""
from finalg import alg_cyclic_group_algebra, block_decompose, ff_make, is_connected
from finalg.algebra import find_augmentations
from finalg.motivemodel import SummandModel, canonical_witness, coeff_extend, counterexample_demo

F2, F4 = ff_make(2, 1), ff_make(2, 2)
R = alg_cyclic_group_algebra(3, F2)
print(f"R = {R.label}, dim {R.dim}, {R.cardinality} elements")

report = block_decompose(R)
for b in report.blocks:
    print(f"  block e={b.idempotent.to_json()}  corner dim {b.dim}  field={b.is_field}")

# the 2-dimensional block: its corner is F_4, and F_4 admits no ring map to F_2
N = SummandModel(R, next(b.idempotent for b in report.blocks if b.dim == 2), label="N")
print(f"augmentations of the N corner: {find_augmentations(N.corner)}")
print(f"N indecomposable over F_2: {is_connected(N.corner).status.value}")

N4 = coeff_extend(N, 2)
v = is_connected(N4.corner)
print(f"after extending to {F4!r}: {v.status.value}, witness {v.witness.to_json()} in the corner")
w = canonical_witness(N, F4)
print(f"alpha*pi + x*pi = {w.to_json()}, idempotent: {w * w == w}")

print()
for line in counterexample_demo().narrative:
    print(line)
