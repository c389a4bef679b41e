"""Groups built from a functional chi and a square-zero map f on GF(16)."""

from collections import Counter

from affinecodes.additive import AdditiveMap
from affinecodes.finite_field import make_field, trace_matrix
from affinecodes.formats import format_element
from affinecodes.structures import classify_chi_f, decompose_chi_f, enumerate_chi_f, estr_descriptor, make_chi_f

K = make_field(2, 4)
t = K.primitive
t2, t3 = K.mul(t, t), K.mul(K.mul(t, t), t)

# %% f sends t^3 to t and kills 1, t, t^2
f = AdditiveMap.from_basis_images([1, t, t2, t3], [0, 0, 0, t], 2, 4)

for c in (1, t):
    cf = make_chi_f(K, trace_matrix(K, 1, c), f, 1)
    cls = classify_chi_f(cf)
    dec = decompose_chi_f(cf)
    desc = estr_descriptor(cf)
    print(f"chi(x) = Tr({format_element(c, K)} * x)")
    print(f"   abelian={cls.abelian} exponent={cls.exponent} |center|={len(cls.center)}")
    print(f"   subspace dims Z,V,W,W',U = {dec.dims}")
    print(f"   structure {desc.render()} of order {desc.order}")

# %% f with f(t^3) = t^3 does not square to zero
try:
    make_chi_f(K, trace_matrix(K, 1), AdditiveMap.from_basis_images([1, t, t2, t3], [0, 0, 0, t3], 2, 4), 1)
except ValueError as exc:
    print("rejected:", exc)

# %% the whole family with chi a trace functional and f of rank 1 or 2
tally = Counter()
for cf in enumerate_chi_f(K, 1, ranks=[1, 2]):
    tally[(cf.rank, estr_descriptor(cf).render())] += 1
for (rank, label), n in sorted(tally.items()):
    print(f"rank {rank}: {n:4d} pairs give {label}")
