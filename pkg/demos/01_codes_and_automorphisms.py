"""Affine-invariant codes at desk scale and their permutation automorphisms."""

from affinecodes.code import code_basis, dimension, enumerate_affine_invariant, make_code
from affinecodes.oracle import brute_paut_scan, enumerate_paut
from affinecodes.semilinear import compute_params, paut_order

# %% every affine-invariant code of length 4, 8, 9 and 16 for a few alphabets
for p, m, r in [(2, 2, 1), (2, 2, 2), (2, 3, 1), (3, 2, 1), (3, 2, 2), (2, 4, 1)]:
    sets = enumerate_affine_invariant(p, m, r)
    print(f"p={p} m={m} r={r}: {len(sets)} defining sets, {sum(not s.trivial for s in sets)} nontrivial")
    for ds in sets:
        if ds.trivial:
            continue
        C = make_code(p, m, r, ds.elements)
        a, b, _ = compute_params(C)
        print(f"   D={list(ds.elements)}  dim={dimension(C)}  a={a} b={b}  |PAut|={paut_order(C)}")

# %% the length-4 codes only exist for even r
for r in range(1, 7):
    n = sum(not s.trivial for s in enumerate_affine_invariant(2, 2, r))
    print(f"r={r}: {n} nontrivial length-4 codes")

# %% the extended Hamming code: closed form against a full scan of S_8
C = make_code(2, 3, 1, [0, 1, 2, 4])
print("basis of the [8,4] code:")
for w in code_basis(C):
    print("  ", "".join(str(v) for v in w.values))
scan = brute_paut_scan(C)
print(f"scan of S_8 keeps {len(scan)} permutations; formula gives {paut_order(C)}")
print("scan equals translations times the semilinear group:", scan == enumerate_paut(C))
