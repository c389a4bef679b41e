"""Regular subgroups of PAut(C): the left and two-sided group code structures."""

from collections import Counter

from affinecodes.code import make_code
from affinecodes.groups import dihedral_table, fingerprint, quaternion_table
from affinecodes.oracle import classify_regular_subgroups
from affinecodes.structures import check_iyb

NAMES = {fingerprint(dihedral_table(4)): "D4", fingerprint(quaternion_table()): "Q8"}


def name(fp):
    return NAMES.get(fp, fp.label())


codes = [
    make_code(2, 2, 2, [0, 1]),
    make_code(2, 3, 1, [0, 1, 2, 4]),
    make_code(3, 2, 1, [0, 1, 3]),
    make_code(3, 2, 2, [0, 1, 3, 4]),
]

for C in codes:
    records = classify_regular_subgroups(C)
    left = Counter(name(r.fingerprint) for r in records)
    both = Counter(name(r.fingerprint) for r in records if r.twosided)
    print(f"length {C.length}, D={sorted(C.D)}, a={C.params.a}")
    for kind in sorted(left):
        print(f"   {kind:12s} left {left[kind]:4d}   two-sided {both[kind]:4d}")
    # every subgroup comes from an alpha-map satisfying the cocycle law
    assert all(check_iyb(r.alpha) for r in records)
    # the centralizer test and the alpha-map test agree
    assert all(r.twosided == r.alpha_twosided for r in records)

# the [8,4] code carries both nonabelian groups of order 8, the dihedral one
# also one-sidedly: 126 copies, of which only 42 have their centralizer in PAut
