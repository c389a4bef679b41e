"""When does a code carry a nonabelian group structure?  Exactly when 2a < m."""

from affinecodes.code import make_code
from affinecodes.finite_field import trace_matrix
from affinecodes.structures import estr_case, make_chi_f, nonabelian_exists, nonabelian_witness, witness_f

for C in [
    make_code(2, 2, 2, [0, 1]),
    make_code(2, 3, 1, [0, 1, 2, 4]),
    make_code(3, 2, 1, [0, 1, 3]),
    make_code(3, 2, 2, [0, 1, 3, 4]),
    make_code(2, 4, 1, [0, 1, 2, 4, 8]),
]:
    a = C.params.a
    line = f"length {C.length:2d} a={a} m={C.m}: nonabelian={nonabelian_exists(C)}"
    w = nonabelian_witness(C)
    if w is not None:
        line += f"  witness {w.descriptor.render()} (case {w.case}, order {w.group.order})"
    print(line)

# %% the two rank presets at length 16
C = make_code(2, 4, 1, [0, 1, 2, 4, 8])
K = C.field
chi = trace_matrix(K, 1)
for kind in ("f1", "f2"):
    cf = make_chi_f(K, chi, witness_f(K, chi, 1, 1, kind), 1)
    print(f"{kind}, u=1: case {estr_case(cf)}, abelian={cf.group.is_abelian()}")
try:
    witness_f(K, chi, 1, 2, "f2")
except ValueError as exc:
    print("u=2 refused:", exc)
