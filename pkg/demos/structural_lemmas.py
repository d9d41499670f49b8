"""Print the structural facts behind the r = 2 and r = 3 constructions:
exact-once coverage, per-prefix block counts and the multiplicity profile
of C_2(8,4,3)."""

from qcover import constructions as C
from qcover.rankmetric import lifted_mrd, std_exact_cover_check
from qcover.subspace import prefix_space
from qcover.verify import multiplicity_histogram, v0_dim_filter

for n, k, delta, t in [(6, 3, 2, 2), (7, 3, 2, 2), (8, 4, 2, 3)]:
    code = lifted_mrd(n, k, delta)
    ok = std_exact_cover_check(code.blocks, t, k, n)
    print(f"lifted code ({n},{k}), rank distance {delta}: {len(code)} blocks, "
          f"{t}-subspaces off V_0 covered exactly once: {ok}")

chain = C.cmrd_chain(3)
for level, d in enumerate(chain, start=3):
    base = d.count_inside(prefix_space(d.n, 3))
    per_prefix = {d.count_inside(prefix_space(d.n, 3, [x])) - base for x in range(1, 8)}
    print(f"C_2({d.n},3,2): {len(d)} blocks (closed form {C.cor_15_size(level)}), "
          f"{base} inside V_0, per-prefix count {per_prefix}")

d9 = chain[1]
print("C_2(9,3,2) multiplicities on 2-subspaces meeting V_0 in a point:",
      multiplicity_histogram(d9, v0_dim_filter(9, 3, 1)))

g = C.cover_8_4_3()
print("C_2(8,4,3) multiplicities on 3-subspaces meeting V_0 in a line:",
      multiplicity_histogram(g, v0_dim_filter(8, 4, 2)))

base = C.cover_7_5_3()
print("C_2(7,5,3) profile:",
      {label: a.count for label, a in sorted(base.annotations.items())})
