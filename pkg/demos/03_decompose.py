"""Non-monotone maps as nested differences of monotone factors."""
# %%
from approxforms import EvalMap, build_poset, chain_primal, decompose, fold, pad_to, theta_decompose

M = build_poset("abc", [("a", "b"), ("b", "c")])
cs = chain_primal(2)
psi = EvalMap(M, cs.codomain, {"a": "1", "b": "0", "c": "1"})

ch = decompose(psi, cs)
for f in ch.factors:
    print(f.as_tuple())
print("regions:", [sorted(s) for s in ch.stages])
print("fold matches:", fold(ch) == psi)

# %%
# extra factors are free: each pad is circ of the previous one and leaves the fold alone
padded = pad_to(ch, 5)
print(len(padded), fold(padded) == psi)

# %%
# one theta function per rank block
for t in theta_decompose(EvalMap(M, cs.codomain, {"a": "0", "b": "0", "c": "1"}), cs):
    print("rank", t.rank, t.map.as_tuple())

# %%
# a random sweep; the engine asserts its own depth bound, so silence means no surprises
from approxforms import boolean_cube
from approxforms.poset import all_maps

cs3 = chain_primal(3)
n = 0
for psi in all_maps(boolean_cube(2), cs3.codomain):
    assert fold(decompose(psi, cs3)) == psi
    n += 1
print(n, "maps from B^2 into a 3-chain reconstructed")
