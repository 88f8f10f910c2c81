"""Connective sets and their axiom systems, checked by exhaustive evaluation."""
# %%
from approxforms import ConnectiveSet, boolean_cube, boolean_dual, chain_primal, verify_axioms
from approxforms.poset import chain

cs = chain_primal(3)
print("truncated subtraction on 0 < 1 < 2:")
for a in "012":
    print(" ", [cs.boxminus(a, b) for b in "012"])

# %%
M = boolean_cube(3)
for system in ("A", "B"):
    print(system, verify_axioms(cs, M, system).passed)

# material implication is the dual reading
for system in ("A*", "B*"):
    print(system, verify_axioms(boolean_dual(), M, system).passed)

# %%
# a broken algebra: conjunction with a zero floor cannot satisfy boxminus(l, circ(l)) = l
bad = ConnectiveSet(chain(2), boxminus=lambda a, b: "1" if a == b == "1" else "0", circ=lambda a: "0",
                    boxplus=max, uplus=max, name="and-const0")
print(verify_axioms(bad, M, "A"))
