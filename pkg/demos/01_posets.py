"""Finite posets: closure, covers, ranks and the order dual."""
# %%
from approxforms import boolean_cube, build_poset, check_monotone, EvalMap

# a diamond with a tail; only covering pairs are given, the rest is closure
P = build_poset("abcde", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("d", "e")])
print(P.leq("a", "e"), P.comparable("b", "c"))
print("covers:", P.covers())

# %%
# ranks peel off minimal elements; D counts steps on the longest chain
print("ranks:", P.rank_partition())
print("D =", P.max_chain_length())
print("dual ranks:", P.dual().rank_partition())

# %%
# a map is monotone when no comparable pair is sent to a non-comparable one
B2 = boolean_cube(2)
two = build_poset("01", [("0", "1")])
xor = EvalMap(B2, two, {"00": "0", "01": "1", "10": "1", "11": "0"})
report = check_monotone(xor)
print("monotone:", report.is_monotone)
print("offending pairs:", report.pairs)
