"""Boolean functions as left-nested implications of monotone functions."""
# %%
from approxforms import TruthTable, inf_eval, inf_synthesize, minimal_inf_length

xor = TruthTable.from_string("0110")
c = inf_synthesize(xor)
print(c)
print(inf_eval(c) == xor, "implications:", c.implications)

# %%
# the synthesized form for XOR is as short as any: two monotone factors never suffice
print("fewest factors for XOR:", minimal_inf_length(xor))
print("fewest factors for NOT:", minimal_inf_length(TruthTable.from_string("10")))

# %%
# longest forms over three arguments
from collections import Counter

lengths = Counter()
for code in range(256):
    t = TruthTable(3, tuple(bool(code >> r & 1) for r in range(8)))
    lengths[minimal_inf_length(t)] += 1
print(sorted(lengths.items()))

# %%
parity = TruthTable(8, tuple(bin(k).count("1") % 2 == 1 for k in range(256)))
print("8-bit parity needs", inf_synthesize(parity).implications, "implications")
