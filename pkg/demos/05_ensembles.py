"""Agent ensembles, the readiness function and the three-stage choice walk."""
# %%
from approxforms.lefebvre import (EnsembleCharacteristic, choose, golden_root, marginals, pure_ensemble, readiness_f,
                         realist_characteristic, sample_ensemble)

P = EnsembleCharacteristic((0.3, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1))
pt = marginals(P)
print(pt)
print("gap between average readiness and f of the averages:", round(pt.gap, 12))

# %%
# with independent components the two agree
pt = marginals(pure_ensemble(0.2, 0.7, 0.9))
print(pt.z, readiness_f(0.2, 0.7, 0.9))

# %%
g = golden_root()
R = realist_characteristic(g)
print("root", g)
print(R)
print(marginals(R))
s = sample_ensemble(R, 100_000, seed=42)
print("sampled share with n3 = 1:", s.fraction(lambda n1, n2, n3: n3 == 1), "+/-", s.stderr)

# %%
for bits in ((1, 0, 0), (0, 1, 1), (0, 0, 1)):
    print(choose(*bits))
    print()
