"""Numerical walls for (2, C0+f, 0) along the polarization ray."""

# %%
from ruledmoduli import ChernVector, DivClass, RuledSurface, chambers, enumerate_walls
from ruledmoduli.invariants import discriminant

S = RuledSurface(1, 0)
e = ChernVector.of(2, 1, 1, 0)
print(e, "Delta =", discriminant(e, S))

# %% Each wall carries the sub-data that produce it and the allowed range of chi'.
for wall in enumerate_walls(e, S, 0, 6):
    print(f"x = {wall.x}  zeta = {wall.zeta}")
    for w in wall.witnesses:
        print(f"    r' = {w.r1}  xi' = {DivClass(*w.xi1)}  chi' in [{w.chi_min}, {w.chi_max}]")

# %% The chamber decomposition with an open upper end.
decomp = chambers(e, S, 0, None)
for c in decomp.chambers:
    print("chamber", c, "sample x =", c.sample())

# %% Changing chi changes the walls: (2, C0+f, 1) has a single one.
print([str(w.x) for w in enumerate_walls(ChernVector.of(2, 1, 1, 1), S)])
