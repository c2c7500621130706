"""Where moduli of slope semistable sheaves are non-empty, and what they look like."""

# %%
from fractions import Fraction

from ruledmoduli import ChernVector, RuledSurface, construct_general, exists_mu_ss, moduli_report, stack_dim
from ruledmoduli.exceptions import UnsupportedHypothesis

S = RuledSurface(1, 0)
e = ChernVector.of(2, 1, 1, 1)

# %% Existence switches off past x0 and never comes back.
for x in (Fraction(1, 2), 1, Fraction(3, 2), 2):
    v = exists_mu_ss(e, S, x)
    print(f"x = {x}: {v.exists}  {v.inequality()}")

# %% The general member is an extension of pulled-back bundles.
ext = construct_general(e, S)
print(f"0 -> F1(C0) -> E -> F2 -> 0 with ranks {ext.r1}, {ext.r2}, degrees {ext.d1}, {ext.d2}, x0 = {ext.x0}")
print("dim of the stack at x = 1/2:", stack_dim(e, S, Fraction(1, 2)))

# %% A full report over a range of polarizations.
rep = moduli_report(e, S, x_range=(0, 2))
print("Delta =", rep.delta, " exists on", rep.exists_region)
for name, flag in rep.flags.items():
    print(f"  {name}: {flag.value}")
for cv in rep.chamber_verdicts:
    print("  chamber", cv.chamber, "non-empty" if cv.exists else "empty")

# %% Outside genus 1 the existence test is refused rather than guessed.
try:
    exists_mu_ss(e, RuledSurface(2, 0), 3)
except UnsupportedHypothesis as err:
    print(err)
