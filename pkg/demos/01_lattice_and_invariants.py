"""Intersection numbers and Chern vector bookkeeping on an elliptic ruled surface."""

# %%
from fractions import Fraction

from ruledmoduli import ChernVector, DivClass, RuledSurface, c2, discriminant, euler_pairing, twist
from ruledmoduli.surface_lattice import C0, FIBER, ample_threshold, canonical, intersect, k_dot_h

S = RuledSurface(1, 0)
print(S, "K =", canonical(S), "K^2 =", S.k_squared())

# %% The pairing on NS(X) and the ample part of the ray H(x) = C0 + x f.
h = C0 + FIBER
print("(H^2) =", intersect(h, h, S), "(H.K) =", k_dot_h(S, 1))
print("H(x) ample for x >", ample_threshold(S))
print("on e = -1 the ray enters the ample cone earlier:", ample_threshold(RuledSurface(1, -1)))

# %% Discriminant, c2 and the Euler pairing for a rank 2 vector.
e = ChernVector.of(2, 1, 1, 0)
print(e, "Delta =", discriminant(e, S), "c2 =", c2(e, S))
print("chi(e, e) =", euler_pairing(e, e, S))

# %% Twisting moves xi and chi but leaves Delta alone.
for d in (FIBER, -C0, DivClass(2, -3)):
    t = twist(e, d, S)
    print(f"twist by {d}:", t, "Delta =", discriminant(t, S))
assert discriminant(twist(e, DivClass(2, -3), S), S) == Fraction(3, 4)
