"""Intersection indices of small set families.

Run with ``python demos/01_intersection_indices.py``.
"""
# %% The triangle: three 2-point sets on 3 points, every pair meets.
from fractions import Fraction

from rotund.families import SetFamily, gamma_profile, index_report
from rotund.oracles import indices_brute

triangle = SetFamily.from_sets(3, [[0, 1], [1, 2], [0, 2]])
rep = index_report(triangle)
print("triangle:", rep.to_dict()["l"], "gamma =", rep.gamma,
      "win =", rep.win_value, "win_tilde =", rep.win_tilde_value)

# %% The optimized branch-and-bound agrees with plain enumeration.
assert indices_brute(triangle)["win"] == rep.win_value

# %% Disjoint sets are the extreme case: win = 1/m, win_tilde = 1/(m-1).
for m in range(2, 7):
    fam = SetFamily.from_sets(m, [[i] for i in range(m)])
    r = index_report(fam)
    print(f"m={m} disjoint: win={r.win_value}  win_tilde={r.win_tilde_value}")

# %% A common point pushes both indices up: gamma_k = k.
star = SetFamily.from_sets(5, [[0, i] for i in range(1, 5)])
gamma, witnesses = gamma_profile(star)
print("star gamma:", gamma, "win_tilde:", index_report(star).win_tilde_value)

# %% The sandwich win <= win_tilde <= 2 win holds for every family.
for fam in (triangle, star):
    r = index_report(fam)
    assert r.win_value <= r.win_tilde_value <= 2 * r.win_value
print("sandwich ok;", Fraction(2, 3), "<= 1 <= 4/3 for the triangle")
