"""Gluing the two-step construction across several families.

Run with ``python demos/04_composed_bound.py``.
"""
# %% Two families of three disjoint sets give 6 then 36 atoms.
from rotund.families import SetFamily
from rotund.martingales import a_upper_bound, compose_proposition_martingale


def disjoint(m):
    return SetFamily.from_sets(m, [[i] for i in range(m)])


mart = compose_proposition_martingale([disjoint(3), disjoint(3)])
f = mart.filtration
print("blocks per level:", [f.num_blocks(n) for n in range(f.depth)])

# %% The certified bound 1 + sum l_r / (m_r - 1) and the unit-energy condition.
res = a_upper_bound([disjoint(3), disjoint(3)])
print(res.to_dict()["bound"], res.verified,
      [str(s.qualification) for s in res.report.stages])

# %% Ten families of 11 points: 22^10 atoms, checked point by point instead.
res = a_upper_bound([disjoint(11)] * 10)
print("q=10, m=11:", res.bound, res.method, res.verified)

# %% Large families make the bound as close to 1 as we like.
res = a_upper_bound([disjoint(502)] * 5)
print("q=5, m=502:", res.bound, "=", float(res.bound), res.verified)
