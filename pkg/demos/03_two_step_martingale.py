"""An explicit three-level martingale driven by a set family.

Run with ``python demos/03_two_step_martingale.py``.
"""
# %% Start from g and split the space into 2m atoms E_k^+, E_k^-.
from fractions import Fraction

from rotund.families import SetFamily
from rotund.functions import NormSpec, Measure
from rotund.martingales import (build_lemma_martingale, check_norm_square_monotone,
                                lemma_report, walsh_paley_structure)

fam = SetFamily.from_sets(4, [[0, 1], [1, 2], [2, 3], [3, 0]])
g = [Fraction(3, 2), Fraction(-1, 2), 0, 1]
mart = build_lemma_martingale(fam, g)
print("atoms:", mart.filtration.n_atoms, "levels:", mart.depth)

# %% Values at each atom, level by level.
for n in range(mart.depth):
    print(f"N{n}:")
    for a, row in enumerate(mart.atom_values(n)):
        print("   ", a, [str(v) for v in row])

# %% The certificate: martingale law, full Walsh-Paley cover, last step in +-F, sup bound.
rep = lemma_report(mart, fam, g)
print("bound", rep.bound, "attained max", rep.max_norm, "ok", rep.ok)
print("second level fully paired:", walsh_paley_structure(mart.filtration).covers(2))

# %% Squared norms grow on average along the martingale, for any norm.
spec = NormSpec("triple", Measure.uniform(4))
print("smallest blockwise slack:", check_norm_square_monotone(mart, spec).min_slack)
