"""Rotundity numerics: directional modulus, U_i(t) membership, the p-UR chain.

Run with ``python demos/05_rotundity.py``.
"""
# %% Euclidean chords of length eps sit at a known depth.
import numpy as np

from rotund.functions import Measure, NormSpec
from rotund.modulus import (ModulusQuery, euclidean_modulus, pur_chain_check, ui_membership,
                            ured_modulus_estimate)

for eps in (0.5, 1.0, 1.5):
    rep = ured_modulus_estimate(ModulusQuery(NormSpec("euclidean"), (1.0, 2.0, 0.5), eps))
    print(f"euclidean eps={eps}: {rep.estimate:.9f} vs {euclidean_modulus(eps):.9f}")

# %% The sup norm has flat faces: an axis direction gives a chord on the sphere.
rep = ured_modulus_estimate(ModulusQuery(NormSpec("sup"), (0.0, 1.0), 1.0))
print("sup:", rep.verdict, "x =", rep.x, "y =", rep.y)

# %% Adding an L2 term removes the flat faces.
spec = NormSpec("triple", Measure.uniform(4))
rep = ured_modulus_estimate(ModulusQuery(spec, (1.0, -0.5, 0.25, 0.0), 0.5))
print("triple:", rep.verdict, round(rep.estimate, 6))

# %% U_i(t): in the Euclidean case the ratio never drops below 1 + 1/t^2.
x = np.array([0.3, -1.2, 0.7])
print(ui_membership(NormSpec("euclidean"), x, 4, 2.0).to_dict()["status"])
print(ui_membership(NormSpec("sup"), np.array([0.0, 1.0]), 1, 1.5).to_dict()["status"])

# %% The three-step inequality chain for the triple norm, evaluated exactly.
mu = Measure.uniform(3)
chain = pur_chain_check(mu, [1, -1, 2], [1, 0, -1], [0, 1, 1])
print(chain.to_dict())
