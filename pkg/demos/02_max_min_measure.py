"""The best probability measure for a family, and sequences with repetition.

Run with ``python demos/02_max_min_measure.py``.
"""
# %% Maximize the smallest mass a probability measure gives to any member.
from rotund.families import SetFamily, win
from rotund.intersection import kelley_number_rep, max_min_measure, verify_duality

triangle = SetFamily.from_sets(3, [[0, 1], [1, 2], [0, 2]])
cert = max_min_measure(triangle)
print("value:", cert.value, "measure:", [str(w) for w in cert.primal.weights])
print("dual weights on sets:", [str(w) for w in cert.dual])

# %% The certificate is exact: both sides meet at the same rational.
assert cert.primal_value == cert.dual_value == cert.value

# %% Allowing repeated members in a sequence approaches the LP value from above.
fam = SetFamily.from_sets(5, [[i, (i + 1) % 5] for i in range(5)])
lp = max_min_measure(fam).value
for L in (1, 2, 3, 4, 5, 8):
    value, length = kelley_number_rep(fam, L)
    print(f"max_len={L:2d}: {value} (attained at length {length});  LP = {lp};  win = {win(fam)}")

# %% One report with everything.
print(verify_duality(fam, 10).to_dict())
