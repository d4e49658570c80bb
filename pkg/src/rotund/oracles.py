"""Brute-force reference computations.

These deliberately avoid the degree-counting shortcuts of
:mod:`rotund.families`: subfamilies are enumerated and intersected
directly.  They are exponential in the family size and meant for
cross-checking on small inputs only.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .families import SetFamily


def _intersects(masks, idx) -> bool:
    acc = -1
    for j in idx:
        acc &= masks[j]
    return acc != 0


def l_brute(family: SetFamily) -> int:
    """Largest subfamily size with a common point, by direct enumeration."""
    masks = family.masks
    for size in range(len(masks), 0, -1):
        if any(_intersects(masks, c) for c in combinations(range(len(masks)), size)):
            return size
    return 0


def lattice_l_table(family: SetFamily) -> list[int]:
    """``l`` of every subfamily, indexed by the subfamily's bitmask.

    Built bottom-up over the subset lattice: a subfamily either intersects
    (then ``l`` is its size) or its ``l`` is the best over removing one member.
    """
    masks = family.masks
    m = len(masks)
    size = 1 << m
    inter = [0] * size
    inter[0] = -1
    table = [0] * size
    for s in range(1, size):
        low = s & -s
        j = low.bit_length() - 1
        inter[s] = inter[s ^ low] & masks[j]
        if inter[s]:
            table[s] = bin(s).count("1")
        else:
            best = 0
            t = s
            while t:
                b = t & -t
                v = table[s ^ b]
                if v > best:
                    best = v
                t ^= b
            table[s] = best
    return table


def indices_brute(family: SetFamily) -> dict:
    """l, gamma_k, win and win_tilde by exhaustive subfamily enumeration."""
    m = len(family)
    table = lattice_l_table(family)
    gamma = [None] * m
    for s in range(1, 1 << m):
        k = bin(s).count("1")
        v = table[s]
        if gamma[k - 1] is None or v < gamma[k - 1]:
            gamma[k - 1] = v
    win = min(Fraction(table[s], bin(s).count("1")) for s in range(1, 1 << m))
    win_t = None
    if m >= 2:
        win_t = min(Fraction(table[s], bin(s).count("1") - 1)
                    for s in range(1, 1 << m) if s & (s - 1))
    return {"l": table[(1 << m) - 1], "gamma": gamma, "win": win, "win_tilde": win_t}


def kelley_rep_brute(family: SetFamily, max_len: int) -> Fraction:
    """Minimum over multisets of members (size <= max_len) of max coverage / size."""
    masks = family.masks
    n = family.n
    best = None
    for length in range(1, max_len + 1):
        for seq in combinations_with_replacement(range(len(masks)), length):
            cover = max(sum(1 for j in seq if masks[j] >> p & 1) for p in range(n))
            r = Fraction(cover, length)
            if best is None or r < best:
                best = r
    return best
