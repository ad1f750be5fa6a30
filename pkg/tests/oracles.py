"""Independent reference implementations used to check the optimised code paths."""
import itertools
import math

import numpy as np


def brute_dominates(a, b, signs):
    """Pairwise Pareto dominance written out element by element."""
    better = False
    for x, y, s in zip(a, b, signs):
        if s * x > s * y:
            return False
        if s * x < s * y:
            better = True
    return better


def brute_force_ranks(F, signs):
    """Front index of each point as the length of the longest dominance chain ending there.

    Dominators strictly improve the signed objective sum, so visiting points in
    increasing sum order guarantees every dominator is ranked first.
    """
    F = np.asarray(F, dtype=float)
    signs = np.asarray(signs, dtype=float)
    G = F * signs
    order = np.argsort(G.sum(axis=1), kind="stable")
    rank = [None] * len(F)
    for i in order:
        dominators = np.all(G <= G[i], axis=1) & np.any(G < G[i], axis=1)
        preds = np.flatnonzero(dominators)
        rank[i] = 0 if preds.size == 0 else 1 + max(rank[j] for j in preds)
    return rank


def fronts_from_ranks(ranks):
    fronts = {}
    for i, r in enumerate(ranks):
        fronts.setdefault(r, set()).add(i)
    return [fronts[r] for r in sorted(fronts)]


def hand_crowding(points):
    """Crowding distance computed directly from its definition with explicit loops."""
    n, m = len(points), len(points[0])
    dist = [0.0] * n
    for k in range(m):
        idx = sorted(range(n), key=lambda i: (points[i][k], i))
        lo, hi = points[idx[0]][k], points[idx[-1]][k]
        dist[idx[0]] = dist[idx[-1]] = math.inf
        for pos in range(1, n - 1):
            if hi > lo and dist[idx[pos]] != math.inf:
                dist[idx[pos]] += (points[idx[pos + 1]][k] - points[idx[pos - 1]][k]) / (hi - lo)
    return dist


def pairwise_nondominated(F):
    """True when no row of F (minimisation) dominates another."""
    return not any(brute_dominates(a, b, [1] * len(a)) for a, b in itertools.permutations(F, 2))
