"""Extinction-time law of the contact process on graphs with at most 3
vertices, from the matrix exponential of the full generator.

Values printed here are frozen into tests/contact.rs.
"""
import itertools

import numpy as np
from scipy.linalg import expm


def generator(n, edges, lam):
    nbrs = [set() for _ in range(n)]
    for a, b in edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    q = np.zeros((1 << n, 1 << n))
    for s in range(1 << n):
        for v in range(n):
            if s >> v & 1:
                q[s, s & ~(1 << v)] += 1.0
            else:
                k = sum(1 for u in nbrs[v] if s >> u & 1)
                q[s, s | (1 << v)] += lam * k
        q[s, s] = -q[s].sum()
    return q


def extinction_cdf(q, start, t):
    return expm(q * t)[start, 0]


def mean_extinction(q, start):
    m = q[1:, 1:]
    return np.linalg.solve(-m, np.ones(m.shape[0]))[start - 1]


CASES = {
    "path2_both_l1": (2, [(0, 1)], 1.0, 0b11),
    "path3_end_l1.5": (3, [(0, 1), (1, 2)], 1.5, 0b001),
    "triangle_one_l2": (3, [(0, 1), (1, 2), (0, 2)], 2.0, 0b001),
}

if __name__ == "__main__":
    for name, (n, edges, lam, start) in CASES.items():
        q = generator(n, edges, lam)
        cdf = [extinction_cdf(q, start, t) for t in (0.5, 1.0, 2.0, 5.0)]
        print(name, "mean", repr(mean_extinction(q, start)), "cdf", [repr(c) for c in cdf])
