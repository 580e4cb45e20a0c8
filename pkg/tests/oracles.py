"""Independent brute-force constructions used as test oracles.

Everything here is built from tensor products on the plain 2^N pattern-indexed
space (pattern index carries site i at bit i-1), with no reuse of the
package's bit arithmetic, so agreement is a genuine cross-check.
"""

from itertools import combinations

import numpy as np

S_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]])  # |occupied> -> |empty>
Z = np.array([[1.0, 0.0], [0.0, -1.0]])
EYE2 = np.eye(2)


def jw_annihilation(n_sites: int, site: int) -> np.ndarray:
    """a_site as a Jordan-Wigner string: Z on every lower site, then sigma-."""
    op = np.array([[1.0]])
    for i in range(n_sites, 0, -1):  # site N is the most significant factor
        if i == site:
            factor = S_MINUS
        elif i < site:
            factor = Z
        else:
            factor = EYE2
        op = np.kron(op, factor)
    return op


def jw_creation(n_sites: int, site: int) -> np.ndarray:
    return jw_annihilation(n_sites, site).T


def sector_patterns(n_sites: int, n_particles: int) -> list:
    """All patterns with the given popcount, ascending (recomputed here)."""
    return [bits for bits in range(1 << n_sites)
            if bin(bits).count("1") == n_particles]


def realize_from_formula(images, n_sites: int, n_particles: int) -> np.ndarray:
    """Permutation operator on the k-sector straight from its defining sum,

        sum_{i1<...<ik} a'_{s(i1)} ... a'_{s(ik)} a_{ik} ... a_{i1},

    assembled from Jordan-Wigner matrices on the full 2^N space and then
    restricted to the sector patterns.
    """
    dim = 1 << n_sites
    total = np.zeros((dim, dim))
    creation = {s: jw_creation(n_sites, s) for s in range(1, n_sites + 1)}
    annihilation = {s: jw_annihilation(n_sites, s) for s in range(1, n_sites + 1)}
    for subset in combinations(range(1, n_sites + 1), n_particles):
        term = np.eye(dim)
        for s in reversed(subset):  # a_{ik} ... a_{i1}: a_{i1} rightmost
            term = term @ annihilation[s]
        for s in reversed(subset):  # a'_{s(i1)} ... a'_{s(ik)}: s(i1) leftmost
            term = creation[images[s - 1]] @ term
        total += term
    patterns = sector_patterns(n_sites, n_particles)
    return total[np.ix_(patterns, patterns)]
