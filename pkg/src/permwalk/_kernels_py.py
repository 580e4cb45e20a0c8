"""Pure-Python kernels for the bit-pattern inner loops.

Drop-in twin of the compiled extension ``permwalk._kernels``; selected by
``permwalk._backend`` when the extension is missing or PERMWALK_BACKEND=py.
States are occupation bit patterns: site ``i`` (0-based here) occupied iff
bit ``i`` is set.  All arrays of states are ascending uint64.
"""

import numpy as np

BACKEND = "python"


def enumerate_states(n_sites, n_particles):
    """All n_sites-bit patterns with n_particles set bits, ascending."""
    if n_particles == 0:
        return np.zeros(1, dtype=np.uint64)
    first = (1 << n_particles) - 1
    last = first << (n_sites - n_particles)
    out = [first]
    s = first
    while s != last:
        # Gosper's hack: next-larger pattern with the same popcount
        low = s & -s
        ripple = s + low
        s = ripple | (((s ^ ripple) >> 2) // low)
        out.append(s)
    return np.array(out, dtype=np.uint64)


def _parity_sign(bits):
    return -1 if bin(bits).count("1") & 1 else 1


def realize_perm(states, n_particles, images0):
    """Signed permutation action on a fixed-popcount basis.

    ``images0[i]`` is the 0-based image of site ``i``.  Column ``c`` of the
    resulting matrix has its single nonzero at ``rows[c]`` with value
    ``signs[c]``: the occupied sites are relabelled through the permutation
    and the sign is the parity of the reshuffle back to ascending order.
    """
    dim = states.shape[0]
    k = n_particles
    targets = np.empty(dim, dtype=np.uint64)
    signs = np.empty(dim, dtype=np.int8)
    mapped = [0] * k
    for c in range(dim):
        s = int(states[c])
        for a in range(k):
            low = s & -s
            mapped[a] = images0[low.bit_length() - 1]
            s ^= low
        inversions = 0
        target = 0
        for a in range(k):
            va = mapped[a]
            target |= 1 << va
            for b in range(a + 1, k):
                if mapped[b] < va:
                    inversions += 1
        targets[c] = target
        signs[c] = -1 if inversions & 1 else 1
    rows = np.searchsorted(states, targets).astype(np.int64)
    return rows, signs


def bilinear_accumulate(states, weights, signed=True):
    """COO triplets of sum_ij weights[i, j] a'_i a_j on one sector.

    ``weights`` is an N x N float array over 0-based sites; entries i == j
    contribute the number operator on site i.  With ``signed=False`` the
    fermionic parity factors are dropped (hard-core boson / spin flip).
    """
    n = weights.shape[0]
    dim = states.shape[0]
    targets = []
    cols = []
    vals = []
    nz_from = [np.nonzero(weights[:, j])[0] for j in range(n)]
    for c in range(dim):
        s = int(states[c])
        t = s
        while t:
            low = t & -t
            j = low.bit_length() - 1
            t ^= low
            s1 = s ^ low
            sign_j = _parity_sign(s & (low - 1)) if signed else 1
            for i in nz_from[j]:
                i = int(i)
                if i == j:
                    targets.append(s)
                    cols.append(c)
                    vals.append(weights[j, j])
                elif not (s1 >> i) & 1:
                    sign_i = _parity_sign(s1 & ((1 << i) - 1)) if signed else 1
                    targets.append(s1 | (1 << i))
                    cols.append(c)
                    vals.append(weights[i, j] * sign_i * sign_j)
    rows = np.searchsorted(states, np.array(targets, dtype=np.uint64))
    return (
        rows.astype(np.int64),
        np.array(cols, dtype=np.int64),
        np.array(vals, dtype=np.float64),
    )
