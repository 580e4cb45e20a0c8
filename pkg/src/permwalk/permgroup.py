"""Symmetric-group elements, conjugacy classes, and their fermionic action.

A permutation acts on the k-particle sector by relabelling the occupied
sites: |i1,...,ik>  ->  sign * |sorted(s(i1),...,s(ik))>, where the sign is
the parity of the reshuffle back to ascending order.  This is the matrix of
the second-quantized operator

    sum_{i1<...<ik} a'_{s(i1)} ... a'_{s(ik)} a_{ik} ... a_{i1}

restricted to the sector, so each column holds exactly one entry of +-1.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations as _arrangements
from math import factorial
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np
import scipy.sparse as sp

from . import config
from ._backend import kernels
from .errors import ClassTooLarge
from .fock import FockBasis, SectorBasis, SectorOperator, enumerate_sector


@dataclass(frozen=True)
class PermutationElem:
    """Bijection on {1..N} in one-line notation: images[i-1] = s(i)."""

    images: tuple

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{n}")

    @classmethod
    def identity(cls, n: int) -> "PermutationElem":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, site: int) -> int:
        return self.images[site - 1]

    def is_identity(self) -> bool:
        return all(self.images[i] == i + 1 for i in range(self.n))

    def cycles(self, include_fixed: bool = False) -> tuple:
        """Disjoint cycles, each rotated to start at its minimum, sorted by it."""
        seen = [False] * self.n
        out = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen[nxt - 1] = True
                nxt = self(nxt)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return tuple(out)

    def cycle_type(self) -> "CycleType":
        lengths = [len(c) for c in self.cycles(include_fixed=True)]
        return CycleType(tuple(sorted(lengths, reverse=True)))

    def to_cycles_str(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def __repr__(self):
        return f"PermutationElem{self.images}"


def compose(sigma: PermutationElem, tau: PermutationElem) -> PermutationElem:
    """(sigma . tau)(x) = sigma(tau(x))."""
    if sigma.n != tau.n:
        raise ValueError("size mismatch")
    return PermutationElem(tuple(sigma(tau(i)) for i in range(1, sigma.n + 1)))


def inverse(sigma: PermutationElem) -> PermutationElem:
    images = [0] * sigma.n
    for i in range(1, sigma.n + 1):
        images[sigma(i) - 1] = i
    return PermutationElem(tuple(images))


def transposition(i: int, j: int, n: int) -> PermutationElem:
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"invalid transposition ({i} {j}) in S_{n}")
    images = list(range(1, n + 1))
    images[i - 1], images[j - 1] = j, i
    return PermutationElem(tuple(images))


def adjacent_transpositions(n: int) -> list:
    """The generators s_i = (i, i+1), i = 1..n-1."""
    return [transposition(i, i + 1, n) for i in range(1, n)]


def from_cycles(n: int, *cycles: Sequence[int]) -> PermutationElem:
    """Permutation from disjoint cycles given as site sequences."""
    images = list(range(1, n + 1))
    seen = set()
    for cyc in cycles:
        for s in cyc:
            if not 1 <= s <= n:
                raise ValueError(f"site {s} out of range 1..{n}")
            if s in seen:
                raise ValueError(f"site {s} appears in two cycles")
            seen.add(s)
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            images[a - 1] = b
    return PermutationElem(tuple(images))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> PermutationElem:
    """Parse cycle notation like ``(1 2)(3 4 5)``; whitespace separates sites."""
    stripped = text.strip()
    if stripped in ("", "()", "e", "id"):
        return PermutationElem.identity(n)
    spans = _CYCLE_RE.findall(stripped)
    leftover = _CYCLE_RE.sub("", stripped).strip()
    if not spans or leftover:
        raise ValueError(f"cannot parse cycle notation {text!r}")
    cycles = []
    for span in spans:
        sites = [int(tok) for tok in span.split()]
        if len(sites) < 1:
            raise ValueError(f"empty cycle in {text!r}")
        cycles.append(sites)
    return from_cycles(n, *cycles)


def random_permutation(n: int, rng: np.random.Generator) -> PermutationElem:
    return PermutationElem(tuple(int(x) + 1 for x in rng.permutation(n)))


@dataclass(frozen=True)
class CycleType:
    """Cycle structure as a partition of N (parts descending, 1-cycles kept)."""

    parts: tuple

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("cycle lengths must be positive")
        if tuple(sorted(self.parts, reverse=True)) != self.parts:
            raise ValueError("parts must be sorted descending")

    @classmethod
    def from_iterable(cls, parts: Iterable[int]) -> "CycleType":
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def pure(cls, p: int, n: int) -> "CycleType":
        """Single p-cycle with everything else fixed: {p, 1^(n-p)}."""
        if not 1 <= p <= n:
            raise ValueError(f"need 1 <= p <= {n}")
        return cls.from_iterable([p] + [1] * (n - p))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def counts(self) -> Counter:
        """nu_k = number of k-cycles."""
        return Counter(self.parts)

    def class_size(self) -> int:
        """Order of the conjugacy class: N! / prod_k k^nu_k nu_k!."""
        denom = 1
        for k, nu in self.counts().items():
            denom *= k ** nu * factorial(nu)
        return factorial(self.n) // denom

    def __repr__(self):
        return f"CycleType{self.parts}"


def partitions(n: int) -> Iterator[CycleType]:
    """All cycle types of S_n, largest part first within each."""

    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - part, part):
                yield (part,) + rest

    for parts in rec(n, n):
        yield CycleType(parts)


def conjugacy_class(ct: CycleType,
                    max_elements: Optional[int] = None) -> Iterator[PermutationElem]:
    """Stream every element of the class exactly once, deterministically.

    Elements are built recursively: the smallest unplaced site anchors a cycle
    whose length runs over the remaining multiset (ascending), companions are
    chosen as lexicographic combinations and arrangements.  The order is fixed
    across runs; it is not the one-line lexicographic order, which cannot be
    streamed without factorial-size buffering.
    """
    cap = max_elements if max_elements is not None else config.class_cap()
    size = ct.class_size()
    if size > cap:
        raise ClassTooLarge(f"class of {ct} has {size} elements, cap is {cap}")
    n = ct.n

    def rec(free: tuple, remaining: Counter):
        if not free:
            yield ()
            return
        anchor = free[0]
        rest = free[1:]
        for length in sorted(remaining):
            if remaining[length] == 0:
                continue
            remaining[length] -= 1
            for companions in combinations(rest, length - 1):
                leftover = tuple(s for s in rest if s not in companions)
                for order in _arrangements(companions):
                    cycle = (anchor,) + order
                    for tail in rec(leftover, remaining):
                        yield (cycle,) + tail
            remaining[length] += 1

    for cycles in rec(tuple(range(1, n + 1)), ct.counts()):
        yield from_cycles(n, *(c for c in cycles if len(c) > 1))


def realize_permutation(sigma: PermutationElem, n_sites: int, n_particles: int,
                        basis: Optional[SectorBasis] = None) -> SectorOperator:
    """Signed permutation matrix of sigma on the k-particle sector."""
    if sigma.n != n_sites:
        raise ValueError(f"permutation acts on {sigma.n} sites, basis has {n_sites}")
    b = basis if basis is not None else enumerate_sector(n_sites, n_particles)
    if n_particles == 0:
        return SectorOperator(b, b, np.ones((1, 1)))
    images0 = np.array([sigma(i + 1) - 1 for i in range(n_sites)], dtype=np.int64)
    rows, signs = kernels.realize_perm(b.states, n_particles, images0)
    return SectorOperator.from_coo(b, b, rows, np.arange(b.dim), signs.astype(np.float64))


def realize_full(sigma: PermutationElem, n_sites: int,
                 basis: Optional[FockBasis] = None) -> SectorOperator:
    """Direct sum of the sector realizations over k = 0..N on the Fock basis."""
    fb = basis if basis is not None else FockBasis(n_sites)
    blocks = [realize_permutation(sigma, n_sites, k, basis=fb.sectors[k]).data
              for k in range(n_sites + 1)]
    data = sp.block_diag(blocks, format="csr")
    if fb.dim <= config.SPARSE_THRESHOLD:
        return SectorOperator(fb, fb, data.toarray())
    return SectorOperator(fb, fb, data)


def lifted_realization(sigma: PermutationElem, p: int, basis: SectorBasis) -> SectorOperator:
    """The p-fermion-form realization of sigma acting inside a k-sector.

    Matrix of sum_{i1<...<ip} a'_{s(i1)} ... a'_{s(ip)} a_{ip} ... a_{i1} on
    ``basis``.  For p = k this coincides with :func:`realize_permutation`; for
    p < k it is the interaction operator that the p-sector form induces on
    higher sectors; for p > k it vanishes.
    """
    n = basis.n_sites
    k = basis.n_particles
    if sigma.n != n:
        raise ValueError("permutation size mismatch")
    if p > k:
        return SectorOperator.zero(basis, basis)
    rows, cols, vals = [], [], []
    for c in range(basis.dim):
        state = basis.state_at(c)
        occ = state.sites
        for subset in combinations(occ, p):
            removed_bits = 0
            for s in subset:
                removed_bits |= 1 << (s - 1)
            kept = state.bits & ~removed_bits
            # a_{ip} ... a_{i1} with i1 < ... < ip: i1 acts first; each a_i
            # sees the state with smaller-index subset sites already removed
            sign = 1
            cleared = state.bits
            for s in subset:
                below = cleared & ((1 << (s - 1)) - 1)
                if bin(below).count("1") & 1:
                    sign = -sign
                cleared &= ~(1 << (s - 1))
            # a'_{s(i1)} ... a'_{s(ip)}: s(ip) acts first
            ok = True
            built = kept
            for s in reversed(subset):
                target = sigma(s) - 1
                if built >> target & 1:
                    ok = False
                    break
                below = built & ((1 << target) - 1)
                if bin(below).count("1") & 1:
                    sign = -sign
                built |= 1 << target
            if not ok:
                continue
            rows.append(basis.index(built))
            cols.append(c)
            vals.append(float(sign))
    return SectorOperator.from_coo(basis, basis, rows, cols, vals)
