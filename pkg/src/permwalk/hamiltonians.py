"""Every model Hamiltonian as a sector-restricted matrix.

All builders return Hermitian :class:`~permwalk.fock.SectorOperator` objects
on the C(N, k) basis of :func:`~permwalk.fock.enumerate_sector` (the spin
chain uses the same combinatorial basis over down-spin patterns).

Families
--------
class_sum   sum of the sector realizations of one whole conjugacy class
hopping     H = sum_{i<j} (a'_i a_j + a'_j a_i), the all-to-all model
quartic2    the 2-fermion-form class sum of transpositions acting in sector k
marked      site 1 coupled with weight beta, full symmetry among sites 2..N
ring        nearest-neighbour tight binding on the circle, site N+1 = 1
xxx_spin    transposition class sum in the spin realization (1+XX+YY+ZZ)/2,
            restricted to a fixed number of down spins
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb, isfinite
from typing import Optional

import numpy as np
import scipy.sparse as sp

from . import config
from .errors import PermwalkError
from .fock import SectorBasis, SectorOperator, enumerate_sector, weighted_bilinear
from .permgroup import (CycleType, conjugacy_class, lifted_realization,
                        realize_permutation)

FAMILIES = ("class_sum", "hopping", "quartic2", "marked", "ring", "xxx_spin")


def _check_sector(n_sites: int, n_particles: int):
    if not 0 <= n_particles <= n_sites:
        raise ValueError(f"need 0 <= k <= N, got N={n_sites}, k={n_particles}")


def build_hopping(n_sites: int, n_particles: int,
                  basis: Optional[SectorBasis] = None) -> SectorOperator:
    """All-to-all hopping sum_{i<j} (a'_i a_j + a'_j a_i) on the k-sector."""
    _check_sector(n_sites, n_particles)
    weights = np.ones((n_sites, n_sites)) - np.eye(n_sites)
    return weighted_bilinear(n_sites, n_particles, weights, basis=basis)


def build_ring(n_sites: int, n_particles: int,
               basis: Optional[SectorBasis] = None) -> SectorOperator:
    """Tight binding on the circle: sum_j a'_j a_{j+1} + h.c., site N+1 = 1."""
    _check_sector(n_sites, n_particles)
    weights = np.zeros((n_sites, n_sites))
    for j in range(n_sites):
        weights[j, (j + 1) % n_sites] += 1.0
        weights[(j + 1) % n_sites, j] += 1.0
    return weighted_bilinear(n_sites, n_particles, weights, basis=basis)


def build_marked(n_sites: int, n_particles: int, beta: float,
                 basis: Optional[SectorBasis] = None) -> SectorOperator:
    """Hops to site 1 weighted by beta, unit hops among sites 2..N.

    beta = 1 restores the fully symmetric model exactly; beta = 0 decouples
    site 1 and leaves the symmetric model on the remaining N-1 sites.
    """
    _check_sector(n_sites, n_particles)
    if not isfinite(beta):
        raise ValueError("beta must be a finite real number")
    weights = np.ones((n_sites, n_sites)) - np.eye(n_sites)
    weights[0, 1:] = beta
    weights[1:, 0] = beta
    return weighted_bilinear(n_sites, n_particles, weights, basis=basis)


def class_sum_streamed(ct: CycleType, n_particles: int,
                       basis: Optional[SectorBasis] = None) -> SectorOperator:
    """Conjugacy-class Hamiltonian by brute accumulation over the class.

    This is the oracle path: every class element is realized on the sector
    and added up.  :func:`build_class_hamiltonian` must agree with it.
    """
    n_sites = ct.n
    _check_sector(n_sites, n_particles)
    b = basis if basis is not None else enumerate_sector(n_sites, n_particles)
    dense = b.dim <= config.SPARSE_THRESHOLD
    acc = np.zeros((b.dim, b.dim)) if dense else sp.csr_matrix((b.dim, b.dim))
    for sigma in conjugacy_class(ct):
        term = realize_permutation(sigma, n_sites, n_particles, basis=b).data
        if dense and sp.issparse(term):
            term = term.toarray()
        acc = acc + term
    return SectorOperator(b, b, acc)


def _is_pure_transposition_class(ct: CycleType) -> bool:
    counts = ct.counts()
    return counts.get(2, 0) == 1 and counts.get(2, 0) * 2 + counts.get(1, 0) == ct.n


def build_class_hamiltonian(ct: CycleType, n_sites: int, n_particles: int,
                            basis: Optional[SectorBasis] = None,
                            streamed: bool = False) -> SectorOperator:
    """Sum of the k-sector realizations of every element of the class.

    For the transposition class the sum collapses to all-to-all hopping plus
    a constant counting the pairs the pattern leaves fixed minus the pairs it
    inverts: H = hopping + [C(N-k,2) - C(k,2)] * 1.  That fast path is used
    by default; ``streamed=True`` forces the element-by-element oracle.
    """
    if ct.n != n_sites:
        raise ValueError(f"cycle type partitions {ct.n}, basis has {n_sites} sites")
    _check_sector(n_sites, n_particles)
    if n_particles == 0:
        b = basis if basis is not None else enumerate_sector(n_sites, 0)
        return SectorOperator(b, b, np.array([[float(ct.class_size())]]))
    if not streamed and _is_pure_transposition_class(ct):
        b = basis if basis is not None else enumerate_sector(n_sites, n_particles)
        hop = build_hopping(n_sites, n_particles, basis=b)
        shift = comb(n_sites - n_particles, 2) - comb(n_particles, 2)
        return hop + float(shift) * SectorOperator.identity(b)
    return class_sum_streamed(ct, n_particles, basis=basis)


def build_quartic2(n_sites: int, n_particles: int,
                   basis: Optional[SectorBasis] = None) -> SectorOperator:
    """Transposition class sum in its 2-fermion form, acting in sector k.

    Direct second-quantized sum of a'_{s(i)} a'_{s(j)} a_j a_i over i < j and
    all transpositions s.  Two annihilators kill the 0- and 1-fermion
    sectors; on the 2-sector this equals the class-sum Hamiltonian, on higher
    sectors it stays a polynomial in hopping and the number operator (see
    :func:`quartic2_closed_form`).
    """
    _check_sector(n_sites, n_particles)
    b = basis if basis is not None else enumerate_sector(n_sites, n_particles)
    if n_particles <= 1:
        return SectorOperator.zero(b, b)
    dense = b.dim <= config.SPARSE_THRESHOLD
    acc = np.zeros((b.dim, b.dim)) if dense else sp.csr_matrix((b.dim, b.dim))
    ct = CycleType.pure(2, n_sites)
    for sigma in conjugacy_class(ct):
        term = lifted_realization(sigma, 2, b).data
        if dense and sp.issparse(term):
            term = term.toarray()
        acc = acc + term
    return SectorOperator(b, b, acc)


def quartic2_closed_form(n_sites: int, n_particles: int,
                         basis: Optional[SectorBasis] = None) -> SectorOperator:
    """Closed form of the quartic class sum on the k-sector.

        H2 = 1/2 [ (N-2)(N-3)/2 - 1 ] (Nhat^2 - Nhat)  +  (Nhat - 1) H

    The overall normalization is fixed numerically against the direct sum in
    :func:`build_quartic2` (the two published forms of this identity differ
    by a factor of two; the direct sum decides).
    """
    _check_sector(n_sites, n_particles)
    b = basis if basis is not None else enumerate_sector(n_sites, n_particles)
    k = n_particles
    hop = build_hopping(n_sites, k, basis=b)
    const = 0.5 * ((n_sites - 2) * (n_sites - 3) / 2.0 - 1.0) * (k * k - k)
    return float(k - 1) * hop + const * SectorOperator.identity(b)


def build_xxx_spin(n_sites: int, n_down: int,
                   basis: Optional[SectorBasis] = None) -> SectorOperator:
    """Transposition class sum for N spins-1/2, fixed down-spin sector.

    Each transposition acts as the swap (1 + XX + YY + ZZ)/2; the class sum
    cannot mix sectors with different numbers of down spins.  On the basis of
    down-spin patterns the matrix is the unsigned hopping matrix plus the
    constant C(d,2) + C(N-d,2) counting pairs fixed by each swap.
    """
    _check_sector(n_sites, n_down)
    b = basis if basis is not None else enumerate_sector(n_sites, n_down)
    weights = np.ones((n_sites, n_sites)) - np.eye(n_sites)
    flip = weighted_bilinear(n_sites, n_down, weights, signed=False, basis=b)
    shift = comb(n_down, 2) + comb(n_sites - n_down, 2)
    return flip + float(shift) * SectorOperator.identity(b)


def xxx_spin_full(n_sites: int) -> np.ndarray:
    """Oracle: the spin class sum as a dense 2^N Pauli tensor product.

    Site i occupies tensor slot i counted from the most significant index
    qubit; |up> = e_0, |down> = e_1.  Use :func:`spin_sector_indices` to pull
    out one magnetization block in the pattern-basis ordering.
    """
    if n_sites > 12:
        raise PermwalkError("Pauli tensor oracle limited to N <= 12")
    x = np.array([[0.0, 1.0], [1.0, 0.0]])
    y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
    z = np.array([[1.0, 0.0], [0.0, -1.0]])
    eye2 = np.eye(2)
    dim = 2 ** n_sites

    def site_op(op, site):
        mats = [eye2] * n_sites
        mats[site - 1] = op
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return out

    total = np.zeros((dim, dim), dtype=complex)
    for i in range(1, n_sites + 1):
        for j in range(i + 1, n_sites + 1):
            term = np.eye(dim, dtype=complex)
            for op in (x, y, z):
                term = term + site_op(op, i) @ site_op(op, j)
            total += 0.5 * term
    return total


def spin_sector_indices(n_sites: int, n_down: int) -> np.ndarray:
    """Tensor-basis indices of the down-spin patterns, in pattern order."""
    b = enumerate_sector(n_sites, n_down)
    idx = np.empty(b.dim, dtype=np.int64)
    for r in range(b.dim):
        bits = int(b.states[r])
        t = 0
        for site in range(1, n_sites + 1):
            if bits >> (site - 1) & 1:
                t |= 1 << (n_sites - site)
        idx[r] = t
    return idx


@dataclass(frozen=True)
class ModelSpec:
    """Serializable description of one model on one sector."""

    family: str
    n_sites: int
    sector: int
    beta: float = 1.0
    cycle_type: Optional[CycleType] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        _check_sector(self.n_sites, self.sector)
        if not isfinite(self.beta):
            raise ValueError("beta must be finite")
        if self.family == "class_sum" and self.cycle_type is None:
            raise ValueError("class_sum needs a cycle type (p or explicit partition)")
        if self.cycle_type is not None and self.cycle_type.n != self.n_sites:
            raise ValueError("cycle type does not partition N")

    def basis(self) -> SectorBasis:
        return enumerate_sector(self.n_sites, self.sector)

    def build(self, basis: Optional[SectorBasis] = None) -> SectorOperator:
        if self.family == "hopping":
            return build_hopping(self.n_sites, self.sector, basis=basis)
        if self.family == "ring":
            return build_ring(self.n_sites, self.sector, basis=basis)
        if self.family == "marked":
            return build_marked(self.n_sites, self.sector, self.beta, basis=basis)
        if self.family == "quartic2":
            return build_quartic2(self.n_sites, self.sector, basis=basis)
        if self.family == "xxx_spin":
            return build_xxx_spin(self.n_sites, self.sector, basis=basis)
        return build_class_hamiltonian(self.cycle_type, self.n_sites, self.sector,
                                       basis=basis)

    def to_json_dict(self) -> dict:
        out = {"family": self.family, "N": self.n_sites}
        out["down" if self.family == "xxx_spin" else "k"] = self.sector
        if self.family == "marked":
            out["beta"] = self.beta
        if self.cycle_type is not None:
            out["cycle_type"] = list(self.cycle_type.parts)
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "ModelSpec":
        family = data["family"]
        n = int(data["N"])
        if "k" in data and "down" in data:
            raise ValueError("give either k or down, not both")
        sector = int(data.get("k", data.get("down", 0)))
        beta = float(data.get("beta", 1.0))
        ct = None
        if "cycle_type" in data:
            ct = CycleType.from_iterable(int(p) for p in data["cycle_type"])
        elif "p" in data:
            ct = CycleType.pure(int(data["p"]), n)
        return cls(family, n, sector, beta=beta, cycle_type=ct)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "ModelSpec":
        return cls.from_json_dict(json.loads(text))
