"""Analytic diagonalization of the all-to-all hopping model.

The discrete-Fourier mode operators

    A_a = (1/sqrt N) sum_j w^(j a) a_j,      w = exp(2 pi i / N),  a = 1..N

inherit the canonical anticommutators, and the hopping Hamiltonian becomes
N A'_N A_N - Nhat.  Each k-sector therefore carries exactly two eigenvalues:
N - k on the C(N-1, k-1) states containing the uniform mode, and -k on the
C(N-1, k) states avoiding it.  This module builds those mode maps, the
closed-form spectrum, the two explicit eigenvector families, and the 3x3
reduction of the marked-site model.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb, sqrt
from typing import List, Optional

import numpy as np
import scipy.linalg

from .fock import (SectorBasis, SectorOperator, WaveVector, enumerate_sector,
                   sector_annihilation, sector_creation, vacuum,
                   apply_operator_string)

DEGENERACY_TOL = 1e-9  # absolute gap below which eigenvalues share a level


@dataclass(frozen=True)
class ModeIndex:
    """Label of one Fourier mode; alpha = N is the uniform (zero-momentum) mode."""

    alpha: int
    n_sites: int

    def __post_init__(self):
        if not 1 <= self.alpha <= self.n_sites:
            raise ValueError(f"mode index {self.alpha} out of range 1..{self.n_sites}")

    @property
    def omega(self) -> complex:
        return np.exp(2j * np.pi / self.n_sites)

    @property
    def is_uniform(self) -> bool:
        return self.alpha == self.n_sites


def mode_operator(alpha: int, n_sites: int, n_particles: int,
                  dagger: bool = False) -> SectorOperator:
    """A_alpha as a map k -> k-1, or its adjoint A'_alpha as k -> k+1."""
    mode = ModeIndex(alpha, n_sites)
    w = mode.omega
    norm = 1.0 / sqrt(n_sites)
    if dagger:
        dom = enumerate_sector(n_sites, n_particles)
        cod = enumerate_sector(n_sites, n_particles + 1)
        total = np.zeros((cod.dim, dom.dim), dtype=complex)
        for j in range(1, n_sites + 1):
            part = sector_creation(n_sites, n_particles, j, domain=dom, codomain=cod)
            total += norm * w ** (-j * alpha) * part.to_dense()
        return SectorOperator(cod, dom, total)
    dom = enumerate_sector(n_sites, n_particles)
    cod = enumerate_sector(n_sites, n_particles - 1)
    total = np.zeros((cod.dim, dom.dim), dtype=complex)
    for j in range(1, n_sites + 1):
        part = sector_annihilation(n_sites, n_particles, j, domain=dom, codomain=cod)
        total += norm * w ** (j * alpha) * part.to_dense()
    return SectorOperator(cod, dom, total)


@dataclass(frozen=True)
class SpectrumSummary:
    """Two-level spectrum of the hopping model in one sector."""

    n_sites: int
    n_particles: int
    eigenvalue_high: float
    mult_high: int
    eigenvalue_low: float
    mult_low: int

    def levels(self) -> list:
        return [(self.eigenvalue_high, self.mult_high),
                (self.eigenvalue_low, self.mult_low)]

    def to_json_dict(self) -> dict:
        return {"k": self.n_particles,
                "levels": [{"e": float(e), "mult": int(m)} for e, m in self.levels()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def analytic_spectrum(n_sites: int, n_particles: int) -> SpectrumSummary:
    """Closed-form spectrum {N-k, -k} with multiplicities {C(N-1,k-1), C(N-1,k)}."""
    n, k = n_sites, n_particles
    if not 1 <= k <= n - 1:
        raise ValueError("two-level form holds for 1 <= k <= N-1")
    return SpectrumSummary(n, k,
                           float(n - k), comb(n - 1, k - 1),
                           float(-k), comb(n - 1, k))


def numeric_spectrum(op: SectorOperator, tol: float = DEGENERACY_TOL) -> list:
    """Eigenvalues of a Hermitian operator grouped into (value, multiplicity).

    Dense diagonalization, ascending; eigenvalues closer than ``tol`` are
    merged into one level whose value is the group mean.
    """
    vals = scipy.linalg.eigvalsh(np.asarray(op.to_dense(), dtype=complex))
    levels = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > tol:
            group = vals[start:i]
            levels.append((float(np.mean(group)), int(len(group))))
            start = i
    return levels


def eigenvectors_high(n_sites: int, n_particles: int,
                      basis: Optional[SectorBasis] = None,
                      orthonormalize: bool = False) -> List[WaveVector]:
    """The eigenvalue-(N-k) family, one vector per (k-1)-tuple in {1..N-1}.

    Each vector is a'_{i1} ... a'_{i(k-1)} (sum over the other sites of a'_j)
    |vac> / sqrt(N-k+1): the uniform mode attached to a fixed background.
    """
    n, k = n_sites, n_particles
    if not 1 <= k <= n - 1:
        raise ValueError("family defined for 1 <= k <= N-1")
    b = basis if basis is not None else enumerate_sector(n, k)
    norm = 1.0 / sqrt(n - k + 1)
    out = []
    for fixed in combinations(range(1, n), k - 1):
        amps = np.zeros(b.dim, dtype=complex)
        for j in range(1, n + 1):
            if j in fixed:
                continue
            ops = [("+", s) for s in fixed] + [("+", j)]
            step = apply_operator_string(vacuum(n), ops)
            sign, ket = step
            amps[b.index(ket)] += sign
        out.append(WaveVector(b, amps * norm))
    return _maybe_orthonormalize(out, b) if orthonormalize else out


def eigenvectors_low(n_sites: int, n_particles: int,
                     basis: Optional[SectorBasis] = None,
                     orthonormalize: bool = False) -> List[WaveVector]:
    """The eigenvalue-(-k) family, one vector per k-tuple in {1..N-1}.

    Each tuple (i1 < ... < ik) is closed with site N into k+1 cyclic terms,

        [ a'_{i1}..a'_{ik} + (-1)^k a'_{i2}..a'_{ik} a'_N + ...
          + (-1)^(k^2) a'_N a'_{i1}..a'_{i(k-1)} ] |vac> / sqrt(k+1),

    the j-th term omitting i_j and inserting site N.  Operators are applied
    rightmost first, so each term lands on a single basis ket with a definite
    sign; correctness is pinned by the eigen-residual tests rather than by
    the sign bookkeeping itself.
    """
    n, k = n_sites, n_particles
    if not 1 <= k <= n - 1:
        raise ValueError("family defined for 1 <= k <= N-1")
    b = basis if basis is not None else enumerate_sector(n, k)
    norm = 1.0 / sqrt(k + 1)
    out = []
    for tup in combinations(range(1, n), k):
        amps = np.zeros(b.dim, dtype=complex)
        for j in range(k + 1):
            if j == 0:
                seq = list(tup)
            else:
                seq = list(tup[j:]) + [n] + list(tup[:j - 1])
            prefactor = -1 if (j * k) % 2 else 1
            step = apply_operator_string(vacuum(n), [("+", s) for s in seq])
            sign, ket = step
            amps[b.index(ket)] += prefactor * sign
        out.append(WaveVector(b, amps * norm))
    return _maybe_orthonormalize(out, b) if orthonormalize else out


def one_fermion_low_pair(n_sites: int, j: int) -> WaveVector:
    """The unit vector (a'_1 - a'_j)|vac>/sqrt(2), j in 2..N.

    The 1-fermion eigenvalue -1 family is often written in this anchored,
    non-orthogonal form; it spans the same space as ``eigenvectors_low``
    at k = 1 and is exposed for direct comparison.
    """
    if not 2 <= j <= n_sites:
        raise ValueError("j must lie in 2..N")
    b = enumerate_sector(n_sites, 1)
    amps = np.zeros(b.dim, dtype=complex)
    amps[b.index(1 << 0)] = 1.0
    amps[b.index(1 << (j - 1))] = -1.0
    return WaveVector(b, amps / sqrt(2.0))


def _maybe_orthonormalize(family: List[WaveVector], basis: SectorBasis) -> List[WaveVector]:
    mat = np.column_stack([v.amps for v in family])
    q, _ = np.linalg.qr(mat)
    return [WaveVector(basis, q[:, i]) for i in range(q.shape[1])]


def marked_reduced_matrix(n_sites: int, beta: float) -> np.ndarray:
    """3x3 marked-model block on {|1>, |2>, (|3>+...+|N>)/sqrt(N-2)}."""
    if n_sites < 3:
        raise ValueError("reduction needs N >= 3")
    r = sqrt(n_sites - 2)
    return np.array([
        [0.0, beta, beta * r],
        [beta, 0.0, r],
        [beta * r, r, float(n_sites - 3)],
    ])


def marked_symmetric_block(n_sites: int, beta: float) -> np.ndarray:
    """Oracle twin of :func:`marked_reduced_matrix`: project the full
    1-fermion marked Hamiltonian onto the symmetric 3-dim subspace."""
    from .hamiltonians import build_marked

    h = build_marked(n_sites, 1, beta).to_dense()
    basis = np.zeros((n_sites, 3))
    basis[0, 0] = 1.0
    basis[1, 1] = 1.0
    basis[2:, 2] = 1.0 / sqrt(n_sites - 2)
    return basis.T @ h @ basis
