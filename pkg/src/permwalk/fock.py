"""Particle-number sectors of the antisymmetric Fock space.

Basis kets are a'_{i1}...a'_{ik}|vac> with i1 < ... < ik.  A ket is encoded
as an N-bit occupation pattern: site i occupied iff bit i-1 is set (sites are
1-based in every public interface, 0-based in the bit arithmetic).  With the
creation string ordered by ascending site index, applying a creation or
annihilation operator at a site picks up the sign (-1)^(number of occupied
sites with a strictly smaller index), which makes both operations O(1) bit
manipulations.

The k-particle sector has dimension C(N, k); its basis is the ascending list
of all such patterns, so ranks are stable across runs and releases.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Optional, Sequence, Union

import numpy as np
import scipy.sparse as sp

from . import config
from ._backend import kernels
from .errors import DimensionOverflow


@dataclass(frozen=True)
class OccupationState:
    """One basis ket of the N-site Fock space, stored as a bit pattern."""

    bits: int
    n_sites: int

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError("need at least one site")
        if not 0 <= self.bits < (1 << self.n_sites):
            raise ValueError(f"bits {self.bits:#x} out of range for N={self.n_sites}")

    @classmethod
    def from_sites(cls, sites: Sequence[int], n_sites: int) -> "OccupationState":
        """Ket occupying the given 1-based sites (must be distinct)."""
        bits = 0
        for s in sites:
            if not 1 <= s <= n_sites:
                raise IndexError(f"site {s} out of range 1..{n_sites}")
            if bits >> (s - 1) & 1:
                raise ValueError(f"site {s} listed twice")
            bits |= 1 << (s - 1)
        return cls(bits, n_sites)

    @property
    def n_particles(self) -> int:
        return bin(self.bits).count("1")

    @property
    def sites(self) -> tuple:
        """Occupied sites, ascending, 1-based."""
        return tuple(i + 1 for i in range(self.n_sites) if self.bits >> i & 1)

    def occupied(self, site: int) -> bool:
        self._check_site(site)
        return bool(self.bits >> (site - 1) & 1)

    def label(self) -> str:
        """Comma-free site-tuple label, e.g. ``1|2`` for a'_1 a'_2|vac>."""
        return "|".join(str(s) for s in self.sites) if self.bits else "0"

    def _check_site(self, site: int):
        if not 1 <= site <= self.n_sites:
            raise IndexError(f"site {site} out of range 1..{self.n_sites}")

    def __repr__(self):
        return f"OccupationState({self.bits:0{self.n_sites}b}, N={self.n_sites})"


def vacuum(n_sites: int) -> OccupationState:
    return OccupationState(0, n_sites)


def apply_creation(state: OccupationState, site: int):
    """a'_site acting on a basis ket.

    Returns ``None`` when the site is already occupied (a'^2 = 0), otherwise
    ``(sign, new_state)`` with sign = (-1)^(# occupied sites below ``site``).
    """
    state._check_site(site)
    bit = 1 << (site - 1)
    if state.bits & bit:
        return None
    sign = -1 if bin(state.bits & (bit - 1)).count("1") & 1 else 1
    return sign, OccupationState(state.bits | bit, state.n_sites)


def apply_annihilation(state: OccupationState, site: int):
    """a_site acting on a basis ket; ``None`` when the site is empty."""
    state._check_site(site)
    bit = 1 << (site - 1)
    if not state.bits & bit:
        return None
    sign = -1 if bin(state.bits & (bit - 1)).count("1") & 1 else 1
    return sign, OccupationState(state.bits & ~bit, state.n_sites)


def apply_operator_string(state: OccupationState, ops: Sequence[tuple]):
    """Apply a product of ladder operators, rightmost first.

    ``ops`` lists (kind, site) pairs left to right, kind in {"+", "-"},
    mirroring how an operator string is written.  Returns ``None`` or
    ``(sign, state)``.
    """
    sign = 1
    for kind, site in reversed(ops):
        step = apply_creation(state, site) if kind == "+" else apply_annihilation(state, site)
        if step is None:
            return None
        s, state = step
        sign *= s
    return sign, state


class SectorBasis:
    """Ordered basis of the k-particle sector: all C(N, k) patterns ascending."""

    def __init__(self, n_sites: int, n_particles: int, states: np.ndarray):
        self.n_sites = n_sites
        self.n_particles = n_particles
        self.states = states

    @property
    def dim(self) -> int:
        return self.states.shape[0]

    def index(self, state: Union[OccupationState, int]) -> int:
        """Rank of a pattern in this basis; raises KeyError if absent."""
        bits = state.bits if isinstance(state, OccupationState) else int(state)
        pos = int(np.searchsorted(self.states, np.uint64(bits)))
        if pos == self.dim or int(self.states[pos]) != bits:
            raise KeyError(f"pattern {bits:b} not in the ({self.n_sites},{self.n_particles}) sector")
        return pos

    def state_at(self, i: int) -> OccupationState:
        return OccupationState(int(self.states[i]), self.n_sites)

    def labels(self) -> list:
        return [self.state_at(i).label() for i in range(self.dim)]

    def ket(self, sites: Sequence[int]) -> "WaveVector":
        """Unit WaveVector on the basis ket occupying the given 1-based sites."""
        state = OccupationState.from_sites(sites, self.n_sites)
        amps = np.zeros(self.dim, dtype=complex)
        amps[self.index(state)] = 1.0
        return WaveVector(self, amps)

    def __len__(self):
        return self.dim

    def __iter__(self) -> Iterator[OccupationState]:
        return (self.state_at(i) for i in range(self.dim))

    def __repr__(self):
        return f"SectorBasis(N={self.n_sites}, k={self.n_particles}, dim={self.dim})"


def enumerate_sector(n_sites: int, n_particles: int,
                     max_elements: Optional[int] = None) -> SectorBasis:
    """Basis of the k-particle sector, ascending by bit-pattern value."""
    if not 0 <= n_particles <= n_sites:
        raise ValueError(f"need 0 <= k <= N, got N={n_sites}, k={n_particles}")
    if n_sites > config.MAX_SECTOR_SITES:
        raise DimensionOverflow(
            f"N={n_sites} exceeds the sector limit {config.MAX_SECTOR_SITES}")
    cap = max_elements if max_elements is not None else config.max_dim()
    dim = comb(n_sites, n_particles)
    if dim > cap:
        raise DimensionOverflow(f"sector dimension C({n_sites},{n_particles})={dim} exceeds cap {cap}")
    return SectorBasis(n_sites, n_particles, kernels.enumerate_states(n_sites, n_particles))


class FockBasis:
    """Full 2^N Fock basis ordered by (particle number, bit pattern).

    The ordering keeps every particle-number sector contiguous, so
    number-conserving operators are literally block diagonal.
    """

    def __init__(self, n_sites: int):
        if n_sites > config.MAX_FOCK_SITES:
            raise DimensionOverflow(
                f"N={n_sites} exceeds the full-space limit {config.MAX_FOCK_SITES}")
        self.n_sites = n_sites
        self.sectors = [enumerate_sector(n_sites, k) for k in range(n_sites + 1)]
        self.states = np.concatenate([b.states for b in self.sectors])
        offsets = np.cumsum([0] + [b.dim for b in self.sectors])
        self.sector_slices = [slice(int(offsets[k]), int(offsets[k + 1]))
                              for k in range(n_sites + 1)]
        self._rank = {int(s): i for i, s in enumerate(self.states)}

    @property
    def dim(self) -> int:
        return self.states.shape[0]

    def index(self, state: Union[OccupationState, int]) -> int:
        bits = state.bits if isinstance(state, OccupationState) else int(state)
        return self._rank[bits]

    def state_at(self, i: int) -> OccupationState:
        return OccupationState(int(self.states[i]), self.n_sites)

    def __len__(self):
        return self.dim


class SectorOperator:
    """Matrix between two sector bases, dense or sparse behind one interface.

    Square number-conserving operators have ``domain is codomain``; the mode
    operators are rectangular maps between adjacent sectors.  Storage follows
    the dimension: dense below ``config.SPARSE_THRESHOLD``, CSR above.
    """

    def __init__(self, codomain, domain, data):
        self.codomain = codomain
        self.domain = domain
        self.data = data

    @classmethod
    def from_coo(cls, codomain, domain, rows, cols, vals) -> "SectorOperator":
        shape = (len(codomain), len(domain))
        mat = sp.coo_matrix((vals, (rows, cols)), shape=shape).tocsr()
        op = cls(codomain, domain, mat)
        return op if op._prefer_sparse() else cls(codomain, domain, mat.toarray())

    @classmethod
    def zero(cls, codomain, domain, dtype=float) -> "SectorOperator":
        shape = (len(codomain), len(domain))
        if max(shape) > config.SPARSE_THRESHOLD:
            return cls(codomain, domain, sp.csr_matrix(shape, dtype=dtype))
        return cls(codomain, domain, np.zeros(shape, dtype=dtype))

    @classmethod
    def identity(cls, basis, dtype=float) -> "SectorOperator":
        if len(basis) > config.SPARSE_THRESHOLD:
            return cls(basis, basis, sp.identity(len(basis), dtype=dtype, format="csr"))
        return cls(basis, basis, np.eye(len(basis), dtype=dtype))

    def _prefer_sparse(self) -> bool:
        return max(self.shape) > config.SPARSE_THRESHOLD

    @property
    def shape(self):
        return self.data.shape

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.data)

    def to_dense(self) -> np.ndarray:
        return self.data.toarray() if self.is_sparse else np.asarray(self.data)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return self.data @ v

    def adjoint(self) -> "SectorOperator":
        return SectorOperator(self.domain, self.codomain, self.data.conj().T.copy()
                              if not self.is_sparse else self.data.conj().T.tocsr())

    def hermiticity_residual(self) -> float:
        """max |H - H'| entrywise; only meaningful for square operators."""
        diff = self.data - self.data.conj().T
        if sp.issparse(diff):
            return float(abs(diff).max()) if diff.nnz else 0.0
        return float(np.max(np.abs(diff))) if diff.size else 0.0

    def __matmul__(self, other):
        if isinstance(other, SectorOperator):
            if other.codomain is not self.domain and len(other.codomain) != len(self.domain):
                raise ValueError("operator shapes do not chain")
            return SectorOperator(self.codomain, other.domain, self.data @ other.data)
        return self.data @ other

    def __add__(self, other: "SectorOperator") -> "SectorOperator":
        return SectorOperator(self.codomain, self.domain, self.data + other.data)

    def __sub__(self, other: "SectorOperator") -> "SectorOperator":
        return SectorOperator(self.codomain, self.domain, self.data - other.data)

    def __rmul__(self, scalar) -> "SectorOperator":
        return SectorOperator(self.codomain, self.domain, scalar * self.data)

    def __neg__(self) -> "SectorOperator":
        return SectorOperator(self.codomain, self.domain, -self.data)

    def commutator_norm(self, other: "SectorOperator") -> float:
        """max |[A, B]| entrywise, for square operators on one basis."""
        comm = self.data @ other.data - other.data @ self.data
        if sp.issparse(comm):
            return float(abs(comm).max()) if comm.nnz else 0.0
        return float(np.max(np.abs(comm)))

    def __repr__(self):
        kind = "sparse" if self.is_sparse else "dense"
        return f"SectorOperator({self.shape[0]}x{self.shape[1]}, {kind})"


@dataclass
class WaveVector:
    """Complex amplitudes over one sector basis."""

    basis: SectorBasis
    amps: np.ndarray

    def __post_init__(self):
        self.amps = np.asarray(self.amps, dtype=complex)
        if self.amps.shape != (len(self.basis),):
            raise ValueError("amplitude length does not match the basis dimension")

    @property
    def n_particles(self) -> int:
        return self.basis.n_particles

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "WaveVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return WaveVector(self.basis, self.amps / n)

    def overlap(self, other: "WaveVector") -> complex:
        return complex(np.vdot(self.amps, other.amps))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


def weighted_bilinear(n_sites: int, n_particles: int, weights: np.ndarray,
                      signed: bool = True,
                      basis: Optional[SectorBasis] = None) -> SectorOperator:
    """Matrix of sum_ij weights[i, j] a'_i a_j on the k-sector (1-based weights
    are passed 0-based here; callers translate)."""
    b = basis if basis is not None else enumerate_sector(n_sites, n_particles)
    rows, cols, vals = kernels.bilinear_accumulate(
        b.states, np.ascontiguousarray(weights, dtype=np.float64), signed)
    return SectorOperator.from_coo(b, b, rows, cols, vals)


def bilinear_matrix(n_sites: int, n_particles: int, i: int, j: int,
                    basis: Optional[SectorBasis] = None) -> SectorOperator:
    """Matrix of a'_i a_j restricted to the k-sector, fermionic signs included."""
    for s in (i, j):
        if not 1 <= s <= n_sites:
            raise IndexError(f"site {s} out of range 1..{n_sites}")
    w = np.zeros((n_sites, n_sites))
    w[i - 1, j - 1] = 1.0
    return weighted_bilinear(n_sites, n_particles, w, basis=basis)


def sector_annihilation(n_sites: int, n_particles: int, site: int,
                        domain: Optional[SectorBasis] = None,
                        codomain: Optional[SectorBasis] = None) -> SectorOperator:
    """a_site as a rectangular map from the k- to the (k-1)-sector."""
    if not 1 <= site <= n_sites:
        raise IndexError(f"site {site} out of range 1..{n_sites}")
    if n_particles < 1:
        raise ValueError("no particles to annihilate")
    dom = domain if domain is not None else enumerate_sector(n_sites, n_particles)
    cod = codomain if codomain is not None else enumerate_sector(n_sites, n_particles - 1)
    rows, cols, vals = [], [], []
    for c in range(dom.dim):
        step = apply_annihilation(dom.state_at(c), site)
        if step is None:
            continue
        sign, out = step
        rows.append(cod.index(out))
        cols.append(c)
        vals.append(float(sign))
    return SectorOperator.from_coo(cod, dom, rows, cols, vals)


def sector_creation(n_sites: int, n_particles: int, site: int,
                    domain: Optional[SectorBasis] = None,
                    codomain: Optional[SectorBasis] = None) -> SectorOperator:
    """a'_site as a rectangular map from the k- to the (k+1)-sector."""
    if not 1 <= site <= n_sites:
        raise IndexError(f"site {site} out of range 1..{n_sites}")
    if n_particles >= n_sites:
        raise ValueError("sector already full")
    dom = domain if domain is not None else enumerate_sector(n_sites, n_particles)
    cod = codomain if codomain is not None else enumerate_sector(n_sites, n_particles + 1)
    rows, cols, vals = [], [], []
    for c in range(dom.dim):
        step = apply_creation(dom.state_at(c), site)
        if step is None:
            continue
        sign, out = step
        rows.append(cod.index(out))
        cols.append(c)
        vals.append(float(sign))
    return SectorOperator.from_coo(cod, dom, rows, cols, vals)


def full_creation(basis: FockBasis, site: int) -> SectorOperator:
    """a'_site on the full Fock basis (moves between adjacent blocks)."""
    rows, cols, vals = [], [], []
    for c in range(basis.dim):
        step = apply_creation(basis.state_at(c), site)
        if step is None:
            continue
        sign, out = step
        rows.append(basis.index(out))
        cols.append(c)
        vals.append(float(sign))
    return SectorOperator.from_coo(basis, basis, rows, cols, vals)


def full_annihilation(basis: FockBasis, site: int) -> SectorOperator:
    """a_site on the full Fock basis."""
    rows, cols, vals = [], [], []
    for c in range(basis.dim):
        step = apply_annihilation(basis.state_at(c), site)
        if step is None:
            continue
        sign, out = step
        rows.append(basis.index(out))
        cols.append(c)
        vals.append(float(sign))
    return SectorOperator.from_coo(basis, basis, rows, cols, vals)
