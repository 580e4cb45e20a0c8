"""Time evolution and the closed-form probability laws.

The generic evolver diagonalizes the Hamiltonian once and exponentiates the
spectrum; it is the oracle every closed form is checked against.  All times
are dimensionless (hbar = 1); the symmetric-model formulas depend on t only
through cos(Nt), so every probability is periodic with period 2 pi / N.

Closed forms implemented here:

  return (1 fermion):  [1 + (N-1)^2 + 2(N-1) cos Nt] / N^2
  spread (1 fermion):  2 [1 - cos Nt] / N^2
  return (k fermions): [k^2 + (N-k)^2 + 2k(N-k) cos Nt] / N^2
  2-fermion amplitude: double Fourier-mode sum with phases e^{-i(N-2)t}, e^{2it}
  1-fermion propagator: [(1 - J/N) + (J/N) e^{-iNt}] e^{it},  J = all-ones
  marked p11:          1 - 2(N-1) b^2 (1 - cos Dt) / D^2,
                       D^2 = (N-2)^2 + 4(N-1) b^2
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from math import sqrt
from typing import List, Optional, Sequence, Union

import numpy as np
import scipy.linalg

from .errors import NotHermitian
from .fock import (OccupationState, SectorBasis, SectorOperator, WaveVector,
                   enumerate_sector)

HERMITICITY_TOL = 1e-10
LEAK_THRESHOLD = 1e-10  # spectral-evolution noise floor is ~1e-13 at desk scale


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid; defaults cover the t in [0, 20] plotting window."""

    t_start: float = 0.0
    t_end: float = 20.0
    n_points: int = 400

    def __post_init__(self):
        if self.n_points < 2:
            raise ValueError("need at least two grid points")
        if not self.t_end > self.t_start:
            raise ValueError("grid must be strictly increasing")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.n_points)

    def to_json_dict(self) -> dict:
        return {"t_start": self.t_start, "t_end": self.t_end, "n_points": self.n_points}

    @classmethod
    def from_json_dict(cls, data: dict) -> "TimeGrid":
        return cls(float(data.get("t_start", 0.0)), float(data.get("t_end", 20.0)),
                   int(data.get("n_points", 400)))


@dataclass
class WalkResult:
    """Probability table over a time grid; one column per target label."""

    grid: TimeGrid
    labels: List[str]
    probs: np.ndarray  # shape (n_points, n_labels)

    def __post_init__(self):
        self.probs = np.asarray(self.probs, dtype=float)
        if self.probs.shape != (self.grid.n_points, len(self.labels)):
            raise ValueError("probability table shape does not match grid/labels")

    def row_sums(self) -> np.ndarray:
        return self.probs.sum(axis=1)

    def column(self, label: str) -> np.ndarray:
        return self.probs[:, self.labels.index(label)]

    def select(self, labels: Sequence[str]) -> "WalkResult":
        idx = [self.labels.index(l) for l in labels]
        return WalkResult(self.grid, list(labels), self.probs[:, idx])

    def to_csv(self, footer_comments: Sequence[str] = ()) -> str:
        """CSV text: header ``t,<labels>``, 12 significant digits, optional
        ``#``-prefixed footer lines."""
        buf = io.StringIO()
        buf.write("t," + ",".join(self.labels) + "\n")
        times = self.grid.times
        for r in range(self.grid.n_points):
            cells = [_fmt(times[r])] + [_fmt(p) for p in self.probs[r]]
            buf.write(",".join(cells) + "\n")
        for line in footer_comments:
            buf.write(f"# {line}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "WalkResult":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        header = lines[0].split(",")
        if header[0] != "t":
            raise ValueError("not a walk CSV: first column must be t")
        labels = header[1:]
        rows = [[float(c) for c in ln.split(",")] for ln in lines[1:]]
        data = np.array(rows)
        times = data[:, 0]
        grid = TimeGrid(float(times[0]), float(times[-1]), len(times))
        return cls(grid, labels, data[:, 1:])

    def to_json_dict(self) -> dict:
        return {"grid": self.grid.to_json_dict(), "labels": self.labels,
                "probs": [[float(p) for p in row] for row in self.probs]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _as_dense_hermitian(h) -> np.ndarray:
    mat = h.to_dense() if isinstance(h, SectorOperator) else h
    mat = np.asarray(mat, dtype=complex)
    residual = float(np.max(np.abs(mat - mat.conj().T))) if mat.size else 0.0
    if residual > HERMITICITY_TOL:
        raise NotHermitian(f"symmetry residual {residual:.3e} exceeds {HERMITICITY_TOL}")
    return mat


def evolve_amplitudes(h, psi0: np.ndarray, times: np.ndarray) -> np.ndarray:
    """exp(-iHt) psi0 for every t, via one eigendecomposition of H."""
    mat = _as_dense_hermitian(h)
    vals, vecs = scipy.linalg.eigh(mat)
    coeff = vecs.conj().T @ np.asarray(psi0, dtype=complex)
    phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), vals))
    return (phases * coeff) @ vecs.T


def evolve_oracle(h: SectorOperator, psi0: WaveVector, grid: TimeGrid) -> WalkResult:
    """Brute-force spectral evolution; the verification oracle.

    Returns the probability table over the full sector basis.  Evolution is
    exactly unitary up to the eigensolver's floating-point noise, so rows sum
    to one at the 1e-12 level.
    """
    amps = evolve_amplitudes(h, psi0.amps, grid.times)
    return WalkResult(grid, psi0.basis.labels(), np.abs(amps) ** 2)


def propagator_1fermion(n_sites: int, t: float) -> SectorOperator:
    """Closed-form exp(-iHt) on the 1-fermion sector of the hopping model."""
    n = n_sites
    basis = enumerate_sector(n, 1)
    ones = np.ones((n, n), dtype=complex) / n
    mat = (np.eye(n, dtype=complex) - ones + ones * np.exp(-1j * n * t)) * np.exp(1j * t)
    return SectorOperator(basis, basis, mat)


def return_prob_1fermion(n_sites: int, t: Union[float, np.ndarray]):
    """|<j|j(t)>|^2 for the hopping model, any start site j."""
    n = n_sites
    if n < 2:
        raise ValueError("need N >= 2")
    t = np.asarray(t, dtype=float)
    out = (1.0 + (n - 1.0) ** 2 + 2.0 * (n - 1.0) * np.cos(n * t)) / n ** 2
    return float(out) if out.ndim == 0 else out


def spread_prob_1fermion(n_sites: int, t: Union[float, np.ndarray]):
    """|<j'|j(t)>|^2 for any j' != j; all N-1 targets share one law."""
    n = n_sites
    if n < 2:
        raise ValueError("need N >= 2")
    t = np.asarray(t, dtype=float)
    out = 2.0 * (1.0 - np.cos(n * t)) / n ** 2
    return float(out) if out.ndim == 0 else out


def return_prob_kfermion(n_sites: int, n_particles: int,
                         t: Union[float, np.ndarray]):
    """Return probability of any k-fermion basis ket under the hopping model."""
    n, k = n_sites, n_particles
    if not 1 <= k <= n - 1:
        raise ValueError("need 1 <= k <= N-1")
    t = np.asarray(t, dtype=float)
    out = (k ** 2 + (n - k) ** 2 + 2.0 * k * (n - k) * np.cos(n * t)) / n ** 2
    return float(out) if out.ndim == 0 else out


def return_prob_floor(n_sites: int, n_particles: int) -> float:
    """Minimum over t of the k-fermion return probability: ((N-2k)/N)^2."""
    return ((n_sites - 2.0 * n_particles) / n_sites) ** 2


def amplitude_2fermion(i: int, j: int, k: int, l: int, n_sites: int, t: float) -> complex:
    """<k,l| exp(-iHt) |i,j> for the hopping model, i<j and k<l site pairs."""
    n = n_sites
    if not (1 <= i < j <= n and 1 <= k < l <= n):
        raise ValueError("need ordered site pairs inside 1..N")
    w = np.exp(2j * np.pi / n)
    alphas = np.arange(1, n)
    left = (w ** (i * alphas) - w ** (j * alphas)) * \
           (w ** (-k * alphas) - w ** (-l * alphas))
    single = np.exp(-1j * (n - 2) * t) * left.sum()
    a = alphas[:, None]
    b = alphas[None, :]
    pair = (w ** (i * a + j * b) - w ** (i * b + j * a)) * \
           (w ** (-k * a - l * b) - w ** (-l * a - k * b))
    upper = np.triu(pair, 1).sum()
    return complex((single + np.exp(2j * t) * upper) / n ** 2)


@dataclass
class SupportProfile:
    """Full probability table plus the leak onto forbidden configurations.

    A target is allowed when it shares at least k-1 sites with the initial
    pattern; ``leak_series`` is the per-time maximum probability over all
    other targets and ``leak`` its maximum over the grid.
    """

    walk: WalkResult
    initial_label: str
    allowed: List[str]
    leak_series: np.ndarray
    leak: float


def support_profile(n_sites: int, n_particles: int, initial_sites: Sequence[int],
                    grid: TimeGrid, family: str = "hopping",
                    hamiltonian: Optional[SectorOperator] = None) -> SupportProfile:
    """Evolve one basis ket and measure the restricted-support leak."""
    from .hamiltonians import ModelSpec

    basis = enumerate_sector(n_sites, n_particles)
    if hamiltonian is None:
        hamiltonian = ModelSpec(family, n_sites, n_particles).build(basis=basis)
    psi0 = basis.ket(initial_sites)
    walk = evolve_oracle(hamiltonian, psi0, grid)
    init = set(initial_sites)
    allowed_mask = np.array([len(init & set(s.sites)) >= n_particles - 1 for s in basis])
    allowed = [lbl for lbl, ok in zip(walk.labels, allowed_mask) if ok]
    if bool(np.all(allowed_mask)):
        leak_series = np.zeros(grid.n_points)
    else:
        leak_series = walk.probs[:, ~allowed_mask].max(axis=1)
    return SupportProfile(
        walk=walk,
        initial_label=OccupationState.from_sites(initial_sites, n_sites).label(),
        allowed=allowed,
        leak_series=leak_series,
        leak=float(leak_series.max()),
    )


def marked_p11(n_sites: int, beta: float, t: Union[float, np.ndarray]):
    """Closed-form return probability of the marked site |1>."""
    n = n_sites
    if n < 3:
        raise ValueError("need N >= 3")
    t = np.asarray(t, dtype=float)
    d2 = (n - 2.0) ** 2 + 4.0 * (n - 1.0) * beta ** 2
    out = 1.0 - 2.0 * (n - 1.0) * beta ** 2 * (1.0 - np.cos(t * sqrt(d2))) / d2
    return float(out) if out.ndim == 0 else out


def marked_p22(n_sites: int, beta: float, grid: TimeGrid) -> np.ndarray:
    """Return probability of |2> in the marked model, via the 3x3 reduction.

    |2> lies inside the invariant subspace {|1>, |2>, symmetric rest}, so the
    3x3 block evolves it exactly; the full-sector oracle is the cross-check.
    """
    from .spectral import marked_reduced_matrix

    block = marked_reduced_matrix(n_sites, beta)
    psi0 = np.array([0.0, 1.0, 0.0], dtype=complex)
    amps = evolve_amplitudes(block, psi0, grid.times)
    return np.abs(amps[:, 1]) ** 2
