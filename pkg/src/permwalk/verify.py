"""Numerical verification suites behind ``permwalk verify``.

Each check re-runs one module invariant and reports its worst residual
against a fixed threshold.  ``quick`` caps system sizes at N = 5, ``full``
at N = 8 (closed-form propagators go to N = 12 either way; they are cheap).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, List

import numpy as np
import scipy.linalg

from . import dynamics, fock, hamiltonians, permgroup, spectral
from .dynamics import TimeGrid
from .permgroup import CycleType


@dataclass
class CheckResult:
    name: str
    residual: float
    threshold: float
    seconds: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.threshold

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}  {self.name:<38} max residual {self.residual:10.3e}"
                f"  (tol {self.threshold:.0e}, {self.seconds:5.2f}s)")


def _sector_range(n):
    return range(0, n + 1)


def check_car_algebra(n_max: int) -> float:
    worst = 0.0
    for n in range(2, n_max + 1):
        basis = fock.FockBasis(n)
        create = [fock.full_creation(basis, s).to_dense() for s in range(1, n + 1)]
        destroy = [fock.full_annihilation(basis, s).to_dense() for s in range(1, n + 1)]
        eye = np.eye(basis.dim)
        for j in range(n):
            for k in range(n):
                anti = destroy[j] @ create[k] + create[k] @ destroy[j]
                target = eye if j == k else 0.0
                worst = max(worst, np.max(np.abs(anti - target)))
                worst = max(worst, np.max(np.abs(destroy[j] @ destroy[k] + destroy[k] @ destroy[j])))
                worst = max(worst, np.max(np.abs(create[j] @ create[k] + create[k] @ create[j])))
    return worst


def check_rank_unrank(n_max: int) -> float:
    bad = 0
    for n in range(1, n_max + 1):
        for k in range(0, n + 1):
            basis = fock.enumerate_sector(n, k)
            for idx in range(basis.dim):
                if basis.index(basis.state_at(idx)) != idx:
                    bad += 1
    return float(bad)


def check_generator_relations(n_max: int) -> float:
    worst = 0.0
    for n in range(3, n_max + 1):
        gens = permgroup.adjacent_transpositions(n)
        for k in _sector_range(n):
            mats = [permgroup.realize_permutation(g, n, k).to_dense() for g in gens]
            eye = np.eye(comb(n, k))
            for i, m in enumerate(mats):
                worst = max(worst, np.max(np.abs(m @ m - eye)))
                for jj in range(i + 2, len(mats)):
                    worst = max(worst, np.max(np.abs(m @ mats[jj] - mats[jj] @ m)))
            for i in range(len(mats) - 1):
                braid = mats[i] @ mats[i + 1] @ mats[i]
                diarb = mats[i + 1] @ mats[i] @ mats[i + 1]
                worst = max(worst, np.max(np.abs(braid - diarb)))
    return worst


def check_homomorphism(n_max: int, pairs: int, seed: int = 11) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for n in range(2, n_max + 1):
        for _ in range(pairs):
            a = permgroup.random_permutation(n, rng)
            b = permgroup.random_permutation(n, rng)
            ab = permgroup.compose(a, b)
            for k in _sector_range(n):
                ma = permgroup.realize_permutation(a, n, k).to_dense()
                mb = permgroup.realize_permutation(b, n, k).to_dense()
                mab = permgroup.realize_permutation(ab, n, k).to_dense()
                worst = max(worst, np.max(np.abs(ma @ mb - mab)))
    return worst


def check_class_sizes(n_max: int) -> float:
    bad = 0
    for n in range(1, n_max + 1):
        for ct in permgroup.partitions(n):
            elems = list(permgroup.conjugacy_class(ct))
            if len(elems) != ct.class_size() or len(set(e.images for e in elems)) != len(elems):
                bad += 1
    return float(bad)


def check_class_sum_paths(n_max: int) -> float:
    worst = 0.0
    for n in range(3, n_max + 1):
        ct = CycleType.pure(2, n)
        for k in _sector_range(n):
            fast = hamiltonians.build_class_hamiltonian(ct, n, k).to_dense()
            slow = hamiltonians.build_class_hamiltonian(ct, n, k, streamed=True).to_dense()
            worst = max(worst, np.max(np.abs(fast - slow)))
    return worst


def check_hopping_spectrum(n_max: int) -> float:
    worst = 0.0
    for n in range(2, n_max + 1):
        for k in range(1, n):
            levels = spectral.numeric_spectrum(hamiltonians.build_hopping(n, k))
            summary = spectral.analytic_spectrum(n, k)
            expected = sorted(summary.levels())
            if len(levels) != len(expected):
                return float("inf")
            for (ev, mult), (ee, me) in zip(sorted(levels), expected):
                if mult != me:
                    return float("inf")
                worst = max(worst, abs(ev - ee))
    return worst


def check_sn_invariance(n_max: int, draws: int, seed: int = 5) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for n in range(2, n_max + 1):
        for k in _sector_range(n):
            h = hamiltonians.build_hopping(n, k)
            for _ in range(draws):
                sigma = permgroup.random_permutation(n, rng)
                u = permgroup.realize_permutation(sigma, n, k)
                worst = max(worst, h.commutator_norm(u))
    return worst


def check_marked_symmetry(n_max: int, seed: int = 6) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for n in range(3, n_max + 1):
        for k in (1, 2):
            if k > n:
                continue
            h = hamiltonians.build_marked(n, k, 0.3)
            for _ in range(8):
                sigma = permgroup.random_permutation(n, rng)
                u = permgroup.realize_permutation(sigma, n, k)
                commn = h.commutator_norm(u)
                if sigma(1) == 1:
                    worst = max(worst, commn)
                elif commn < 1e-6:
                    worst = max(worst, 1.0)  # symmetry must be broken
    return worst


def check_quartic(n_lo: int, n_hi: int) -> float:
    worst = 0.0
    for n in range(n_lo, n_hi + 1):
        for k in _sector_range(n):
            q = hamiltonians.build_quartic2(n, k)
            cf = hamiltonians.quartic2_closed_form(n, k)
            worst = max(worst, np.max(np.abs(q.to_dense() - cf.to_dense())))
            worst = max(worst, q.commutator_norm(hamiltonians.build_hopping(n, k)))
    return worst


def check_mode_car(n_max: int) -> float:
    worst = 0.0
    for n in range(3, n_max + 1):
        fb = fock.FockBasis(n)
        dims = fb.dim
        full_a = []
        for alpha in range(1, n + 1):
            mat = np.zeros((dims, dims), dtype=complex)
            for k in range(1, n + 1):
                block = spectral.mode_operator(alpha, n, k).to_dense()
                mat[fb.sector_slices[k - 1], fb.sector_slices[k]] = block
            full_a.append(mat)
        eye = np.eye(dims)
        for a in range(n):
            for b in range(n):
                anti = full_a[a] @ full_a[b].conj().T + full_a[b].conj().T @ full_a[a]
                target = eye if a == b else 0.0
                worst = max(worst, np.max(np.abs(anti - target)))
                anti2 = full_a[a] @ full_a[b] + full_a[b] @ full_a[a]
                worst = max(worst, np.max(np.abs(anti2)))
    return worst


def check_mode_hamiltonian(n: int) -> float:
    worst = 0.0
    for k in _sector_range(n):
        h = hamiltonians.build_hopping(n, k).to_dense()
        dim = comb(n, k)
        if k == 0:
            worst = max(worst, np.max(np.abs(h)))
            continue
        an = spectral.mode_operator(n, n, k).to_dense()
        ad = spectral.mode_operator(n, n, k - 1, dagger=True).to_dense()
        lhs = n * (ad @ an) - k * np.eye(dim)
        worst = max(worst, np.max(np.abs(lhs - h)))
    return worst


def check_eigenfamilies(n_max: int) -> float:
    worst = 0.0
    for n in range(2, n_max + 1):
        for k in range(1, n):
            h = hamiltonians.build_hopping(n, k).to_dense()
            hi = spectral.eigenvectors_high(n, k)
            lo = spectral.eigenvectors_low(n, k)
            for v in hi:
                worst = max(worst, np.max(np.abs(h @ v.amps - (n - k) * v.amps)))
                worst = max(worst, abs(v.norm() - 1.0))
            for v in lo:
                worst = max(worst, np.max(np.abs(h @ v.amps + k * v.amps)))
                worst = max(worst, abs(v.norm() - 1.0))
            for u in hi:
                for v in lo:
                    worst = max(worst, abs(u.overlap(v)))
            mat = np.column_stack([v.amps for v in hi + lo])
            if np.linalg.matrix_rank(mat, tol=1e-8) != comb(n, k):
                worst = max(worst, 1.0)
    return worst


def check_propagator(n_max: int, draws: int, seed: int = 9) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for n in range(2, n_max + 1):
        h = hamiltonians.build_hopping(n, 1)
        times = rng.uniform(0.0, 30.0, draws)
        eye = np.eye(n, dtype=complex)
        oracle_cols = [dynamics.evolve_amplitudes(h, eye[:, c], times) for c in range(n)]
        for t_idx, t in enumerate(times):
            u = dynamics.propagator_1fermion(n, float(t)).to_dense()
            full = np.column_stack([col[t_idx] for col in oracle_cols])
            worst = max(worst, np.max(np.abs(u - full)))
    return worst


def check_probability_formulas(n_max: int) -> float:
    worst = 0.0
    grid = TimeGrid(0.0, 20.0, 100)
    ts = grid.times
    for n in range(2, n_max + 1):
        for k in range(1, n):
            basis = fock.enumerate_sector(n, k)
            h = hamiltonians.build_hopping(n, k, basis=basis)
            psi0 = basis.ket(list(range(1, k + 1)))
            amps = dynamics.evolve_amplitudes(h, psi0.amps, ts)
            probs = np.abs(amps) ** 2
            start = basis.index(fock.OccupationState.from_sites(range(1, k + 1), n))
            worst = max(worst, np.max(np.abs(probs[:, start] -
                                             dynamics.return_prob_kfermion(n, k, ts))))
            if k == 1:
                worst = max(worst, np.max(np.abs(probs[:, 0] -
                                                 dynamics.return_prob_1fermion(n, ts))))
                for j in range(1, n):
                    worst = max(worst, np.max(np.abs(probs[:, j] -
                                                     dynamics.spread_prob_1fermion(n, ts))))
            if k == 2 and n >= 3:
                for idx in range(basis.dim):
                    kk, ll = basis.state_at(idx).sites
                    formula = np.array([dynamics.amplitude_2fermion(1, 2, kk, ll, n, float(t))
                                        for t in ts])
                    worst = max(worst, np.max(np.abs(amps[:, idx] - formula)))
    return worst


def check_localisation_floor(n_max: int) -> float:
    worst = 0.0
    for n in range(2, n_max + 1):
        ts = np.linspace(0, 2 * np.pi / n, 2001)
        for k in range(1, n):
            floor = dynamics.return_prob_floor(n, k)
            at_min = float(dynamics.return_prob_kfermion(n, k, np.pi / n))
            worst = max(worst, abs(at_min - floor))
            sampled = float(np.min(dynamics.return_prob_kfermion(n, k, ts)))
            worst = max(worst, max(0.0, floor - sampled))
    worst = max(worst, abs(dynamics.return_prob_floor(100, 1) - 0.9604))
    return worst


def check_restricted_support() -> float:
    grid = TimeGrid(0.0, 20.0, 400)
    sym = dynamics.support_profile(10, 2, [5, 6], grid, family="hopping")
    ring = dynamics.support_profile(10, 2, [5, 6], grid, family="ring")
    worst = sym.leak
    if ring.leak <= 0.01:
        worst = max(worst, 1.0)
    return worst


def check_marked_model(n_max: int) -> float:
    worst = 0.0
    grid = TimeGrid(0.0, 20.0, 120)
    ts = grid.times
    for n in range(3, n_max + 1):
        for beta in (0.0, 0.05, 0.3, 1.0):
            p_cf = np.asarray(dynamics.marked_p11(n, beta, ts))
            red = spectral.marked_reduced_matrix(n, beta)
            a3 = dynamics.evolve_amplitudes(red, np.array([1, 0, 0], dtype=complex), ts)
            h = hamiltonians.build_marked(n, 1, beta)
            e1 = np.zeros(n, dtype=complex)
            e1[0] = 1.0
            af = dynamics.evolve_amplitudes(h, e1, ts)
            worst = max(worst, np.max(np.abs(p_cf - np.abs(a3[:, 0]) ** 2)))
            worst = max(worst, np.max(np.abs(p_cf - np.abs(af[:, 0]) ** 2)))
        worst = max(worst, np.max(np.abs(np.asarray(dynamics.marked_p11(n, 1.0, ts)) -
                                         np.asarray(dynamics.return_prob_1fermion(n, ts)))))
    return worst


def check_xxx_sector(n_formula_max: int, n_oracle_max: int) -> float:
    worst = 0.0
    for n in range(3, n_formula_max + 1):
        mat = hamiltonians.build_xxx_spin(n, 1).to_dense()
        expected = ((n - 1) * (n - 2) / 2 - 1) * np.eye(n) + np.ones((n, n))
        worst = max(worst, np.max(np.abs(mat - expected)))
    for n in range(2, n_oracle_max + 1):
        full = hamiltonians.xxx_spin_full(n)
        for down in range(0, n + 1):
            idx = hamiltonians.spin_sector_indices(n, down)
            block = full[np.ix_(idx, idx)]
            mine = hamiltonians.build_xxx_spin(n, down).to_dense()
            worst = max(worst, np.max(np.abs(block - mine)))
    return worst


def check_perturbation_stability(n_max: int) -> float:
    worst = 0.0
    for n in range(3, n_max + 1):
        for k in range(1, n):
            h = hamiltonians.build_hopping(n, k).to_dense()
            h2 = hamiltonians.build_quartic2(n, k).to_dense()
            for lam in (0.5, 1.0, 2.0):
                worst = max(worst, _subspace_mismatch(h, h + lam * h2))
    return worst


def _subspace_mismatch(h_ref: np.ndarray, h_pert: np.ndarray) -> float:
    """Largest principal angle between matching eigenspaces of two operators."""
    worst = 0.0
    vals_r, vecs_r = scipy.linalg.eigh(h_ref)
    vals_p, vecs_p = scipy.linalg.eigh(h_pert)
    groups_r = _group_indices(vals_r)
    groups_p = _group_indices(vals_p)
    if len(groups_r) != len(groups_p):
        return 1.0
    for gr, gp in zip(groups_r, groups_p):
        if len(gr) != len(gp):
            return 1.0
        angles = scipy.linalg.subspace_angles(vecs_r[:, gr], vecs_p[:, gp])
        if angles.size:
            worst = max(worst, float(np.max(angles)))
    return worst


def _group_indices(vals: np.ndarray, tol: float = 1e-9) -> list:
    groups = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > tol:
            groups.append(list(range(start, i)))
            start = i
    return groups


def run_checks(level: str = "quick") -> List[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError("level must be quick or full")
    full = level == "full"
    n_cap = 8 if full else 5
    plan: List[tuple] = [
        ("fock: CAR algebra on the full space", 1e-14,
         lambda: check_car_algebra(5 if full else 4)),
        ("fock: rank/unrank bijectivity", 0.0,
         lambda: check_rank_unrank(12 if full else 8)),
        ("permgroup: generator relations", 1e-14,
         lambda: check_generator_relations(6 if full else 5)),
        ("permgroup: realization homomorphism", 1e-14,
         lambda: check_homomorphism(6 if full else 5, 50 if full else 10)),
        ("permgroup: class sizes and uniqueness", 0.0,
         lambda: check_class_sizes(6 if full else 5)),
        ("hamiltonians: class-sum fast vs streamed", 1e-12,
         lambda: check_class_sum_paths(6 if full else 5)),
        ("hamiltonians: quartic identity/commutant", 1e-10,
         lambda: check_quartic(4, 6 if full else 5)),
        ("hamiltonians: global S_N invariance", 1e-12,
         lambda: check_sn_invariance(7 if full else 5, 30 if full else 10)),
        ("hamiltonians: marked residual symmetry", 1e-12,
         lambda: check_marked_symmetry(6 if full else 5)),
        ("hamiltonians: xxx spin sectors", 1e-12,
         lambda: check_xxx_sector(8 if full else 5, 4 if full else 3)),
        ("spectral: two-level spectrum", 1e-9,
         lambda: check_hopping_spectrum(n_cap)),
        ("spectral: mode CAR", 1e-13,
         lambda: check_mode_car(5 if full else 4)),
        ("spectral: mode form of the Hamiltonian", 1e-12,
         lambda: check_mode_hamiltonian(5 if full else 4)),
        ("spectral: eigenvector families", 1e-12,
         lambda: check_eigenfamilies(7 if full else 5)),
        ("dynamics: closed-form propagator", 1e-11,
         lambda: check_propagator(12, 50 if full else 10)),
        ("dynamics: probability formulas", 1e-10,
         lambda: check_probability_formulas(n_cap)),
        ("dynamics: localisation floor", 1e-12,
         lambda: check_localisation_floor(n_cap)),
        ("dynamics: restricted support / ring leak", dynamics.LEAK_THRESHOLD,
         check_restricted_support),
        ("dynamics: marked-site model", 1e-10,
         lambda: check_marked_model(10 if full else 5)),
        ("dynamics: perturbation stability", 1e-10,
         lambda: check_perturbation_stability(6 if full else 5)),
    ]
    results = []
    for name, tol, fn in plan:
        t0 = time.perf_counter()
        residual = float(fn())
        results.append(CheckResult(name, residual, tol, time.perf_counter() - t0))
    return results
