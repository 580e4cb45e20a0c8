"""Exact simulator for permutation-symmetric fermionic quantum walks.

Sector-restricted fermionic operators on bit-pattern bases, conjugacy-class
Hamiltonians of the site-permutation group, their closed-form spectra and
walk probability laws, and a brute-force spectral oracle cross-checking every
formula.  See the README for the CLI (``permwalk spectrum|walk|marked|verify``).
"""

from ._backend import available_backends, backend_name
from .errors import (ClassTooLarge, DimensionOverflow, NotHermitian,
                     PermwalkError)
from .fock import (FockBasis, OccupationState, SectorBasis, SectorOperator,
                   WaveVector, apply_annihilation, apply_creation,
                   bilinear_matrix, enumerate_sector, vacuum)
from .permgroup import (CycleType, PermutationElem, compose, conjugacy_class,
                        inverse, parse_cycles, realize_full,
                        realize_permutation, transposition)
from .hamiltonians import (ModelSpec, build_class_hamiltonian, build_hopping,
                           build_marked, build_quartic2, build_ring,
                           build_xxx_spin)
from .spectral import (SpectrumSummary, analytic_spectrum, eigenvectors_high,
                       eigenvectors_low, marked_reduced_matrix, mode_operator,
                       numeric_spectrum)
from .dynamics import (TimeGrid, WalkResult, amplitude_2fermion, evolve_oracle,
                       marked_p11, marked_p22, propagator_1fermion,
                       return_prob_1fermion, return_prob_kfermion,
                       spread_prob_1fermion, support_profile)

__version__ = "0.1.0"

__all__ = [
    "ClassTooLarge", "CycleType", "DimensionOverflow", "FockBasis",
    "ModelSpec", "NotHermitian", "OccupationState", "PermutationElem",
    "PermwalkError", "SectorBasis", "SectorOperator", "SpectrumSummary",
    "TimeGrid", "WalkResult", "WaveVector", "amplitude_2fermion",
    "analytic_spectrum", "apply_annihilation", "apply_creation",
    "available_backends", "backend_name", "bilinear_matrix",
    "build_class_hamiltonian", "build_hopping", "build_marked",
    "build_quartic2", "build_ring", "build_xxx_spin", "compose",
    "conjugacy_class", "enumerate_sector", "eigenvectors_high",
    "eigenvectors_low", "evolve_oracle", "inverse", "marked_p11",
    "marked_p22", "marked_reduced_matrix", "mode_operator",
    "numeric_spectrum", "parse_cycles", "propagator_1fermion",
    "realize_full", "realize_permutation", "return_prob_1fermion",
    "return_prob_kfermion", "spread_prob_1fermion", "support_profile",
    "transposition", "vacuum",
]
