"""Quantum cloning by free evolution of engineered spin networks.

Exact magnetization-sector dynamics of XY/Heisenberg coupling graphs, closed
forms for the spin-star cloner, (t, B) fidelity optimization, coupling
disorder averages and a dephasing-noise comparison against gate-compiled
cloning circuits.
"""

from .analytic import (NoPccReference, NtomReference, NTOM_REFERENCE,
                       PccReference, StarAnalytics, StarEigenstate, b_opt_xy,
                       heis_star_fidelity, heis_star_fidelity_equatorial,
                       pcc_pairs, pcc_reference, star_analytics, t_c_heis,
                       t_c_xy, xy_star_fidelity, xy_star_fidelity_equatorial,
                       xy_star_spectrum)
from .dynamics import (CloneResult, QubitDensity, SectorState, clone_fidelity,
                       evolve, prepare_input, reduce_density_to_site,
                       reduce_to_site, run_protocol)
from .hamiltonian import (DimensionLimitError, HamiltonianBlock, SectorBasis,
                          SpectralDecomposition, build_block, required_weights,
                          sector_basis, spectral)
from .noise import (GatePulse, MixedState, NoiseSpec, circuit_baseline,
                    circuit_ideal_fidelity, lindblad_evolve,
                    noisy_network_fidelity, pcc_circuit_schedule,
                    stochastic_evolve)
from .search import (DisorderSummary, GridSpec, OptimizationResult,
                     ProtocolScan, disorder_study, optimize,
                     optimize_exact_field, optimize_tree)
from .topology import (MAX_SITES, NetworkTooLargeError, SpinNetwork, bipartite,
                       from_edge_list, from_text, jitter, star, to_text, tree)

__version__ = "0.1.0"
