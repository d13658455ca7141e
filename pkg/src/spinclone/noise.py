"""Dephasing noise: master equation, trajectory unraveling, circuit baseline.

White-noise longitudinal fields ``sum_i (b_i(t)/2) sz_i`` with
``<b_i(t) b_j(t')> = Gamma delta_ij delta(t - t')`` average to the master
equation

    drho/dt = -i [H, rho] + (Gamma/4) sum_i (sz_i rho sz_i - rho),

which damps single-qubit coherences at the rate ``Gamma / 2``.  The same
normalization is used for the free-evolution protocol and for the
gate-compiled circuit baseline, so their comparison does not depend on it.

The circuit baseline compiles cloning gate sequences to schedules of XY
coupling pulses (two pulses per two-qubit gate) plus instantaneous
single-qubit rotations; dephasing acts on every qubit for the full pulsed
duration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import clone_fidelity, reduce_density_to_site
from .hamiltonian import HamiltonianBlock, SectorBasis, build_block, sector_basis
from .topology import SpinNetwork, from_edge_list


class NumericalBreakdownError(RuntimeError):
    """Master-equation step control failed to meet the trace criterion."""


@dataclass(frozen=True)
class NoiseSpec:
    """Noise strength and solver configuration."""

    gamma: float
    mode: str = "master_equation"      # or "trajectories"
    dt: float = 1e-3
    n_traj: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.gamma < 0.0:
            raise ValueError("gamma must be non-negative")
        if self.mode not in ("master_equation", "trajectories"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.dt <= 0.0:
            raise ValueError("dt must be positive")
        if self.n_traj < 1:
            raise ValueError("need at least one trajectory")


@dataclass(frozen=True)
class MixedState:
    """Density matrix over a sector (or full) configuration basis."""

    basis: SectorBasis
    matrix: np.ndarray

    def __post_init__(self):
        m = self.matrix
        if m.shape != (len(self.basis), len(self.basis)):
            raise ValueError("matrix shape does not match basis")
        if np.max(np.abs(m - m.conj().T)) > 1e-9:
            raise ValueError("density matrix not Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-8:
            raise ValueError("density matrix trace differs from 1")
        if np.linalg.eigvalsh(m).min() < -1e-9:
            raise ValueError("density matrix not positive semidefinite")


@dataclass(frozen=True)
class GatePulse:
    """One schedule element: an XY pulse or an instantaneous rotation.

    ``value`` is the duration (in J t) for ``xy_pulse`` and the rotation
    angle for ``z_rotation`` / ``x_rotation``.
    """

    kind: str
    sites: tuple[int, ...]
    value: float

    def __post_init__(self):
        if self.kind not in ("xy_pulse", "z_rotation", "x_rotation"):
            raise ValueError(f"unknown pulse kind {self.kind!r}")
        if self.kind == "xy_pulse":
            if len(self.sites) != 2 or self.value < 0.0:
                raise ValueError("xy_pulse needs two sites and duration >= 0")
        elif len(self.sites) != 1:
            raise ValueError("rotations act on one site")

    @property
    def duration(self) -> float:
        return self.value if self.kind == "xy_pulse" else 0.0


def _z_table(basis: SectorBasis) -> np.ndarray:
    return (1.0 - 2.0 * basis.occupancy()).astype(np.float64)


def _integrate_master(rho: np.ndarray, matrix: np.ndarray,
                      z: np.ndarray, gamma: float, t: float, dt: float,
                      trace_tol: float) -> np.ndarray:
    """Interaction-picture RK4 for the dephasing master equation.

    The coherent part is removed exactly through the spectral decomposition;
    the dissipator is integrated with a fixed step, halved until the final
    trace drift meets ``trace_tol``.
    """
    if t == 0.0:
        return rho.copy()
    vals, vecs = np.linalg.eigh(matrix)
    vecs = vecs.astype(np.complex128)
    n_sites = z.shape[1]
    dephasers = [vecs.conj().T @ (z[:, i:i + 1] * vecs)
                 for i in range(n_sites)]
    gaps = vals[:, None] - vals[None, :]
    w0 = vecs.conj().T @ rho @ vecs

    if gamma == 0.0:
        phases = np.exp(-1j * gaps * t)
        return vecs @ (phases * w0) @ vecs.conj().T

    # Explicit RK4 needs the dissipative rate resolved by the step.
    step = min(dt, 0.2 / gamma, t)
    for _ in range(9):
        n_steps = max(1, int(math.ceil(t / step)))
        h = t / n_steps
        w = w0.copy()

        def rate(tau, state):
            total = -n_sites * state
            for s in dephasers:
                dressed = np.exp(1j * gaps * tau) * s
                total = total + dressed @ state @ dressed
            return (gamma / 4.0) * total

        tau = 0.0
        for _ in range(n_steps):
            k1 = rate(tau, w)
            k2 = rate(tau + h / 2.0, w + (h / 2.0) * k1)
            k3 = rate(tau + h / 2.0, w + (h / 2.0) * k2)
            k4 = rate(tau + h, w + h * k3)
            w = w + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            tau += h
        drift = abs(np.trace(w).real - 1.0)
        if drift <= trace_tol:
            w = 0.5 * (w + w.conj().T)
            phases = np.exp(-1j * gaps * t)
            return vecs @ (phases * w) @ vecs.conj().T
        step /= 2.0
    raise NumericalBreakdownError(
        f"trace drift {drift} above {trace_tol} at the smallest step")


def lindblad_evolve(rho0: MixedState, block: HamiltonianBlock, gamma: float,
                    t: float, dt: float = 1e-3,
                    trace_tol: float = 1e-8) -> MixedState:
    """Evolve a density matrix under the block Hamiltonian with dephasing."""
    if gamma < 0.0:
        raise ValueError("gamma must be non-negative")
    if rho0.basis != block.basis:
        raise ValueError("state and block use different bases")
    z = _z_table(block.basis)
    final = _integrate_master(rho0.matrix.astype(np.complex128), block.matrix,
                              z, gamma, t, dt, trace_tol)
    return MixedState(basis=block.basis, matrix=final)


def stochastic_evolve(psi0: np.ndarray, block: HamiltonianBlock, gamma: float,
                      t: float, dt: float = 1e-3, n_traj: int = 1000,
                      seed: int = 0) -> MixedState:
    """Trajectory average: unitary steps alternating with random phase kicks.

    Each step applies the exact propagator over ``dt`` followed by
    independent per-site z-phase kicks of variance ``gamma * dt`` (field
    normalization ``b_i / 2 sz_i``).  Deterministic under a fixed seed.
    """
    basis = block.basis
    psi0 = np.asarray(psi0, dtype=np.complex128)
    if psi0.shape != (len(basis),):
        raise ValueError("state dimension does not match block basis")
    vals, vecs = np.linalg.eigh(block.matrix)
    vecs = vecs.astype(np.complex128)
    z = _z_table(basis)
    rng = np.random.default_rng(seed)

    n_full = int(math.floor(t / dt + 1e-12))
    remainder = t - n_full * dt
    states = np.tile(psi0, (n_traj, 1))

    def run_segment(states, duration, n_steps):
        if n_steps == 0 or duration == 0.0:
            return states
        u = (vecs * np.exp(-1j * vals * duration)) @ vecs.conj().T
        scale = math.sqrt(gamma * duration)
        for _ in range(n_steps):
            states = states @ u.T
            if scale > 0.0:
                kicks = rng.normal(0.0, scale, size=(n_traj, z.shape[1]))
                states = states * np.exp(-0.5j * (kicks @ z.T))
        return states

    states = run_segment(states, dt, n_full)
    if remainder > 1e-15:
        states = run_segment(states, remainder, 1)
    rho = (states.T @ states.conj()) / n_traj
    return MixedState(basis=basis, matrix=rho)


def noisy_network_fidelity(net: SpinNetwork, anisotropy: float, field: float,
                           theta: float, gamma: float, t: float,
                           dt: float = 1e-3) -> float:
    """Mean clone fidelity of the free-evolution protocol under dephasing."""
    from .dynamics import prepare_input

    configured = net.with_params(anisotropy=anisotropy, field=field)
    state = prepare_input(configured, theta, 0.0)
    block = build_block(configured, state.basis.weights)
    rho0 = MixedState(basis=state.basis,
                      matrix=np.outer(state.amplitudes,
                                      state.amplitudes.conj()))
    evolved = lindblad_evolve(rho0, block, gamma, t, dt=dt)
    values = [
        clone_fidelity(reduce_density_to_site(evolved.matrix, state.basis, s),
                       theta, 0.0)
        for s in net.output_sites
    ]
    return float(np.mean(values))


# --- gate compilation -------------------------------------------------------
#
# Native operations: XY coupling pulses exp(-i chi (XX + YY)/2) on a pair
# (duration J t = 2 chi) and instantaneous z/x rotations.  Useful exact
# identities, with all conjugations by instantaneous rotations:
#   exp(-i chi XX) = XY(chi) . X_a . XY(chi) . X_a        (XX and YY commute)
#   Z_a . XY(chi) . Z_a = XY(-chi)
#   H = e^{i pi/2} Rz(pi/2) Rx(pi/2) Rz(pi/2)
#   Rz(pi/2) X Rz(-pi/2) = Y


def _rot(kind: str, site: int, angle: float) -> GatePulse:
    return GatePulse(kind=kind, sites=(site,), value=angle)


def _pulse(a: int, b: int, duration: float) -> GatePulse:
    return GatePulse(kind="xy_pulse", sites=(a, b), value=duration)


def _hadamard(site: int) -> list[GatePulse]:
    return [_rot("z_rotation", site, math.pi / 2.0),
            _rot("x_rotation", site, math.pi / 2.0),
            _rot("z_rotation", site, math.pi / 2.0)]


def _ry(site: int, angle: float) -> list[GatePulse]:
    return [_rot("z_rotation", site, -math.pi / 2.0),
            _rot("x_rotation", site, angle),
            _rot("z_rotation", site, math.pi / 2.0)]


def _xx_pulses(a: int, b: int, chi: float) -> list[GatePulse]:
    """Pulse realization of exp(-i chi XX) on sites (a, b)."""
    if chi >= 0.0:
        half = [_rot("x_rotation", a, math.pi), _pulse(a, b, 2.0 * chi)]
        return half + half
    inner = _xx_pulses(a, b, -chi)
    return ([_rot("z_rotation", a, math.pi)] + inner
            + [_rot("z_rotation", a, math.pi)])


def cnot_pulses(control: int, target: int) -> list[GatePulse]:
    """CNOT from two XY pulses of duration pi/2 plus instantaneous rotations."""
    schedule = _hadamard(control)
    schedule += _xx_pulses(control, target, math.pi / 4.0)
    schedule += _hadamard(control)
    schedule += [_rot("z_rotation", control, -math.pi / 2.0),
                 _rot("x_rotation", target, -math.pi / 2.0)]
    return schedule


def cry_pulses(control: int, target: int, angle: float) -> list[GatePulse]:
    """Controlled y-rotation from two XY pulses of duration |angle| / 2 each."""
    schedule = _hadamard(control)
    schedule += [_rot("z_rotation", target, -math.pi / 2.0)]
    schedule += _xx_pulses(control, target, -angle / 4.0)
    schedule += _hadamard(control)
    schedule += [_rot("z_rotation", target, math.pi / 2.0)]
    schedule += _ry(target, angle / 2.0)
    return schedule


def pcc_circuit_schedule(n_clones: int) -> tuple[int, list[GatePulse]]:
    """Pulse schedule of the gate-based phase-covariant cloning baseline.

    1 -> 2: the economical two-qubit circuit (two CNOTs around a controlled
    rotation), ideal fidelity (2 + sqrt 2)/4 at the equator.  1 -> 3: a
    CNOT/controlled-rotation circuit distributing the excitation evenly over
    three qubits, ideal equatorial fidelity 1/2 + 1/(2 sqrt 3), matching the
    free-evolution star so the noise comparison isolates exposure time.
    """
    if n_clones == 2:
        schedule = cnot_pulses(0, 1)
        schedule += cry_pulses(1, 0, -math.pi / 2.0)
        schedule += cnot_pulses(0, 1)
        return 2, schedule
    if n_clones == 3:
        split = 2.0 * math.asin(1.0 / math.sqrt(3.0))
        schedule = cry_pulses(0, 1, split)
        schedule += cnot_pulses(1, 0)
        schedule += cry_pulses(0, 2, math.pi / 2.0)
        schedule += cnot_pulses(2, 0)
        return 3, schedule
    raise ValueError("circuit baseline supports 2 or 3 clones")


_CIRCUIT_IDEAL = {
    2: (2.0 + math.sqrt(2.0)) / 4.0,
    3: 0.5 + 0.5 / math.sqrt(3.0),
}


def circuit_ideal_fidelity(n_clones: int) -> float:
    """Equatorial fidelity of the noiseless circuit baseline."""
    try:
        return _CIRCUIT_IDEAL[n_clones]
    except KeyError:
        raise ValueError("circuit baseline supports 2 or 3 clones") from None


def schedule_duration(schedule: list[GatePulse]) -> float:
    return sum(p.duration for p in schedule)


def _embed_1q(u: np.ndarray, site: int, basis: SectorBasis) -> np.ndarray:
    """Full-space matrix of a single-qubit unitary on the given site."""
    dim = len(basis)
    bit = np.int64(1 << site)
    occupied = (basis.states & bit) != 0
    partners = basis.index_of(basis.states ^ bit)
    full = np.zeros((dim, dim), dtype=np.complex128)
    rows = np.arange(dim)
    full[rows[~occupied], rows[~occupied]] = u[0, 0]
    full[rows[occupied], rows[occupied]] = u[1, 1]
    full[partners[~occupied], rows[~occupied]] = u[1, 0]
    full[partners[occupied], rows[occupied]] = u[0, 1]
    return full


def _rotation_matrix(pulse: GatePulse) -> np.ndarray:
    half = pulse.value / 2.0
    if pulse.kind == "z_rotation":
        return np.array([[np.exp(-1j * half), 0.0],
                         [0.0, np.exp(1j * half)]])
    return np.array([[np.cos(half), -1j * np.sin(half)],
                     [-1j * np.sin(half), np.cos(half)]])


def _pair_block(n_qubits: int, a: int, b: int) -> HamiltonianBlock:
    net = from_edge_list(n_qubits, [(a, b, 1.0)], input_sites=[0],
                         output_sites=[q for q in range(n_qubits) if q != 0])
    return build_block(net, tuple(range(n_qubits + 1)))


def schedule_unitary(n_qubits: int, schedule: list[GatePulse]) -> np.ndarray:
    """Noiseless unitary of a schedule (for verification and ideal runs)."""
    basis = sector_basis(n_qubits, tuple(range(n_qubits + 1)))
    total = np.eye(len(basis), dtype=np.complex128)
    for pulse in schedule:
        if pulse.kind == "xy_pulse":
            block = _pair_block(n_qubits, *pulse.sites)
            vals, vecs = np.linalg.eigh(block.matrix)
            u = (vecs * np.exp(-1j * vals * pulse.value)) @ vecs.conj().T
        else:
            u = _embed_1q(_rotation_matrix(pulse), pulse.sites[0], basis)
        total = u @ total
    return total


def circuit_baseline(n_clones: int, theta: float, gamma: float,
                     dt: float = 1e-3) -> float:
    """Mean clone fidelity of the compiled cloning circuit under dephasing.

    Dephasing of strength ``gamma`` acts on every register qubit for the
    full duration of each XY pulse; single-qubit rotations are instantaneous
    and noise-free.
    """
    n_qubits, schedule = pcc_circuit_schedule(n_clones)
    basis = sector_basis(n_qubits, tuple(range(n_qubits + 1)))
    amplitudes = np.zeros(len(basis), dtype=np.complex128)
    amplitudes[0] = math.cos(theta / 2.0)
    amplitudes[1] = math.sin(theta / 2.0)       # configuration |1> on qubit 0
    rho = np.outer(amplitudes, amplitudes.conj())
    z = _z_table(basis)
    for pulse in schedule:
        if pulse.kind == "xy_pulse":
            block = _pair_block(n_qubits, *pulse.sites)
            rho = _integrate_master(rho, block.matrix, z, gamma,
                                    pulse.value, dt, trace_tol=1e-8)
        else:
            u = _embed_1q(_rotation_matrix(pulse), pulse.sites[0], basis)
            rho = u @ rho @ u.conj().T
    values = [
        clone_fidelity(reduce_density_to_site(rho, basis, q), theta, 0.0)
        for q in range(n_qubits)
    ]
    return float(np.mean(values))
