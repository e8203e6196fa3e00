"""Time propagation in three pictures.

The covariant picture drives the state doublet (|Φ⟩, |Ψ⟩) with the generator
H_gen(t) = H(t) − i·Ω⁻¹(t)Ω̇(t) and its adjoint; the lower-case picture
drives φ = ΩΦ with the Hermitian image h(t) = Ω H Ω⁻¹; the naive picture
drives the doublet with H(t) and H†(t) alone, deliberately dropping the
connection term.

Any pairing (A, A†) conserves the doublet overlap ⟨Ψ|Φ⟩ identically, so the
overlap drift of a trajectory only measures integrator error.  What
distinguishes the pictures physically is the norm in the instantaneous
metric, ⟨Φ(t)|Θ(t)|Φ(t)⟩ = ‖Ω(t)Φ(t)‖²: the covariant rule conserves it
whenever the hermitized image h(t) is Hermitian, while the naive rule does
not.  Trajectories therefore carry both diagnostics.

The integrator is a classical fixed-step 4th-order Runge-Kutta scheme.  The
generator matrix is evaluated three times per step (start, midpoint, end),
shared between the two midpoint stages and between the ket and adjoint-bra
updates, and carried across substep boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonFiniteState, NotHermitian
from .linalg import as_square_matrix, norm_fro
from .metric import DysonFamily

#: propagated components beyond this magnitude abort the run
STATE_CAP = 1e12


@dataclass(frozen=True, eq=False)
class TaylorHamiltonian:
    """Matrix polynomial H(t) = Σ_m t^m · C_m with a finite coefficient list.

    ``coefficients[m]`` is the m-th monomial coefficient; evaluation uses the
    Horner scheme, so a degree-0 instance is a constant operator.
    """

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(as_square_matrix(c) for c in self.coefficients)
        if not coeffs:
            raise ValueError("need at least one coefficient matrix")
        if any(c.shape != coeffs[0].shape for c in coeffs):
            raise DimensionMismatch("coefficient matrices must share one dimension")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def dim(self) -> int:
        return self.coefficients[0].shape[0]

    def evaluate(self, t: float) -> np.ndarray:
        acc = self.coefficients[-1]
        if len(self.coefficients) == 1:
            return acc.copy()
        for c in reversed(self.coefficients[:-1]):
            acc = c + t * acc
        return acc


@dataclass(frozen=True, eq=False)
class StateTrajectory:
    """Sampled doublet trajectory with overlap and metric-norm diagnostics.

    ``overlap[k]`` is ⟨Ψ(t_k)|Φ(t_k)⟩ recomputed from the stored vectors and
    ``max_norm_drift`` its worst excursion from the initial value.
    ``metric_norm[k]`` is the norm in the instantaneous physical inner
    product, ⟨Φ(t_k)|Θ(t_k)|Φ(t_k)⟩ = ‖Ω(t_k)Φ(t_k)‖², and
    ``max_metric_drift`` its worst excursion; this is the unitarity
    deliverable that separates the covariant rule from the naive one.
    """

    times: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    overlap: np.ndarray
    max_norm_drift: float
    metric_norm: np.ndarray
    max_metric_drift: float


@dataclass(frozen=True, eq=False)
class VectorTrajectory:
    """Single-state trajectory with its Dirac norm ⟨φ(t)|φ(t)⟩ per sample.

    ``max_hermiticity_defect`` records the largest relative anti-Hermitian
    residual that was symmetrized away from the sampled generators.
    """

    times: np.ndarray
    states: np.ndarray
    norms: np.ndarray
    max_norm_drift: float
    max_hermiticity_defect: float = 0.0


@dataclass(frozen=True, eq=False)
class OperatorTrajectory:
    """Right/left evolution-operator samples with the product-invariant residual.

    ``u_right[k]`` propagates kets, ``u_left_dag[k]`` propagates the adjoint
    bra states; ``product_residual[k]`` is ‖U_L(t_k)U_R(t_k) − U_L(0)U_R(0)‖
    with U_L = (U_L†)†, which vanishes identically for the exact flow.
    """

    times: np.ndarray
    u_right: np.ndarray
    u_left_dag: np.ndarray
    product_residual: np.ndarray
    max_product_drift: float


@dataclass(frozen=True, eq=False)
class CrosscheckReport:
    """Pairwise deviations between the three computations of |Φ(t)⟩."""

    times: np.ndarray
    phi_pair: np.ndarray
    phi_lower: np.ndarray
    phi_operators: np.ndarray
    dev_pair_lower: float
    dev_pair_operators: float
    dev_lower_operators: float

    def max_pairwise_deviation(self) -> float:
        return max(self.dev_pair_lower, self.dev_pair_operators, self.dev_lower_operators)


def _as_state(vector, dim: int) -> np.ndarray:
    v = np.array(vector, dtype=complex)
    if v.ndim != 1 or v.shape[0] != dim:
        raise DimensionMismatch(f"expected a length-{dim} vector, got shape {v.shape}")
    return v


def _substep_plan(grid, step: float):
    times = np.asarray(grid, dtype=float)
    if times.ndim != 1 or times.size < 1:
        raise ValueError("time grid must be a non-empty 1-d array")
    if times.size >= 2 and not (np.diff(times) > 0.0).all():
        raise ValueError("time grid must be strictly increasing")
    if not step > 0.0:
        raise ValueError(f"integrator step must be positive, got {step}")
    plan = []
    for dt in np.diff(times):
        ratio = dt / step
        n = int(round(ratio))
        if n < 1 or abs(ratio - n) > 1e-9 * max(ratio, 1.0):
            raise ValueError(
                f"step {step!r} does not divide the grid interval {float(dt)!r}"
            )
        plan.append(n)
    return times, plan


def _integrate_linear(rhs_matrix, grid, step, states, adjoint_mask):
    """Fixed-step RK4 for a family of linear ODEs sharing one matrix source.

    Each state y evolves by ẏ = A(t)·y with A = rhs_matrix(t) when its mask
    entry is False, and by ẏ = −A†(t)·y when True.  States may be vectors or
    matrices; samples are recorded on the grid points.
    """
    times, plan = _substep_plan(grid, step)
    current = [np.array(s, dtype=complex) for s in states]
    samples = [
        np.empty((times.size,) + s.shape, dtype=complex) for s in current
    ]
    for store, s in zip(samples, current):
        store[0] = s
    need_adjoint = any(adjoint_mask)

    a_start = rhs_matrix(times[0])
    for seg, nsub in enumerate(plan):
        t0, t1 = times[seg], times[seg + 1]
        h = (t1 - t0) / nsub
        for j in range(nsub):
            ta = t0 + j * h
            tb = t1 if j == nsub - 1 else t0 + (j + 1) * h
            a1 = a_start
            a2 = rhs_matrix(ta + 0.5 * h)
            a3 = rhs_matrix(tb)
            if need_adjoint:
                b1 = -a1.conj().T
                b2 = -a2.conj().T
                b3 = -a3.conj().T
            for idx, y in enumerate(current):
                if adjoint_mask[idx]:
                    m1, m2, m3 = b1, b2, b3
                else:
                    m1, m2, m3 = a1, a2, a3
                k1 = m1 @ y
                k2 = m2 @ (y + (0.5 * h) * k1)
                k3 = m2 @ (y + (0.5 * h) * k2)
                k4 = m3 @ (y + h * k3)
                y = y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
                if not np.isfinite(y).all() or np.abs(y).max() > STATE_CAP:
                    raise NonFiniteState(
                        f"propagated state left the finite range at t = {float(tb)!r}"
                    )
                current[idx] = y
            a_start = a3
        for store, s in zip(samples, current):
            store[seg + 1] = s
    return times, samples


def _covariant_rhs(hamiltonian: TaylorHamiltonian, family: DysonFamily):
    # −i·H_gen = −i·H(t) − Ω⁻¹Ω̇; the connection vanishes for a constant map.
    if family.kind == "constant":
        return lambda t: -1j * hamiltonian.evaluate(t)

    def rhs(t):
        return -1j * hamiltonian.evaluate(t) - family.connection(t)

    return rhs


def generator(hamiltonian: TaylorHamiltonian, family: DysonFamily, t: float) -> np.ndarray:
    """Covariant evolution generator H_gen(t) = H(t) − i·Ω⁻¹(t)Ω̇(t).

    For a constant family the connection term vanishes and the value is
    exactly H(t).
    """
    if family.kind == "constant":
        return hamiltonian.evaluate(t)
    return hamiltonian.evaluate(t) - 1j * family.connection(t)


def _assemble_trajectory(times, phis, psis, family: DysonFamily) -> StateTrajectory:
    overlap = np.sum(psis.conj() * phis, axis=1)
    max_norm_drift = float(np.abs(overlap - overlap[0]).max())
    metric_norm = np.empty(times.size, dtype=float)
    for k, t in enumerate(times):
        w = family.omega(t) @ phis[k]
        metric_norm[k] = float(np.real(np.vdot(w, w)))
    max_metric_drift = float(np.abs(metric_norm - metric_norm[0]).max())
    return StateTrajectory(
        times=times,
        phi=phis,
        psi=psis,
        overlap=overlap,
        max_norm_drift=max_norm_drift,
        metric_norm=metric_norm,
        max_metric_drift=max_metric_drift,
    )


def propagate_pair(
    hamiltonian: TaylorHamiltonian,
    family: DysonFamily,
    phi0,
    psi0=None,
    grid=None,
    step: float = 1e-3,
) -> StateTrajectory:
    """Propagate the doublet under i∂ₜ|Φ⟩ = H_gen|Φ⟩, i∂ₜ|Ψ⟩ = H_gen†|Ψ⟩.

    ``psi0`` defaults to Θ(t₀)·φ₀, which realizes ⟨Ψ| = ⟨φ|Ω; with that
    choice and a family whose hermitized image is Hermitian, the overlap
    equals the metric norm and both stay constant up to integrator error.
    """
    phi0 = _as_state(phi0, hamiltonian.dim)
    if psi0 is None:
        om0 = family.omega(np.asarray(grid, dtype=float)[0])
        psi0 = om0.conj().T @ (om0 @ phi0)
    else:
        psi0 = _as_state(psi0, hamiltonian.dim)
    rhs = _covariant_rhs(hamiltonian, family)
    times, (phis, psis) = _integrate_linear(rhs, grid, step, [phi0, psi0], [False, True])
    return _assemble_trajectory(times, phis, psis, family)


def propagate_naive(
    hamiltonian: TaylorHamiltonian,
    family: DysonFamily,
    phi0,
    psi0=None,
    grid=None,
    step: float = 1e-3,
) -> StateTrajectory:
    """Propagate the doublet under the naive pair (H(t), H†(t)).

    Identical to :func:`propagate_pair` except that the connection term is
    dropped from the generator.  The overlap is still conserved (any (A, A†)
    pairing conserves it), so the deliverable is ``max_metric_drift``: the
    excursion of the instantaneous-metric norm, which this rule fails to
    conserve whenever the connection matters.
    """
    phi0 = _as_state(phi0, hamiltonian.dim)
    if psi0 is None:
        om0 = family.omega(np.asarray(grid, dtype=float)[0])
        psi0 = om0.conj().T @ (om0 @ phi0)
    else:
        psi0 = _as_state(psi0, hamiltonian.dim)
    rhs = lambda t: -1j * hamiltonian.evaluate(t)
    times, (phis, psis) = _integrate_linear(rhs, grid, step, [phi0, psi0], [False, True])
    return _assemble_trajectory(times, phis, psis, family)


def propagate_h(h_of_t, phi0, grid, step: float = 1e-3) -> VectorTrajectory:
    """Propagate i∂ₜ|φ⟩ = h(t)|φ⟩ for a Hermitian matrix source.

    Every sampled h(t) must be Hermitian within 1e-10 of its norm
    (``NotHermitian`` otherwise); the tiny anti-Hermitian residual is
    symmetrized away before stepping, so the Dirac norm is conserved up to
    integrator error.
    """
    worst_defect = 0.0

    def rhs(t):
        nonlocal worst_defect
        h = as_square_matrix(h_of_t(t))
        scale = norm_fro(h)
        defect = norm_fro(h - h.conj().T)
        if defect > 1e-10 * scale:
            raise NotHermitian(
                f"sampled generator at t = {float(t)!r} is not Hermitian to tolerance"
            )
        if scale > 0.0:
            worst_defect = max(worst_defect, defect / scale)
        return -1j * (0.5 * (h + h.conj().T))

    phi0 = np.asarray(phi0, dtype=complex)
    times, (states,) = _integrate_linear(rhs, grid, step, [phi0], [False])
    norms = np.real(np.sum(states.conj() * states, axis=1))
    drift = float(np.abs(norms - norms[0]).max())
    return VectorTrajectory(
        times=times,
        states=states,
        norms=norms,
        max_norm_drift=drift,
        max_hermiticity_defect=worst_defect,
    )


def evolution_operators(
    hamiltonian: TaylorHamiltonian,
    family: DysonFamily,
    grid,
    step: float = 1e-3,
) -> OperatorTrajectory:
    """Integrate the operator pair i∂ₜU_R = H_gen·U_R and i∂ₜU_L† = H_gen†·U_L†.

    Both start from the identity.  U_R(t) maps |Φ(0)⟩ to |Φ(t)⟩ and U_L†(t)
    maps |Ψ(0)⟩ to |Ψ(t)⟩; the product U_L(t)U_R(t) is a constant of motion,
    recorded per sample as a residual against its initial value.
    """
    eye = np.eye(hamiltonian.dim, dtype=complex)
    rhs = _covariant_rhs(hamiltonian, family)
    times, (u_right, u_left_dag) = _integrate_linear(
        rhs, grid, step, [eye, eye], [False, True]
    )
    product0 = u_left_dag[0].conj().T @ u_right[0]
    residual = np.empty(times.size, dtype=float)
    for k in range(times.size):
        product = u_left_dag[k].conj().T @ u_right[k]
        residual[k] = float(np.linalg.norm(product - product0))
    return OperatorTrajectory(
        times=times,
        u_right=u_right,
        u_left_dag=u_left_dag,
        product_residual=residual,
        max_product_drift=float(residual.max()),
    )


def crosscheck_pictures(
    hamiltonian: TaylorHamiltonian,
    family: DysonFamily,
    phi0,
    grid,
    step: float = 1e-3,
) -> CrosscheckReport:
    """Compute |Φ(t)⟩ three independent ways and report pairwise deviations.

    (a) doublet propagation with ψ₀ = Θ(t₀)·φ₀, (b) lower-case propagation of
    φ = ΩΦ under the hermitized image followed by the pull-back Ω⁻¹(t)φ(t),
    and (c) application of the right evolution operator to φ₀.  The family
    must have a Hermitian hermitized image along the grid for route (b) to be
    admissible.
    """
    phi0 = _as_state(phi0, hamiltonian.dim)
    times = np.asarray(grid, dtype=float)
    pair = propagate_pair(hamiltonian, family, phi0, None, grid, step)

    om0 = family.omega(times[0])

    def h_of_t(t):
        return family.omega(t) @ hamiltonian.evaluate(t) @ family.omega_inv(t)

    lower = propagate_h(h_of_t, om0 @ phi0, grid, step)
    phi_lower = np.empty_like(lower.states)
    for k, t in enumerate(lower.times):
        phi_lower[k] = family.omega_inv(t) @ lower.states[k]

    ops = evolution_operators(hamiltonian, family, grid, step)
    phi_ops = np.einsum("kij,j->ki", ops.u_right, phi0)

    def max_dev(a, b):
        return float(np.linalg.norm(a - b, axis=1).max())

    return CrosscheckReport(
        times=pair.times,
        phi_pair=pair.phi,
        phi_lower=phi_lower,
        phi_operators=phi_ops,
        dev_pair_lower=max_dev(pair.phi, phi_lower),
        dev_pair_operators=max_dev(pair.phi, phi_ops),
        dev_lower_operators=max_dev(phi_lower, phi_ops),
    )
