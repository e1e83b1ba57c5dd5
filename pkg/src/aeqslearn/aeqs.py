"""Adiabatic system semantics on top of machine-generated Hamiltonians.

The initial Hamiltonian is the Hadamard conjugate of the start-state
projector complement; the final Hamiltonian for input x is the machine's
generated operator, whose unique ground state is exactly the run state.
Acceptance compares ground-state mass on the accepting set against eta.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import BadTime, DegenerateGroundState, DimMismatch, ZeroGap
from .gates import walsh_hadamard
from .qcore import (HermitianOperator, StateVector, hermitian_eigensystem,
                    spectral_gap, subspace_probability)
from .qqaf import AgreementParams, Machine, RelationTable, all_inputs, e_operator


class Verdict(enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class AeqsInstance:
    """A machine together with its accuracy threshold and closeness bound."""

    machine: Machine
    eta: AgreementParams
    epsilon: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in [0, 1), got {self.epsilon}")

    @property
    def m(self) -> int:
        return self.machine.m


@dataclass(frozen=True)
class AdiabaticReport:
    """Evolution-time lower bound and the quantities entering it.

    ``t_bound`` uses the asymptotic constant fixed to 1 and is informational
    only; ``max_norm`` records the other factor of the running-time product.
    """

    norm_diff: float
    min_gap: float
    t_bound: float
    delta: float
    epsilon_target: float
    grid_points: int
    max_norm: float


def h_ini(inst: AeqsInstance) -> HermitianOperator:
    """Hadamard-conjugated start projector complement; input independent."""
    wh = walsh_hadamard(inst.m).entries
    lam = inst.machine.lambda0.entries
    return HermitianOperator(wh @ lam @ wh.conj().T)


def h_fin(inst: AeqsInstance, x: str) -> HermitianOperator:
    return e_operator(inst.machine, x)


def ground_state(h: HermitianOperator, gap_tol: float = 1e-9) -> StateVector:
    """Eigenvector of least eigenvalue; demands a unique ground state."""
    if spectral_gap(h) <= gap_tol:
        raise DegenerateGroundState(
            f"spectral gap {spectral_gap(h):.3e} within tolerance {gap_tol:.1e}")
    return hermitian_eigensystem(h).ground_state


def accepts(inst: AeqsInstance, x: str) -> Verdict:
    """Accept/reject if the ground state puts mass >= eta on the respective set.

    With eta > 1/2 at most one side can hold; neither yields UNDECIDED.
    """
    gs = ground_state(h_fin(inst, x))
    p_acc = subspace_probability(gs, inst.machine.s_acc)
    if p_acc >= inst.eta.eta:
        return Verdict.ACCEPT
    if 1.0 - p_acc >= inst.eta.eta:
        return Verdict.REJECT
    return Verdict.UNDECIDED


def solves(inst: AeqsInstance, rel: RelationTable) -> bool:
    """True iff every member is accepted and every non-member rejected."""
    for x in all_inputs(rel.n):
        verdict = accepts(inst, x)
        if rel.contains(x) and verdict is not Verdict.ACCEPT:
            return False
        if not rel.contains(x) and verdict is not Verdict.REJECT:
            return False
    return True


def interpolate(h_start: HermitianOperator, h_end: HermitianOperator,
                t: float, total: float) -> HermitianOperator:
    """Linear schedule (1 - t/T) H_start + (t/T) H_end."""
    if h_start.dim != h_end.dim:
        raise DimMismatch(f"dims {h_start.dim} vs {h_end.dim}")
    if total <= 0 or not 0 <= t <= total:
        raise BadTime(f"need 0 <= t <= T with T > 0, got t={t}, T={total}")
    frac = t / total
    return HermitianOperator((1.0 - frac) * h_start.entries + frac * h_end.entries)


def adiabatic_time_bound(h_start: HermitianOperator, h_end: HermitianOperator,
                         eps: float, delta: float, grid: int = 101) -> AdiabaticReport:
    """Scan the linear schedule for its minimum gap and bound the evolution time.

    The gap is sampled at ``grid`` uniform schedule fractions; under linear
    interpolation the scan is independent of the total time, which therefore
    cancels.  The bound is ||H_end - H_start|| / (eps^delta * min_gap^(2+delta)).
    """
    if h_start.dim != h_end.dim:
        raise DimMismatch(f"dims {h_start.dim} vs {h_end.dim}")
    if eps <= 0 or delta <= 0:
        raise ValueError("eps and delta must be positive")
    if grid < 2:
        raise ValueError("need at least 2 grid points")
    diff = h_end.entries - h_start.entries
    norm_diff = float(np.linalg.norm(diff, 2))
    min_gap = np.inf
    max_norm = 0.0
    for frac in np.linspace(0.0, 1.0, grid):
        h_t = HermitianOperator((1.0 - frac) * h_start.entries + frac * h_end.entries)
        min_gap = min(min_gap, spectral_gap(h_t))
        max_norm = max(max_norm, float(np.linalg.norm(h_t.entries, 2)))
    min_gap = float(min_gap)
    if norm_diff <= 1e-15:
        t_bound = 0.0
    elif min_gap < 1e-12:
        raise ZeroGap(f"minimum sampled gap {min_gap:.3e} makes the bound diverge")
    else:
        t_bound = norm_diff / (eps ** delta * min_gap ** (2.0 + delta))
    return AdiabaticReport(norm_diff=norm_diff, min_gap=min_gap, t_bound=t_bound,
                           delta=delta, epsilon_target=eps, grid_points=grid,
                           max_norm=max_norm)
