"""Finite state-space representation of positive functionals.

For a cone with order unit ``u`` the states are the extreme rays of the
dual cone (the facet normals), rescaled so each evaluates to 1 on ``u``.
Mapping a vector to its state evaluations is a bipositive embedding into
functions on that finite set, and every positive functional is a
nonnegative weighting of states -- an LP feasibility fact here, with the
minimal-total-mass solution chosen as the canonical representative when the
weighting is not unique.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cone import DualVector, PolyCone
from .errors import NotOrderUnit, NotPositiveFunctional, NotRepresentable
from .numerics import LpProblem, as_vector, solve_lp

RESIDUAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class StateSpace:
    """Normalized extreme dual rays of a cone, with the unit they evaluate 1 on."""

    states: np.ndarray  # one state per row
    unit: np.ndarray

    def __post_init__(self):
        self.states.flags.writeable = False
        self.unit.flags.writeable = False

    @property
    def size(self) -> int:
        return self.states.shape[0]

    @property
    def dim(self) -> int:
        return self.states.shape[1]


@dataclass(frozen=True, eq=False)
class Measure:
    """Nonnegative weights aligned with the states of a StateSpace."""

    weights: np.ndarray

    def __post_init__(self):
        w = as_vector(self.weights)
        object.__setattr__(self, "weights", np.maximum(w, 0.0))
        self.weights.flags.writeable = False

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.weights))


def build_state_space(cone: PolyCone, unit) -> StateSpace:
    """States are the facet normals rescaled to evaluate 1 on the unit."""
    unit = as_vector(unit, dim=cone.dim)
    if not cone.is_order_unit(unit):
        raise NotOrderUnit("state normalization needs an interior unit")
    scale = cone.facets @ unit
    states = cone.facets / scale[:, None]
    return StateSpace(states=states, unit=unit.copy())


def embed(space: StateSpace, x) -> np.ndarray:
    """Evaluations of x at every state; nonnegative exactly on the cone."""
    x = as_vector(x, dim=space.dim)
    return space.states @ x


def represent_functional(space: StateSpace, phi: DualVector) -> Measure:
    """Nonnegative weights with ``sum_w weights * state = phi``.

    Existence is guaranteed because the states generate the dual cone; among
    the feasible weightings the one of minimal total mass is returned.  The
    reproduction residual is re-checked at 1e-9.
    """
    if not isinstance(phi, DualVector) or not phi.certified_positive:
        raise NotPositiveFunctional("representation needs a certified functional")
    target = as_vector(phi.coords, dim=space.dim)
    k = space.size
    res = solve_lp(
        LpProblem(
            objective=np.ones(k),
            eq_constraints=(space.states.T, target),
            ineq_constraints=(np.eye(k), np.zeros(k)),
        )
    )
    if not res.optimal:
        raise NotRepresentable(
            "no nonnegative weighting reproduces the functional; its positivity "
            "certificate is inconsistent"
        )
    measure = Measure(res.point)
    residual = float(np.max(np.abs(space.states.T @ measure.weights - target)))
    if residual > RESIDUAL_TOL:
        raise NotRepresentable(f"reproduction residual {residual:.3g} exceeds 1e-9")
    return measure
