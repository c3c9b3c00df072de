"""Polyhedral cone algebra: the order structure every other module builds on.

A :class:`PolyCone` carries both descriptions of the same set -- generating
rays and inward facet normals -- computed from each other by brute-force
enumeration at construction.  Cones here are pointed and full-dimensional;
pointedness makes the induced relation a partial order, full-dimensionality
makes every vector majorizable and keeps the facet description exact.
Both restrictions are validated, not assumed.

Membership uses the tight tolerance 1e-10 since it is the primitive that all
other checks compose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    EmptyPhi,
    MalformedProblem,
    NotGenerating,
    NotLattice,
    NotPointed,
    NotPositiveFunctional,
)
from .numerics import LpProblem, as_matrix, as_vector, linear_solve, solve_lp
from .report import FAILS, HOLDS, Report, Witness

MEMBER_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DualVector:
    """A functional together with its positivity certificate."""

    coords: np.ndarray
    certified_positive: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coords", as_vector(self.coords))
        self.coords.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.coords.size


class PolyCone:
    """Pointed, full-dimensional polyhedral cone with dual descriptions."""

    def __init__(self, generators: np.ndarray, facets: np.ndarray):
        self.generators = as_matrix(generators)
        self.facets = as_matrix(facets)
        self.dim = self.generators.shape[1]
        if self.facets.shape[1] != self.dim:
            raise DimensionMismatch("generators and facets live in different spaces")
        if np.min(self.generators @ self.facets.T) < -MEMBER_TOL:
            raise MalformedProblem("a generator violates a facet inequality")
        self.generators.flags.writeable = False
        self.facets.flags.writeable = False

    # -- construction ------------------------------------------------------

    @classmethod
    def from_generators(cls, rays) -> "PolyCone":
        """Build the cone spanned by ``rays``; compute facets by enumeration.

        Facet normals come from (dim-1)-subsets of rays whose span is a
        hyperplane with all rays on one side; the surviving rays are then
        reduced to the extreme ones.  Guarded to dimension 10.
        """
        R = as_matrix(rays)
        k, n = R.shape
        if n > 10:
            raise DimensionTooLarge(f"facet enumeration guarded to dim <= 10, got {n}")
        norms = np.linalg.norm(R, axis=1)
        if np.any(norms < 1e-14):
            raise MalformedProblem("zero ray among the generators")

        R = _dedup_directions(R)
        _check_pointed(R)
        if np.linalg.matrix_rank(R, tol=1e-10) < n:
            raise NotGenerating(
                "rays do not span the ambient space; the facet description of a "
                "lower-dimensional cone needs equalities, which PolyCone does not carry"
            )

        if n == 1:
            facets = np.array([[1.0 if R[0, 0] > 0 else -1.0]])
            return cls(R[:1], facets)

        facets = _enumerate_facets(R)
        gens = _extreme_rays(R, facets)
        return cls(gens, facets)

    @classmethod
    def standard_orthant(cls, n: int) -> "PolyCone":
        """The coordinatewise order on R^n; self-dual."""
        eye = np.eye(n)
        return cls(eye.copy(), eye.copy())

    def dual_cone(self) -> "PolyCone":
        """Functionals nonnegative on the cone: generators and facets swap."""
        return PolyCone(self.facets.copy(), self.generators.copy())

    # -- order queries -----------------------------------------------------

    def contains(self, x, tol: float = MEMBER_TOL) -> bool:
        x = as_vector(x, dim=self.dim)
        return bool(np.min(self.facets @ x) >= -tol)

    def leq(self, x, y, tol: float = MEMBER_TOL) -> bool:
        """Order relation: x <= y when y - x lies in the cone."""
        x = as_vector(x, dim=self.dim)
        y = as_vector(y, dim=self.dim)
        return self.contains(y - x, tol=tol)

    def is_lattice(self) -> bool:
        """Simplicial test: exactly dim independent extreme rays."""
        return self.generators.shape[0] == self.dim

    def positive_part(self, x) -> np.ndarray:
        """Least element above both x and 0, via generator coordinates.

        Only simplicial cones admit this: the coordinates of x in the ray
        basis are clamped at zero and mapped back.
        """
        if not self.is_lattice():
            raise NotLattice("positive parts need a simplicial cone")
        x = as_vector(x, dim=self.dim)
        coords = linear_solve(self.generators.T, x)
        return self.generators.T @ np.maximum(coords, 0.0)

    def is_order_unit(self, u, tol: float = MEMBER_TOL) -> bool:
        """Interior-point test: strictly positive against every facet."""
        u = as_vector(u, dim=self.dim)
        return bool(np.min(self.facets @ u) > tol)

    def certify_functional(self, coords) -> DualVector:
        """Check dual-cone membership and attach the certificate."""
        v = as_vector(coords, dim=self.dim)
        worst = float(np.min(self.generators @ v))
        if worst < -MEMBER_TOL:
            raise NotPositiveFunctional(
                f"functional is negative on a generator (margin {worst:.3g})"
            )
        return DualVector(v, certified_positive=True)

    def is_total(self, phis: list[DualVector], tol: float = 1e-9) -> Report:
        """Decide whether joint nonnegativity against ``phis`` implies membership.

        For each facet f the LP ``min <x,f>`` over ``{<x,phi> >= 0,
        ||x||_inf <= 1}`` is solved; the family is total exactly when every
        optimum clears ``-tol``.  The box bound is lossless by homogeneity.
        This is a complete check, not a sampled one.
        """
        if not phis:
            raise EmptyPhi("totality asked for an empty functional family")
        rows = []
        for i, phi in enumerate(phis):
            if not isinstance(phi, DualVector) or not phi.certified_positive:
                raise NotPositiveFunctional(f"phi[{i}] lacks a positivity certificate")
            rows.append(as_vector(phi.coords, dim=self.dim))
        Phi = np.vstack(rows)
        eye = np.eye(self.dim)
        G = np.vstack([Phi, eye, -eye])
        h = np.concatenate([np.zeros(len(rows)), -np.ones(2 * self.dim)])

        witnesses = []
        for f in self.facets:
            res = solve_lp(LpProblem(objective=f, ineq_constraints=(G, h)))
            if not res.optimal:  # pragma: no cover - box keeps the LP bounded
                raise MalformedProblem(f"totality LP returned {res.status}")
            if res.value < -tol:
                witnesses.append(
                    Witness(
                        point=res.point,
                        functional=f.copy(),
                        margin=float(res.value),
                        label="nonnegative on every phi yet outside the cone",
                    )
                )
        verdict = FAILS if witnesses else HOLDS
        return Report(
            name="total_set",
            verdict=verdict,
            witnesses=witnesses,
            samples_used=0,
            tolerance=tol,
            notes=["exact facet-LP check"],
        )

    def __repr__(self) -> str:
        return (
            f"PolyCone(dim={self.dim}, rays={self.generators.shape[0]}, "
            f"facets={self.facets.shape[0]})"
        )


def _dedup_directions(R: np.ndarray) -> np.ndarray:
    unit = R / np.linalg.norm(R, axis=1, keepdims=True)
    kept: list[int] = []
    for i in range(R.shape[0]):
        if not any(np.max(np.abs(unit[i] - unit[j])) <= 1e-10 for j in kept):
            kept.append(i)
    return R[kept]


def _check_pointed(R: np.ndarray) -> None:
    """No ray's negative may be a conic combination of the rays."""
    k, n = R.shape
    eye = np.eye(k)
    zero = np.zeros(k)
    for i in range(k):
        problem = LpProblem(
            objective=zero,
            eq_constraints=(R.T, -R[i]),
            ineq_constraints=(eye, zero),
        )
        if solve_lp(problem).optimal:
            raise NotPointed(f"both ray {i} and its negative belong to the cone")


def _enumerate_facets(R: np.ndarray) -> np.ndarray:
    k, n = R.shape
    found: list[np.ndarray] = []
    seen: set[tuple] = set()
    scale = max(1.0, float(np.max(np.abs(R)))) ** max(n - 1, 1)
    for subset in itertools.combinations(range(k), n - 1):
        M = R[list(subset)]
        normal = _hyperplane_normal(M)
        peak = float(np.max(np.abs(normal)))
        if peak <= 1e-10 * scale:
            continue  # subset spans less than a hyperplane
        normal = normal / normal[int(np.argmax(np.abs(normal)))]
        for cand in (normal, -normal):
            if np.min(R @ cand) >= -1e-10:
                key = tuple(np.round(cand + 0.0, 10))
                if key not in seen:
                    seen.add(key)
                    found.append(cand + 0.0)
    if not found:
        raise NotGenerating("no facet found; rays do not describe a solid cone")
    facets = np.vstack(sorted(found, key=lambda f: tuple(np.round(f, 12))))
    return facets


def _hyperplane_normal(M: np.ndarray) -> np.ndarray:
    """Generalized cross product: signed minors of the (n-1) x n matrix.

    Exact for small integer data, and zero exactly when the rows span less
    than a hyperplane.
    """
    n = M.shape[1]
    cols = np.arange(n)
    normal = np.empty(n)
    for i in range(n):
        minor = M[:, cols != i]
        normal[i] = (-1.0) ** i * (np.linalg.det(minor) if minor.size else 1.0)
    return normal


def _extreme_rays(R: np.ndarray, facets: np.ndarray) -> np.ndarray:
    n = R.shape[1]
    keep = []
    for i, g in enumerate(R):
        active = facets[np.abs(facets @ g) <= 1e-9 * (1.0 + np.max(np.abs(g)))]
        if active.shape[0] >= n - 1 and np.linalg.matrix_rank(active, tol=1e-10) == n - 1:
            keep.append(i)
    if not keep:
        raise NotGenerating("no extreme ray survived facet reduction")
    return R[keep]
