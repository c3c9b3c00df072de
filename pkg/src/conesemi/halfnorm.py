"""Sublinear functions attached to a cone, evaluated as linear programs.

Six variants share one interface (``value`` / ``subdifferential``):

* ``CanonicalHalfNorm`` -- the distance from ``-x`` to the cone, i.e. the
  smallest norm of a majorant of ``x``;
* ``RegularizedGauge``  -- the same construction run through the
  regularization of the ambient norm (a strict half-norm);
* ``FunctionalGauge``   -- ``inf { <y, phi> : y >= 0, y >= x }`` for a
  positive functional ``phi``; the workhorse for semigroup certificates;
* ``OrderUnitGauge``    -- smallest ``lam >= 0`` with ``x <= lam * u`` for an
  interior unit ``u``; closed facet formula;
* ``PositivePartNorm``  -- norm of the positive part, defined on simplicial
  cones only;
* ``EuclideanNorm``     -- the plain 2-norm with its analytic subdifferential,
  kept for the 2-d operator fixtures.

Supported ambient norms are weighted l1/linf, which keeps every evaluation
an exact LP.  Subdifferentials are returned as constraint descriptions
(:class:`SubdiffDesc`) supporting linear optimization, built from the dual
characterizations stated with each variant.  Values are clamped so that
elements of ``-K`` evaluate to exactly 0; downstream positivity logic
relies on that.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cone import DualVector, PolyCone
from .errors import (
    DimensionMismatch,
    EmptySubdifferential,
    MalformedProblem,
    NotGenerating,
    NotOrderUnit,
    Unbounded,
    VariantPreconditionFailed,
    VariantUnsupported,
)
from .numerics import LpProblem, as_vector, enumerate_vertices, solve_lp

L1 = "l1"
LINF = "linf"


@dataclass(frozen=True, eq=False)
class WeightedNorm:
    """Weighted l1 or linf norm; the two LP-representable ambient norms."""

    kind: str
    weights: np.ndarray

    def __post_init__(self):
        if self.kind not in (L1, LINF):
            raise MalformedProblem(f"norm kind must be 'l1' or 'linf', got {self.kind!r}")
        w = as_vector(self.weights)
        if np.min(w) <= 0:
            raise MalformedProblem("norm weights must be strictly positive")
        object.__setattr__(self, "weights", w)
        self.weights.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.weights.size

    def value(self, x) -> float:
        x = as_vector(x, dim=self.dim)
        if self.kind == L1:
            return float(self.weights @ np.abs(x))
        return float(np.max(self.weights * np.abs(x)))

    def dual_value(self, u) -> float:
        u = as_vector(u, dim=self.dim)
        if self.kind == L1:
            return float(np.max(np.abs(u) / self.weights))
        return float(np.sum(np.abs(u) / self.weights))

    @classmethod
    def sup(cls, n: int) -> "WeightedNorm":
        return cls(LINF, np.ones(n))

    @classmethod
    def one(cls, n: int) -> "WeightedNorm":
        return cls(L1, np.ones(n))


class SubdiffDesc:
    """Optimizable description of a subdifferential set.

    ``polyhedral`` descriptions may use auxiliary variables (absolute-value
    splits for dual balls); the functional coordinates are the first
    ``n_primary`` variables.  Nonemptiness is checked by one feasibility LP
    at construction.
    """

    def __init__(
        self,
        kind: str,
        n_primary: int,
        *,
        eq: tuple[np.ndarray, np.ndarray] | None = None,
        ineq: tuple[np.ndarray, np.ndarray] | None = None,
        point: np.ndarray | None = None,
        center: np.ndarray | None = None,
        radius: float = 0.0,
        n_vars: int | None = None,
    ):
        self.kind = kind
        self.n_primary = n_primary
        self.eq = eq
        self.ineq = ineq
        self.point = point
        self.center = center
        self.radius = radius
        self.n_vars = n_vars if n_vars is not None else n_primary
        if kind == "polyhedral":
            res = solve_lp(
                LpProblem(
                    objective=np.zeros(self.n_vars),
                    eq_constraints=eq,
                    ineq_constraints=ineq,
                )
            )
            if not res.optimal:
                raise EmptySubdifferential(
                    "constructed subdifferential description is infeasible"
                )

    @classmethod
    def singleton(cls, point: np.ndarray) -> "SubdiffDesc":
        point = as_vector(point)
        return cls("singleton", point.size, point=point)

    @classmethod
    def ball(cls, center: np.ndarray, radius: float) -> "SubdiffDesc":
        center = as_vector(center)
        return cls("ball", center.size, center=center, radius=float(radius))

    def optimize(self, c, sense: str = "min") -> tuple[float, np.ndarray]:
        """Exact extremum of ``<c, u>`` over the set, with an attaining point."""
        c = as_vector(c, dim=self.n_primary)
        if sense not in ("min", "max"):
            raise MalformedProblem(f"sense must be 'min' or 'max', got {sense!r}")
        if self.kind == "singleton":
            return float(c @ self.point), self.point
        if self.kind == "ball":
            cn = float(np.linalg.norm(c))
            base = float(c @ self.center)
            if cn == 0.0:
                return base, self.center
            direction = c / cn
            if sense == "min":
                return base - self.radius * cn, self.center - self.radius * direction
            return base + self.radius * cn, self.center + self.radius * direction
        padded = np.zeros(self.n_vars)
        padded[: self.n_primary] = c
        res = solve_lp(
            LpProblem(
                objective=padded,
                eq_constraints=self.eq,
                ineq_constraints=self.ineq,
                sense=sense,
            )
        )
        if res.status == "unbounded":
            raise Unbounded("subdifferential description is unbounded")
        if not res.optimal:  # pragma: no cover - nonemptiness checked upfront
            raise EmptySubdifferential("subdifferential optimization infeasible")
        return float(res.value), res.point[: self.n_primary]

    def vertices(self) -> list[np.ndarray]:
        """Extreme candidates in functional coordinates (test oracle helper)."""
        if self.kind == "singleton":
            return [self.point]
        if self.kind == "ball":
            raise VariantUnsupported("a ball has no vertex description")
        rows = []
        rhs = []
        if self.ineq is not None:
            rows.append(self.ineq[0])
            rhs.append(self.ineq[1])
        if self.eq is not None:
            A, b = self.eq
            rows.extend([A, -A])
            rhs.extend([b, -b])
        verts = enumerate_vertices((np.vstack(rows), np.concatenate(rhs)))
        out: list[np.ndarray] = []
        for v in verts:
            p = v[: self.n_primary]
            if not any(np.max(np.abs(p - q)) <= 1e-9 for q in out):
                out.append(p)
        return out


class HalfNorm:
    """Common interface: a cone, a value, and a subdifferential description."""

    variant = "abstract"

    def __init__(self, cone: PolyCone):
        self.cone = cone

    @property
    def dim(self) -> int:
        return self.cone.dim

    def value(self, x) -> float:
        raise NotImplementedError

    def subdifferential(self, x) -> SubdiffDesc:
        raise NotImplementedError

    def pairing_extremum(self, x, c, sense: str = "min") -> tuple[float, np.ndarray]:
        """Extremum of ``<c, u>`` over the subdifferential at ``x``.

        Subclasses may override with an equivalent faster formulation; the
        default routes through the explicit description.
        """
        return self.subdifferential(x).optimize(c, sense)

    def __call__(self, x) -> float:
        return self.value(x)


def _solve_bounded(problem: LpProblem, context: str) -> tuple[float, np.ndarray]:
    res = solve_lp(problem)
    if res.status == "infeasible":
        raise NotGenerating(f"{context}: majorant problem infeasible")
    if res.status == "unbounded":
        raise Unbounded(f"{context}: unexpectedly unbounded")
    return float(res.value), res.point


class FunctionalGauge(HalfNorm):
    """Half-norm ``inf { <y, phi> : y in K, y - x in K }`` for positive phi.

    On the cone it equals ``<x, phi>``; on ``-K`` it vanishes.  The
    subdifferential uses the dual characterization
    ``{ u in K' : phi - u in K', <x, u> = value }``; LP duality collapses the
    universal domination condition to the two cone memberships, an identity
    the test-suite validates against a brute-force sampled oracle before
    anything downstream relies on it.
    """

    variant = "functional"

    def __init__(self, cone: PolyCone, functional):
        super().__init__(cone)
        if isinstance(functional, DualVector):
            if not functional.certified_positive:
                functional = cone.certify_functional(functional.coords)
            elif functional.dim != cone.dim:
                raise DimensionMismatch("functional dimension differs from cone")
        else:
            functional = cone.certify_functional(functional)
        self.functional = functional

    @property
    def phi(self) -> np.ndarray:
        return self.functional.coords

    def value(self, x) -> float:
        x = as_vector(x, dim=self.dim)
        if self.cone.contains(-x):
            return 0.0
        if self.cone.contains(x):
            return max(0.0, float(self.phi @ x))
        # majorants written in ray coordinates y = R^T a, a >= 0, which makes
        # every LP variable sign-constrained and keeps phase 1 minimal
        R = self.cone.generators
        F = self.cone.facets
        val, _ = _solve_bounded(
            LpProblem(
                objective=R @ self.phi,
                ineq_constraints=(F @ R.T, F @ x),
                nonneg=True,
            ),
            "functional gauge",
        )
        return max(0.0, val)

    def subdifferential(self, x) -> SubdiffDesc:
        x = as_vector(x, dim=self.dim)
        val = self.value(x)
        G = self.cone.generators
        ineq_G = np.vstack([G, -G])
        ineq_h = np.concatenate([np.zeros(G.shape[0]), -(G @ self.phi)])
        return SubdiffDesc(
            "polyhedral",
            self.dim,
            eq=(x.reshape(1, -1), np.array([val])),
            ineq=(ineq_G, ineq_h),
        )

    def pairing_extremum(self, x, c, sense: str = "min") -> tuple[float, np.ndarray]:
        """Same extremum as optimizing over :meth:`subdifferential`, computed
        in dual-ray coordinates ``u = F^T b, b >= 0`` (one equality row, no
        free variables); the equivalence is property-tested."""
        x = as_vector(x, dim=self.dim)
        c = as_vector(c, dim=self.dim)
        val = self.value(x)
        F = self.cone.facets
        G = self.cone.generators
        res = solve_lp(
            LpProblem(
                objective=F @ c,
                eq_constraints=((F @ x).reshape(1, -1), np.array([val])),
                ineq_constraints=(-(G @ F.T), -(G @ self.phi)),
                sense=sense,
                nonneg=True,
            )
        )
        if not res.optimal:
            raise EmptySubdifferential(
                f"dual-ray pairing problem reported {res.status}"
            )
        return float(res.value), F.T @ res.point


class CanonicalHalfNorm(HalfNorm):
    """Smallest ambient norm of a majorant: ``inf { ||y|| : y - x in K }``.

    Subdifferential: positive functionals in the dual-norm unit ball that
    attain the value at ``x``.
    """

    variant = "canonical"

    def __init__(self, cone: PolyCone, norm: WeightedNorm):
        super().__init__(cone)
        if norm.dim != cone.dim:
            raise DimensionMismatch("norm weights dimension differs from cone")
        self.norm = norm

    def value(self, x) -> float:
        x = as_vector(x, dim=self.dim)
        if self.cone.contains(-x):
            return 0.0
        F = self.cone.facets
        nf, n = F.shape
        w = self.norm.weights
        if self.norm.kind == LINF:
            # variables (y, s): minimize s with +-w_i y_i <= s
            n_vars = n + 1
            G = np.zeros((nf + 2 * n, n_vars))
            h = np.zeros(nf + 2 * n)
            G[:nf, :n] = F
            h[:nf] = F @ x
            G[nf : nf + n, :n] = -np.diag(w)
            G[nf : nf + n, n] = 1.0
            G[nf + n :, :n] = np.diag(w)
            G[nf + n :, n] = 1.0
            obj = np.zeros(n_vars)
            obj[n] = 1.0
        else:
            # variables (y, a): minimize w.a with -a <= y <= a
            n_vars = 2 * n
            G = np.zeros((nf + 2 * n, n_vars))
            h = np.zeros(nf + 2 * n)
            G[:nf, :n] = F
            h[:nf] = F @ x
            G[nf : nf + n, :n] = -np.eye(n)
            G[nf : nf + n, n:] = np.eye(n)
            G[nf + n :, :n] = np.eye(n)
            G[nf + n :, n:] = np.eye(n)
            obj = np.concatenate([np.zeros(n), w])
        val, _ = _solve_bounded(
            LpProblem(objective=obj, ineq_constraints=(G, h)), "canonical half-norm"
        )
        return max(0.0, val)

    def subdifferential(self, x) -> SubdiffDesc:
        x = as_vector(x, dim=self.dim)
        return _dual_ball_subdiff(self.cone, self.norm, x, self.value(x))


class PositivePartNorm(HalfNorm):
    """Norm of the positive part; simplicial cones only.

    Subdifferential follows the same dual-ball description as the canonical
    half-norm, with the value replaced by ``||x^+||``.
    """

    variant = "positive_part"

    def __init__(self, cone: PolyCone, norm: WeightedNorm):
        super().__init__(cone)
        if not cone.is_lattice():
            raise VariantPreconditionFailed(
                "positive-part norm needs a simplicial cone"
            )
        if norm.dim != cone.dim:
            raise DimensionMismatch("norm weights dimension differs from cone")
        self.norm = norm

    def value(self, x) -> float:
        x = as_vector(x, dim=self.dim)
        if self.cone.contains(-x):
            return 0.0
        return self.norm.value(self.cone.positive_part(x))

    def subdifferential(self, x) -> SubdiffDesc:
        x = as_vector(x, dim=self.dim)
        return _dual_ball_subdiff(self.cone, self.norm, x, self.value(x))


class OrderUnitGauge(HalfNorm):
    """Gauge of an interior unit: smallest ``lam >= 0`` with ``x <= lam u``.

    Closed facet formula ``max(0, max_f <x,f>/<u,f>)``; subdifferential
    ``{ u' in K' : <u', u> <= 1, <x, u'> = value }``.
    """

    variant = "order_unit"

    def __init__(self, cone: PolyCone, unit):
        super().__init__(cone)
        unit = as_vector(unit, dim=cone.dim)
        if not cone.is_order_unit(unit):
            raise NotOrderUnit("the gauge needs an interior point of the cone")
        self.unit = unit

    def value(self, x) -> float:
        x = as_vector(x, dim=self.dim)
        F = self.cone.facets
        return max(0.0, float(np.max((F @ x) / (F @ self.unit))))

    def subdifferential(self, x) -> SubdiffDesc:
        x = as_vector(x, dim=self.dim)
        val = self.value(x)
        G = self.cone.generators
        ineq_G = np.vstack([G, -self.unit.reshape(1, -1)])
        ineq_h = np.concatenate([np.zeros(G.shape[0]), [-1.0]])
        return SubdiffDesc(
            "polyhedral",
            self.dim,
            eq=(x.reshape(1, -1), np.array([val])),
            ineq=(ineq_G, ineq_h),
        )


class RegularizedGauge(HalfNorm):
    """Majorant gauge of the regularized norm, flattened into one LP.

    ``inf { ||z|| : -z <= y <= z, y >= 0, y >= x }`` with all inequalities in
    the cone order.  A strict half-norm; no closed dual form is implemented,
    so subdifferentials raise.
    """

    variant = "regular_gauge"

    def __init__(self, cone: PolyCone, norm: WeightedNorm):
        super().__init__(cone)
        if norm.dim != cone.dim:
            raise DimensionMismatch("norm weights dimension differs from cone")
        self.norm = norm

    def value(self, x) -> float:
        x = as_vector(x, dim=self.dim)
        if self.cone.contains(-x):
            return 0.0
        F = self.cone.facets
        nf, n = F.shape
        # variables (y, z, aux); cone rows then norm epigraph rows
        rows = []
        rhs = []
        zero = np.zeros((nf, n))
        rows.append(np.hstack([F, zero]))  # y in K
        rhs.append(np.zeros(nf))
        rows.append(np.hstack([F, zero]))  # y - x in K
        rhs.append(F @ x)
        rows.append(np.hstack([-F, F]))  # z - y in K
        rhs.append(np.zeros(nf))
        rows.append(np.hstack([F, F]))  # z + y in K
        rhs.append(np.zeros(nf))
        G0 = np.vstack(rows)
        h0 = np.concatenate(rhs)
        obj, G, h, n_vars = _append_norm_objective(self.norm, G0, h0, z_start=n)
        val, _ = _solve_bounded(
            LpProblem(objective=obj, ineq_constraints=(G, h)), "regularized gauge"
        )
        return max(0.0, val)

    def subdifferential(self, x) -> SubdiffDesc:
        raise VariantUnsupported(
            "no dual description implemented for the regularized gauge"
        )


class EuclideanNorm(HalfNorm):
    """Plain 2-norm; subdifferential is the normalized point, or the unit
    ball at the origin."""

    variant = "euclidean"

    def value(self, x) -> float:
        x = as_vector(x, dim=self.dim)
        return float(np.linalg.norm(x))

    def subdifferential(self, x) -> SubdiffDesc:
        x = as_vector(x, dim=self.dim)
        nrm = float(np.linalg.norm(x))
        if nrm <= 1e-12:
            return SubdiffDesc.ball(np.zeros(self.dim), 1.0)
        return SubdiffDesc.singleton(x / nrm)


def regularized_norm(cone: PolyCone, norm: WeightedNorm, x) -> float:
    """Regularization of the ambient norm: ``inf { ||z|| : -z <= x <= z }``."""
    x = as_vector(x, dim=cone.dim)
    F = cone.facets
    nf, n = F.shape
    G0 = np.vstack([F, F])  # z - x in K and z + x in K
    h0 = np.concatenate([F @ x, -(F @ x)])
    obj, G, h, _ = _append_norm_objective(norm, G0, h0, z_start=0)
    val, _ = _solve_bounded(
        LpProblem(objective=obj, ineq_constraints=(G, h)), "regularized norm"
    )
    return max(0.0, val)


def _append_norm_objective(norm, G0, h0, z_start):
    """Extend an inequality system with epigraph rows so that minimizing the
    returned objective computes ``||z||`` for the block starting at z_start."""
    n = norm.dim
    m0, width = G0.shape
    if norm.kind == LINF:
        n_vars = width + 1
        G = np.zeros((m0 + 2 * n, n_vars))
        G[:m0, :width] = G0
        h = np.concatenate([h0, np.zeros(2 * n)])
        for i in range(n):
            G[m0 + 2 * i, z_start + i] = -norm.weights[i]
            G[m0 + 2 * i, width] = 1.0
            G[m0 + 2 * i + 1, z_start + i] = norm.weights[i]
            G[m0 + 2 * i + 1, width] = 1.0
        obj = np.zeros(n_vars)
        obj[width] = 1.0
        return obj, G, h, n_vars
    n_vars = width + n
    G = np.zeros((m0 + 2 * n, n_vars))
    G[:m0, :width] = G0
    h = np.concatenate([h0, np.zeros(2 * n)])
    for i in range(n):
        G[m0 + 2 * i, z_start + i] = -1.0
        G[m0 + 2 * i, width + i] = 1.0
        G[m0 + 2 * i + 1, z_start + i] = 1.0
        G[m0 + 2 * i + 1, width + i] = 1.0
    obj = np.concatenate([np.zeros(width), norm.weights])
    return obj, G, h, n_vars


def _dual_ball_subdiff(cone, norm, x, val) -> SubdiffDesc:
    """``{ u in K' : dual-norm(u) <= 1, <x,u> = val }`` as a SubdiffDesc.

    The dual of weighted-linf is a weighted l1 ball (needs split variables);
    the dual of weighted-l1 is a box (pure rows).
    """
    G = cone.generators
    n = cone.dim
    ng = G.shape[0]
    w = norm.weights
    if norm.kind == L1:
        ineq_G = np.vstack([G, -np.eye(n), np.eye(n)])
        ineq_h = np.concatenate([np.zeros(ng), -w, -w])
        return SubdiffDesc(
            "polyhedral",
            n,
            eq=(x.reshape(1, -1), np.array([val])),
            ineq=(ineq_G, ineq_h),
        )
    # linf primal: dual ball sum_i |u_i| / w_i <= 1 with split v >= |u|
    n_vars = 2 * n
    rows = []
    rhs = []
    block = np.zeros((ng, n_vars))
    block[:, :n] = G
    rows.append(block)
    rhs.append(np.zeros(ng))
    split = np.zeros((2 * n, n_vars))
    for i in range(n):
        split[2 * i, i] = -1.0
        split[2 * i, n + i] = 1.0
        split[2 * i + 1, i] = 1.0
        split[2 * i + 1, n + i] = 1.0
    rows.append(split)
    rhs.append(np.zeros(2 * n))
    mass = np.zeros((1, n_vars))
    mass[0, n:] = -1.0 / w
    rows.append(mass)
    rhs.append(np.array([-1.0]))
    eq_row = np.zeros((1, n_vars))
    eq_row[0, :n] = x
    return SubdiffDesc(
        "polyhedral",
        n,
        eq=(eq_row, np.array([val])),
        ineq=(np.vstack(rows), np.concatenate(rhs)),
        n_vars=n_vars,
    )
