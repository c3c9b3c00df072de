"""Dense linear-algebra and linear-programming kernel.

Everything downstream (cones, half-norms, dissipativity certificates) reduces
to the four operations in this module.  The LP solver is a two-phase dense
simplex with Bland's anti-cycling rule: problem sizes here are tiny (a few
hundred variables at most for the finest Dirichlet grid), so a transparent,
deterministic tableau beats a sophisticated solver.

Tolerances: feasibility 1e-9, relative pivot threshold 1e-12.  Downstream
modules inherit these.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    MalformedProblem,
    NormTooLarge,
    NumericalFailure,
    SingularMatrix,
)

FEAS_TOL = 1e-9
PIVOT_REL_TOL = 1e-12

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def as_vector(x, dim: int | None = None) -> np.ndarray:
    """Coerce to a finite 1-d float array, optionally checking its length."""
    v = np.asarray(x, dtype=float)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim != 1 or v.size == 0:
        raise MalformedProblem(f"expected a nonempty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise MalformedProblem("vector contains NaN or Inf entries")
    if dim is not None and v.size != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {v.size}")
    return v


def as_matrix(a, square: bool = False) -> np.ndarray:
    """Coerce to a finite 2-d float array."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.size == 0:
        raise MalformedProblem(f"expected a nonempty matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise MalformedProblem("matrix contains NaN or Inf entries")
    if square and m.shape[0] != m.shape[1]:
        raise MalformedProblem(f"expected a square matrix, got shape {m.shape}")
    return m


@dataclass(frozen=True, eq=False)
class LpProblem:
    """min/max ``objective @ x`` subject to ``A_eq x = b_eq`` and ``G x >= h``.

    Variables are free by default; ``nonneg=True`` constrains all of them to
    ``x >= 0`` as bounds (cheaper than identity inequality rows).
    """

    objective: np.ndarray
    eq_constraints: tuple[np.ndarray, np.ndarray] | None = None
    ineq_constraints: tuple[np.ndarray, np.ndarray] | None = None
    sense: str = "min"
    nonneg: bool = False

    def __post_init__(self):
        c = as_vector(self.objective)
        object.__setattr__(self, "objective", c)
        n = c.size
        for attr in ("eq_constraints", "ineq_constraints"):
            block = getattr(self, attr)
            if block is None:
                continue
            mat, rhs = block
            mat = as_matrix(mat)
            rhs = as_vector(rhs)
            if mat.shape[1] != n:
                raise MalformedProblem(
                    f"{attr}: constraint matrix has {mat.shape[1]} columns, "
                    f"objective has {n}"
                )
            if mat.shape[0] != rhs.size:
                raise MalformedProblem(
                    f"{attr}: {mat.shape[0]} rows but {rhs.size} right-hand sides"
                )
            object.__setattr__(self, attr, (mat, rhs))
        if self.sense not in ("min", "max"):
            raise MalformedProblem(f"sense must be 'min' or 'max', got {self.sense!r}")

    @property
    def dim(self) -> int:
        return self.objective.size


@dataclass(frozen=True, eq=False)
class LpResult:
    status: str
    value: float | None = None
    point: np.ndarray | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _pivot(T: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= factors[:, None] * T[row]
    T[:, col] = 0.0
    T[row, col] = 1.0
    basis[row] = col


def _bland_iterate(T, basis, n_enter, tol, max_iter):
    """Run simplex pivots on tableau ``T`` until optimal or unbounded.

    Columns ``0..n_enter-1`` may enter; Bland's rule (lowest eligible index
    in, lowest basis label out) guarantees termination and makes the
    returned basis deterministic.
    """
    m = T.shape[0] - 1
    rhs = T[:m, -1]
    for _ in range(max_iter):
        eligible = T[m, :n_enter] < -tol
        if not eligible.any():
            return OPTIMAL
        col = int(np.argmax(eligible))
        column = T[:m, col]
        positive = column > tol
        if not positive.any():
            return UNBOUNDED
        ratios = np.where(positive, rhs / np.where(positive, column, 1.0), np.inf)
        best = ratios.min()
        ties = ratios <= best + tol * (1.0 + abs(best))
        row = int(np.argmin(np.where(ties, basis, np.iinfo(np.int64).max)))
        _pivot(T, basis, row, col)
    raise NumericalFailure("simplex iteration cap exceeded (degenerate pivoting)")


def _standard_form_simplex(A, b, c, tol=FEAS_TOL):
    """min c@z s.t. A z = b, z >= 0 via two-phase tableau simplex.

    Unit columns (surplus variables after sign-flipping) seed the initial
    basis; artificial variables are added only for the rows left over, so
    phase 1 is skipped entirely whenever the geometry allows it.
    """
    m, n = A.shape
    max_iter = 2000 + 200 * (m + n)

    T0 = np.empty((m, n + 1))
    T0[:, :n] = A
    T0[:, n] = b
    flip = b < 0
    T0[flip] *= -1.0

    basis = np.full(m, -1, dtype=np.int64)
    col_nonzeros = np.count_nonzero(T0[:, :n], axis=0)
    for j in range(n):
        if col_nonzeros[j] != 1:
            continue
        i = int(np.argmax(np.abs(T0[:, j]) > 0))
        if basis[i] >= 0 or T0[i, j] <= 1e-12:
            continue
        T0[i] /= T0[i, j]
        basis[i] = j
    free_rows = np.flatnonzero(basis < 0)

    if free_rows.size:
        n_art = free_rows.size
        T = np.zeros((m + 1, n + n_art + 1))
        T[:m, :n] = T0[:, :n]
        T[:m, -1] = T0[:, n]
        for k, i in enumerate(free_rows):
            T[i, n + k] = 1.0
            basis[i] = n + k
        # phase-1 reduced costs: artificials carry unit cost
        T[m, :n] = -T0[free_rows, :n].sum(axis=0)
        T[m, -1] = -T0[free_rows, n].sum()

        status = _bland_iterate(T, basis, n, tol, max_iter)
        if status != OPTIMAL:  # pragma: no cover - phase 1 is bounded below
            raise NumericalFailure("phase 1 reported unbounded")
        if -T[m, -1] > tol:
            return INFEASIBLE, None, None

        # Drive leftover artificials out of the basis; drop redundant rows.
        keep = np.ones(m, dtype=bool)
        for i in range(m):
            if basis[i] < n:
                continue
            pivot_cols = np.abs(T[i, :n]) > tol
            if pivot_cols.any():
                _pivot(T, basis, i, int(np.argmax(pivot_cols)))
            else:
                keep[i] = False
        T = T[np.concatenate([keep, [True]])]
        basis = basis[keep]
        m = basis.size
        T2 = np.empty((m + 1, n + 1))
        T2[:m, :n] = T[:m, :n]
        T2[:m, -1] = T[:m, -1]
    else:
        T2 = np.empty((m + 1, n + 1))
        T2[:m] = T0

    c_basis = c[basis]
    T2[m, :n] = c - c_basis @ T2[:m, :n]
    T2[m, -1] = -(c_basis @ T2[:m, -1])

    status = _bland_iterate(T2, basis, n, tol, max_iter)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    z = np.zeros(n)
    z[basis] = T2[:m, -1]
    return OPTIMAL, float(c @ z), z


def solve_lp(problem: LpProblem) -> LpResult:
    """Solve a dense LP; deterministic for a fixed input.

    Free variables are split into positive and negative parts (skipped for
    ``nonneg`` problems), inequalities get surplus variables, and the
    standard form is handed to the two-phase simplex.  When the status is
    ``optimal`` the returned point is re-checked against every constraint at
    the feasibility tolerance.
    """
    n = problem.dim
    c = problem.objective if problem.sense == "min" else -problem.objective

    blocks = []
    rhs = []
    if problem.eq_constraints is not None:
        A_eq, b_eq = problem.eq_constraints
        blocks.append((A_eq, 0))
        rhs.append(b_eq)
    n_ineq = 0
    if problem.ineq_constraints is not None:
        G, h = problem.ineq_constraints
        n_ineq = G.shape[0]
        blocks.append((G, 1))
        rhs.append(h)
    if not blocks:
        if problem.nonneg:
            if np.min(c) < 0:
                return LpResult(UNBOUNDED)
            return LpResult(OPTIMAL, 0.0, np.zeros(n))
        if np.any(np.abs(c) > 0):
            return LpResult(UNBOUNDED)
        return LpResult(OPTIMAL, 0.0, np.zeros(n))

    m = sum(mat.shape[0] for mat, _ in blocks)
    width = n if problem.nonneg else 2 * n
    A = np.zeros((m, width + n_ineq))
    row = 0
    surplus = width
    for mat, is_ineq in blocks:
        k = mat.shape[0]
        A[row : row + k, :n] = mat
        if not problem.nonneg:
            A[row : row + k, n : 2 * n] = -mat
        if is_ineq:
            A[row : row + k, surplus : surplus + k] = -np.eye(k)
            surplus += k
        row += k
    b = np.concatenate(rhs)
    if problem.nonneg:
        cost = np.concatenate([c, np.zeros(n_ineq)])
    else:
        cost = np.concatenate([c, -c, np.zeros(n_ineq)])

    status, value, z = _standard_form_simplex(A, b, cost)
    if status != OPTIMAL:
        return LpResult(status)

    x = z[:n] if problem.nonneg else z[:n] - z[n : 2 * n]
    _check_feasible(problem, x)
    signed = value if problem.sense == "min" else -value
    return LpResult(OPTIMAL, signed, x)


def _check_feasible(problem: LpProblem, x: np.ndarray, tol: float = 1e-7) -> None:
    """Defensive re-validation of an optimal point; failure means the tableau
    drifted, which callers must see rather than silently consume."""
    scale = 1.0 + float(np.max(np.abs(x), initial=0.0))
    if problem.eq_constraints is not None:
        A_eq, b_eq = problem.eq_constraints
        if np.max(np.abs(A_eq @ x - b_eq), initial=0.0) > tol * scale:
            raise NumericalFailure("simplex returned an infeasible point (equalities)")
    if problem.ineq_constraints is not None:
        G, h = problem.ineq_constraints
        if np.min(G @ x - h, initial=0.0) < -tol * scale:
            raise NumericalFailure("simplex returned an infeasible point (inequalities)")


def enumerate_vertices(
    ineq: tuple[np.ndarray, np.ndarray], tol: float = FEAS_TOL
) -> list[np.ndarray]:
    """All vertices of ``{x : G x >= h}`` by brute-force active-set enumeration.

    Intended as an independent oracle for :func:`solve_lp` and for the small
    polyhedra that appear in domain and subdifferential descriptions; guarded
    to dimension 10.  Unbounded polyhedra without a full active set simply
    yield fewer (possibly zero) vertices.
    """
    G, h = ineq
    G = as_matrix(G)
    h = as_vector(h)
    m, n = G.shape
    if h.size != m:
        raise MalformedProblem(f"{m} constraint rows but {h.size} right-hand sides")
    if n > 10:
        raise DimensionTooLarge(f"vertex enumeration guarded to dim <= 10, got {n}")

    scale = 1.0 + float(np.max(np.abs(h), initial=0.0))
    vertices: list[np.ndarray] = []
    for subset in itertools.combinations(range(m), n):
        M = G[list(subset)]
        if np.linalg.matrix_rank(M, tol=1e-10) < n:
            continue
        x = np.linalg.lstsq(M, h[list(subset)], rcond=None)[0]
        if np.max(np.abs(M @ x - h[list(subset)])) > 1e-8 * scale:
            continue
        if np.min(G @ x - h) < -tol * (1.0 + float(np.max(np.abs(x)))):
            continue
        if not any(np.max(np.abs(x - v)) <= 1e-9 * (1.0 + np.max(np.abs(v))) for v in vertices):
            vertices.append(x)
    vertices.sort(key=lambda v: tuple(np.round(v, 12)))
    return vertices


def linear_solve(A, b) -> np.ndarray:
    """Solve ``A x = b`` by LU with partial pivoting (scipy backend).

    Raises :class:`SingularMatrix` when the smallest pivot drops below
    1e-12 relative to the matrix scale.
    """
    A = as_matrix(A, square=True)
    b = as_vector(b, dim=A.shape[0])
    lu, piv = _lu_factor_checked(A)
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


def _lu_factor_checked(A: np.ndarray):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lu, piv = scipy.linalg.lu_factor(A, check_finite=False)
    scale = max(float(np.max(np.abs(A))), np.finfo(float).tiny)
    if float(np.min(np.abs(np.diag(lu)))) <= PIVOT_REL_TOL * scale:
        raise SingularMatrix("pivot below 1e-12 relative threshold")
    return lu, piv


def factorized_solver(A):
    """One LU factorization, many solves; same pivot guard as linear_solve."""
    A = as_matrix(A, square=True)
    lu_piv = _lu_factor_checked(A)

    def solve(rhs):
        return scipy.linalg.lu_solve(lu_piv, np.asarray(rhs, dtype=float), check_finite=False)

    return solve


def matrix_exp(A, t: float = 1.0, max_norm: float = 1e5) -> np.ndarray:
    """Approximate ``exp(t A)`` by shifted scaling-and-squaring.

    The diagonal is shifted so the scaled Taylor series has nonnegative terms
    whenever ``A`` has nonnegative off-diagonal entries; sums and products of
    nonnegative floats stay nonnegative, so entrywise positivity of the true
    exponential survives rounding exactly in that case.  Scaling targets
    ``||shifted t A / 2^k||_inf <= 0.5``; relative accuracy is ~1e-12 for
    moderate norms and safely within 1e-9 across the guarded range.
    """
    A = as_matrix(A, square=True)
    if t < 0:
        raise MalformedProblem(f"matrix_exp requires t >= 0, got {t}")
    B = t * A
    norm = float(np.max(np.abs(B).sum(axis=1), initial=0.0))
    if norm > max_norm:
        raise NormTooLarge(f"||tA||_inf = {norm:.3g} exceeds guard {max_norm:.3g}")

    shift = max(0.0, -float(np.min(np.diag(B))))
    P = B + shift * np.eye(B.shape[0])
    p_norm = float(np.max(np.abs(P).sum(axis=1), initial=0.0))
    k = max(0, math.ceil(math.log2(p_norm / 0.5))) if p_norm > 0.5 else 0
    C = P / 2.0**k

    S = np.eye(B.shape[0])
    term = np.eye(B.shape[0])
    for j in range(1, 40):
        term = term @ C / j
        S = S + term
        if float(np.max(np.abs(term))) < 1e-19 * float(np.max(np.abs(S))):
            break
    S *= math.exp(-shift / 2.0**k)
    for _ in range(k):
        S = S @ S
    return S
