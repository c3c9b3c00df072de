"""Matrix semigroups from generators: resolvents, backward-Euler powers,
and the contractivity/positivity pipelines.

The exponential formula is realized at finite ``n`` as ``(I - (t/n) A)^-n``,
reusing one LU factorization across the ``n`` solves.  Positivity of a
matrix against a cone is an exact generator/facet check; contractivity
against a half-norm is sampled.  Pipeline verdicts are three-valued
(holds / fails / vacuous): the hypotheses themselves can only be sampled,
and the reports keep that asymmetry explicit rather than claiming proofs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cone import DualVector, PolyCone
from .dissipativity import LinOp, certify_dissipative
from .errors import MalformedProblem, SingularMatrix
from .halfnorm import FunctionalGauge, HalfNorm
from .numerics import as_matrix, as_vector, factorized_solver, matrix_exp
from .report import FAILS, HOLDS, INCONCLUSIVE, VACUOUS, Report, Witness

DEFAULT_T_GRID = (0.1, 0.5, 1.0, 2.0, 5.0)


@dataclass(frozen=True)
class SemigroupConfig:
    """Time grid and construction method for T(t)."""

    t_grid: tuple[float, ...] = DEFAULT_T_GRID
    euler_steps: int = 16
    method: str = "both"  # euler | expm | both

    def __post_init__(self):
        grid = tuple(float(t) for t in self.t_grid)
        if any(t < 0 for t in grid):
            raise MalformedProblem("t_grid entries must be nonnegative")
        if list(grid) != sorted(grid):
            raise MalformedProblem("t_grid must be sorted ascending")
        object.__setattr__(self, "t_grid", grid)
        if self.euler_steps < 1:
            raise MalformedProblem("euler_steps must be >= 1")
        if self.method not in ("euler", "expm", "both"):
            raise MalformedProblem(f"unknown method {self.method!r}")

    def methods(self) -> tuple[str, ...]:
        return ("euler", "expm") if self.method == "both" else (self.method,)


def _op_matrix(op) -> np.ndarray:
    return op.matrix if isinstance(op, LinOp) else as_matrix(op, square=True)


def _resolvent_solver(A: np.ndarray, lam: float, context: str):
    try:
        return factorized_solver(np.eye(A.shape[0]) - lam * A)
    except SingularMatrix as exc:
        raise SingularMatrix(f"(I - {lam:g} A) is singular ({context})") from exc


def resolvent_apply(op, lam: float, y) -> np.ndarray:
    """Solve ``(I - lam A) x = y`` for ``lam > 0``."""
    A = _op_matrix(op)
    if lam <= 0:
        raise MalformedProblem(f"resolvent parameter must be positive, got {lam}")
    y = as_vector(y, dim=A.shape[0])
    return _resolvent_solver(A, lam, "resolvent")(y)


def euler_power(op, t: float, n: int, x) -> np.ndarray:
    """Backward-Euler approximation ``(I - (t/n) A)^-n x``; t = 0 returns x."""
    A = _op_matrix(op)
    x = as_vector(x, dim=A.shape[0])
    if t < 0:
        raise MalformedProblem(f"time must be nonnegative, got {t}")
    if n < 1:
        raise MalformedProblem(f"step count must be >= 1, got {n}")
    if t == 0:
        return x.copy()
    solve = _resolvent_solver(A, t / n, f"euler step for t={t:g}, n={n}")
    for _ in range(n):
        x = solve(x)
    return x


def euler_matrix(op, t: float, n: int) -> np.ndarray:
    """Matrix form of the backward-Euler approximation of T(t)."""
    A = _op_matrix(op)
    if t == 0:
        return np.eye(A.shape[0])
    if n < 1:
        raise MalformedProblem(f"step count must be >= 1, got {n}")
    solve = _resolvent_solver(A, t / n, f"euler step for t={t:g}, n={n}")
    R = solve(np.eye(A.shape[0]))
    return np.linalg.matrix_power(R, n)


def is_positive_operator(T, cone: PolyCone, tol: float = 1e-9) -> Report:
    """Exact positivity: T must map every generator into the cone.

    Linearity plus conic generation make the generator test complete, so a
    ``fails`` verdict always carries a generator/facet witness.
    """
    T = as_matrix(T, square=True)
    if T.shape[0] != cone.dim:
        raise MalformedProblem("operator and cone dimensions differ")
    margins = cone.facets @ (T @ cone.generators.T)  # facet x generator
    witnesses = []
    for j in range(cone.generators.shape[0]):
        worst = int(np.argmin(margins[:, j]))
        if margins[worst, j] < -tol:
            witnesses.append(
                Witness(
                    point=cone.generators[j].copy(),
                    functional=cone.facets[worst].copy(),
                    margin=float(margins[worst, j]),
                    label=f"T(generator[{j}]) violates facet[{worst}]",
                )
            )
    return Report(
        name="positive_operator",
        verdict=FAILS if witnesses else HOLDS,
        witnesses=witnesses,
        tolerance=tol,
        notes=["exact generator/facet check"],
        data={"worst_margin": float(np.min(margins))},
    )


def is_contractive(
    T, halfnorm: HalfNorm, n_samples: int = 100, seed: int = 0, tol: float = 1e-8
) -> Report:
    """Sampled contractivity: ``p(Tx) <= p(x) + tol`` on generators, their
    negatives, and seeded Gaussian points."""
    T = as_matrix(T, square=True)
    n = halfnorm.dim
    if T.shape[0] != n:
        raise MalformedProblem("operator and half-norm dimensions differ")
    rng = np.random.default_rng(seed)
    points = [(f"generator[{i}]", g.astype(float)) for i, g in enumerate(halfnorm.cone.generators)]
    points += [(f"-generator[{i}]", -g) for i, (_, g) in enumerate(points)]
    points += [(f"sample[{k}]", rng.standard_normal(n)) for k in range(n_samples)]
    witnesses = []
    worst = -np.inf
    for label, x in points:
        margin = halfnorm.value(T @ x) - halfnorm.value(x)
        worst = max(worst, margin)
        if margin > tol:
            witnesses.append(Witness(point=x, functional=None, margin=float(margin), label=label))
    return Report(
        name=f"contractive[{halfnorm.variant}]",
        verdict=FAILS if witnesses else INCONCLUSIVE,
        witnesses=witnesses,
        samples_used=len(points),
        tolerance=tol,
        notes=["sampled check: a pass is evidence, not a proof"],
        data={"worst_margin": float(worst)},
    )


def check_resolvent_contractivity(
    op: LinOp,
    cone: PolyCone,
    phi: DualVector,
    lam: float,
    n_samples: int = 100,
    seed: int = 0,
) -> Report:
    """Pipeline: certify dissipativity for the functional gauge, then test
    that the resolvent ``(I - lam A)^-1`` is contractive for it.

    A hypothesis failure makes the conclusion unasserted: the composite
    verdict is then ``vacuous`` regardless of what the contractivity
    sampling finds.
    """
    gauge = FunctionalGauge(cone, phi)
    hypothesis = certify_dissipative(op, gauge, n_samples=n_samples, seed=seed)
    hypothesis.name = "hypothesis:" + hypothesis.name
    hypothesis.data["role"] = "hypothesis"
    resolvent = _resolvent_matrix(op, lam)
    conclusion = is_contractive(resolvent, gauge, n_samples=n_samples, seed=seed)
    conclusion.name = f"conclusion:contractive[lam={lam:g}]"
    conclusion.data["role"] = "conclusion"
    conclusion.data["lambda"] = float(lam)
    if hypothesis.verdict == FAILS:
        verdict = VACUOUS
        notes = ["hypothesis (dissipativity) failed on a sample; conclusion not asserted"]
    elif conclusion.verdict == FAILS:
        verdict = FAILS
        notes = ["resolvent contractivity violated despite sampled dissipativity"]
    else:
        verdict = HOLDS
        notes = ["hypothesis sampled-pass; resolvent contractive on all test points"]
    return Report(
        name=f"resolvent_contractivity[lam={lam:g}]",
        verdict=verdict,
        samples_used=hypothesis.samples_used + conclusion.samples_used,
        tolerance=conclusion.tolerance,
        notes=notes,
        subreports=[hypothesis, conclusion],
    )


def _resolvent_matrix(op, lam: float) -> np.ndarray:
    A = _op_matrix(op)
    if lam <= 0:
        raise MalformedProblem(f"resolvent parameter must be positive, got {lam}")
    return _resolvent_solver(A, lam, "resolvent")(np.eye(A.shape[0]))


def check_semigroup_contractivity(
    op: LinOp,
    cone: PolyCone,
    phi: DualVector,
    cfg: SemigroupConfig | None = None,
    n_samples: int = 100,
    seed: int = 0,
) -> Report:
    """Pipeline: dissipativity hypothesis, then sampled contractivity of
    T(t) built by the configured methods on the whole time grid."""
    cfg = cfg or SemigroupConfig()
    gauge = FunctionalGauge(cone, phi)
    hypothesis = certify_dissipative(op, gauge, n_samples=n_samples, seed=seed)
    hypothesis.name = "hypothesis:" + hypothesis.name
    hypothesis.data["role"] = "hypothesis"
    parts = [hypothesis]
    conclusion_failed = False
    for t in cfg.t_grid:
        for method in cfg.methods():
            T = (
                matrix_exp(op.matrix, t)
                if method == "expm"
                else euler_matrix(op, t, cfg.euler_steps)
            )
            rep = is_contractive(T, gauge, n_samples=n_samples, seed=seed)
            rep.name = f"contractive[t={t:g},{method}]"
            rep.data.update({"role": "conclusion", "t": float(t), "method": method})
            parts.append(rep)
            conclusion_failed = conclusion_failed or rep.verdict == FAILS
    if hypothesis.verdict == FAILS:
        verdict, notes = VACUOUS, ["dissipativity hypothesis failed on a sample"]
    elif conclusion_failed:
        verdict, notes = FAILS, ["T(t) contractivity violated despite sampled hypothesis"]
    else:
        verdict, notes = HOLDS, ["hypothesis sampled-pass; T(t) contractive on all test points"]
    return Report(
        name="semigroup_contractivity",
        verdict=verdict,
        samples_used=sum(p.samples_used for p in parts),
        tolerance=1e-8,
        notes=notes,
        subreports=parts,
    )


def check_semigroup_positivity(
    op: LinOp,
    phi_set: list[DualVector],
    cone: PolyCone,
    cfg: SemigroupConfig | None = None,
    n_samples: int = 100,
    seed: int = 0,
) -> Report:
    """Pipeline: total set + per-functional dissipativity, then exact
    positivity of T(t) built by the configured methods on the time grid."""
    cfg = cfg or SemigroupConfig()
    parts: list[Report] = []

    totality = cone.is_total(phi_set)
    totality.name = "hypothesis:" + totality.name
    totality.data["role"] = "hypothesis"
    parts.append(totality)
    if totality.verdict != HOLDS:
        return Report(
            name="semigroup_positivity",
            verdict=VACUOUS,
            notes=["the functional family is not total; the positivity implication is not asserted"],
            subreports=parts,
        )

    hypothesis_failed = False
    for i, phi in enumerate(phi_set):
        rep = certify_dissipative(
            op, FunctionalGauge(cone, phi), n_samples=n_samples, seed=seed + i
        )
        rep.name = f"hypothesis:dissipative[phi[{i}]]"
        rep.data["role"] = "hypothesis"
        parts.append(rep)
        hypothesis_failed = hypothesis_failed or rep.verdict == FAILS

    conclusion_failed = False
    for t in cfg.t_grid:
        for method in cfg.methods():
            T = (
                matrix_exp(op.matrix, t)
                if method == "expm"
                else euler_matrix(op, t, cfg.euler_steps)
            )
            rep = is_positive_operator(T, cone)
            rep.name = f"positive[t={t:g},{method}]"
            rep.data.update({"role": "conclusion", "t": float(t), "method": method})
            parts.append(rep)
            conclusion_failed = conclusion_failed or rep.verdict == FAILS

    if hypothesis_failed:
        verdict = VACUOUS
        notes = ["a dissipativity hypothesis failed; positivity results are informational"]
    elif conclusion_failed:
        verdict = FAILS
        notes = ["T(t) left the cone on the grid despite sampled hypotheses"]
    else:
        verdict = HOLDS
        notes = [
            "total set exact, dissipativity sampled, positivity exact per grid point"
        ]
    return Report(
        name="semigroup_positivity",
        verdict=verdict,
        samples_used=sum(p.samples_used for p in parts),
        tolerance=1e-9,
        notes=notes,
        subreports=parts,
    )
