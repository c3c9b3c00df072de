"""Kernel tests: simplex vs brute-force vertex enumeration, LU, expm."""

import numpy as np
import pytest
import scipy.linalg

from conesemi.errors import (
    DimensionTooLarge,
    MalformedProblem,
    NormTooLarge,
    SingularMatrix,
)
from conesemi.numerics import (
    LpProblem,
    enumerate_vertices,
    linear_solve,
    matrix_exp,
    solve_lp,
)


def lp(c, G=None, h=None, A=None, b=None, sense="min", nonneg=False):
    return LpProblem(
        objective=c,
        eq_constraints=(np.atleast_2d(A), b) if A is not None else None,
        ineq_constraints=(np.atleast_2d(G), h) if G is not None else None,
        sense=sense,
        nonneg=nonneg,
    )


class TestSolveLp:
    def test_single_bound(self):
        res = solve_lp(lp([1.0], G=[[1.0]], h=[3.0]))
        assert res.status == "optimal"
        assert res.value == pytest.approx(3.0, abs=1e-9)
        assert res.point == pytest.approx([3.0], abs=1e-9)

    def test_origin_optimal(self):
        res = solve_lp(lp([1.0, 1.0], G=[[1, 0], [0, 1], [1, 1]], h=[0, 0, 0]))
        assert res.status == "optimal"
        assert res.value == pytest.approx(0.0, abs=1e-9)
        assert res.point == pytest.approx([0.0, 0.0], abs=1e-9)

    def test_contradictory_bounds_infeasible(self):
        # x <= -1 and x >= 0
        res = solve_lp(lp([1.0], G=[[-1.0], [1.0]], h=[1.0, 0.0]))
        assert res.status == "infeasible"
        assert res.point is None

    def test_unbounded(self):
        res = solve_lp(lp([-1.0], G=[[1.0]], h=[0.0]))
        assert res.status == "unbounded"

    def test_maximize(self):
        res = solve_lp(lp([1.0, 0.0], G=[[-1, 0], [1, 0], [0, 1], [0, -1]],
                          h=[-2, 0, 0, -1], sense="max"))
        assert res.value == pytest.approx(2.0, abs=1e-9)

    def test_equality_constraints(self):
        res = solve_lp(lp([1.0, 1.0], A=[[1.0, 1.0]], b=[2.0],
                          G=[[1, 0], [0, 1]], h=[0, 0]))
        assert res.status == "optimal"
        assert res.value == pytest.approx(2.0, abs=1e-9)

    def test_nonneg_flag_matches_explicit_rows(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            n = int(rng.integers(2, 5))
            m = int(rng.integers(1, 6))
            G = rng.normal(size=(m, n))
            h = rng.normal(size=m) - 1.0
            c = rng.uniform(0.5, 2.0, size=n)
            with_flag = solve_lp(lp(c, G=G, h=h, nonneg=True))
            explicit = solve_lp(
                lp(c, G=np.vstack([G, np.eye(n)]), h=np.concatenate([h, np.zeros(n)]))
            )
            assert with_flag.status == explicit.status
            if with_flag.optimal:
                assert with_flag.value == pytest.approx(explicit.value, abs=1e-8)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(MalformedProblem):
            lp([1.0, 2.0], G=[[1.0]], h=[0.0])
        with pytest.raises(MalformedProblem):
            lp([1.0], G=[[1.0], [2.0]], h=[0.0])

    def test_nan_rejected(self):
        with pytest.raises(MalformedProblem):
            lp([np.nan], G=[[1.0]], h=[0.0])

    def test_deterministic(self):
        problem = lp([1.0, 1.0, 0.0], G=np.vstack([np.eye(3), -np.eye(3)]),
                     h=np.concatenate([np.zeros(3), -np.ones(3)]))
        first = solve_lp(problem)
        second = solve_lp(problem)
        assert first.value == second.value
        assert np.array_equal(first.point, second.point)


class TestEnumerateVertices:
    def test_unit_square(self):
        G = np.vstack([np.eye(2), -np.eye(2)])
        h = np.array([0.0, 0.0, -1.0, -1.0])
        verts = enumerate_vertices((G, h))
        got = {tuple(np.round(v, 9)) for v in verts}
        assert got == {(0, 0), (0, 1), (1, 0), (1, 1)}

    def test_standard_simplex_dim3(self):
        G = np.vstack([np.eye(3), -np.ones((1, 3))])
        h = np.array([0.0, 0.0, 0.0, -1.0])
        verts = enumerate_vertices((G, h))
        assert len(verts) == 4

    def test_halfspace_has_no_vertex(self):
        # one constraint in dim 2: no complete active set exists
        assert enumerate_vertices((np.array([[1.0, 0.0]]), np.array([0.0]))) == []

    def test_guard(self):
        with pytest.raises(DimensionTooLarge):
            enumerate_vertices((np.eye(11), np.zeros(11)))

    def test_degenerate_vertex_deduplicated(self):
        # three constraints active at the origin in dim 2
        G = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        h = np.zeros(3)
        verts = enumerate_vertices((G, h))
        assert len(verts) == 1
        assert verts[0] == pytest.approx([0.0, 0.0], abs=1e-12)


class TestLpAgainstVertexOracle:
    def test_random_bounded_lps(self):
        rng = np.random.default_rng(2024)
        checked = 0
        for _ in range(200):
            n = int(rng.integers(2, 5))
            m = int(rng.integers(1, 9 - n))
            G = np.vstack([rng.normal(size=(m, n)), np.eye(n), -np.eye(n)])
            h = np.concatenate([rng.normal(size=m) - 1.0, -3 * np.ones(2 * n)])
            c = rng.normal(size=n)
            res = solve_lp(lp(c, G=G, h=h))
            verts = enumerate_vertices((G, h))
            if res.status != "optimal":
                assert not verts
                continue
            best = min(float(c @ v) for v in verts)
            assert res.value == pytest.approx(best, abs=1e-8)
            checked += 1
        assert checked > 150


class TestLinearSolve:
    def test_identity(self):
        b = np.array([3.0, -1.0, 2.0])
        assert linear_solve(np.eye(3), b) == pytest.approx(b, abs=1e-14)

    def test_diagonal(self):
        assert linear_solve([[2, 0], [0, 4]], [2, 4]) == pytest.approx([1, 1])

    def test_random_residual(self):
        rng = np.random.default_rng(5)
        A = rng.normal(size=(5, 5)) + 5 * np.eye(5)
        b = rng.normal(size=5)
        x = linear_solve(A, b)
        assert np.max(np.abs(A @ x - b)) <= 1e-10 * (1 + np.max(np.abs(b)))

    def test_multiply_back_property(self):
        rng = np.random.default_rng(6)
        for _ in range(25):
            n = int(rng.integers(2, 8))
            A = rng.normal(size=(n, n)) + n * np.eye(n)
            b = rng.normal(size=n)
            x = linear_solve(A, b)
            assert np.max(np.abs(A @ x - b)) <= 1e-10 * (1 + np.max(np.abs(b)))

    def test_singular_raises(self):
        with pytest.raises(SingularMatrix):
            linear_solve([[1.0, 1.0], [1.0, 1.0]], [1.0, 2.0])

    def test_not_square_rejected(self):
        with pytest.raises(MalformedProblem):
            linear_solve(np.ones((2, 3)), [1.0, 2.0])


class TestMatrixExp:
    def test_zero_matrix(self):
        assert matrix_exp(np.zeros((3, 3))) == pytest.approx(np.eye(3), abs=1e-15)

    def test_scalar_decay(self):
        E = matrix_exp(np.array([[-1.0]]), 1.0)
        assert E[0, 0] == pytest.approx(np.exp(-1.0), rel=1e-12)

    def test_quarter_turn(self):
        A = np.array([[0.0, 1.0], [-1.0, 0.0]])
        expected = np.array([[0.0, 1.0], [-1.0, 0.0]])  # cos/sin block at pi/2
        E = matrix_exp(A, np.pi / 2)
        assert np.max(np.abs(E - expected)) <= 1e-9

    def test_negative_time_rejected(self):
        with pytest.raises(MalformedProblem):
            matrix_exp(np.eye(2), -0.1)

    def test_norm_guard(self):
        with pytest.raises(NormTooLarge):
            matrix_exp(np.eye(2) * 1e6, 1.0)

    def test_against_scipy_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = int(rng.integers(2, 7))
            A = rng.normal(size=(n, n))
            t = float(rng.uniform(0.1, 3.0))
            ours = matrix_exp(A, t)
            ref = scipy.linalg.expm(t * A)
            scale = max(1.0, float(np.max(np.abs(ref))))
            assert np.max(np.abs(ours - ref)) <= 1e-9 * scale

    def test_large_norm_against_scipy(self):
        # stiff symmetric case, the regime the grid example lives in
        n = 20
        A = -2.0 * np.eye(n) + np.eye(n, k=1) + np.eye(n, k=-1)
        A *= (n + 1) ** 2
        ours = matrix_exp(A, 1.0)
        ref = scipy.linalg.expm(A)
        assert np.max(np.abs(ours - ref)) <= 1e-9 * max(1.0, float(np.max(np.abs(ref))))

    def test_semigroup_law(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            n = int(rng.integers(2, 6))
            A = rng.normal(size=(n, n))
            A /= max(1.0, np.max(np.abs(A).sum(axis=1)))  # ||A||_inf <= 1
            s, t = rng.uniform(0.2, 5.0, size=2)
            total = s + t
            if total * np.max(np.abs(A).sum(axis=1)) > 20:
                continue
            left = matrix_exp(A, s + t)
            right = matrix_exp(A, s) @ matrix_exp(A, t)
            assert np.max(np.abs(left - right)) <= 1e-8

    def test_metzler_exponential_exactly_nonnegative(self):
        # diagonal shift keeps every float operation nonnegative
        rng = np.random.default_rng(9)
        for _ in range(20):
            n = int(rng.integers(2, 8))
            A = rng.uniform(0, 2, size=(n, n))
            np.fill_diagonal(A, -rng.uniform(0, 50, size=n))
            E = matrix_exp(A, float(rng.uniform(0.1, 5.0)))
            assert np.min(E) >= 0.0
