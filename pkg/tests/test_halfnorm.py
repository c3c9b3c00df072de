"""Half-norm values, subdifferentials, and their independent oracles.

The brute-force oracle reassembles each variant's feasible region from
scratch and minimizes over enumerated vertices, so it shares no code path
with the simplex-backed evaluation it checks.  The dual characterization of
the functional-gauge subdifferential is validated against the sampled
universal definition before anything else relies on it.
"""

import numpy as np
import pytest

from conesemi.cone import PolyCone
from conesemi.errors import (
    NotOrderUnit,
    NotPositiveFunctional,
    VariantPreconditionFailed,
    VariantUnsupported,
)
from conesemi.halfnorm import (
    CanonicalHalfNorm,
    EuclideanNorm,
    FunctionalGauge,
    OrderUnitGauge,
    PositivePartNorm,
    RegularizedGauge,
    WeightedNorm,
    regularized_norm,
)
from conesemi.numerics import enumerate_vertices


@pytest.fixture
def orthant2():
    return PolyCone.standard_orthant(2)


@pytest.fixture
def diamond():
    return PolyCone.from_generators([[1, 1], [1, -1]])


def brute_force_functional_gauge(cone, phi, x):
    """min <y, phi> over majorants, via vertex enumeration in y-space."""
    F = cone.facets
    G = np.vstack([F, F])
    h = np.concatenate([np.zeros(F.shape[0]), F @ x])
    verts = enumerate_vertices((G, h))
    assert verts, "majorant region must have a vertex"
    return min(float(np.dot(v, phi)) for v in verts)


def brute_force_canonical(cone, norm, x):
    """min ||y|| over y >= x via the epigraph polyhedron's vertices."""
    F = cone.facets
    nf, n = F.shape
    w = norm.weights
    if norm.kind == "linf":
        G = np.zeros((nf + 2 * n, n + 1))
        G[:nf, :n] = F
        h = np.concatenate([F @ x, np.zeros(2 * n)])
        for i in range(n):
            G[nf + 2 * i, i] = -w[i]
            G[nf + 2 * i, n] = 1.0
            G[nf + 2 * i + 1, i] = w[i]
            G[nf + 2 * i + 1, n] = 1.0
        verts = enumerate_vertices((G, h))
        assert verts
        return min(float(v[n]) for v in verts)
    G = np.zeros((nf + 2 * n, 2 * n))
    G[:nf, :n] = F
    h = np.concatenate([F @ x, np.zeros(2 * n)])
    for i in range(n):
        G[nf + 2 * i, i] = -1.0
        G[nf + 2 * i, n + i] = 1.0
        G[nf + 2 * i + 1, i] = 1.0
        G[nf + 2 * i + 1, n + i] = 1.0
    verts = enumerate_vertices((G, h))
    assert verts
    return min(float(w @ v[n:]) for v in verts)


def brute_force_order_unit(cone, unit, x):
    """min lam >= 0 with lam*u - x in the cone: a one-variable enumeration."""
    F = cone.facets
    lam_min = max(0.0, float(np.max((F @ x) / (F @ unit))))
    return lam_min


class TestWeightedNorm:
    def test_values(self):
        norm = WeightedNorm("l1", [2.0, 1.0])
        assert norm.value([1, -3]) == pytest.approx(5.0)
        assert WeightedNorm("linf", [2.0, 1.0]).value([1, -3]) == pytest.approx(3.0)

    def test_weights_must_be_positive(self):
        from conesemi.errors import MalformedProblem

        with pytest.raises(MalformedProblem):
            WeightedNorm("l1", [1.0, 0.0])
        with pytest.raises(MalformedProblem):
            WeightedNorm("l2", [1.0, 1.0])

    def test_dual_value_pairs_with_primal(self):
        rng = np.random.default_rng(99)
        for kind in ("l1", "linf"):
            norm = WeightedNorm(kind, rng.uniform(0.5, 2.0, 3))
            for _ in range(50):
                x = rng.standard_normal(3)
                u = rng.standard_normal(3)
                assert abs(float(x @ u)) <= norm.value(x) * norm.dual_value(u) + 1e-12


class TestFunctionalGaugeValues:
    def test_on_cone_equals_pairing(self, orthant2):
        p = FunctionalGauge(orthant2, [1, 1])
        assert p.value([2, 3]) == 5.0

    def test_on_negative_cone_vanishes(self, orthant2):
        p = FunctionalGauge(orthant2, [1, 1])
        assert p.value([-1, -2]) == 0.0

    def test_mixed_point(self, orthant2):
        p = FunctionalGauge(orthant2, [1, 1])
        assert p.value([1, -2]) == pytest.approx(1.0, abs=1e-9)

    def test_diamond_mixed_point(self, diamond):
        p = FunctionalGauge(diamond, [1, 0])
        assert p.value([0, 1]) == pytest.approx(0.5, abs=1e-9)

    def test_rejects_nonpositive_functional(self, orthant2):
        with pytest.raises(NotPositiveFunctional):
            FunctionalGauge(orthant2, [1, -1])

    def test_against_brute_force(self, orthant2, diamond):
        rng = np.random.default_rng(101)
        cones = [orthant2, diamond, PolyCone.standard_orthant(3)]
        for K in cones:
            phi = K.dual_cone().generators.T @ rng.uniform(0.2, 1.5, K.facets.shape[0])
            p = FunctionalGauge(K, phi)
            for _ in range(30):
                x = rng.standard_normal(K.dim) * 2
                expected = brute_force_functional_gauge(K, phi, x)
                assert p.value(x) == pytest.approx(max(0.0, expected), abs=1e-8)


class TestCanonicalValues:
    def test_sup_norm_example(self, orthant2):
        p = CanonicalHalfNorm(orthant2, WeightedNorm.sup(2))
        assert p.value([1, -2]) == pytest.approx(1.0, abs=1e-9)

    def test_against_brute_force(self, orthant2, diamond):
        rng = np.random.default_rng(102)
        for K in (orthant2, diamond):
            for kind in ("linf", "l1"):
                w = rng.uniform(0.5, 2.0, K.dim)
                norm = WeightedNorm(kind, w)
                p = CanonicalHalfNorm(K, norm)
                for _ in range(20):
                    x = rng.standard_normal(K.dim) * 2
                    expected = brute_force_canonical(K, norm, x)
                    assert p.value(x) == pytest.approx(max(0.0, expected), abs=1e-8)


class TestOrderUnitValues:
    def test_example(self, orthant2):
        p = OrderUnitGauge(orthant2, [1, 1])
        assert p.value([2, -1]) == pytest.approx(2.0, abs=1e-12)

    def test_needs_interior_unit(self, orthant2):
        with pytest.raises(NotOrderUnit):
            OrderUnitGauge(orthant2, [1, 0])

    def test_gauge_inequality_definition(self, diamond):
        # smallest lam with x <= lam*u, checked directly
        p = OrderUnitGauge(diamond, [1, 0])
        rng = np.random.default_rng(103)
        for _ in range(50):
            x = rng.standard_normal(2) * 2
            lam = p.value(x)
            assert diamond.leq(x, (lam + 1e-9) * np.array([1.0, 0.0]))
            if lam > 1e-9:
                assert not diamond.leq(x, (lam - 1e-6) * np.array([1.0, 0.0]))


class TestPositivePartValues:
    def test_example(self, orthant2):
        p = PositivePartNorm(orthant2, WeightedNorm.sup(2))
        assert p.value([1, -2]) == pytest.approx(1.0, abs=1e-12)

    def test_needs_lattice(self):
        pyramid = PolyCone.from_generators(
            [[1, 1, 1], [-1, 1, 1], [1, -1, 1], [-1, -1, 1]]
        )
        with pytest.raises(VariantPreconditionFailed):
            PositivePartNorm(pyramid, WeightedNorm.sup(3))

    def test_matches_canonical_on_lattice_cones(self, orthant2, diamond):
        # the classical lattice identity, for monotone norms
        rng = np.random.default_rng(104)
        setups = [
            (orthant2, WeightedNorm("linf", rng.uniform(0.5, 2.0, 2))),
            (orthant2, WeightedNorm("l1", rng.uniform(0.5, 2.0, 2))),
            (diamond, WeightedNorm.sup(2)),
            (diamond, WeightedNorm.one(2)),
        ]
        for K, norm in setups:
            canonical = CanonicalHalfNorm(K, norm)
            npos = PositivePartNorm(K, norm)
            for _ in range(125):
                x = rng.standard_normal(2) * 2
                assert npos.value(x) == pytest.approx(canonical.value(x), abs=1e-9)


class TestRegularizedGauge:
    def test_zero_on_negative_cone(self, orthant2):
        p = RegularizedGauge(orthant2, WeightedNorm.sup(2))
        assert p.value([-1, -3]) == 0.0

    def test_strictness_chain(self, orthant2, diamond):
        # p(x) + p(-x) >= ||x||_r on random points
        rng = np.random.default_rng(105)
        for K in (orthant2, diamond):
            for kind in ("linf", "l1"):
                norm = WeightedNorm(kind, rng.uniform(0.5, 2.0, K.dim))
                p = RegularizedGauge(K, norm)
                for _ in range(60):
                    x = rng.standard_normal(K.dim) * 2
                    chain = p.value(x) + p.value(-x)
                    assert chain >= regularized_norm(K, norm, x) - 1e-9

    def test_agrees_with_canonical_on_claimed_region(self, orthant2, diamond):
        # equality is asserted on K and -K only; monotone-norm setups
        rng = np.random.default_rng(106)
        setups = [
            (orthant2, WeightedNorm("linf", rng.uniform(0.5, 2.0, 2))),
            (orthant2, WeightedNorm("l1", rng.uniform(0.5, 2.0, 2))),
            (diamond, WeightedNorm.sup(2)),
        ]
        for K, norm in setups:
            gauge = RegularizedGauge(K, norm)
            psi = CanonicalHalfNorm(K, norm)
            R = K.generators
            for _ in range(40):
                x = R.T @ rng.uniform(0, 2, K.dim)  # x in K
                assert gauge.value(x) == pytest.approx(psi.value(x), abs=1e-8)
                assert gauge.value(-x) == pytest.approx(psi.value(-x), abs=1e-12)

    def test_no_subdifferential(self, orthant2):
        p = RegularizedGauge(orthant2, WeightedNorm.sup(2))
        with pytest.raises(VariantUnsupported):
            p.subdifferential([1.0, 0.0])

    def test_against_brute_force_dim2(self, orthant2):
        rng = np.random.default_rng(107)
        norm = WeightedNorm.sup(2)
        p = RegularizedGauge(orthant2, norm)
        F = orthant2.facets
        nf, n = F.shape
        for _ in range(10):
            x = rng.standard_normal(2) * 2
            # variables (y, z, s): assemble the epigraph region independently
            rows = []
            rhs = []
            zero = np.zeros((nf, n))
            rows += [np.hstack([F, zero, np.zeros((nf, 1))])]
            rhs += [np.zeros(nf)]
            rows += [np.hstack([F, zero, np.zeros((nf, 1))])]
            rhs += [F @ x]
            rows += [np.hstack([-F, F, np.zeros((nf, 1))])]
            rhs += [np.zeros(nf)]
            rows += [np.hstack([F, F, np.zeros((nf, 1))])]
            rhs += [np.zeros(nf)]
            eps = np.zeros((2 * n, 2 * n + 1))
            for i in range(n):
                eps[2 * i, n + i] = -1.0
                eps[2 * i, 2 * n] = 1.0
                eps[2 * i + 1, n + i] = 1.0
                eps[2 * i + 1, 2 * n] = 1.0
            rows += [eps]
            rhs += [np.zeros(2 * n)]
            verts = enumerate_vertices((np.vstack(rows), np.concatenate(rhs)))
            assert verts
            expected = min(float(v[-1]) for v in verts)
            assert p.value(x) == pytest.approx(max(0.0, expected), abs=1e-8)


class TestSublinearity:
    def test_subadditive_and_homogeneous(self, orthant2, diamond):
        # 500 random pairs per cone, split over four gauge variants
        rng = np.random.default_rng(108)
        variants = []
        for K in (orthant2, diamond):
            phi = K.dual_cone().generators.sum(axis=0)
            variants += [
                FunctionalGauge(K, phi),
                CanonicalHalfNorm(K, WeightedNorm.sup(2)),
                OrderUnitGauge(K, K.generators.sum(axis=0)),
                PositivePartNorm(K, WeightedNorm.sup(2)),
            ]
        for p in variants:
            for _ in range(125):
                x = rng.standard_normal(2) * 2
                y = rng.standard_normal(2) * 2
                lam = float(rng.uniform(0, 3))
                assert p.value(x + y) <= p.value(x) + p.value(y) + 1e-9
                assert p.value(lam * x) == pytest.approx(
                    lam * p.value(x), abs=1e-9 * (1 + lam)
                )

    def test_boundary_values(self, orthant2, diamond):
        # on the cone the gauge is the pairing; on its negative it vanishes
        rng = np.random.default_rng(109)
        for K in (orthant2, diamond):
            phi = K.dual_cone().generators.sum(axis=0)
            p = FunctionalGauge(K, phi)
            psi = CanonicalHalfNorm(K, WeightedNorm.sup(2))
            R = K.generators
            for _ in range(125):
                x = R.T @ rng.uniform(0, 2, K.dim)
                assert p.value(x) == pytest.approx(float(phi @ x), abs=1e-12)
                assert p.value(-x) == 0.0
                assert psi.value(-x) == 0.0

    def test_positive_part_invariance(self, orthant2, diamond):
        # the gauge never sees the negative part on lattice cones
        rng = np.random.default_rng(110)
        for K in (orthant2, diamond):
            phi = K.dual_cone().generators.T @ np.array([0.7, 1.3])
            p = FunctionalGauge(K, phi)
            for _ in range(250):
                x = rng.standard_normal(2) * 2
                assert p.value(K.positive_part(x)) == pytest.approx(
                    p.value(x), abs=1e-10
                )


class TestSubdifferentials:
    def test_functional_gauge_singleton(self, orthant2):
        p = FunctionalGauge(orthant2, [1, 1])
        desc = p.subdifferential([1, -2])
        verts = desc.vertices()
        assert len(verts) == 1
        assert verts[0] == pytest.approx([1, 0], abs=1e-9)

    def test_functional_gauge_at_zero_is_order_interval(self, orthant2):
        p = FunctionalGauge(orthant2, [1, 1])
        verts = {tuple(np.round(v, 9)) for v in p.subdifferential([0, 0]).vertices()}
        assert verts == {(0, 0), (0, 1), (1, 0), (1, 1)}

    def test_euclidean_singleton(self, orthant2):
        desc = EuclideanNorm(orthant2).subdifferential([1, 0])
        assert desc.kind == "singleton"
        assert desc.point == pytest.approx([1, 0])

    def test_euclidean_ball_at_zero(self, orthant2):
        desc = EuclideanNorm(orthant2).subdifferential([0, 0])
        assert desc.kind == "ball"
        val, point = desc.optimize([3, 4], "max")
        assert val == pytest.approx(5.0)
        assert point == pytest.approx([0.6, 0.8])

    def test_soundness(self, orthant2, diamond):
        # every vertex is dominated by the half-norm and exact at x
        rng = np.random.default_rng(111)
        for K in (orthant2, diamond):
            phi = K.dual_cone().generators.T @ np.array([1.0, 0.5])
            variants = [
                FunctionalGauge(K, phi),
                CanonicalHalfNorm(K, WeightedNorm.sup(2)),
                CanonicalHalfNorm(K, WeightedNorm.one(2)),
                OrderUnitGauge(K, K.generators.sum(axis=0)),
                PositivePartNorm(K, WeightedNorm.sup(2)),
            ]
            ys = rng.standard_normal((200, 2)) * 2
            for p in variants:
                for x in ([1.5, -0.5], [0.3, 0.1], [-1.0, 2.0]):
                    x = np.asarray(x, dtype=float)
                    val = p.value(x)
                    p_of_y = [p.value(y) for y in ys]
                    for u in p.subdifferential(x).vertices():
                        assert float(x @ u) == pytest.approx(val, abs=1e-9)
                        for y, py in zip(ys, p_of_y):
                            assert float(y @ u) <= py + 1e-9

    def test_dual_characterization_against_sampled_oracle(self, orthant2, diamond):
        """{u in K': phi - u in K'} must equal the sampled universal set.

        The sampled set uses only the definition: functionals dominated by
        the gauge at every probe direction.  Probes include the rays and
        their negatives plus random points; vertex sets must then agree.
        """
        rng = np.random.default_rng(112)
        cones = [orthant2, diamond, PolyCone.standard_orthant(3)]
        for K in cones:
            phi = K.dual_cone().generators.T @ rng.uniform(0.4, 1.6, K.facets.shape[0])
            p = FunctionalGauge(K, phi)
            probes = [g for g in K.generators] + [-g for g in K.generators]
            probes += [rng.standard_normal(K.dim) * 2 for _ in range(40)]
            G_rows = np.vstack([-np.asarray(y) for y in probes])
            h_rows = np.array([-p.value(y) for y in probes])
            sampled = enumerate_vertices((G_rows, h_rows))

            R = K.generators
            direct = enumerate_vertices(
                (
                    np.vstack([R, -R]),
                    np.concatenate([np.zeros(R.shape[0]), -(R @ phi)]),
                )
            )
            assert len(sampled) == len(direct)
            for v in direct:
                assert any(np.max(np.abs(v - w)) <= 1e-8 for w in sampled)


class TestOptimizeOverSubdiff:
    def test_singleton(self, orthant2):
        desc = EuclideanNorm(orthant2).subdifferential([1, 0])
        val, _ = desc.optimize([2, 2], "min")
        assert val == pytest.approx(2.0)

    def test_box_corner(self, orthant2):
        desc = FunctionalGauge(orthant2, [1, 1]).subdifferential([0, 0])
        val, point = desc.optimize([1, 1], "max")
        assert val == pytest.approx(2.0, abs=1e-9)
        assert point == pytest.approx([1, 1], abs=1e-9)

    def test_pairing_example(self, orthant2):
        desc = FunctionalGauge(orthant2, [1, 1]).subdifferential([1, -2])
        val, _ = desc.optimize([-1, -1], "min")
        assert val == pytest.approx(-1.0, abs=1e-9)

    def test_fast_pairing_agrees_with_description(self, orthant2, diamond):
        rng = np.random.default_rng(113)
        for K in (orthant2, diamond, PolyCone.standard_orthant(3)):
            phi = K.dual_cone().generators.T @ rng.uniform(0.3, 1.5, K.facets.shape[0])
            p = FunctionalGauge(K, phi)
            for _ in range(25):
                x = rng.standard_normal(K.dim) * 2
                c = rng.standard_normal(K.dim)
                for sense in ("min", "max"):
                    fast, _ = p.pairing_extremum(x, c, sense)
                    slow, _ = p.subdifferential(x).optimize(c, sense)
                    assert fast == pytest.approx(slow, abs=1e-8)
