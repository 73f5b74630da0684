import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import trapezoid

from wormhole_qm.errors import SingularPoint
from wormhole_qm.geometry import ShapeFunction, lorentzian_throat
from wormhole_qm.grid import Grid
from wormhole_qm.operator import (TestFunction, ansatz_residual, compact_bump, finite_difference_function,
                                  gaussian_packet, radial_laplacian_apply, reduced_apply)

from conftest import all_shapes

TEST_FUNCTIONS = [gaussian_packet(0.0, 1.0), gaussian_packet(0.3, 1.0), gaussian_packet(-0.8, 0.6),
                  gaussian_packet(1.2, 1.5, 0.7), compact_bump(0.2, 1.5)]


def areal_radius_function():
    f = lambda l: np.sqrt(1.0 + l * l)
    return TestFunction(f, lambda l: l / f(l), lambda l: 1.0 / f(l) ** 3)


class TestTestFunctions:
    @pytest.mark.parametrize("tf", TEST_FUNCTIONS, ids=range(5))
    def test_triples_second_order(self, tf):
        l = np.linspace(-1.0, 1.0, 41)
        errs = []
        for h in (1e-2, 5e-3):
            fd = finite_difference_function(tf.phi, h)
            errs.append(max(np.max(np.abs(fd.dphi(l) - tf.dphi(l))), np.max(np.abs(fd.d2phi(l) - tf.d2phi(l)))))
        assert 3.5 <= errs[0] / errs[1] <= 4.5

    @pytest.mark.parametrize("tf", TEST_FUNCTIONS, ids=range(5))
    def test_decay_outside_support(self, tf):
        lo, hi = tf.support
        outside = np.concatenate([np.linspace(lo - 5, lo, 50), np.linspace(hi, hi + 5, 50)])
        assert np.max(np.abs(tf.phi(outside))) < 1e-12

    def test_bump_is_compact(self):
        tf = compact_bump(0.0, 1.0)
        assert tf.phi(1.0) == 0.0 and tf.phi(-2.0) == 0.0 and tf.phi(0.0) == 1.0


class TestLaplacian:
    def test_origin_constant_throat(self, constant1):
        # psi = exp(-l^2)/sqrt(1+l^2) = 1 - 3/2 l^2 + ..., and the first-derivative term vanishes at 0
        assert radial_laplacian_apply(constant1, gaussian_packet(), 0.0) == pytest.approx(-3.0, rel=1e-14)

    def test_constant_wave(self, constant1):
        l = np.linspace(-5, 5, 101)
        assert np.max(np.abs(radial_laplacian_apply(constant1, areal_radius_function(), l))) < 1e-14

    def test_singular(self):
        with pytest.raises(SingularPoint):
            radial_laplacian_apply(ShapeFunction.zero(), gaussian_packet(), 0.0)

    def test_gaussian_cross_module(self, gaussian1):
        tf = gaussian_packet()
        f = np.sqrt(np.exp(-2 * 0.49) + 0.49)
        lhs = -f * radial_laplacian_apply(gaussian1, tf, 0.7)
        assert lhs == pytest.approx(reduced_apply(gaussian1, tf, 0.7, 0), abs=1e-10)


class TestReduced:
    def test_zero_function(self, gaussian1):
        zero = TestFunction(np.zeros_like, np.zeros_like, np.zeros_like)
        assert reduced_apply(gaussian1, zero, np.linspace(-3, 3, 7), 2).tolist() == [0.0] * 7

    def test_examples(self, gaussian1, constant1):
        assert reduced_apply(gaussian1, gaussian_packet(), 0.0, 0) == 1.0
        assert reduced_apply(constant1, gaussian_packet(), 0.0, 1) == 5.0

    @settings(max_examples=50, deadline=None)
    @given(a=st.floats(-10, 10), c1=st.floats(-2, 2), c2=st.floats(-2, 2), L=st.integers(0, 4))
    def test_linearity(self, a, c1, c2, L):
        sf = ShapeFunction.gaussian(1.0)
        t1, t2 = gaussian_packet(c1, 0.8), gaussian_packet(c2, 1.3)
        l = np.linspace(-4, 4, 81)
        combo = reduced_apply(sf, a * t1 + t2, l, L)
        parts = a * reduced_apply(sf, t1, l, L) + reduced_apply(sf, t2, l, L)
        scale = max(1.0, np.max(np.abs(parts)))
        assert np.max(np.abs(combo - parts)) < 1e-12 * scale

    def test_symmetric(self, gaussian1):
        t1, t2 = compact_bump(-0.4, 2.0), compact_bump(0.5, 1.7)
        errs = []
        for n in (2001, 4001):
            l = Grid(3.0, n).nodes
            a = trapezoid(t1.phi(l) * reduced_apply(gaussian1, t2, l, 1), l)
            b = trapezoid(reduced_apply(gaussian1, t1, l, 1) * t2.phi(l), l)
            errs.append(abs(a - b))
        assert errs[0] < 1e-6 and errs[1] < 1e-6


class TestAnsatz:
    @pytest.mark.parametrize("sf", all_shapes(), ids=lambda s: s.descriptor)
    @pytest.mark.parametrize("tf", TEST_FUNCTIONS, ids=range(5))
    def test_exact_identity(self, sf, tf):
        assert ansatz_residual(sf, tf, Grid(4.0, 801)) < 1e-10

    @pytest.mark.parametrize("L", [1, 2, 5])
    def test_with_angular_momentum(self, gaussian1, L):
        assert ansatz_residual(gaussian1, gaussian_packet(0.3, 1.0), Grid(4.0, 801), L) < 1e-10

    def test_examples(self, constant1, gaussian1):
        grid = Grid(4.0, 801)
        assert ansatz_residual(constant1, gaussian_packet(), grid) < 1e-10
        assert ansatz_residual(gaussian1, gaussian_packet(0.3, 1.0), grid) < 1e-10

    def test_finite_difference_convergence(self, gaussian1):
        grid = Grid(4.0, 801)
        tf = gaussian_packet(0.3, 1.0)
        r1 = ansatz_residual(gaussian1, tf, grid, fd_step=1e-2)
        r2 = ansatz_residual(gaussian1, tf, grid, fd_step=5e-3)
        assert r1 > 1e-8
        assert 3.5 <= r1 / r2 <= 4.5
