import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wormhole_qm.errors import EmptyInterval, InvalidShape
from wormhole_qm.geometry import (ShapeFunction, eval_shape, lame_coefficients, lorentzian_throat,
                                  radial_factor, stretch_extrema)

from conftest import all_shapes, builtin_shapes


def test_gaussian_at_throat(gaussian1):
    assert eval_shape(gaussian1, 0.0) == (1.0, 0.0, -2.0)


def test_constant_triple():
    assert eval_shape(ShapeFunction.constant(1.0), 3.7) == (1.0, 0.0, 0.0)


def test_gaussian_at_unit_distance(gaussian1):
    b, bp, bpp = eval_shape(gaussian1, 1.0)
    e = math.exp(-1.0)
    assert b == pytest.approx(e, rel=1e-15)
    assert bp == pytest.approx(-2 * e, rel=1e-15)
    assert bpp == pytest.approx(2 * e, rel=1e-15)
    # independent route: central differences of b alone
    h = 1e-5
    fd1 = (gaussian1.b0 * math.exp(-(1 + h) ** 2) - gaussian1.b0 * math.exp(-(1 - h) ** 2)) / (2 * h)
    fd2 = (math.exp(-(1 + h) ** 2) - 2 * e + math.exp(-(1 - h) ** 2)) / h**2
    assert bp == pytest.approx(fd1, rel=1e-9)
    assert bpp == pytest.approx(fd2, rel=1e-5)


@pytest.mark.parametrize("b0", [0.0, -1.0, float("nan")])
@pytest.mark.parametrize("ctor", [ShapeFunction.constant, ShapeFunction.gaussian])
def test_invalid_b0(ctor, b0):
    with pytest.raises(InvalidShape):
        ctor(b0)


def test_radial_factor_examples(gaussian1):
    assert radial_factor(gaussian1, 0.0).f == 1.0
    assert radial_factor(ShapeFunction.zero(), 2.0).f == 2.0
    # Custom wrapper of the same formula is a second evaluation path
    wrapped = ShapeFunction.custom(lambda l: np.exp(-l * l), lambda l: -2 * l * np.exp(-l * l),
                                   lambda l: (4 * l * l - 2) * np.exp(-l * l), name="wrapped")
    direct = radial_factor(gaussian1, 0.5).fsq
    assert direct == pytest.approx(0.856530659712633, rel=1e-14)
    assert radial_factor(wrapped, 0.5).fsq == pytest.approx(direct, rel=1e-15)


def test_flat_limit():
    l = np.linspace(-5, 5, 101)
    theta = np.linspace(0.01, math.pi - 0.01, 101)
    z = ShapeFunction.zero()
    assert np.array_equal(radial_factor(z, l).f, np.abs(l))
    lc = lame_coefficients(z, l, theta)
    assert np.array_equal(lc.h_theta, np.abs(l))
    np.testing.assert_allclose(lc.g, l**4 * np.sin(theta) ** 2, rtol=1e-15, atol=0)


def test_lame_examples(gaussian1):
    assert tuple(lame_coefficients(ShapeFunction.constant(1.0), 0.0, math.pi / 2)) == (1.0, 1.0, 1.0, 1.0)
    assert tuple(lame_coefficients(ShapeFunction.zero(), 2.0, math.pi / 2)) == (1.0, 2.0, 2.0, 16.0)
    lc = lame_coefficients(gaussian1, 1.0, math.pi / 4)
    assert lc.h_theta == pytest.approx(1.06552113223371, rel=1e-14)
    assert lc.h_phi == pytest.approx(lc.h_theta / math.sqrt(2), rel=1e-15)
    assert lc.g == pytest.approx((lc.h_l * lc.h_theta * lc.h_phi) ** 2, rel=1e-14)


def test_lame_poles_are_exact_zeros(gaussian1):
    for theta in (0.0, math.pi):
        lc = lame_coefficients(gaussian1, 0.3, theta)
        assert lc.h_phi == 0.0 and lc.g == 0.0


def test_metric_determinant_identity_random():
    rng = np.random.default_rng(7)
    l = rng.uniform(-10, 10, 10**6)
    theta = rng.uniform(0, math.pi, 10**6)
    for sf in (ShapeFunction.gaussian(1.0), ShapeFunction.constant(2.0), lorentzian_throat(1.0)):
        lc = lame_coefficients(sf, l, theta)
        prod = (lc.h_l * lc.h_theta * lc.h_phi) ** 2
        np.testing.assert_allclose(lc.g, prod, rtol=1e-12, atol=0)


@pytest.mark.parametrize("sf", [ShapeFunction.gaussian(0.5), ShapeFunction.gaussian(1.0),
                                ShapeFunction.gaussian(2.0), lorentzian_throat(1.0)],
                         ids=lambda s: s.descriptor)
def test_derivatives_second_order(sf):
    l = np.linspace(-3, 3, 61) * sf.b0

    def discrepancy(h):
        b = lambda x: eval_shape(sf, x)[0]
        _, bp, bpp = eval_shape(sf, l)
        d1 = np.max(np.abs((b(l + h) - b(l - h)) / (2 * h) - bp))
        d2 = np.max(np.abs((b(l + h) - 2 * b(l) + b(l - h)) / h**2 - bpp))
        return d1, d2

    h = 1e-2 * sf.b0
    (a1, a2), (c1, c2) = discrepancy(h), discrepancy(h / 2)
    assert 3.5 <= a1 / c1 <= 4.5
    assert 3.5 <= a2 / c2 <= 4.5


@pytest.mark.parametrize("sf", [ShapeFunction.zero(), ShapeFunction.constant(1.3)], ids=lambda s: s.descriptor)
def test_flat_derivatives_vanish(sf):
    l = np.linspace(-4, 4, 33)
    _, bp, bpp = eval_shape(sf, l)
    assert not bp.any() and not bpp.any()


@pytest.mark.parametrize("sf", builtin_shapes(), ids=lambda s: s.descriptor)
def test_parity(sf):
    l = np.linspace(0, 6, 301)
    b, bp, _ = eval_shape(sf, l)
    bm, bpm, _ = eval_shape(sf, -l)
    assert np.array_equal(b, bm)
    assert np.array_equal(bp, -bpm)
    assert np.array_equal(radial_factor(sf, l).f, radial_factor(sf, -l).f)


@settings(max_examples=200, deadline=None)
@given(b0=st.floats(0.1, 10.0), l=st.floats(-50.0, 50.0))
def test_gaussian_pointwise(b0, l):
    b, bp, bpp = eval_shape(ShapeFunction.gaussian(b0), l)
    assert b == pytest.approx(b0 * math.exp(-l * l / b0**2), rel=1e-14, abs=1e-300)
    assert bp == pytest.approx(-2 * l / b0**2 * b, rel=1e-14, abs=1e-300)
    geo = radial_factor(ShapeFunction.gaussian(b0), l)
    assert geo.fsq == pytest.approx(b * b + l * l, rel=1e-15)
    assert geo.f > 0


def test_custom_inconsistent_rejected():
    with pytest.raises(InvalidShape):
        ShapeFunction.custom(lambda l: np.exp(-l * l), lambda l: -l * np.exp(-l * l),
                             lambda l: (4 * l * l - 2) * np.exp(-l * l))
    with pytest.raises(InvalidShape):
        ShapeFunction.custom(lambda l: np.exp(-l * l), lambda l: -2 * l * np.exp(-l * l),
                             lambda l: np.zeros_like(l))


def test_custom_negative_rejected():
    with pytest.raises(InvalidShape):
        ShapeFunction.custom(lambda l: l - 10.0, lambda l: np.ones_like(l), lambda l: np.zeros_like(l))


def test_custom_consistent_accepted():
    sf = lorentzian_throat(1.5)
    assert sf.kind == "custom"
    assert eval_shape(sf, 0.0)[0] == 1.5


def test_shape_is_immutable(gaussian1):
    with pytest.raises(AttributeError):
        gaussian1.b0 = 2.0


class TestStretchExtrema:
    def test_gaussian(self, gaussian1):
        ext = stretch_extrema(gaussian1)
        assert [e.kind for e in ext] == ["min", "max", "min"]
        lstar = math.sqrt(math.log(2) / 2)
        assert ext[1].l == 0.0 and ext[1].f == 1.0
        for e, sign in ((ext[0], -1), (ext[2], 1)):
            assert e.l == pytest.approx(sign * lstar, abs=1e-12)
            assert e.f == pytest.approx(math.sqrt(0.5 + math.log(2) / 2), abs=1e-12)

    def test_constant_single_minimum(self):
        ext = stretch_extrema(ShapeFunction.constant(1.0))
        assert len(ext) == 1 and ext[0].l == 0.0 and ext[0].kind == "min"

    @pytest.mark.parametrize("b0", [0.5, 2.0, 3.0])
    def test_gaussian_scaling(self, b0):
        ext = stretch_extrema(ShapeFunction.gaussian(b0))
        mins = [e for e in ext if e.kind == "min"]
        assert [e.l for e in mins] == pytest.approx([-b0 * math.sqrt(math.log(2) / 2),
                                                     b0 * math.sqrt(math.log(2) / 2)], abs=1e-12)

    def test_asymmetric_custom(self):
        # b = exp(-(l-1)^2): throat bump off the origin; scan the whole signed interval
        sf = ShapeFunction.custom(lambda l: np.exp(-(l - 1) ** 2),
                                  lambda l: -2 * (l - 1) * np.exp(-(l - 1) ** 2),
                                  lambda l: (4 * (l - 1) ** 2 - 2) * np.exp(-(l - 1) ** 2), name="shifted")
        ext = stretch_extrema(sf, (-4, 4))
        for e in ext:
            b, bp, _ = eval_shape(sf, e.l)
            assert abs(b * bp + e.l) < 1e-12

    @pytest.mark.parametrize("interval", [(1.0, 1.0), (2.0, -2.0)])
    def test_empty_interval(self, gaussian1, interval):
        with pytest.raises(EmptyInterval):
            stretch_extrema(gaussian1, interval)
