import numpy as np
import pytest

from wormhole_qm.geometry import ShapeFunction, lorentzian_throat


@pytest.fixture
def gaussian1():
    return ShapeFunction.gaussian(1.0)


@pytest.fixture
def constant1():
    return ShapeFunction.constant(1.0)


def builtin_shapes():
    return [ShapeFunction.constant(0.5), ShapeFunction.constant(1.0), ShapeFunction.constant(2.0),
            ShapeFunction.gaussian(0.5), ShapeFunction.gaussian(1.0), ShapeFunction.gaussian(2.0)]


def all_shapes():
    return builtin_shapes() + [lorentzian_throat(1.0), lorentzian_throat(2.0)]


def free(l):
    return np.zeros_like(l)


def harmonic(l):
    return l * l


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.VERDICTS):
        terminalreporter.write_line(mod.VERDICTS[key])
