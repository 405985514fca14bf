import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappamink import _pykernels, kernels, series
from kappamink.hopf import xi_series
from kappamink.scalar import to_q

try:
    from kappamink import _kernels
except ImportError:  # pure-Python install
    _kernels = None

needs_compiled = pytest.mark.skipif(_kernels is None, reason="compiled kernels not built")


def _rand_dict(rnd, n):
    return {rnd.randrange(0, 1 << 20): to_q(rnd.randint(-5, 5)) / rnd.randint(1, 4) for _ in range(n)}


def test_backend_reported():
    assert kernels.BACKEND in ("python", "cython")
    if _kernels is not None:
        assert kernels.BACKEND == "cython"


@needs_compiled
@settings(max_examples=100)
@given(st.integers(0, 10 ** 6), st.booleans())
def test_mul_into_agrees(seed, negate):
    rnd = random.Random(seed)
    a, b, base = _rand_dict(rnd, 6), _rand_dict(rnd, 6), _rand_dict(rnd, 4)
    out_py, out_cy = dict(base), dict(base)
    _pykernels.mul_into(out_py, a, b, negate, 0, 40, -1)
    _kernels.mul_into(out_cy, a, b, negate, 0, 40, -1)
    assert out_py == out_cy
    assert all(out_py.values())


@needs_compiled
@settings(max_examples=100)
@given(st.integers(0, 10 ** 6), st.booleans())
def test_add_into_agrees(seed, negate):
    rnd = random.Random(seed)
    a, base = _rand_dict(rnd, 6), _rand_dict(rnd, 6)
    base.update({k: v if negate else -v for k, v in list(a.items())[:2]})
    out_py, out_cy = dict(base), dict(base)
    _pykernels.add_into(out_py, a, negate)
    _kernels.add_into(out_cy, a, negate)
    assert out_py == out_cy


@needs_compiled
def test_series_results_independent_of_backend(monkeypatch):
    def work():
        xi, xinv = xi_series(6)
        return (xi * xi * xinv).sqrt() * xinv

    monkeypatch.setattr(series, "kernels", _pykernels)
    ref = work()
    monkeypatch.setattr(series, "kernels", _kernels)
    assert work() == ref
