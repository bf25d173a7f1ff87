import importlib
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from conftest import raw_codes
from jcalc import _kernels, _pykernels

core = pytest.importorskip("jcalc._core", reason="compiled extension not built")


@given(raw_codes(4, 60))
def test_reduce_agrees(code):
    assert tuple(core.reduce_code(code)) == tuple(_pykernels.reduce_code(code))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), raw_codes(n, 30))), st.integers(0, 5))
def test_magnus_dense_agrees(args, bound):
    n, code = args
    code = _pykernels.reduce_code(code)
    a = [list(r) for r in core.magnus_dense(code, n, bound)]
    b = [list(r) for r in _pykernels.magnus_dense(code, n, bound)]
    assert a == b


def test_large_coefficients_fall_back_to_python():
    code = (-1,) * 200
    assert _kernels.magnus_dense(code, 1, 40) == _pykernels.magnus_dense(code, 1, 40)
    assert _pykernels.magnus_dense(code, 1, 40)[40][0] > 2**63


def test_coefficient_bound_is_tight():
    # x1^-7 has degree-3 coefficient -C(9, 3): the multiset count the bound uses
    code = (-1,) * 7
    assert abs(_pykernels.magnus_dense(code, 1, 3)[3][0]) == _pykernels.coefficient_bound(7, 3)


def test_backend_selection_env():
    out = subprocess.run([sys.executable, "-c", "import jcalc; print(jcalc.BACKEND)"],
                         env={"JCALC_PURE": "1", "PATH": ""}, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert importlib.import_module("jcalc").BACKEND in ("cython", "python")
