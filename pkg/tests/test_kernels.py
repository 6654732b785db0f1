import os
import subprocess
import sys
from fractions import Fraction as F

import pytest

from crosm import BlockParams, ComplexProjective, Sphere, build_model, metric_from_blocks
from crosm import _kernels_py as py
from crosm import kernels

ckernels = pytest.importorskip("crosm._ckernels")


def _inputs(model, params, mode):
    g = metric_from_blocks(model, params, mode=mode)
    C, H, adh = g.tables
    G = [list(r) for r in g.gram]
    Ginv = [list(r) for r in g.ginv]
    half = F(1, 2) if g.exact else 0.5
    return C, H, adh, G, Ginv, half


def _close(a, b, tol=1e-10):
    if isinstance(a, list):
        return len(a) == len(b) and all(_close(x, y, tol) for x, y in zip(a, b))
    return abs(a - b) <= tol


@pytest.mark.parametrize("model,params", [
    (build_model(Sphere(3)), BlockParams(0.7, 1.3, 2.1)),
    (build_model(ComplexProjective(2)), BlockParams(1.5, 0.8, 1.1, 0.6, 0.9, a_0eps=0.2, c_eps=-0.1)),
])
def test_float_kernels_agree(model, params):
    C, H, adh, G, Ginv, half = _inputs(model, params, "float")
    U1, A1 = py.connection(C, G, Ginv, half)
    U2, A2 = ckernels.connection(C, G, Ginv, half)
    assert _close(U1, U2) and _close(A1, A2)
    R1 = py.curvature_ops(C, H, adh, A1)
    R2 = ckernels.curvature_ops(C, H, adh, A1)
    assert _close(R1, R2)
    assert _close(py.lower(R1, G), ckernels.lower(R1, G))
    assert _close(py.ricci(R1), ckernels.ricci(R1))


def test_exact_inputs_are_delegated_and_stay_exact():
    C, H, adh, G, Ginv, half = _inputs(build_model(Sphere(3)), BlockParams(F(1, 3), 2, F(5, 4)), "exact")
    U1, A1 = py.connection(C, G, Ginv, half)
    U2, A2 = ckernels.connection(C, G, Ginv, half)
    assert (U1, A1) == (U2, A2)
    R = ckernels.curvature_ops(C, H, adh, A2)
    assert R == py.curvature_ops(C, H, adh, A1)
    assert all(isinstance(x, F) for x in ckernels.ricci(R)[0])


def test_backend_selected_at_import():
    assert kernels.BACKEND in ("cython", "python")
    env = dict(os.environ, CROSM_KERNELS="python")
    out = subprocess.run([sys.executable, "-c", "import crosm; print(crosm.KERNEL_BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
