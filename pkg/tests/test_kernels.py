import random

import pytest

from beauville_wreath import _kernels_py as py
from beauville_wreath import kernels

ck = pytest.importorskip("beauville_wreath._ckernels")

CASES = [(3, 3, False), (3, 3, True), (5, 5, True), (3, 9, True), (9, 3, False)]


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("q, r, quotient", CASES)
def test_mul_inv_agree(q, r, quotient):
    rng = random.Random(q * 100 + r)
    n = py.code_space(q, r, quotient)
    assert ck.code_space(q, r, quotient) == n
    for _ in range(500):
        a, b = rng.randrange(n), rng.randrange(n)
        assert ck.mul(q, r, quotient, a, b) == py.mul(q, r, quotient, a, b)
        assert ck.inv(q, r, quotient, a) == py.inv(q, r, quotient, a)
        assert py.mul(q, r, quotient, a, py.inv(q, r, quotient, a)) == 0


@pytest.mark.parametrize("q, r, quotient", CASES)
def test_coding_roundtrip(q, r, quotient):
    for c in range(min(py.code_space(q, r, quotient), 400)):
        v, s = py.decode(q, r, quotient, c)
        assert py.encode(q, r, quotient, v, s) == c


@pytest.mark.parametrize("q, r, quotient", CASES[:4])
def test_class_labels_agree(q, r, quotient):
    assert list(ck.class_labels(q, r, quotient)) == list(py.class_labels(q, r, quotient))


def test_closure_agrees():
    rng = random.Random(11)
    n = py.code_space(5, 5, True)
    for _ in range(50):
        gens = [rng.randrange(n), rng.randrange(n)]
        assert ck.closure_size(5, 5, True, gens, n) == py.closure_size(5, 5, True, gens, n)


def test_pure_python_fallback(monkeypatch):
    import importlib

    monkeypatch.setenv("BEAUVILLE_PURE_PYTHON", "1")
    fallback = importlib.reload(kernels)
    try:
        assert fallback.BACKEND == "python"
        assert fallback.mul is py.mul
    finally:
        monkeypatch.delenv("BEAUVILLE_PURE_PYTHON")
        importlib.reload(kernels)
