import os
import subprocess
import sys

import numpy as np
import pytest

from fionuclear import ParameterDomainError
from fionuclear.backend import active_backend, active_backend_name, get_backend

compiled = pytest.importorskip(
    "fionuclear._osckernels", reason="compiled extension not built"
)
python_backend = get_backend("python")


def _case(n, seed):
    rng = np.random.default_rng(seed)
    phi = rng.uniform(-np.pi, np.pi, size=(n, n))
    amp = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    vec = rng.normal(size=n) + 1j * rng.normal(size=n)
    xi = np.linspace(-2.0, 2.0, n)
    x = np.linspace(-1.0, 1.0, n)
    return phi, amp, vec, x, xi


class TestAgreement:
    """The compiled loops must be bit-compatible replacements for numpy."""

    @pytest.mark.parametrize("n", [8, 33, 64])
    def test_dft_sum(self, n):
        phi, amp, vec, x, xi = _case(n, n)
        for sign in (-1.0, 1.0):
            a = compiled.dft_sum(vec, xi, x, sign, 0.125)
            b = python_backend.dft_sum(vec, xi, x, sign, 0.125)
            assert np.max(np.abs(a - b)) < 1e-12

    @pytest.mark.parametrize("n", [8, 33, 64])
    def test_oscillatory_apply(self, n):
        phi, amp, vec, x, xi = _case(n, n + 1)
        a = compiled.oscillatory_apply(phi, amp, vec, 0.25)
        b = python_backend.oscillatory_apply(phi, amp, vec, 0.25)
        assert np.max(np.abs(a - b)) < 1e-12

    @pytest.mark.parametrize("n", [8, 33, 64])
    def test_assemble_kernel(self, n):
        phi, amp, vec, x, xi = _case(n, n + 2)
        a = compiled.assemble_kernel(phi, amp, xi, x, 0.5)
        b = python_backend.assemble_kernel(phi, amp, xi, x, 0.5)
        assert np.max(np.abs(a - b)) < 1e-12

    @pytest.mark.parametrize("n", [8, 33, 64])
    def test_trace_double_sum(self, n):
        phi, amp, vec, x, xi = _case(n, n + 3)
        a = compiled.trace_double_sum(phi, amp, x, xi, 0.0625)
        b = python_backend.trace_double_sum(phi, amp, x, xi, 0.0625)
        assert abs(a - b) < 1e-12

    def test_read_only_inputs_are_accepted(self):
        phi, amp, vec, x, xi = _case(16, 5)
        for arr in (phi, amp, vec, x, xi):
            arr.flags.writeable = False
        compiled.oscillatory_apply(phi, amp, vec, 1.0)
        compiled.dft_sum(vec, xi, x, -1.0, 1.0)
        compiled.assemble_kernel(phi, amp, xi, x, 1.0)
        compiled.trace_double_sum(phi, amp, x, xi, 1.0)


class TestSelection:
    def test_names(self):
        assert compiled.NAME == "compiled"
        assert python_backend.NAME == "python"

    def test_get_backend_choices(self):
        assert get_backend("python") is python_backend
        assert get_backend("compiled") is compiled
        assert get_backend("auto") is compiled  # extension is available here

    def test_unknown_choice_rejected(self):
        with pytest.raises(ParameterDomainError):
            get_backend("fortran")

    def test_active_backend_consistency(self):
        assert active_backend().NAME == active_backend_name()

    @pytest.mark.parametrize("choice", ["python", "compiled"])
    def test_environment_selection(self, choice):
        env = dict(os.environ, FIO_NUCLEAR_BACKEND=choice)
        out = subprocess.run(
            [sys.executable, "-c", "import fionuclear.backend as b; print(b.active_backend_name())"],
            capture_output=True, text=True, env=env, check=True,
        )
        assert out.stdout.strip() == choice

    def test_environment_rejects_unknown(self):
        env = dict(os.environ, FIO_NUCLEAR_BACKEND="fortran")
        out = subprocess.run(
            [sys.executable, "-c", "import fionuclear.backend"],
            capture_output=True, text=True, env=env,
        )
        assert out.returncode != 0
        assert "unknown backend" in out.stderr
