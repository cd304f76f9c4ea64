"""Compiled core against the pure-Python reference core."""

import math
import subprocess
import sys

import pytest

from berglab import _pycore
from berglab.weights import parse_weight

fastcore = pytest.importorskip("berglab._fastcore")


class TestNodeTables:
    def test_identical_constants(self):
        assert fastcore.node_table() == _pycore.node_table()

    def test_weights_sum_to_two(self):
        total_k = sum(wk for _, wk, _ in _pycore.node_table())
        total_g = sum(wg for _, _, wg in _pycore.node_table())
        assert total_k == pytest.approx(2.0, abs=1e-14)
        assert total_g == pytest.approx(2.0, abs=1e-14)


MOMENT_CASES = [
    ("power:1", 0, 0.0),
    ("power:1", 7, 5.0),
    ("power:1", 401, 160.0),
    ("power:1", 3000, 1000.0),
    ("poly:1,0,-1", 12, 40.0),
    ("power:1*poly:1,0.5", 9, 11.0),
    ("exp:1", 4, 2.0),
    ("exp:0.5*exp:0.25", 6, 8.0),
]


class TestMomentAgreement:
    @pytest.mark.parametrize("spec_text,k,alpha", MOMENT_CASES)
    def test_log_values_match(self, spec_text, k, alpha):
        profile = parse_weight(spec_text)
        codes, offs, params = profile.descriptor()
        infinite = math.isinf(profile.support_radius)
        if infinite and alpha <= 0.0:
            pytest.skip("full space needs alpha > 0")
        fast = fastcore.moment_log(codes, offs, params, infinite, k, alpha, 1e-12, 1e-300, 40)
        slow = _pycore.moment_log(codes, offs, params, infinite, k, alpha, 1e-12, 1e-300, 40)
        assert fast[2] and slow[2]
        assert fast[0] == pytest.approx(slow[0], abs=1e-12)

    def test_table_batch(self):
        profile = parse_weight("poly:1,0,-1")
        codes, offs, params = profile.descriptor()
        ks = list(range(0, 40, 3))
        fast = fastcore.moment_table_log(codes, offs, params, False, ks, 20.0, 1e-12, 1e-300, 40)
        slow = _pycore.moment_table_log(codes, offs, params, False, ks, 20.0, 1e-12, 1e-300, 40)
        for f, s in zip(fast, slow):
            assert f[0] == pytest.approx(s[0], abs=1e-12)


class TestTransformAgreement:
    @pytest.mark.parametrize(
        "spec_text,alpha,t",
        [
            ("vert-power:1", 1.0, 0.5),
            ("vert-power:2", 3.0, 2.0),
            ("vert-expdecay", 5.0, 0.3),
            ("vert-power:1*vert-invpow:1", 160.0, 3.0),
        ],
    )
    def test_laplace(self, spec_text, alpha, t):
        profile = parse_weight(spec_text)
        codes, offs, params = profile.descriptor()
        fast = fastcore.vlaplace_log(codes, offs, params, alpha, t, 1e-12, 1e-300, 40)
        slow = _pycore.vlaplace_log(codes, offs, params, alpha, t, 1e-12, 1e-300, 40)
        assert fast[0] == pytest.approx(slow[0], abs=1e-12)

    @pytest.mark.parametrize("closed", [True, False])
    def test_halfline(self, closed):
        profile = parse_weight("vert-power:1")
        codes, offs, params = profile.descriptor()
        pc = (1.0, 0.0) if closed else None
        fast = fastcore.halfline_log(codes, offs, params, 1.0, 1.0, 1.0, pc, 1e-11, 1e-300, 40)
        slow = _pycore.halfline_log(codes, offs, params, 1.0, 1.0, 1.0, pc, 1e-11, 1e-300, 40)
        assert fast[2] and fast[3]
        assert fast[0] == pytest.approx(slow[0], abs=1e-12)


class TestBackendSelection:
    def test_default_prefers_compiled(self):
        import berglab

        assert berglab.BACKEND_NAME == "compiled"

    def test_env_forces_python(self):
        out = subprocess.run(
            [sys.executable, "-c", "import berglab; print(berglab.BACKEND_NAME)"],
            env={"PATH": "/usr/bin:/bin", "BERGLAB_BACKEND": "python"},
            capture_output=True,
            text=True,
        )
        assert out.stdout.strip() == "python"

    def test_descriptor_size_guard(self):
        codes = tuple([0] * 64)
        offs = tuple(range(0, 128, 2))
        params = tuple([1.0] * 128)
        with pytest.raises(ValueError):
            fastcore.moment_log(codes, offs, params, False, 0, 1.0, 1e-12, 1e-300, 40)
