import math
import os
import random
import subprocess
import sys

import pytest

from minifix._kernels import BACKEND_NAME, USING_COMPILED, pure
from minifix.embed import pacv_distance, program_pacv
from minifix.embed.ted import _flatten
from minifix.randprog import random_program, random_tree

try:
    from minifix._kernels import _speedups
except ImportError:
    _speedups = None

needs_compiled = pytest.mark.skipif(_speedups is None,
                                    reason="compiled extension unavailable")


@needs_compiled
def test_ted_backends_agree():
    rng = random.Random(7)
    for _ in range(120):
        a = random_tree(rng, rng.randint(1, 15))
        b = random_tree(rng, rng.randint(1, 15))
        intern = {}
        fa = _flatten(a, intern)
        fb = _flatten(b, intern)
        assert _speedups.ted_dist(*fa, *fb) == pure.ted_dist(*fa, *fb)


@needs_compiled
def test_pacv_backends_agree():
    rng = random.Random(8)
    for _ in range(80):
        a = program_pacv(random_program(rng), 1)
        b = program_pacv(random_program(rng), 1)
        pa, pb = a.packed(), b.packed()
        got = _speedups.pacv_sq_dist(*pa, *pb)
        want = pure.pacv_sq_dist(*pa, *pb)
        assert math.isclose(got, want, rel_tol=0, abs_tol=1e-9)


def test_pacv_distance_agrees_with_direct_definition():
    # independent re-evaluation of the sort/pad/sum-of-squares definition
    rng = random.Random(9)
    for _ in range(40):
        a = program_pacv(random_program(rng), 1)
        b = program_pacv(random_program(rng), 1)
        total = 0.0
        for key in set(a.heights) | set(b.heights):
            ha = sorted(a.heights.get(key, ()), reverse=True)
            hb = sorted(b.heights.get(key, ()), reverse=True)
            width = max(len(ha), len(hb))
            ha = ha + [0] * (width - len(ha))
            hb = hb + [0] * (width - len(hb))
            total += sum((x - y) ** 2 for x, y in zip(ha, hb))
        assert math.isclose(pacv_distance(a, b), math.sqrt(total), abs_tol=1e-9)


def test_env_override_selects_pure_backend():
    code = "import minifix._kernels as k; print(k.BACKEND_NAME)"
    env = dict(os.environ, MINIFIX_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env=env, check=True)
    assert out.stdout.strip() == "pure"


def test_backend_name_is_consistent():
    assert BACKEND_NAME in ("pure", "compiled")
    assert USING_COMPILED == (BACKEND_NAME == "compiled")
