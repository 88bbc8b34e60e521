import os
import subprocess
import sys
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtq import _kernels_py, kernels
from rtq.qlaurent import multinomial_coeffs, t_pochhammer
from rtq.quiverforms import quiver_for
from rtq.tanglecore import TangleFraction

compiled = pytest.importorskip("rtq._kernels", reason="compiled kernels not built")

points = st.tuples(st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4))


def _half_turns_or_error(mod, pts):
    try:
        return mod.half_turns(pts)
    except ValueError:
        return "error"


@given(st.lists(points, min_size=2, max_size=12))
def test_half_turns_agree(pts):
    assert _half_turns_or_error(compiled, pts) == _half_turns_or_error(_kernels_py, pts)


def test_half_turn_examples():
    square = [(F(1), F(-1)), (F(1), F(1)), (F(-1), F(1)), (F(-1), F(-1)), (F(1), F(-1))]
    for mod in (compiled, _kernels_py):
        assert mod.half_turns(square) == 2
        assert mod.half_turns(square[::-1]) == -2
        with pytest.raises(ValueError):
            mod.half_turns([(F(-1), F(0)), (F(1), F(0))])


def _expand(mod, qd, j, homfly):
    K = qd.K
    extra = [tuple(t_pochhammer(k).items()) for k in range(j * max((0,) + K) + 1)]
    return mod.expand_compositions(j, qd.S, qd.A, qd.T, qd.Q, qd.active, K, multinomial_coeffs, extra, homfly)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["3/1", "5/2", "4/3", "7/4", "10/3", "2/5"]), st.integers(0, 3), st.booleans(), st.booleans())
def test_expansions_agree(text, j, red, homfly):
    qd = quiver_for(TangleFraction.parse(text), reduced=red)
    assert _expand(compiled, qd, j, homfly) == _expand(_kernels_py, qd, j, homfly)


def test_backend_selection():
    assert kernels.BACKEND == ("python" if os.environ.get("RTQ_PURE_PYTHON") else "cython")
    env = dict(os.environ, RTQ_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from rtq import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_half_turns_large_coordinates():
    # past the C integer range the compiled version uses object arithmetic
    big = F(3 ** 40, 7)
    square = [(big, -big), (big, big), (-big, big), (-big, -big), (big, -big)]
    assert compiled.half_turns(square) == _kernels_py.half_turns(square) == 2
    tiny = [(x / big, y / big) for x, y in square]
    assert compiled.half_turns(tiny) == 2
