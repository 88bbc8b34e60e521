import pytest

from rtq.qlaurent import LaurentPoly3
from rtq.skeinoracle import WebLabel, WebPoly, poincare, specialize_t, twist_apply, twist_image
from rtq.tanglecore import Orientation, TangleFraction, continued_fraction, coprime_fractions, state_of

UP, OP, RI = Orientation.UP, Orientation.OP, Orientation.RI


def mono(c=1, q=0, a=0, t=0):
    return LaurentPoly3.monomial(c, q=q, a=a, t=t)


def web(orientation, j, coeffs):
    return WebPoly(orientation, j, coeffs)


def test_single_top_twist():
    w = twist_apply("T", WebPoly.basis(UP, 1, 0))
    assert w == web(UP, 1, {0: mono(), 1: mono(q=1, t=-1)})


def test_trefoil_like_display():
    want = web(UP, 1, {0: mono(), 1: mono(q=5, t=-3) + mono(q=3, t=-2) + mono(q=1, t=-1)})
    assert poincare(TangleFraction(3, 1), 1) == want
    at_minus_one = web(UP, 1, {0: mono(), 1: mono(-1, q=5) + mono(q=3) + mono(-1, q=1)})
    assert specialize_t(want) == at_minus_one


def test_two_one():
    w = poincare(TangleFraction(2, 1), 1)
    assert w == web(UP, 1, {0: mono(), 1: mono(q=3, t=-2) + mono(q=1, t=-1)})
    assert specialize_t(w) == web(UP, 1, {0: mono(), 1: mono(q=3) + mono(-1, q=1)})


@pytest.mark.parametrize("j", range(4))
def test_trivial_tangle(j):
    assert poincare(TangleFraction(0, 1), j) == WebPoly.basis(UP, j, 0)
    assert specialize_t(WebPoly.basis(UP, j, 0)) == WebPoly.basis(UP, j, 0)


@pytest.mark.parametrize("j", range(4))
def test_right_twist_on_lowest_weight(j):
    w = twist_apply("R", WebPoly.basis(UP, j, 0))
    assert w == WebPoly.basis(OP, j, 0)


def test_orientation_changes():
    assert twist_image("T", OP, 2, 1)[0] is RI
    assert twist_image("T", RI, 2, 1)[0] is OP
    assert twist_image("R", RI, 2, 1)[0] is RI
    with pytest.raises(ValueError):
        twist_image("X", UP, 1, 0)


def test_weight_bounds():
    with pytest.raises(ValueError):
        WebLabel(UP, 2, 3)
    with pytest.raises(ValueError):
        WebPoly(UP, 1, {2: mono()})
    assert str(WebLabel(RI, 3, 1)) == "RI[3,1]"


def test_orientation_and_grading_sweep():
    for f in coprime_fractions(12):
        orient = state_of(continued_fraction(f)).orientation
        for j in range(5):
            w = poincare(f, j)
            assert w.orientation is orient
            assert w.j == j
            assert all(0 <= k <= j for k in w.coeffs)
            for c in w.coeffs.values():
                assert all(e[2] <= 0 for e, _ in c.items())
            flat = specialize_t(w)
            for c in flat.coeffs.values():
                assert all(e[2] == 0 for e, _ in c.items())


def test_linearity():
    f = TangleFraction(5, 3)
    j = 2
    a = twist_apply("R", poincare(f, j))
    parts = [twist_apply("R", WebPoly(poincare(f, j).orientation, j, {k: c})) for k, c in poincare(f, j).coeffs.items()]
    total = {}
    for p in parts:
        for k, c in p.coeffs.items():
            total[k] = total.get(k, LaurentPoly3()) + c
    assert a == WebPoly(a.orientation, j, total)


def test_negative_color():
    with pytest.raises(ValueError):
        poincare(TangleFraction(1, 1), -1)
