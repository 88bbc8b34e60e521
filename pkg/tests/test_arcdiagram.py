from fractions import Fraction
from xml.etree import ElementTree

import pytest

from rtq.arcdiagram import ConstructionError, arc_order, build_diagram, crossings_at, emit_svg
from rtq.quiverforms import block_partition, compute_quiver
from rtq.tanglecore import Role, TangleFraction, continued_fraction, coprime_fractions, fraction_walk, TwistWord

SWEEP = coprime_fractions(14)


def diagram(text):
    return build_diagram(TangleFraction.parse(text))


def _segments_meet(p0, p1, q0, q1):
    """Axis-parallel segments, closed."""
    def box(a, b):
        return min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1])

    ax0, ax1, ay0, ay1 = box(p0, p1)
    bx0, bx1, by0, by1 = box(q0, q1)
    return ax0 <= bx1 and bx0 <= ax1 and ay0 <= by1 and by0 <= ay1


def is_simple(arc):
    segs = list(zip(arc, arc[1:]))
    for m in range(len(segs)):
        for k in range(m + 2, len(segs)):
            if _segments_meet(*segs[m], *segs[k]):
                return False
    return True


def test_small_examples():
    d = diagram("3/1")
    assert [p.active for p in d.xi].count(True) == 3
    assert [(r, x) for r, x in d.punctures] == [
        (Role.X_MINUS, Fraction(-1)), (Role.Y, Fraction(1)), (Role.X_PLUS, Fraction(2))]
    d = diagram("5/2")
    assert [p.standard_index for p in d.xi if p.active] == [1, 2, 3, 4, 5]
    assert [p.standard_index for p in d.xi if not p.active] == [6, 7]
    d = diagram("10/3")
    assert len(d.xi) == 13


def test_trivial_diagram():
    d = diagram("0/1")
    assert arc_order(d) == [1]
    assert not d.point(1).active
    assert d.omega == 1


@pytest.mark.parametrize("f", SWEEP, ids=str)
def test_diagram_invariants(f):
    d = build_diagram(f)
    assert len(crossings_at(d.arc, d.x_A)) == f.u
    assert len(crossings_at(d.arc, d.x_I)) == f.v
    assert d.arc[0] == d.puncture(Role.X_MINUS)
    assert d.arc[-1] == d.puncture(Role.X_PLUS)
    assert is_simple(d.arc)
    xs = sorted(x for _, x in d.punctures)
    # the trivial tangle sits on the u >= v layout
    assert xs == ([-1, 1, 2] if f.u >= f.v or f.trivial else [-2, -1, 1])
    # standard indices: active first, each vertical bottom to top
    for active in (True, False):
        pts = [p for p in d.xi if p.active == active]
        assert [p.point[1] for p in pts] == sorted(p.point[1] for p in pts)
    assert sorted(p.arc_rank for p in d.xi) == list(range(1, f.u + f.v + 1))
    assert arc_order(d)[-1] == d.omega


@pytest.mark.parametrize("f", [f for f in SWEEP if f.u and f.u != f.v], ids=str)
def test_mirror_rule(f):
    d = build_diagram(f)
    m = build_diagram(TangleFraction(f.v, f.u))
    assert set(d.arc) == {(-x, y) for x, y in m.arc}


def test_omega_on_integer_tangles():
    # the single inactive point is the last one met before X+
    for n in range(1, 17):
        d = diagram(f"{n}/1")
        assert not d.point(d.omega).active
        assert d.point(d.omega).arc_rank == n + 1


def test_intermediate_counts_follow_twists():
    for f in coprime_fractions(14, min_sum=2):
        letters = continued_fraction(f).letters()
        for k in range(1, len(letters) + 1):
            g = fraction_walk(TwistWord.from_letters(letters[:k]))
            d = build_diagram(g)
            assert (sum(p.active for p in d.xi), sum(not p.active for p in d.xi)) == (g.u, g.v)


@pytest.mark.parametrize("text,pairs,rest", [("8/1", 4, 1), ("7/1", 3, 2), ("10/3", 5, 3)])
def test_partition_sizes(text, pairs, rest):
    d = diagram(text)
    bp = block_partition(d, compute_quiver(d))
    assert len(bp.pairs) == pairs
    assert len(bp.z_block) == rest


@pytest.mark.parametrize("f", SWEEP, ids=str)
def test_partition_shape(f):
    d = build_diagram(f)
    qd = compute_quiver(d)
    bp = block_partition(d, qd)
    flat = [i for p in bp.pairs for i in p]
    assert len(flat) == len(set(flat))
    assert set(flat) | set(bp.z_block) == set(d.indices())
    order = arc_order(d)
    for x, y in bp.pairs:
        assert d.point(x).active == d.point(y).active
        assert abs(order.index(x) - order.index(y)) == 1
        assert qd.S[qd.position(x)] == qd.S[qd.position(y)] + 1
    if f.v == 1:
        assert len(bp.pairs) == f.u // 2


def test_crossings_reject_vertex_on_vertical():
    arc = [(Fraction(0), Fraction(0)), (Fraction(0), Fraction(1)), (Fraction(2), Fraction(1))]
    with pytest.raises(ConstructionError):
        crossings_at(arc, Fraction(0))


@pytest.mark.parametrize("text,labels", [("0/1", 1), ("5/2", 7), ("4/3", 7)])
def test_svg(text, labels):
    svg = emit_svg(diagram(text))
    root = ElementTree.fromstring(svg)
    assert root.tag.endswith("svg")
    texts = [el.text for el in root.iter() if el.tag.endswith("text")]
    assert sum(1 for s in texts if s and s.isdigit()) == labels
    roles = {s for s in texts if s in ("X-", "X+", "Y", "X−")}
    assert len(roles) == 3 or text == "0/1"
