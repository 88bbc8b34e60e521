"""Loops in the punctured plane and in its two-point configuration space,
and the integer invariants evaluated on them.

Orientation convention: every invariant counts clockwise motion as
positive.  ``winding`` itself is the usual counter-clockwise winding
number; ``psi`` negates it.  ``phi2`` counts clockwise half-turns of the
difference vector of the two points, which is the abelianized two-strand
braid in the same convention.

Two-point loops are schedules in which exactly one point moves at a time
along a polyline; ``Loop2.validate`` checks the points never meet.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .arcdiagram import ArcDiagram, arc_between
from .tanglecore import Role

Point = tuple[Fraction, Fraction]


class LoopError(RuntimeError):
    """A loop could not be built without degeneracy."""


def _sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def winding(vertices: Sequence[Point], center: Point) -> int:
    """Counter-clockwise winding number of a closed polyline about ``center``."""
    if vertices[0] != vertices[-1]:
        raise LoopError("polyline is not closed")
    n = kernels.half_turns([_sub(p, center) for p in vertices])
    if n % 2:
        raise LoopError("odd half-turn count on a closed loop")
    return n // 2


@dataclass(frozen=True)
class PlanarLoop:
    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        if self.vertices[0] != self.vertices[-1]:
            raise LoopError("planar loop must be closed")


def psi(d: ArcDiagram, roles: Iterable[Role], loop: PlanarLoop) -> int:
    """Sum of clockwise windings of ``loop`` about the named punctures."""
    return -sum(winding(loop.vertices, d.puncture(r)) for r in roles)


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    if cross:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


@dataclass(frozen=True)
class Loop2:
    """Two points, ``start[0]`` and ``start[1]``, moved one at a time."""

    start: tuple[Point, Point]
    moves: tuple[tuple[int, tuple[Point, ...]], ...]

    def positions(self) -> tuple[Point, Point]:
        pos = list(self.start)
        for comp, path in self.moves:
            pos[comp] = path[-1]
        return pos[0], pos[1]

    @property
    def swap(self) -> bool:
        end = self.positions()
        return end == (self.start[1], self.start[0]) and end != self.start

    def validate(self) -> None:
        pos = list(self.start)
        if pos[0] == pos[1]:
            raise LoopError("components coincide at the start")
        for comp, path in self.moves:
            if path[0] != pos[comp]:
                raise LoopError("move does not start where the point is")
            other = pos[1 - comp]
            for a, b in zip(path, path[1:]):
                if _on_segment(other, a, b):
                    raise LoopError(f"component {comp} runs into the other point at {other}")
            pos[comp] = path[-1]
        end = tuple(pos)
        if end != self.start and end != (self.start[1], self.start[0]):
            raise LoopError("schedule does not close up")

    def trajectory(self, comp: int) -> list[Point]:
        pts = [self.start[comp]]
        for c, path in self.moves:
            if c == comp:
                pts.extend(path[1:])
        return pts

    def difference_path(self) -> list[Point]:
        pos = list(self.start)
        out = [_sub(pos[0], pos[1])]
        for comp, path in self.moves:
            for p in path[1:]:
                pos[comp] = p
                out.append(_sub(pos[0], pos[1]))
        return out

    def braid_word(self) -> str:
        """Crossing events of the two strands: ``s`` is a positive crossing,
        ``S`` a negative one, so the letter count agrees with ``phi2``."""
        letters = []
        diffs = self.difference_path()
        for a, b in zip(diffs, diffs[1:]):
            # a crossing happens when the difference passes the imaginary axis
            if (a[0] > 0) != (b[0] > 0) and a[0] != b[0]:
                t = a[0] / (a[0] - b[0])
                y = a[1] + t * (b[1] - a[1])
                going_left = b[0] < a[0]
                letters.append("S" if (y > 0) == going_left else "s")
        return " ".join(letters)


def phi2(loop: Loop2) -> int:
    return -kernels.half_turns(loop.difference_path())


def component_winding(loop: Loop2, center: Point) -> int:
    """Counter-clockwise winding of the 1-cycle formed by both components."""
    t0, t1 = loop.trajectory(0), loop.trajectory(1)
    if loop.swap:
        return winding(t0 + t1[1:], center)
    return winding(t0, center) + winding(t1, center)


def psi2_xplus(d: ArcDiagram, loop: Loop2) -> int:
    return phi2(loop) - 2 * component_winding(loop, d.puncture(Role.X_PLUS))


def component_psi(d: ArcDiagram, roles: Iterable[Role], loop: Loop2) -> int:
    center_sum = 0
    for r in roles:
        center_sum -= component_winding(loop, d.puncture(r))
    return center_sum


# geometry helpers


def push_off(d: ArcDiagram) -> Fraction:
    return Fraction(1, 16 * (d.u + d.v))


def top_height(d: ArcDiagram) -> Fraction:
    return d.y_extent() + 1


@dataclass(frozen=True)
class ArcLoc:
    """A point on a horizontal arc segment."""

    point: Point
    seg: int


def _loc(d: ArcDiagram, index: int, side: int = 0) -> ArcLoc:
    p = d.point(index)
    x, y = p.point
    return ArcLoc((x + side * push_off(d), y), p.segment)


def _key(d: ArcDiagram, a: ArcLoc) -> tuple:
    x0, x1 = d.arc[a.seg][0], d.arc[a.seg + 1][0]
    return (a.seg, (a.point[0] - x0) * (1 if x1 > x0 else -1))


def _along(d: ArcDiagram, a: ArcLoc, b: ArcLoc) -> tuple[Point, ...]:
    return tuple(_dedupe(arc_between(d, a.point, a.seg, b.point, b.seg)))


def _dedupe(pts: Sequence[Point]) -> list[Point]:
    out: list[Point] = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    return out


def _same_vertical(d: ArcDiagram, i: int, j: int) -> bool:
    return d.point(i).active == d.point(j).active


class _Schedule:
    def __init__(self, p0: Point, p1: Point):
        self.start = (p0, p1)
        self.pos = [p0, p1]
        self.moves: list[tuple[int, tuple[Point, ...]]] = []

    def move(self, comp: int, path: Sequence[Point]) -> None:
        path = _dedupe([self.pos[comp]] + list(path))
        if len(path) < 2:
            return
        self.moves.append((comp, tuple(path)))
        self.pos[comp] = path[-1]

    def at(self, p: Point) -> int:
        return self.pos.index(p)

    def build(self) -> Loop2:
        loop = Loop2(self.start, tuple(self.moves))
        loop.validate()
        return loop


# planar loops


def loop_gamma_pair(d: ArcDiagram, i: int, j: int) -> PlanarLoop:
    """Along the arc from i to j, then back along the vertical, or over the top."""
    a, b = _loc(d, i), _loc(d, j)
    path = list(_along(d, a, b))
    if _same_vertical(d, i, j):
        path.append(a.point)
    else:
        top = top_height(d)
        path += [(b.point[0], top), (a.point[0], top), a.point]
    return PlanarLoop(tuple(_dedupe(path)))


def loop_gamma(d: ArcDiagram, i: int) -> PlanarLoop:
    return loop_gamma_pair(d, i, d.omega)


# two-point loops


def _basepoint(d: ArcDiagram, i: int, j: int, hat: bool = False) -> tuple[ArcLoc, ArcLoc]:
    """Starting slots for the points over i and j."""
    if i == j:
        return _loc(d, i, -1), _loc(d, i, +1)
    if not _same_vertical(d, i, j):
        if hat:
            raise ValueError("hat loops need two points on one vertical")
        return _loc(d, i), _loc(d, j)
    lo_side = 1 if hat else -1
    si = lo_side if i < j else -lo_side
    return _loc(d, i, si), _loc(d, j, -si)


def _eta2(d: ArcDiagram, i: int, j: int, hat: bool, cross_side: str) -> tuple[_Schedule, ArcLoc, ArcLoc, ArcLoc]:
    """Move the point over i along the arc next to the point over j.

    Returns the schedule, the mover's start, the slot it was sent to, and the
    slot of the point that was over j.
    """
    pi, pj = _basepoint(d, i, j, hat)
    sched = _Schedule(pi.point, pj.point)
    if i == j:
        return sched, pi, pi, pj
    eps = push_off(d)
    if _same_vertical(d, i, j):
        # the mover keeps to its own copy of the vertical
        off = pi.point[0] - d.vertical_x(i)
        target = ArcLoc((d.vertical_x(j) + off, pj.point[1]), pj.seg)
    else:
        inward = 1 if d.point(j).active else -1
        if cross_side == "outer":
            inward = -inward
        target = ArcLoc((pj.point[0] + inward * eps, pj.point[1]), pj.seg)
    ki, kj, kt = _key(d, pi), _key(d, pj), _key(d, target)
    if min(ki, kt) < kj < max(ki, kt):
        sched.move(1, _along(d, pj, target)[1:])
        sched.move(0, _along(d, pi, pj)[1:])
    else:
        sched.move(0, _along(d, pi, target)[1:])
    return sched, pi, target, pj


def loop_tilde(d: ArcDiagram, i: int, j: int, hat: bool = False, cross_side: str = "inner") -> Loop2:
    """Slide the point over i along the arc to j, then return it."""
    sched, pi, target, _ = _eta2(d, i, j, hat, cross_side)
    if i != j:
        back = sched.at(target.point)
        if _same_vertical(d, i, j):
            sched.move(back, [pi.point])
        else:
            top = top_height(d)
            sched.move(back, [(target.point[0], top), (pi.point[0], top), pi.point])
    return sched.build()


def loop_hat(d: ArcDiagram, i: int, j: int) -> Loop2:
    if not _same_vertical(d, i, j):
        raise ValueError("hat loops need two points on one vertical")
    return loop_tilde(d, i, j, hat=True)


def _swap_rectangle(lower: Point, upper: Point) -> Loop2:
    """Exchange two points on neighbouring vertical copies."""
    (xa, ya), (xb, yb) = lower, upper
    sched = _Schedule(lower, upper)
    sched.move(1, [(xb, ya)])
    sched.move(0, [(xa, yb)])
    sched.move(0, [(xb, yb)])
    sched.move(1, [(xa, ya)])
    return sched.build()


def rectangle_move(lower_left: Point, upper_right: Point) -> Loop2:
    """Swap of a lower-left and an upper-right point around their rectangle."""
    if not (lower_left[0] < upper_right[0] and lower_left[1] < upper_right[1]):
        raise ValueError("expects a lower-left and an upper-right corner")
    return _swap_rectangle(lower_left, upper_right)


def loop_s(d: ArcDiagram, i: int, j: int) -> Loop2:
    """Swap loop at the basepoint of the tilde loop for (i, j)."""
    if i == j or not _same_vertical(d, i, j):
        raise ValueError("s loops need two distinct points on one vertical")
    lo, hi = _basepoint(d, min(i, j), max(i, j))
    return _swap_rectangle(lo.point, hi.point)


def loop_s_hat(d: ArcDiagram, i: int, j: int) -> Loop2:
    """Mirror of ``loop_s`` at the hat basepoint."""
    if i == j or not _same_vertical(d, i, j):
        raise ValueError("s loops need two distinct points on one vertical")
    lo, hi = _basepoint(d, min(i, j), max(i, j), hat=True)
    return _swap_rectangle(lo.point, hi.point)


def _tandem(d: ArcDiagram, sched: _Schedule, a: ArcLoc, b: ArcLoc, ta: ArcLoc, tb: ArcLoc) -> None:
    """Move a -> ta and b -> tb along the arc without letting them pass."""
    ca, cb = sched.at(a.point), sched.at(b.point)
    pa, pb = _along(d, a, ta), _along(d, b, tb)

    def clear(path, other) -> bool:
        return not any(_on_segment(other, p, q) for p, q in zip(path, path[1:]))

    if clear(pa, b.point) and clear(pb, ta.point):
        sched.move(ca, pa[1:])
        sched.move(cb, pb[1:])
    elif clear(pb, a.point) and clear(pa, tb.point):
        sched.move(cb, pb[1:])
        sched.move(ca, pa[1:])
    else:
        raise LoopError("tandem move needs interleaving")


def loop_conf2(d: ArcDiagram, i: int, j: int, cross_return: str = "near", cross_side: str = "inner") -> Loop2:
    """Bring the point over i next to j, carry both to omega, and return them.

    ``cross_return`` says which of the two points at omega takes the route
    over the top when exactly one target lies on the other vertical: the
    copy nearer that vertical ("near") or the farther one ("far").
    """
    sched, pi, target, pj = _eta2(d, i, j, False, cross_side)
    eps = push_off(d)
    w = d.omega
    here = sorted((ArcLoc(p, pj.seg) for p in sched.pos), key=lambda a: _key(d, a))
    lw, rw = _loc(d, w, -1), _loc(d, w, +1)
    slots = sorted((lw, rw), key=lambda a: _key(d, a))
    # order along the arc is preserved
    _tandem(d, sched, here[1], here[0], slots[1], slots[0])

    xw = d.vertical_x(w)
    top = top_height(d)
    targets = [pi.point, pj.point]
    on_w = [t for t in targets if _on_vertical(d, t, w)]
    off_w = [t for t in targets if t not in on_w]
    left_w, right_w = lw.point, rw.point
    if len(off_w) == 0:
        lo, hi = sorted(targets)
        sched.move(sched.at(left_w), [lo])
        sched.move(sched.at(right_w), [hi])
    elif len(on_w) == 0:
        # translated copies; the point in front along the slide moves first so
        # the other never laps it
        lo, hi = sorted(targets)
        moves = [(left_w, lo, top), (right_w, hi, top + eps)]
        if lo[0] > xw:
            moves.reverse()
        for start, end, h in moves:
            sched.move(sched.at(start), [(start[0], h), (end[0], h), end])
    else:
        (same,), (other,) = on_w, off_w
        going_right = other[0] > xw
        near, far = (right_w, left_w) if going_right else (left_w, right_w)
        over, stay = (near, far) if cross_return == "near" else (far, near)
        c_over, c_stay = sched.at(over), sched.at(stay)
        sched.move(c_over, [(over[0], top), (other[0], top), other])
        sched.move(c_stay, [(stay[0], same[1]), same])
    return sched.build()


def _on_vertical(d: ArcDiagram, p: Point, index: int) -> bool:
    eps = push_off(d)
    return abs(p[0] - d.vertical_x(index)) <= eps
