"""Exact planar diagram of a rational tangle: three punctures on the real
axis, the arc joining two of them, and the two vertical axes.

Every half-turn of the arc is drawn as a rectangle (a,0) -> (a,h) -> (b,h)
-> (b,0) with a distinct integer height per half-plane, so all crossings
with vertical lines happen in the interior of horizontal segments and
every coordinate is a ``Fraction``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .tanglecore import Role, TangleFraction, TangleState, continued_fraction, state_of

Point = tuple[Fraction, Fraction]


class ConstructionError(RuntimeError):
    """The diagram came out inconsistent; this is a bug, not bad input."""


@dataclass(frozen=True)
class IntersectionPoint:
    standard_index: int
    active: bool
    height_rank: int
    arc_rank: int
    point: Point
    segment: int  # index of the horizontal arc segment carrying the point


@dataclass(frozen=True)
class BlockPartition:
    pairs: tuple[tuple[int, int], ...]
    y_block: tuple[int, ...]
    z_block: tuple[int, ...]

    @property
    def x_block(self) -> tuple[int, ...]:
        return tuple(p[0] for p in self.pairs)


@dataclass(frozen=True)
class ArcDiagram:
    fraction: TangleFraction
    state: TangleState
    punctures: tuple[tuple[Role, Fraction], ...]
    arc: tuple[Point, ...]
    x_A: Fraction
    x_I: Fraction
    xi: tuple[IntersectionPoint, ...]
    omega: int

    @property
    def u(self) -> int:
        return self.fraction.u

    @property
    def v(self) -> int:
        return self.fraction.v

    def puncture(self, role: Role) -> Point:
        for r, x in self.punctures:
            if r is role:
                return (x, Fraction(0))
        raise KeyError(role)

    @property
    def middle_role(self) -> Role:
        return self.punctures[1][0]

    def point(self, index: int) -> IntersectionPoint:
        return self.xi[index - 1]

    def vertical_x(self, index: int) -> Fraction:
        return self.x_A if self.point(index).active else self.x_I

    def indices(self) -> list[int]:
        return [p.standard_index for p in self.xi]

    def top_index(self, active: bool) -> int:
        """Highest point on the given vertical."""
        return max((p for p in self.xi if p.active == active), key=lambda p: p.point[1]).standard_index

    def y_extent(self) -> Fraction:
        return max(abs(y) for _, y in self.arc)

    def to_dict(self) -> dict:
        return {
            "tangle": str(self.fraction),
            "state": str(self.state),
            "punctures": [{"role": r.value, "x": str(x)} for r, x in self.punctures],
            "arc": [[str(x), str(y)] for x, y in self.arc],
            "x_A": str(self.x_A),
            "x_I": str(self.x_I),
            "xi": [
                {
                    "index": p.standard_index,
                    "active": p.active,
                    "height_rank": p.height_rank,
                    "arc_rank": p.arc_rank,
                    "point": [str(p.point[0]), str(p.point[1])],
                }
                for p in self.xi
            ],
            "omega": self.omega,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# construction


def _label_position(slit: str, label: int, u: int) -> tuple[Fraction, str]:
    """x-position and side ('top', 'bottom' or 'end') of a clockwise label."""
    label %= 2 * u
    if slit == "R":
        base, step = Fraction(1), Fraction(1, u)
        if label in (0, u):
            return base + step * label, "end"
        if label < u:
            return base + step * label, "top"
        return base + step * (2 * u - label), "bottom"
    base, step = Fraction(-1), Fraction(-1, u)
    if label in (0, u):
        return base + step * label, "end"
    if label < u:
        return base + step * label, "bottom"
    return base + step * (2 * u - label), "top"


def _half_arcs(u: int, v: int) -> list[tuple[Fraction, Fraction, str]]:
    """Half-turns (start x, end x, side) in walk order, for u >= v >= 1.

    A strand that must switch sides between two labels either wraps around
    the right end of [1, 2] (crossing the axis beyond 2) or passes the left
    end of [1, 2] (crossing the axis just left of 1).  Which one follows from
    sliding the landing points clockwise around [1, 2].
    """
    slit = "R" if u % 2 == 0 else "L"
    pos, _ = _label_position(slit, 0, u)
    depart = "bottom" if slit == "R" else "top"
    pieces: list[list] = []
    turns: list[tuple[str, int]] = []  # (kind, index of first half)
    m = 0
    while True:
        m += 1
        src = slit
        slit = "L" if slit == "R" else "R"
        label = (m * v) % (2 * u)
        nxt, side = _label_position(slit, label, u)
        if side == "end" or side == depart:
            pieces.append([pos, nxt, depart])
        else:
            wraps = (src == "L") == (depart == "top")
            turns.append(("cap" if wraps else "gap", len(pieces)))
            pieces.append([pos, None, depart])
            pieces.append([None, nxt, side])
        if side == "end":
            break
        depart = "top" if side == "bottom" else "bottom"
        pos = nxt
        if m > 4 * u * u + 4:
            raise ConstructionError(f"walk for {u}/{v} did not terminate")

    def upper_end(k: int) -> Fraction:
        first, second = pieces[k], pieces[k + 1]
        return first[0] if first[2] == "top" else second[1]

    caps = sorted((k for kind, k in turns if kind == "cap"), key=upper_end)
    gaps = sorted((k for kind, k in turns if kind == "gap"), key=upper_end)
    # further-left upper partner wraps further out beyond 2
    for rank, k in enumerate(caps):
        c = Fraction(2 + len(caps) - rank)
        pieces[k][1] = pieces[k + 1][0] = c
    # further-right upper partner crosses further from 1
    for rank, k in enumerate(gaps):
        g = 1 - Fraction(rank + 1, 2 * (len(gaps) + 1))
        pieces[k][1] = pieces[k + 1][0] = g
    return [tuple(p) for p in pieces]  # type: ignore[misc]


def _check_laminar(arcs: list[tuple[Fraction, Fraction, str]], label: str) -> None:
    for side in ("top", "bottom"):
        spans = sorted((min(a, b), max(a, b)) for a, b, s in arcs if s == side)
        for i, (a1, b1) in enumerate(spans):
            for a2, b2 in spans[i + 1:]:
                if a1 < a2 < b1 < b2:
                    raise ConstructionError(f"{label}: crossing half-turns on the {side}")


def _polyline(arcs: list[tuple[Fraction, Fraction, str]]) -> list[Point]:
    heights: dict[tuple[Fraction, Fraction, str], int] = {}
    for side in ("top", "bottom"):
        spans = sorted(
            ((max(a, b) - min(a, b), min(a, b)), (a, b, s)) for a, b, s in arcs if s == side
        )
        for rank, (_, key) in enumerate(spans):
            heights[key] = rank + 1
    pts: list[Point] = []
    zero = Fraction(0)
    for a, b, s in arcs:
        h = Fraction(heights[(a, b, s)] * (1 if s == "top" else -1))
        for p in ((a, zero), (a, h), (b, h), (b, zero)):
            if not pts or pts[-1] != p:
                pts.append(p)
    return pts


def crossings_at(arc: Sequence[Point], x: Fraction) -> list[tuple[int, Fraction]]:
    """(segment index, y) for every horizontal segment whose interior meets x."""
    out = []
    for k in range(len(arc) - 1):
        (x0, y0), (x1, y1) = arc[k], arc[k + 1]
        if x0 == x or x1 == x:
            if y0 == y1 or x0 == x1 == x:
                raise ConstructionError(f"vertical x={x} meets an arc vertex")
            continue
        if min(x0, x1) < x < max(x0, x1):
            if y0 != y1:
                raise ConstructionError("non-horizontal crossing")
            out.append((k, y0))
    return out


def _assemble(f: TangleFraction, state: TangleState, xs: Sequence[Fraction], arc: list[Point],
              x_A: Fraction, x_I: Fraction) -> ArcDiagram:
    punctures = tuple(zip(state.arrangement, xs))
    where = {r: x for r, x in punctures}
    ends = {arc[0][0], arc[-1][0]}
    if arc[0][1] != 0 or arc[-1][1] != 0 or ends != {where[Role.X_MINUS], where[Role.X_PLUS]}:
        raise ConstructionError(f"{f}: arc endpoints {sorted(ends)} are not X- and X+")
    if arc[0][0] != where[Role.X_MINUS]:
        arc = arc[::-1]
    for x, y in arc[1:-1]:
        if y == 0 and x in where.values():
            raise ConstructionError(f"{f}: arc runs through a puncture")
    act = crossings_at(arc, x_A)
    ina = crossings_at(arc, x_I)
    if len(act) != f.u or len(ina) != f.v:
        raise ConstructionError(f"{f}: {len(act)} active / {len(ina)} inactive crossings")
    records = []
    for active, hits, x in ((True, act, x_A), (False, ina, x_I)):
        for rank, (seg, y) in enumerate(sorted(hits, key=lambda h: h[1])):
            records.append((active, rank + 1, seg, (x, y)))

    def along(rec) -> tuple:
        _, _, seg, (x, _) = rec
        x0, x1 = arc[seg][0], arc[seg + 1][0]
        return (seg, x - x0 if x1 > x0 else x0 - x)

    ranked = sorted(range(len(records)), key=lambda n: along(records[n]))
    arc_rank = {n: r + 1 for r, n in enumerate(ranked)}
    points = sorted(
        (
            IntersectionPoint(hrank if active else f.u + hrank, active, hrank, arc_rank[n], pt, seg)
            for n, (active, hrank, seg, pt) in enumerate(records)
        ),
        key=lambda p: p.standard_index,
    )
    omega = max(points, key=lambda p: p.arc_rank).standard_index
    return ArcDiagram(f, state, punctures, tuple(arc), x_A, x_I, tuple(points), omega)


def _trivial(state: TangleState) -> ArcDiagram:
    one, two = Fraction(1), Fraction(2)
    arc = [(one, Fraction(0)), (one, one), (two, one), (two, Fraction(0))]
    xs = (Fraction(-1), one, two)
    return _assemble(TangleFraction(0, 1), state, xs, arc, Fraction(0), Fraction(3, 2))


def _best_inactive_x(arc: list[Point], u: int) -> Fraction:
    best = None
    for k in range(u):
        x = 1 + Fraction(2 * k + 1, 2 * u)
        n = len(crossings_at(arc, x))
        if best is None or n < best[0]:
            best = (n, x)
    return best[1]  # type: ignore[index]


def build_diagram(f: TangleFraction, state: TangleState | None = None) -> ArcDiagram:
    if state is None:
        state = state_of(continued_fraction(f))
    if f.trivial:
        return _trivial(state)
    u, v = f.u, f.v
    if u >= v:
        arcs = _half_arcs(u, v)
        _check_laminar(arcs, str(f))
        arc = _polyline(arcs)
        x_I = _best_inactive_x(arc, u)
        xs = (Fraction(-1), Fraction(1), Fraction(2))
        return _assemble(f, state, xs, arc, Fraction(0), x_I)
    arcs = _half_arcs(v, u)
    _check_laminar(arcs, str(f))
    base = _polyline(arcs)
    far = _best_inactive_x(base, v)
    arc = [(-x, y) for x, y in base]
    xs = (Fraction(-2), Fraction(-1), Fraction(1))
    return _assemble(f, state, xs, arc, -far, Fraction(0))


def arc_order(d: ArcDiagram) -> list[int]:
    """Standard indices listed along the arc from X- to X+; the last is omega."""
    return [p.standard_index for p in sorted(d.xi, key=lambda p: p.arc_rank)]


def arc_between(d: ArcDiagram, start: Point, s_seg: int, end: Point, e_seg: int) -> list[Point]:
    """Sub-polyline of the arc between two points lying on horizontal segments."""
    if s_seg < e_seg or (s_seg == e_seg and _ahead(d.arc, s_seg, start, end)):
        return [start] + list(d.arc[s_seg + 1:e_seg + 1]) + [end]
    return [start] + list(reversed(d.arc[e_seg + 1:s_seg + 1])) + [end]


def _ahead(arc: Sequence[Point], seg: int, p: Point, q: Point) -> bool:
    """Whether q is further along segment ``seg`` than p (or equal)."""
    x0, x1 = arc[seg][0], arc[seg + 1][0]
    return (q[0] - p[0]) * (x1 - x0) >= 0


# block partition


def partition_xyz(d: ArcDiagram, winds_y: Callable[[int, int], int],
                  s_value: Callable[[int], int] | None = None) -> BlockPartition:
    """Pair arc-consecutive points on one vertical whose connecting loop
    winds once around Y.

    ``winds_y(i, j)`` is the Y-winding of the loop through i and j; it comes
    from ``windings`` so that this module stays free of loop geometry.
    Within a pair the first entry has the larger ``s_value`` when given,
    otherwise the later one along the arc.
    """
    order = arc_order(d)
    pairs: list[tuple[int, int]] = []
    used: set[int] = set()
    for a, b in zip(order, order[1:]):
        if a in used or b in used:
            continue
        if d.point(a).active != d.point(b).active:
            continue
        if abs(winds_y(a, b)) == 1:
            if s_value is not None:
                x, y = (a, b) if s_value(a) > s_value(b) else (b, a)
            else:
                x, y = b, a
            pairs.append((x, y))
            used.update((a, b))
    # blocks follow the arc, which is the order the reduced output uses
    y_block = tuple(p[1] for p in sorted(pairs, key=lambda p: order.index(p[1])))
    z_block = tuple(i for i in order if i not in used)
    return BlockPartition(tuple(sorted(pairs, key=lambda p: order.index(p[1]))), y_block, z_block)


# rendering


def emit_svg(d: ArcDiagram, scale: int = 60) -> str:
    xs = [x for x, _ in d.arc] + [x for _, x in d.punctures] + [d.x_A, d.x_I]
    ys = [y for _, y in d.arc]
    x_lo, x_hi = float(min(xs)) - 0.5, float(max(xs)) + 0.5
    y_lo, y_hi = float(min(ys)) - 0.7, float(max(ys)) + 0.7

    def px(x) -> float:
        return round((float(x) - x_lo) * scale, 2)

    def py(y) -> float:
        return round((y_hi - float(y)) * scale, 2)

    w, h = px(x_hi), py(y_lo)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<title>{d.fraction}</title>',
    ]
    for name, x, color in (("A", d.x_A, "#1b6ca8"), ("I", d.x_I, "#b03a2e")):
        out.append(f'<line class="vertical-{name}" x1="{px(x)}" y1="0" x2="{px(x)}" y2="{h}" '
                   f'stroke="{color}" stroke-dasharray="4 3"/>')
    path = " ".join(f"{px(x)},{py(y)}" for x, y in d.arc)
    out.append(f'<polyline class="arc" points="{path}" fill="none" stroke="black" stroke-width="2"/>')
    for role, x in d.punctures:
        out.append(f'<circle class="puncture" cx="{px(x)}" cy="{py(0)}" r="5" fill="white" stroke="black"/>')
        out.append(f'<text x="{px(x) + 6}" y="{py(0) + 16}" font-size="13">{role.value}</text>')
    for p in d.xi:
        x, y = p.point
        out.append(f'<circle class="xi" cx="{px(x)}" cy="{py(y)}" r="3" fill="#444"/>')
        out.append(f'<text class="xi-label" x="{px(x) + 4}" y="{py(y) - 4}" font-size="11">{p.standard_index}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
