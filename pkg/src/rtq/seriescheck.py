"""Expand quiver and almost-quiver forms at a fixed color and compare them
with the twist-rule polynomials up to one overall monomial."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import kernels
from .qlaurent import LaurentPoly3, multinomial_coeffs, q_pochhammer, t_pochhammer
from .quiverforms import QuiverData
from .skeinoracle import WebPoly, poincare, specialize_t
from .tanglecore import TangleFraction


@dataclass(frozen=True)
class ShiftMonomial:
    x: int
    y: int
    z: int

    def as_list(self) -> list[int]:
        return [self.x, self.y, self.z]


@dataclass(frozen=True)
class Mismatch:
    detail: str
    label: str | None = None


@lru_cache(maxsize=None)
def _extra_terms(kind: str, kappa: int) -> tuple:
    if kind == "none":
        return (((0, 0, 0), 1),) if kappa == 0 else ()
    poly = t_pochhammer(kappa) if kind == "t" else q_pochhammer(kappa)
    return tuple(poly.items())


def _expand(qd: QuiverData, j: int, pochhammer: str, homfly: bool) -> WebPoly:
    if j < 0:
        raise ValueError("color must be non-negative")
    n = len(qd)
    top = j * max([0] + list(qd.K)) if pochhammer != "none" else 0
    extra = [_extra_terms(pochhammer, k) for k in range(top + 1)]
    raw = kernels.expand_compositions(
        j, qd.S, qd.A, qd.T, qd.Q, qd.active, qd.K if pochhammer != "none" else (0,) * n,
        multinomial_coeffs, extra, homfly,
    )
    by_weight: dict[int, dict] = {}
    for (w, eq, ea, et), c in raw.items():
        by_weight.setdefault(w, {})[(eq, ea, et)] = c
    return WebPoly(qd.state.orientation, j, {w: LaurentPoly3(t) for w, t in by_weight.items()})


def expand_quiver_form(qd: QuiverData, j: int, homfly: bool = False) -> WebPoly:
    """Sum over compositions |d| = j of the quiver summand times X[j, active part].

    With ``homfly`` the t-grading is dropped and q^{S.d} becomes (-q)^{S.d}.
    """
    if qd.reduced:
        raise ValueError("expand_quiver_form needs unreduced data")
    if len(qd) == 0:
        return WebPoly(qd.state.orientation, j, {0: LaurentPoly3.const(1)} if j == 0 else {})
    return _expand(qd, j, "none", homfly)


def expand_almost_form(qd: QuiverData, j: int, homfly: bool = False) -> WebPoly:
    """Like ``expand_quiver_form`` with the extra Pochhammer factor at K.d."""
    if not qd.reduced:
        raise ValueError("expand_almost_form needs reduced data")
    return _expand(qd, j, "q" if homfly else "t", homfly)


def compare_up_to_shift(a: WebPoly, b: WebPoly) -> ShiftMonomial | Mismatch:
    """The monomial m with a = m * b, or a description of the first difference."""
    if a.j != b.j:
        return Mismatch(f"colors differ: {a.j} vs {b.j}")
    if not a.coeffs and not b.coeffs:
        return ShiftMonomial(0, 0, 0)
    if not a.coeffs or not b.coeffs:
        return Mismatch("one side is zero")
    if a.orientation != b.orientation:
        return Mismatch(f"orientations differ: {a.orientation.value} vs {b.orientation.value}")
    if set(a.coeffs) != set(b.coeffs):
        k = min(set(a.coeffs) ^ set(b.coeffs))
        return Mismatch(f"weight {k} present on one side only", label=f"{a.orientation.value}[{a.j},{k}]")
    k0 = min(a.coeffs)
    (ea, ca), (eb, cb) = a.coeffs[k0].items()[0], b.coeffs[k0].items()[0]
    if ca != cb:
        return Mismatch(f"leading coefficients {ca} vs {cb}", label=f"{a.orientation.value}[{a.j},{k0}]")
    shift = ShiftMonomial(ea[0] - eb[0], ea[1] - eb[1], ea[2] - eb[2])
    for k in sorted(a.coeffs):
        moved = b.coeffs[k].shift(shift.x, shift.y, shift.z)
        if moved != a.coeffs[k]:
            diff = a.coeffs[k] - moved
            first = diff.items()[0]
            return Mismatch(
                f"after shift {shift.as_list()}: first differing term {first}",
                label=f"{a.orientation.value}[{a.j},{k}]",
            )
    return shift


def verify_tangle(f: TangleFraction, qd: QuiverData, jmax: int, reduced: QuiverData | None = None) -> list[dict]:
    """Report lines for colors 0..jmax; a line has status ok or mismatch."""
    out = []
    for j in range(jmax + 1):
        oracle = poincare(f, j)
        expansion = expand_quiver_form(qd, j)
        res = compare_up_to_shift(oracle, expansion)
        if isinstance(res, Mismatch):
            out.append({"tangle": str(f), "j": j, "status": "mismatch", "detail": res.detail})
            continue
        if reduced is not None:
            alt = expand_almost_form(reduced, j)
            if alt != expansion:
                out.append({"tangle": str(f), "j": j, "status": "mismatch",
                            "detail": "almost form differs from the full expansion"})
                continue
        if specialize_t(expansion) != expand_quiver_form(qd, j, homfly=True):
            out.append({"tangle": str(f), "j": j, "status": "mismatch",
                        "detail": "t = -1 expansion differs from the specialization"})
            continue
        out.append({"tangle": str(f), "j": j, "status": "ok", "shift": res.as_list()})
    return out
