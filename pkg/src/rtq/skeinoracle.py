"""Twist-rule ground truth for the Poincare polynomials of rational tangles.

A ``WebPoly`` is a combination of the basis webs X[j, k] for one orientation
X and one color j.  ``poincare`` starts from UP[j, 0] and applies the twist
word letter by letter, innermost first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .qlaurent import ONE, ZERO, LaurentPoly3, binomial_minus, binomial_plus
from .tanglecore import Orientation, TangleFraction, continued_fraction

UP, OP, RI = Orientation.UP, Orientation.OP, Orientation.RI


@dataclass(frozen=True)
class WebLabel:
    orientation: Orientation
    j: int
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.j:
            raise ValueError(f"weight {self.k} outside 0..{self.j}")

    def __str__(self) -> str:
        return f"{self.orientation.value}[{self.j},{self.k}]"


@dataclass(frozen=True)
class WebPoly:
    """Orientation-homogeneous combination sum_k coeffs[k] * X[j, k]."""

    orientation: Orientation
    j: int
    coeffs: dict[int, LaurentPoly3] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {k: c for k, c in self.coeffs.items() if c}
        for k in clean:
            if not 0 <= k <= self.j:
                raise ValueError(f"weight {k} outside 0..{self.j}")
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis(cls, orientation: Orientation, j: int, k: int) -> "WebPoly":
        return cls(orientation, j, {k: ONE})

    def coefficient(self, k: int) -> LaurentPoly3:
        return self.coeffs.get(k, ZERO)

    def labels(self) -> list[WebLabel]:
        return [WebLabel(self.orientation, self.j, k) for k in sorted(self.coeffs)]

    def map_coeffs(self, fn) -> "WebPoly":
        return WebPoly(self.orientation, self.j, {k: fn(c) for k, c in self.coeffs.items()})

    def shift(self, q: int = 0, a: int = 0, t: int = 0) -> "WebPoly":
        return self.map_coeffs(lambda c: c.shift(q, a, t))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WebPoly):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return self.j == other.j
        return (self.orientation, self.j, self.coeffs) == (other.orientation, other.j, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.orientation, self.j, frozenset(self.coeffs.items())))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"({self.coeffs[k]})·{self.orientation.value}[{self.j},{k}]" for k in sorted(self.coeffs)
        )


def _mono(q: int, a: int, t: int) -> LaurentPoly3:
    return LaurentPoly3.monomial(q=q, a=a, t=t)


@lru_cache(maxsize=None)
def twist_image(letter: str, orientation: Orientation, j: int, k: int) -> tuple[Orientation, tuple[tuple[int, LaurentPoly3], ...]]:
    """Image of the basis web X[j, k] under one twist, as (orientation, terms)."""
    terms: list[tuple[int, LaurentPoly3]] = []
    if letter == "T":
        for h in range(k, j + 1):
            b = binomial_plus(h, k)
            if orientation is UP:
                m = _mono(k * k + h, 0, -h)
            elif orientation is OP:
                m = _mono(k * (k - 2 * j) + h, k, -h)
            else:
                # k^2 as in the UP and OP cases; the quiver sweep over RI states guards it
                m = _mono(k * k + h * (1 - 2 * j), h, -h)
            terms.append((h, m * b))
        target = {UP: UP, OP: RI, RI: OP}[orientation]
    elif letter == "R":
        for h in range(0, k + 1):
            b = binomial_minus(j - h, k - h)
            if orientation is UP:
                m = _mono(k * (2 * j - k) + h * (1 - 2 * j), h, -h)
            elif orientation is OP:
                m = _mono(-k * k + h, k, -h)
            else:
                m = _mono(-k * (k - 2 * j) + h, 0, -h)
            terms.append((h, m * b))
        target = {UP: OP, OP: UP, RI: RI}[orientation]
    else:
        raise ValueError(f"bad twist letter {letter!r}")
    return target, tuple(terms)


def twist_apply(letter: str, w: WebPoly) -> WebPoly:
    out: dict[int, LaurentPoly3] = {}
    target = None
    for k, c in w.coeffs.items():
        target, image = twist_image(letter, w.orientation, w.j, k)
        for h, m in image:
            out[h] = out.get(h, ZERO) + c * m
    if target is None:
        target, _ = twist_image(letter, w.orientation, w.j, 0)
    return WebPoly(target, w.j, out)


def poincare(f: TangleFraction, j: int) -> WebPoly:
    if j < 0:
        raise ValueError("color must be non-negative")
    w = WebPoly.basis(UP, j, 0)
    for letter in continued_fraction(f).letters():
        w = twist_apply(letter, w)
    return w


def specialize_t(w: WebPoly) -> WebPoly:
    """Set t = -1 termwise."""
    return w.map_coeffs(lambda c: c.at_t_minus_one())
