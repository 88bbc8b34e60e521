"""Rational tangle bookkeeping: fractions, twist words and the orientation state.

A rational tangle is reached from the trivial tangle 0/1 by top twists
``T: (u, v) -> (u + v, v)`` and right twists ``R: (u, v) -> (u, u + v)``.
The first twist is always ``T``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Iterable

_FRACTION_RE = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")


class Orientation(str, Enum):
    UP = "UP"
    OP = "OP"
    RI = "RI"


class Role(str, Enum):
    X_MINUS = "X-"
    X_PLUS = "X+"
    Y = "Y"


@dataclass(frozen=True, order=True)
class TangleFraction:
    """Coprime pair u/v with v >= 1; 0/1 is the trivial tangle."""

    u: int
    v: int

    def __post_init__(self) -> None:
        if not isinstance(self.u, int) or not isinstance(self.v, int):
            raise TypeError("u and v must be integers")
        if self.u < 0 or self.v < 1:
            raise ValueError(f"{self.u}/{self.v}: need u >= 0 and v >= 1")
        if gcd(self.u, self.v) != 1:
            raise ValueError(f"{self.u}/{self.v} is not in lowest terms")

    @classmethod
    def parse(cls, text: str) -> "TangleFraction":
        m = _FRACTION_RE.match(text)
        if not m:
            raise ValueError(f"expected 'u/v', got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    @property
    def trivial(self) -> bool:
        return self.u == 0

    def __str__(self) -> str:
        return f"{self.u}/{self.v}"


@dataclass(frozen=True)
class TwistWord:
    """Runs ``[a_n, ..., a_1]`` written outermost first.

    The innermost run ``a_1`` is a T run and the letters alternate outward,
    so the word reads ``T^{a_n} R^{a_{n-1}} ... T^{a_1}`` when n is odd.
    """

    runs: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(r < 1 for r in self.runs):
            raise ValueError("runs must be positive")

    @property
    def final_letter(self) -> str | None:
        if not self.runs:
            return None
        return "T" if len(self.runs) % 2 else "R"

    def run_letters(self) -> list[tuple[str, int]]:
        """(letter, count) pairs, outermost first."""
        n = len(self.runs)
        return [("T" if (n - i) % 2 else "R", r) for i, r in enumerate(self.runs)]

    def letters(self) -> list[str]:
        """Letters in application order (innermost first)."""
        out: list[str] = []
        for letter, count in reversed(self.run_letters()):
            out.extend([letter] * count)
        return out

    @classmethod
    def from_letters(cls, letters: Iterable[str]) -> "TwistWord":
        """Build from letters in application order."""
        runs: list[int] = []
        prev = None
        for ch in letters:
            if ch not in ("T", "R"):
                raise ValueError(f"bad twist letter {ch!r}")
            if prev is None and ch != "T":
                raise ValueError("the first twist must be T")
            if ch == prev:
                runs[-1] += 1
            else:
                runs.append(1)
            prev = ch
        return cls(tuple(reversed(runs)))

    def __str__(self) -> str:
        parts = []
        for letter, count in self.run_letters():
            parts.append(letter if count == 1 else f"{letter}^{count}")
        return " ".join(parts)


@dataclass(frozen=True)
class TangleState:
    orientation: Orientation
    arrangement: tuple[Role, Role, Role]

    def __post_init__(self) -> None:
        if sorted(self.arrangement) != sorted(Role):
            raise ValueError("arrangement must be a permutation of X-, X+, Y")

    @property
    def middle(self) -> Role:
        return self.arrangement[1]

    def position(self, role: Role) -> int:
        return self.arrangement.index(role)

    def __str__(self) -> str:
        return f"({self.orientation.value},{'|'.join(r.value for r in self.arrangement)})"


START_STATE = TangleState(Orientation.UP, (Role.Y, Role.X_MINUS, Role.X_PLUS))

# T exchanges the two left punctures, R the two right ones.
_SWAP = {"T": (1, 0, 2), "R": (0, 2, 1)}
_TURN = {
    "T": {Orientation.UP: Orientation.UP, Orientation.OP: Orientation.RI, Orientation.RI: Orientation.OP},
    "R": {Orientation.UP: Orientation.OP, Orientation.OP: Orientation.UP, Orientation.RI: Orientation.RI},
}


def apply_twist(letter: str, state: TangleState) -> TangleState:
    perm = _SWAP[letter]
    arr = tuple(state.arrangement[p] for p in perm)
    return TangleState(_TURN[letter][state.orientation], arr)  # type: ignore[arg-type]


def state_of(word: TwistWord) -> TangleState:
    state = START_STATE
    for letter in word.letters():
        state = apply_twist(letter, state)
    return state


def continued_fraction(f: TangleFraction) -> TwistWord:
    """Twist word producing f from 0/1, by undoing twists greedily."""
    u, v = f.u, f.v
    undone: list[str] = []
    while (u, v) != (0, 1):
        if u >= v:
            undone.append("T")
            u -= v
        else:
            undone.append("R")
            v -= u
    return TwistWord.from_letters(reversed(undone))


def fraction_walk(word: TwistWord) -> TangleFraction:
    u, v = 0, 1
    for letter in word.letters():
        if letter == "T":
            u += v
        else:
            v += u
    return TangleFraction(u, v)


def evaluate_runs(runs: tuple[int, ...]) -> tuple[int, int]:
    """Value of the continued fraction encoded by the runs, as (num, den).

    Odd run count: a_n + 1/(a_{n-1} + ...); even: 1/(a_n + 1/(...)).
    """
    if not runs:
        return (0, 1)
    num, den = runs[-1], 1
    for a in reversed(runs[:-1]):
        num, den = a * num + den, num
    if len(runs) % 2 == 0:
        num, den = den, num
    return num, den


def coprime_fractions(max_sum: int, min_sum: int = 1) -> list[TangleFraction]:
    """All u/v with u >= 0, v >= 1, gcd 1 and min_sum <= u + v <= max_sum."""
    out = []
    for s in range(max(min_sum, 1), max_sum + 1):
        for u in range(0, s):
            v = s - u
            if gcd(u, v) == 1:
                out.append(TangleFraction(u, v))
    return out
