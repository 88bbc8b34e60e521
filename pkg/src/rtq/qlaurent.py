"""Exact Laurent polynomials in q, a, t and the q-combinatorics built on them.

A polynomial is stored as a sparse map from exponent triples ``(eq, ea, et)``
to Python integers.  Nothing here ever touches floating point.

The q-combinatorics (Pochhammer symbols, quantum multinomials) only ever
involve q, and always in even powers, so they are computed on dense
coefficient lists indexed by powers of q**2 and lifted at the end.
"""
from __future__ import annotations

import os
import re
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, int, int]

_EXP_BOUND = 1 << 40
_TERM_RE = re.compile(r"^(-?\d+)\*q\^(-?\d+)\*a\^(-?\d+)\*t\^(-?\d+)$")


class LaurentPoly3:
    """Sparse Laurent polynomial in q, a, t with integer coefficients.

    >>> q = LaurentPoly3.monomial(q=1)
    >>> str((1 - q**2) * (1 + q**2))
    '1*q^0*a^0*t^0 + -1*q^4*a^0*t^0'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        clean: dict[Exponent, int] = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    for e in exp:
                        if not -_EXP_BOUND < e < _EXP_BOUND:
                            raise OverflowError(f"exponent {e} out of range")
                    clean[exp] = int(c)
        self._terms = clean
        self._hash: int | None = None

    # construction

    @classmethod
    def monomial(cls, c: int = 1, q: int = 0, a: int = 0, t: int = 0) -> "LaurentPoly3":
        return cls({(q, a, t): c})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly3":
        return cls({(0, 0, 0): c})

    @classmethod
    def from_q_coeffs(cls, coeffs: Sequence[int], step: int = 2, offset: int = 0) -> "LaurentPoly3":
        """Lift a dense list ``coeffs[k]`` of q**(offset + step*k) to a polynomial."""
        return cls({(offset + step * k, 0, 0): c for k, c in enumerate(coeffs) if c})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly3":
        """Inverse of ``str``; accepts exactly the canonical text form."""
        text = text.strip()
        if text == "0":
            return cls()
        terms: dict[Exponent, int] = {}
        for chunk in text.split(" + "):
            m = _TERM_RE.match(chunk.strip())
            if not m:
                raise ValueError(f"not a canonical term: {chunk!r}")
            c, eq, ea, et = (int(g) for g in m.groups())
            key = (eq, ea, et)
            terms[key] = terms.get(key, 0) + c
        return cls(terms)

    # inspection

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, int]]:
        """Terms in the canonical order: lexicographic on (eq, ea, et)."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, q: int = 0, a: int = 0, t: int = 0) -> int:
        return self._terms.get((q, a, t), 0)

    def only_q(self) -> bool:
        return all(ea == 0 and et == 0 for _, ea, et in self._terms)

    # arithmetic

    @staticmethod
    def _coerce(other: object) -> "LaurentPoly3 | None":
        if isinstance(other, LaurentPoly3):
            return other
        if isinstance(other, int):
            return LaurentPoly3.const(other)
        return None

    def __add__(self, other: object) -> "LaurentPoly3":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in o._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly3(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly3":
        return LaurentPoly3({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: object) -> "LaurentPoly3":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "LaurentPoly3":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> "LaurentPoly3":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[Exponent, int] = {}
        for (q1, a1, t1), c1 in self._terms.items():
            for (q2, a2, t2), c2 in o._terms.items():
                k = (q1 + q2, a1 + a2, t1 + t2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly3(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly3":
        if n < 0:
            if not self.is_monomial() or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("negative powers exist for unit monomials only")
            ((exp, c),) = self._terms.items()
            return LaurentPoly3({tuple(e * n for e in exp): c ** (-n)})
        result = LaurentPoly3.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # substitutions

    def shift(self, q: int = 0, a: int = 0, t: int = 0) -> "LaurentPoly3":
        """Multiply by the monomial q^q a^a t^t."""
        return LaurentPoly3({(x + q, y + a, z + t): c for (x, y, z), c in self._terms.items()})

    def invert_q(self) -> "LaurentPoly3":
        return LaurentPoly3({(-x, y, z): c for (x, y, z), c in self._terms.items()})

    def at_t_minus_one(self) -> "LaurentPoly3":
        out: dict[Exponent, int] = {}
        for (x, y, z), c in self._terms.items():
            k = (x, y, 0)
            out[k] = out.get(k, 0) + (-c if z % 2 else c)
        return LaurentPoly3(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*q^{x}*a^{y}*t^{z}" for (x, y, z), c in self.items())

    def __repr__(self) -> str:
        return f"LaurentPoly3({str(self)!r})"


ONE = LaurentPoly3.const(1)
ZERO = LaurentPoly3()


# dense helpers over Z[q^2]; index k stands for q^(2k)


def _dmul(f: Sequence[int], g: Sequence[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def _ddiv_exact(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Exact quotient f / g; g has unit constant term."""
    if g[0] not in (1, -1):
        raise ValueError("divisor must have unit constant term")
    n = len(f) - len(g) + 1
    if n <= 0:
        raise ArithmeticError("division is not exact")
    rem = list(f)
    quo = [0] * n
    for k in range(n):
        c = rem[k] * g[0]
        quo[k] = c
        if c:
            for i, b in enumerate(g):
                rem[k + i] -= c * b
    if any(rem):
        raise ArithmeticError("division is not exact")
    return quo


@lru_cache(maxsize=None)
def _dense_q_poch(i: int) -> tuple[int, ...]:
    out = [1]
    for j in range(1, i + 1):
        factor = [1] + [0] * (j - 1) + [-1]
        out = _dmul(out, factor)
    return tuple(out)


def q_pochhammer(i: int) -> LaurentPoly3:
    """(q^2; q^2)_i as a polynomial in q."""
    if i < 0:
        raise ValueError("i must be non-negative")
    return LaurentPoly3.from_q_coeffs(_dense_q_poch(i))


def t_pochhammer(i: int) -> LaurentPoly3:
    """(-t^{-1} q^2; q^2)_i = prod_{j=1..i} (1 + t^{-1} q^{2j})."""
    if i < 0:
        raise ValueError("i must be non-negative")
    out = ONE
    for j in range(1, i + 1):
        out = out * (ONE + LaurentPoly3.monomial(q=2 * j, t=-1))
    return out


def inv_statistic(sequence: Sequence[int]) -> int:
    """Number of pairs a < b with sequence[a] > sequence[b]."""
    n = len(sequence)
    return sum(1 for a in range(n) for b in range(a + 1, n) if sequence[a] > sequence[b])


@lru_cache(maxsize=None)
def _dense_multinomial(parts: tuple[int, ...]) -> tuple[int, ...]:
    j = sum(parts)
    num = list(_dense_q_poch(j))
    for d in parts:
        num = _ddiv_exact(num, _dense_q_poch(d))
    return tuple(num)


def multinomial_coeffs(parts: Iterable[int]) -> tuple[int, ...]:
    """Dense coefficients of the quantum multinomial in powers of q^2."""
    key = tuple(sorted(p for p in parts if p))
    if any(p < 0 for p in key):
        raise ValueError("parts must be non-negative")
    return _dense_multinomial(key)


def quantum_multinomial(j: int, parts: Sequence[int]) -> LaurentPoly3:
    """[j; d_1, ..., d_m] = (q^2;q^2)_j / prod (q^2;q^2)_{d_i}."""
    parts = list(parts)
    if any(p < 0 for p in parts) or sum(parts) != j:
        raise ValueError(f"parts {parts} do not form a composition of {j}")
    result = LaurentPoly3.from_q_coeffs(multinomial_coeffs(parts))
    if os.environ.get("RTQ_DEBUG") and j <= 7:
        assert result == multinomial_by_inversions(parts), parts
    return result


def binomial_plus(j: int, d: int) -> LaurentPoly3:
    """[j; d]_+ = [j; d, j - d]; zero outside 0 <= d <= j."""
    if d < 0 or d > j:
        return ZERO
    return quantum_multinomial(j, [d, j - d])


def binomial_minus(j: int, d: int) -> LaurentPoly3:
    """[j; d]^- : the plus binomial with q replaced by q^{-1}."""
    return binomial_plus(j, d).invert_q()


def sequences_with_counts(parts: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All sequences with parts[k] copies of the symbol k+1 (distinct, lex order)."""
    counts = list(parts)
    n = sum(counts)
    seq: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(seq) == n:
            yield tuple(seq)
            return
        for k, c in enumerate(counts):
            if c:
                counts[k] -= 1
                seq.append(k + 1)
                yield from rec()
                seq.pop()
                counts[k] += 1

    return rec()


def multinomial_by_inversions(parts: Sequence[int]) -> LaurentPoly3:
    """Sum of q^{2 inv(sigma)} over all sequences with the given multiplicities."""
    out: dict[Exponent, int] = {}
    for s in sequences_with_counts(parts):
        k = (2 * inv_statistic(s), 0, 0)
        out[k] = out.get(k, 0) + 1
    return LaurentPoly3(out)


def verify_pochhammer_identity(x_squared: LaurentPoly3, d: Sequence[int]) -> bool:
    """Check the finite Pochhammer expansion for one composition ``d``.

    Both sides are multiplied by prod (q^2;q^2)_{d_i}, which turns every
    denominator on the right into a plus binomial [d_i; alpha_i]_+.
    ``x_squared`` must be a unit monomial so that q^{-1} x^2 stays Laurent.
    """
    if not x_squared.is_monomial():
        raise ValueError("x^2 must be a monomial")
    d = list(d)
    if any(k < 0 for k in d):
        raise ValueError("d must be non-negative")
    total = sum(d)
    lhs = ONE
    for k in range(total):
        lhs = lhs * (ONE - x_squared.shift(q=2 * k))
    step = -(x_squared.shift(q=-1))
    rhs = ZERO
    for alpha in product(*(range(k + 1) for k in d)):
        prefix = 0
        qexp = 0
        for i, a in enumerate(alpha):
            qexp += a * a + 2 * a * prefix
            prefix += d[i]
        term = (step ** sum(alpha)).shift(q=qexp)
        for a, k in zip(alpha, d):
            term = term * binomial_plus(k, a)
        rhs = rhs + term
    return lhs == rhs
