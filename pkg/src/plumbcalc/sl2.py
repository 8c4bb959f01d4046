"""SL(2,Z) monodromy algebra for torus bundles.

A bundle is encoded by a word (a_1, ..., a_n) with a global sign, standing
for ``sign * T^{-a_1} S ... T^{-a_n} S`` in the generators
``T = [[1,1],[0,1]]`` and ``S = [[0,1],[-1,0]]``.  The trace classifies the
bundle (elliptic / parabolic / hyperbolic) and drives all the torsion
formulas downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .intmat import is_perfect_square

__all__ = [
    "SL2Element",
    "MonodromyWord",
    "BundleType",
    "TraceSign",
    "word_to_matrix",
    "classify",
    "torsion_order",
    "square_trace_check",
    "rotation_equivalent",
    "lex_min_rotation",
    "parse_word",
    "format_word",
]


@dataclass(frozen=True)
class SL2Element:
    """An element of SL(2,Z); the determinant is enforced at construction."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError("not-unimodular", "ad - bc must equal 1")

    @classmethod
    def identity(cls) -> "SL2Element":
        return cls(1, 0, 0, 1)

    @classmethod
    def t_power(cls, k: int) -> "SL2Element":
        return cls(1, k, 0, 1)

    def __matmul__(self, o: "SL2Element") -> "SL2Element":
        return SL2Element(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> "SL2Element":
        return SL2Element(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "SL2Element":
        return SL2Element(self.d, -self.b, -self.c, self.a)

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


T = SL2Element(1, 1, 0, 1)
S = SL2Element(0, 1, -1, 0)


@dataclass(frozen=True)
class MonodromyWord:
    """Word (a_1, ..., a_n) plus gluing sign; empty word encodes sign * I."""

    coeffs: tuple[int, ...]
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise DomainError("bad-sign", "sign must be +1 or -1")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))


def _factor(a: int) -> SL2Element:
    # T^{-a} S = [[a, 1], [-1, 0]]
    return SL2Element(a, 1, -1, 0)


def word_to_matrix(w: MonodromyWord) -> SL2Element:
    """Evaluate ``sign * T^{-a_1} S ... T^{-a_n} S`` exactly."""
    m = SL2Element.identity()
    for a in w.coeffs:
        m = m @ _factor(a)
    return -m if w.sign < 0 else m


class BundleType(Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


class TraceSign(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    ZERO = "zero-trace"


def classify(m: SL2Element) -> tuple[BundleType, TraceSign]:
    """Trace classification: |tr| < 2 elliptic, = 2 parabolic, > 2 hyperbolic;
    the second component records the sign of the trace."""
    t = m.trace
    if abs(t) < 2:
        kind = BundleType.ELLIPTIC
    elif abs(t) == 2:
        kind = BundleType.PARABOLIC
    else:
        kind = BundleType.HYPERBOLIC
    if t > 0:
        ts = TraceSign.POSITIVE
    elif t < 0:
        ts = TraceSign.NEGATIVE
    else:
        ts = TraceSign.ZERO
    return kind, ts


def torsion_order(m: SL2Element) -> int:
    """Order of the torsion of H_1 of the torus bundle with monodromy ``m``.

    Equals |tr(m) - 2| = |det(m - I)|; undefined (infinite torsion-free part)
    when tr(m) = 2.
    """
    t = m.trace
    if t == 2:
        raise DomainError(
            "parabolic-positive", "torsion formula degenerate for trace 2"
        )
    return abs(t - 2)


def square_trace_check(m: SL2Element) -> tuple[int, bool]:
    """For hyperbolic ``m``: the torsion order tr^2 - 4 of the squared bundle,
    and whether it is a perfect square (it never is for tr > 2)."""
    t = m.trace
    if abs(t) <= 2:
        raise DomainError("not-hyperbolic", "square-trace check needs |tr| > 2")
    value = t * t - 4
    return value, is_perfect_square(value)


def rotation_equivalent(a, b) -> bool:
    """True iff ``b`` is a cyclic rotation of ``a`` (conjugate words)."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    return any(a[r:] + a[:r] == b for r in range(len(a)))


def lex_min_rotation(seq) -> tuple:
    """The lexicographically smallest rotation; canonical form of a cyclic word."""
    s = tuple(seq)
    if not s:
        return s
    return min(s[r:] + s[:r] for r in range(len(s)))


def parse_word(text: str) -> MonodromyWord:
    """Parse the word syntax: ``3,2,2`` with optional leading ``-:`` for the
    negative gluing sign, e.g. ``-:2,2``.  An empty body encodes the identity."""
    text = text.strip()
    sign = 1
    if text.startswith("-:"):
        sign = -1
        text = text[2:]
    elif text.startswith("+:"):
        text = text[2:]
    if not text:
        return MonodromyWord((), sign)
    try:
        coeffs = tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise DomainError("word-syntax", f"bad word coefficient: {exc}") from exc
    return MonodromyWord(coeffs, sign)


def format_word(w: MonodromyWord) -> str:
    body = ",".join(str(c) for c in w.coeffs)
    return f"-:{body}" if w.sign < 0 else body
