"""Exact integer linear algebra.

All arithmetic uses Python's arbitrary-precision integers (exact rationals
inside the signature reduction); nothing here ever touches floating point.
This module provides the determinant / Smith normal form / signature kernel
that the monodromy, plumbing and obstruction layers build on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import DomainError

__all__ = [
    "IntMatrix",
    "SNFResult",
    "AbelianGroupDesc",
    "det",
    "snf",
    "smith_diagonal",
    "abelian_group_of",
    "rank",
    "signature",
    "is_perfect_square",
    "parse_matrix_text",
    "format_matrix_text",
    "inline_matrix",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix; entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DomainError("bad-shape", "matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise DomainError(
                "bad-shape",
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}",
            )

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DomainError("bad-shape", "ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DomainError("bad-shape", "inner dimensions differ")
        a, b = self.to_rows(), other.to_rows()
        entries = []
        for i in range(self.rows):
            ai = a[i]
            for j in range(other.cols):
                entries.append(sum(ai[k] * b[k][j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(entries))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.at(i, j) == self.at(j, i)
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.at(i, i) for i in range(min(self.rows, self.cols)))


@dataclass(frozen=True)
class SNFResult:
    """Smith normal form with unimodular certificates: ``u @ a @ v == d``."""

    d: IntMatrix
    u: IntMatrix
    v: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return self.d.diagonal()


@dataclass(frozen=True)
class AbelianGroupDesc:
    """A finitely generated abelian group: Z^free_rank plus cyclic factors.

    Torsion factors are >= 2 and form a divisibility chain, so the
    description is unique.
    """

    free_rank: int
    torsion_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise DomainError("bad-group", "free rank must be nonnegative")
        fs = self.torsion_factors
        if any(f < 2 for f in fs):
            raise DomainError("bad-group", "torsion factors must be >= 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise DomainError("bad-group", "torsion factors must form a divisor chain")

    @property
    def torsion_order(self) -> int:
        out = 1
        for f in self.torsion_factors:
            out *= f
        return out

    def describe(self) -> str:
        """Render as e.g. ``Z+Z/4`` or ``Z^2+Z/2+Z/2``; trivial group is ``0``."""
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{f}" for f in self.torsion_factors)
        return "+".join(parts) if parts else "0"


def _swap_rows(m: list[list[int]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: list[list[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _row_axpy(m: list[list[int]], dst: int, src: int, c: int) -> None:
    rd, rs = m[dst], m[src]
    for k in range(len(rd)):
        rd[k] += c * rs[k]


def _col_axpy(m: list[list[int]], dst: int, src: int, c: int) -> None:
    for row in m:
        row[dst] += c * row[src]


def _smith(mat: list[list[int]], track: bool):
    """Diagonalize ``mat`` in place by unimodular row/column operations.

    Pivot rule: smallest nonzero absolute value in the remaining block (keeps
    intermediate growth tame).  Returns ``(u, v)`` witnessing the reduction
    when ``track`` is set, else ``(None, None)``.
    """
    nr = len(mat)
    nc = len(mat[0]) if nr else 0
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)] if track else None
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)] if track else None

    for t in range(min(nr, nc)):
        # locate the smallest-magnitude nonzero pivot
        best = 0
        pi = pj = -1
        for i in range(t, nr):
            row = mat[i]
            for j in range(t, nc):
                x = row[j]
                if x and (pi < 0 or -best < x < best):
                    best = abs(x)
                    pi, pj = i, j
        if pi < 0:
            break
        if pi != t:
            _swap_rows(mat, t, pi)
            if track:
                _swap_rows(u, t, pi)
        if pj != t:
            _swap_cols(mat, t, pj)
            if track:
                _swap_cols(v, t, pj)

        while True:
            again = False
            for i in range(t + 1, nr):
                x = mat[i][t]
                if not x:
                    continue
                q = x // mat[t][t]
                if q:
                    _row_axpy(mat, i, t, -q)
                    if track:
                        _row_axpy(u, i, t, -q)
                if mat[i][t]:
                    # remainder is strictly smaller: promote it to the pivot
                    _swap_rows(mat, t, i)
                    if track:
                        _swap_rows(u, t, i)
                    again = True
            for j in range(t + 1, nc):
                x = mat[t][j]
                if not x:
                    continue
                q = x // mat[t][t]
                if q:
                    _col_axpy(mat, j, t, -q)
                    if track:
                        _col_axpy(v, j, t, -q)
                if mat[t][j]:
                    _swap_cols(mat, t, j)
                    if track:
                        _swap_cols(v, t, j)
                    again = True
            if again:
                continue
            # enforce the divisor chain: pivot must divide the whole block
            p = mat[t][t]
            dirty = False
            for i in range(t + 1, nr):
                row = mat[i]
                for j in range(t + 1, nc):
                    if row[j] % p:
                        _row_axpy(mat, t, i, 1)
                        if track:
                            _row_axpy(u, t, i, 1)
                        dirty = True
                        break
                if dirty:
                    break
            if not dirty:
                break
        if mat[t][t] < 0:
            for k in range(nc):
                mat[t][k] = -mat[t][k]
            if track:
                for k in range(nr):
                    u[t][k] = -u[t][k]
    return u, v


def smith_diagonal(m: IntMatrix) -> tuple[int, ...]:
    """Invariant factors of ``m`` (nonnegative, divisor chain), without the
    unimodular witnesses.  Cheaper than :func:`snf` for bulk homology work."""
    work = m.to_rows()
    _smith(work, track=False)
    return tuple(work[i][i] for i in range(min(m.rows, m.cols)))


def snf(m: IntMatrix) -> SNFResult:
    """Smith normal form with certificates.

    Returns ``SNFResult(d, u, v)`` with ``u @ m @ v == d``, ``u`` and ``v``
    unimodular, and ``d`` diagonal with nonnegative entries in a divisor
    chain.  ``d`` is the unique such diagonal.
    """
    work = m.to_rows()
    u, v = _smith(work, track=True)
    d = [[work[i][j] if i == j else 0 for j in range(m.cols)] for i in range(m.rows)]
    return SNFResult(
        d=IntMatrix(m.rows, m.cols, tuple(x for r in d for x in r)),
        u=IntMatrix(m.rows, m.rows, tuple(x for r in u for x in r)),
        v=IntMatrix(m.cols, m.cols, tuple(x for r in v for x in r)),
    )


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise DomainError("non-square", "determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - aik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank(m: IntMatrix) -> int:
    """Rank over Q (equivalently over Z), via the invariant factors."""
    return sum(1 for x in smith_diagonal(m) if x)


def abelian_group_of(m: IntMatrix) -> AbelianGroupDesc:
    """Cokernel of ``m`` acting by column relations on Z^rows.

    ``free_rank = rows - rank(m)``; the torsion factors are the invariant
    factors that exceed 1.
    """
    diag = smith_diagonal(m)
    r = sum(1 for x in diag if x)
    return AbelianGroupDesc(m.rows - r, tuple(x for x in diag if x > 1))


def signature(m: IntMatrix) -> int:
    """Signature of a symmetric matrix by exact rational congruence reduction.

    Nonzero diagonal entries are split off one at a time; when the diagonal
    is identically zero a nonzero off-diagonal pair spans a hyperbolic
    summand contributing 0.
    """
    if not m.is_square:
        raise DomainError("non-square", "signature needs a square matrix")
    if not m.is_symmetric:
        raise DomainError("non-symmetric", "signature needs a symmetric matrix")
    a = [[Fraction(x) for x in row] for row in m.to_rows()]
    sig = 0
    while a:
        n = len(a)
        i_diag = next((i for i in range(n) if a[i][i]), None)
        if i_diag is not None:
            d = a[i_diag][i_diag]
            sig += 1 if d > 0 else -1
            keep = [k for k in range(n) if k != i_diag]
            a = [
                [a[r][c] - a[r][i_diag] * a[i_diag][c] / d for c in keep]
                for r in keep
            ]
            continue
        pair = next(
            ((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j]), None
        )
        if pair is None:
            break  # remaining block is zero
        i, j = pair
        b = a[i][j]
        # clear every other row/column against the hyperbolic pair (e_i, e_j)
        for k in range(n):
            if k in (i, j):
                continue
            c = -a[k][i] / b
            if c:
                for l in range(n):
                    a[k][l] += c * a[j][l]
                for l in range(n):
                    a[l][k] += c * a[l][j]
            c = -a[k][j] / b
            if c:
                for l in range(n):
                    a[k][l] += c * a[i][l]
                for l in range(n):
                    a[l][k] += c * a[l][i]
        keep = [k for k in range(n) if k not in (i, j)]
        a = [[a[r][c] for c in keep] for r in keep]
    return sig


def is_perfect_square(n: int) -> bool:
    """True iff ``n = s*s`` for some integer ``s`` (exact, no floats)."""
    if n < 0:
        return False
    s = isqrt(n)
    return s * s == n


def parse_matrix_text(text: str) -> IntMatrix:
    """Parse the matrix interchange format: ``rows cols`` then the entries,
    whitespace-separated in row-major order."""
    tokens = text.split()
    if len(tokens) < 2:
        raise DomainError("matrix-syntax", "expected 'rows cols' header")
    try:
        nr, nc = int(tokens[0]), int(tokens[1])
        entries = [int(t) for t in tokens[2:]]
    except ValueError as exc:
        raise DomainError("matrix-syntax", f"non-integer token: {exc}") from exc
    if nr < 0 or nc < 0:
        raise DomainError("matrix-syntax", "negative dimensions")
    if len(entries) != nr * nc:
        raise DomainError(
            "matrix-syntax", f"expected {nr * nc} entries, got {len(entries)}"
        )
    return IntMatrix(nr, nc, tuple(entries))


def format_matrix_text(m: IntMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    lines.extend(" ".join(str(x) for x in row) for row in m.to_rows())
    return "\n".join(lines)


def inline_matrix(m: IntMatrix) -> str:
    """Single-line rendering for CLI output: rows joined by ';', entries by ','."""
    return ";".join(",".join(str(x) for x in row) for row in m.to_rows())
