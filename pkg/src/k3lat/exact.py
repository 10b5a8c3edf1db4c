"""Exact linear algebra over the rationals for symmetric matrices.

Everything here works with :class:`fractions.Fraction` entries, so results
are exact (arbitrary-precision integers, no rounding ever).  The three
workhorses are :func:`signature` (inertia via symmetric congruence
diagonalization), :func:`kernel_basis` (exact row reduction) and
:func:`inverse` (Gauss-Jordan).  All values are immutable and all functions
are pure; concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class SingularMatrixError(ZeroDivisionError):
    """Raised when a matrix that must be invertible has a kernel."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"matrix entries must be exact rationals, got {type(x).__name__}")


@dataclass(frozen=True)
class Signature:
    """Inertia of a symmetric form: counts of positive, negative and zero
    eigen-directions.  ``n_plus + n_minus + n_zero`` equals the dimension."""

    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def n(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_minus, self.n_zero)


class SymMatrix:
    """Immutable symmetric matrix with exact rational entries."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[Fraction | int]]):
        rows = tuple(tuple(_frac(x) for x in row) for row in rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i},{j})")
        self._rows = rows

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls([[Fraction(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "SymMatrix":
        return cls([[Fraction(0)] * n for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self._rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __eq__(self, other) -> bool:
        return isinstance(other, SymMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._rows)
        return f"SymMatrix[{body}]"

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return SymMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)]
        )

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return SymMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)]
        )

    def apply(self, vec: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(vec) != self.n:
            raise ValueError("dimension mismatch")
        v = [_frac(x) for x in vec]
        return tuple(sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in self._rows)

    def quadratic_form(self, vec: Sequence[Fraction | int]) -> Fraction:
        """Evaluate ``v^T M v`` exactly."""
        mv = self.apply(vec)
        return sum((_frac(x) * y for x, y in zip(vec, mv)), Fraction(0))

    def submatrix(self, indices: Sequence[int]) -> "SymMatrix":
        return SymMatrix([[self._rows[i][j] for j in indices] for i in indices])

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(row, Fraction(0)) for row in self._rows)

    def entry_sum(self) -> Fraction:
        return sum(self.row_sums(), Fraction(0))

    def positive_entry_sum(self) -> Fraction:
        return sum((x for row in self._rows for x in row if x > 0), Fraction(0))

    def min_entry(self) -> Fraction:
        if self.n == 0:
            return Fraction(0)
        return min(x for row in self._rows for x in row)


def diagonalizing_congruence(m: SymMatrix) -> tuple[Signature, tuple[tuple[Fraction, ...], ...]]:
    """Diagonalize ``m`` by a rational congruence and return its inertia.

    Returns ``(sig, P)`` where ``P`` is given as columns (a tuple of column
    vectors) with ``P^T m P`` diagonal.  Columns whose diagonal entry is
    positive are explicit witnesses of positive square.  Zero diagonals on
    every remaining candidate pivot are repaired symmetrically by adding a
    row and the matching column, which is valid over the rationals.
    """
    n = m.n
    a = [list(row) for row in m.rows()]
    # p[j] is the j-th column of the accumulated congruence transform
    p = [[Fraction(i == j) for i in range(n)] for j in range(n)]
    n_plus = n_minus = n_zero = 0
    k = 0
    while k < n:
        piv = next((r for r in range(k, n) if a[r][r] != 0), None)
        if piv is None:
            off = next(
                ((r, c) for r in range(k, n) for c in range(r + 1, n) if a[r][c] != 0),
                None,
            )
            if off is None:
                n_zero += n - k
                break
            r, c = off
            # a[r][r] becomes 2*a[r][c] != 0 after adding row/col c to row/col r
            for j in range(n):
                a[r][j] += a[c][j]
            for i in range(n):
                a[i][r] += a[i][c]
            for i in range(n):
                p[r][i] += p[c][i]
            piv = r
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for i in range(n):
                a[i][k], a[i][piv] = a[i][piv], a[i][k]
            p[k], p[piv] = p[piv], p[k]
        d = a[k][k]
        if d > 0:
            n_plus += 1
        else:
            n_minus += 1
        for r in range(k + 1, n):
            if a[r][k] != 0:
                f = a[r][k] / d
                for j in range(n):
                    a[r][j] -= f * a[k][j]
                for i in range(n):
                    a[i][r] -= f * a[i][k]
                for i in range(n):
                    p[r][i] -= f * p[k][i]
        k += 1
    sig = Signature(n_plus, n_minus, n_zero)
    return sig, tuple(tuple(col) for col in p)


def signature(m: SymMatrix) -> Signature:
    """Inertia of a symmetric matrix, computed exactly."""
    sig, _ = diagonalizing_congruence(m)
    return sig


def positive_square_vector(m: SymMatrix) -> tuple[Fraction, ...] | None:
    """A vector ``v`` with ``v^T m v > 0``, or None if the form is negative
    semi-definite."""
    sig, cols = diagonalizing_congruence(m)
    if sig.n_plus == 0:
        return None
    for col in cols:
        if m.quadratic_form(col) > 0:
            return col
    raise AssertionError("congruence transform lost its positive direction")


def _primitive_integer(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector with positive
    leading nonzero entry."""
    denom = 1
    for x in vec:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v != 0), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def kernel_basis(m: SymMatrix) -> list[tuple[int, ...]]:
    """Basis of ``{x : m x = 0}`` as primitive integer vectors.

    The list is empty exactly when ``m`` is nondegenerate.  Vectors are
    normalized to content 1 with positive leading entry and sorted
    lexicographically so output is deterministic.
    """
    n = m.n
    a = [list(row) for row in m.rows()]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][col]
        a[r] = [x / pv for x in a[r]]
        for i in range(n):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            vec[pc] = -a[ri][fc]
        basis.append(_primitive_integer(vec))
    return sorted(basis)


def inverse(m: SymMatrix) -> SymMatrix:
    """Exact inverse; raises :class:`SingularMatrixError` on a degenerate
    input."""
    n = m.n
    a = [list(row) + [Fraction(i == j) for j in range(n)] for i, row in enumerate(m.rows())]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return SymMatrix([row[n:] for row in a])


def outer_rank_one(vec: Sequence[Fraction], scale: Fraction) -> SymMatrix:
    """The symmetric rank-one matrix ``scale * vec vec^T``."""
    v = [_frac(x) for x in vec]
    return SymMatrix([[scale * vi * vj for vj in v] for vi in v])
