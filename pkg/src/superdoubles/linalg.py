"""Exact Gaussian-rational scalars and graded matrix calculus.

Everything in this package computes over the field Q(i): scalars are pairs
of arbitrary-precision rationals (real and imaginary part), so every check
is an exact equality, never a tolerance.

A ``Supermatrix`` is a square matrix over that field together with a graded
dimension ``(m | n)``: the first ``m`` basis slots are bosonic, the last
``n`` fermionic.  Block names follow the usual layout

    [ A  C ]      A: m x m   C: m x n
    [ D  B ]      D: n x m   B: n x n

The graded transpose and the superdeterminant (Berezinian) act on that
block structure; grades are always read off the position of an index, never
stored per entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularError

Rational = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class Scalar:
    """A Gaussian rational ``re + im*i`` with exact field operations."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "Scalar":
        """Coerce an int, Fraction or Scalar into a Scalar."""
        if isinstance(x, Scalar):
            return x
        return Scalar(_as_fraction(x))

    @staticmethod
    def imaginary(x) -> "Scalar":
        return Scalar(Fraction(0), _as_fraction(x))

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: "Scalar") -> "Scalar":
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "Scalar") -> "Scalar":
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    @property
    def is_imaginary(self) -> bool:
        """Purely imaginary, i.e. zero real part (zero counts)."""
        return self.re == 0

    def sort_key(self) -> tuple:
        return (self.re, self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            im = "i"
        elif self.im == -1:
            im = "-i"
        else:
            im = f"{self.im}*i"
        if self.re == 0:
            return im
        sign = "+" if self.im > 0 else "-"
        mag = im.lstrip("-")
        return f"{self.re}{sign}{mag}"

    def __repr__(self) -> str:
        return f"Scalar({self})"


ZERO = Scalar()
ONE = Scalar(Fraction(1))
MINUS_ONE = Scalar(Fraction(-1))
I = Scalar(Fraction(0), Fraction(1))

Matrix = tuple  # tuple[tuple[Scalar, ...], ...]; plain square/rectangular data


def mat(rows: Iterable[Iterable]) -> Matrix:
    """Build an immutable matrix of Scalars from nested iterables."""
    return tuple(tuple(Scalar.of(x) for x in row) for row in rows)


def mat_identity(size: int) -> Matrix:
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(size)) for i in range(size)
    )


def mat_zero(rows: int, cols: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if len(a) != len(b) or (a and len(a[0]) != len(b[0])):
        raise DimensionMismatch("matrix addition shape mismatch")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c: Scalar, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return ()
    if len(a[0]) != len(b):
        raise DimensionMismatch("matrix product shape mismatch")
    cols = range(len(b[0]))
    inner = range(len(b))
    return tuple(
        tuple(sum((row[k] * b[k][c] for k in inner), ZERO) for c in cols)
        for row in a
    )


def mat_transpose(a: Matrix) -> Matrix:
    if not a:
        return a
    return tuple(tuple(a[r][c] for r in range(len(a))) for c in range(len(a[0])))


def mat_det(a: Matrix) -> Scalar:
    """Determinant by fraction-free-enough Gaussian elimination (exact)."""
    size = len(a)
    if size == 0:
        return ONE
    if any(len(row) != size for row in a):
        raise DimensionMismatch("determinant of non-square matrix")
    work = [list(row) for row in a]
    det = ONE
    for col in range(size):
        pivot_row = next(
            (r for r in range(col, size) if not work[r][col].is_zero), None
        )
        if pivot_row is None:
            return ZERO
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        pivot = work[col][col]
        det = det * pivot
        for r in range(col + 1, size):
            if work[r][col].is_zero:
                continue
            factor = work[r][col] / pivot
            for c in range(col, size):
                work[r][c] = work[r][c] - factor * work[col][c]
    return det


def mat_inv(a: Matrix) -> Matrix:
    """Inverse by Gauss-Jordan elimination; raises SingularError."""
    size = len(a)
    if any(len(row) != size for row in a):
        raise DimensionMismatch("inverse of non-square matrix")
    work = [list(row) + list(ident_row) for row, ident_row in zip(a, mat_identity(size))]
    for col in range(size):
        pivot_row = next(
            (r for r in range(col, size) if not work[r][col].is_zero), None
        )
        if pivot_row is None:
            raise SingularError("matrix is singular")
        work[col], work[pivot_row] = work[pivot_row], work[col]
        pivot = work[col][col]
        work[col] = [x / pivot for x in work[col]]
        for r in range(size):
            if r == col or work[r][col].is_zero:
                continue
            factor = work[r][col]
            work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[size:]) for row in work)


def row_reduce(vectors: Sequence[Sequence[Scalar]]) -> list[tuple[Scalar, ...]]:
    """Reduced row-echelon basis of the span of the given vectors."""
    if not vectors:
        return []
    width = len(vectors[0])
    work: list[list[Scalar]] = [list(v) for v in vectors]
    basis: list[list[Scalar]] = []
    pivots: list[int] = []
    for vec in work:
        for piv, bvec in zip(pivots, basis):
            if not vec[piv].is_zero:
                factor = vec[piv]
                for c in range(width):
                    vec[c] = vec[c] - factor * bvec[c]
        lead = next((c for c in range(width) if not vec[c].is_zero), None)
        if lead is None:
            continue
        inv = vec[lead]
        vec = [x / inv for x in vec]
        for piv_idx, (piv, bvec) in enumerate(zip(pivots, basis)):
            if not bvec[lead].is_zero:
                factor = bvec[lead]
                basis[piv_idx] = [x - factor * y for x, y in zip(bvec, vec)]
        basis.append(vec)
        pivots.append(lead)
    order = sorted(range(len(basis)), key=lambda idx: pivots[idx])
    return [tuple(basis[idx]) for idx in order]


def rank(vectors: Sequence[Sequence[Scalar]]) -> int:
    return len(row_reduce(vectors))


def nullspace(rows: Sequence[Sequence[Scalar]], width: int) -> list[tuple[Scalar, ...]]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    echelon = row_reduce(rows) if rows else []
    pivots = []
    for vec in echelon:
        pivots.append(next(c for c in range(width) if not vec[c].is_zero))
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        sol = [ZERO] * width
        sol[fc] = ONE
        for piv, vec in zip(pivots, echelon):
            sol[piv] = -vec[fc]
        basis.append(tuple(sol))
    return basis


def grade_of(position: int, m: int) -> int:
    """Grade (0 bosonic, 1 fermionic) of a 0-based standard-basis position."""
    return 0 if position < m else 1


@dataclass(frozen=True)
class GradedIndex:
    """A 1-based basis index together with its grade in the standard basis."""

    position: int
    grade: int

    @staticmethod
    def standard(position: int, m: int) -> "GradedIndex":
        return GradedIndex(position, 0 if position <= m else 1)


@dataclass(frozen=True)
class Supermatrix:
    """Square matrix over Q(i) with graded dimension ``(m | n)``.

    ``rows`` holds the full (m+n) x (m+n) matrix; the four blocks are
    derived views.  Values are immutable; all operations return new
    instances.
    """

    m: int
    n: int
    rows: Matrix

    def __post_init__(self):
        size = self.m + self.n
        if len(self.rows) != size or any(len(r) != size for r in self.rows):
            raise DimensionMismatch(
                f"expected {size}x{size} entries for graded dimension "
                f"({self.m}|{self.n})"
            )

    @staticmethod
    def from_rows(m: int, n: int, rows: Iterable[Iterable]) -> "Supermatrix":
        return Supermatrix(m, n, mat(rows))

    @staticmethod
    def from_blocks(a, b, c, d) -> "Supermatrix":
        """Assemble from blocks A (m x m), B (n x n), C (m x n), D (n x m)."""
        a, b, c, d = mat(a), mat(b), mat(c), mat(d)
        m, n = len(a), len(b)
        rows = [tuple(a[r]) + tuple(c[r]) for r in range(m)]
        rows += [tuple(d[r]) + tuple(b[r]) for r in range(n)]
        return Supermatrix(m, n, tuple(rows))

    @staticmethod
    def identity(m: int, n: int) -> "Supermatrix":
        return Supermatrix(m, n, mat_identity(m + n))

    @property
    def size(self) -> int:
        return self.m + self.n

    @property
    def block_a(self) -> Matrix:
        return tuple(row[: self.m] for row in self.rows[: self.m])

    @property
    def block_b(self) -> Matrix:
        return tuple(row[self.m :] for row in self.rows[self.m :])

    @property
    def block_c(self) -> Matrix:
        return tuple(row[self.m :] for row in self.rows[: self.m])

    @property
    def block_d(self) -> Matrix:
        return tuple(row[: self.m] for row in self.rows[self.m :])

    def grade(self, position: int) -> int:
        """Grade of a 0-based row/column position."""
        return grade_of(position, self.m)

    def __matmul__(self, other: "Supermatrix") -> "Supermatrix":
        if (self.m, self.n) != (other.m, other.n):
            raise DimensionMismatch("graded dimensions differ")
        return Supermatrix(self.m, self.n, mat_mul(self.rows, other.rows))

    def mul(self, other: "Supermatrix") -> "Supermatrix":
        return self @ other

    def inverse(self) -> "Supermatrix":
        return Supermatrix(self.m, self.n, mat_inv(self.rows))

    def transpose(self) -> "Supermatrix":
        return Supermatrix(self.m, self.n, mat_transpose(self.rows))

    def supertranspose(self) -> "Supermatrix":
        """Graded transpose: A -> A^T, B -> B^T, C and D exchanged.

        The fermion-row/boson-column block of the result picks up a minus
        sign, so applying the operation twice negates both off-diagonal
        blocks while fixing the diagonal ones (the parity automorphism).
        """
        a = mat_transpose(self.block_a)
        b = mat_transpose(self.block_b)
        new_c = mat_transpose(self.block_d)
        new_d = mat_scale(MINUS_ONE, mat_transpose(self.block_c))
        return Supermatrix.from_blocks(a, b, new_c, new_d)

    def sdet(self) -> Scalar:
        """Superdeterminant (Berezinian).

        Uses det(A - C B^-1 D) / det(B) when det(B) != 0, otherwise
        det(A) / det(B - D A^-1 C) when det(A) != 0; raises SingularError
        when both diagonal blocks are singular.
        """
        det_b = mat_det(self.block_b)
        if not det_b.is_zero:
            inner = mat_add(
                self.block_a,
                mat_scale(
                    MINUS_ONE,
                    mat_mul(mat_mul(self.block_c, mat_inv(self.block_b)), self.block_d),
                ),
            ) if self.n else self.block_a
            return mat_det(inner) / det_b
        det_a = mat_det(self.block_a)
        if not det_a.is_zero:
            inner = mat_add(
                self.block_b,
                mat_scale(
                    MINUS_ONE,
                    mat_mul(mat_mul(self.block_d, mat_inv(self.block_a)), self.block_c),
                ),
            ) if self.m else self.block_b
            return det_a / mat_det(inner)
        raise SingularError("both diagonal blocks are singular; sdet undefined")

    def is_grading_preserving(self) -> bool:
        """True when both off-diagonal blocks vanish."""
        return all(x.is_zero for row in self.block_c for x in row) and all(
            x.is_zero for row in self.block_d for x in row
        )

    def is_real_form(self) -> bool:
        """Validation flag: A, B, C real while D is purely imaginary."""
        real_blocks = (self.block_a, self.block_b, self.block_c)
        if any(not x.is_real for block in real_blocks for row in block for x in row):
            return False
        return all(x.is_imaginary for row in self.block_d for x in row)

    def is_invertible(self) -> bool:
        return not mat_det(self.rows).is_zero
