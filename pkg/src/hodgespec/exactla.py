"""Exact linear algebra over Q(i).

``ExactMatrix`` is a dense matrix of Gaussian rationals.  Internally a
matrix is stored as a pair of integer numerator grids plus one shared
positive denominator, reduced so the gcd of the denominator and every
numerator is 1; this keeps the hot kernels (product, rank) in pure
integer arithmetic and makes equality structural.  The public contract
is entirely in terms of ``GaussianRational`` entries.

Rank and kernels are computed by fraction-free elimination (rank) and
rational Gauss-Jordan (kernel, solve); positive definiteness is
certified by a rational LDL* factorization, never by floating point.
All values are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from . import kernels
from .errors import (
    DimensionMismatchError,
    NotHermitianError,
    NotPositiveDefiniteError,
    SingularMatrixError,
)
from .scalars import GaussianRational

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


class ExactMatrix:
    """Immutable dense matrix over the Gaussian rationals."""

    __slots__ = ("rows", "cols", "den", "_re", "_im")

    def __init__(self, rows, cols, den, re, im):
        """Internal constructor; use the ``from_*`` classmethods."""
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- construction ------------------------------------------------------

    @classmethod
    def _from_raw(cls, rows, cols, den, re, im) -> "ExactMatrix":
        """Normalize integer grids (content reduction) and freeze."""
        if den < 0:
            den = -den
            re = [[-v for v in row] for row in re]
            im = [[-v for v in row] for row in im]
        g = den
        for row in re:
            for v in row:
                if v:
                    g = gcd(g, v)
        for row in im:
            for v in row:
                if v:
                    g = gcd(g, v)
        if g > 1:
            den //= g
            re = [[v // g for v in row] for row in re]
            im = [[v // g for v in row] for row in im]
        return cls(
            rows,
            cols,
            den,
            tuple(tuple(row) for row in re),
            tuple(tuple(row) for row in im),
        )

    @classmethod
    def from_entries(cls, entries) -> "ExactMatrix":
        """Build from a rectangular iterable of scalars.

        Accepted scalars: ``GaussianRational``, ``Fraction``, ``int``.
        """
        grid = [[_as_gaussian(v) for v in row] for row in entries]
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        for row in grid:
            if len(row) != cols:
                raise DimensionMismatchError("ragged matrix input")
        den = 1
        for row in grid:
            for z in row:
                den = lcm(den, z.re.denominator, z.im.denominator)
        re = [[int(z.re * den) for z in row] for row in grid]
        im = [[int(z.im * den) for z in row] for row in grid]
        return cls._from_raw(rows, cols, den, re, im)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        z = tuple(tuple(0 for _ in range(cols)) for _ in range(rows))
        return cls(rows, cols, 1, z, z)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        re = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        im = tuple(tuple(0 for _ in range(n)) for _ in range(n))
        return cls(n, n, 1, re, im)

    @classmethod
    def diagonal(cls, values) -> "ExactMatrix":
        vals = [_as_gaussian(v) for v in values]
        n = len(vals)
        return cls.from_entries(
            [[vals[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @classmethod
    def scalar(cls, n: int, value) -> "ExactMatrix":
        return cls.diagonal([value] * n)

    @classmethod
    def from_columns(cls, columns, rows: int | None = None) -> "ExactMatrix":
        cols = list(columns)
        if not cols:
            if rows is None:
                raise DimensionMismatchError("row count needed for empty column set")
            return cls.zeros(rows, 0)
        return cls.from_entries(
            [[col[i] for col in cols] for i in range(len(cols[0]))]
        )

    # -- access ------------------------------------------------------------

    def entry(self, i: int, j: int) -> GaussianRational:
        return GaussianRational(
            Fraction(self._re[i][j], self.den), Fraction(self._im[i][j], self.den)
        )

    def to_entries(self) -> list[list[GaussianRational]]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def column(self, j: int) -> tuple[GaussianRational, ...]:
        return tuple(self.entry(i, j) for i in range(self.rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(not v for row in self._re for v in row) and all(
            not v for row in self._im for v in row
        )

    def is_diagonal(self) -> bool:
        for i in range(self.rows):
            for j in range(self.cols):
                if i != j and (self._re[i][j] or self._im[i][j]):
                    return False
        return True

    def first_nonzero(self):
        """(row, col, value) of the first nonzero entry, or None."""
        for i in range(self.rows):
            for j in range(self.cols):
                if self._re[i][j] or self._im[i][j]:
                    return (i, j, self.entry(i, j))
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.den == other.den
            and self._re == other._re
            and self._im == other._im
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.den, self._re, self._im))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, den={self.den})"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._require_same_shape(other)
        d = lcm(self.den, other.den)
        sa, sb = d // self.den, d // other.den
        re = [
            [sa * self._re[i][j] + sb * other._re[i][j] for j in range(self.cols)]
            for i in range(self.rows)
        ]
        im = [
            [sa * self._im[i][j] + sb * other._im[i][j] for j in range(self.cols)]
            for i in range(self.rows)
        ]
        return ExactMatrix._from_raw(self.rows, self.cols, d, re, im)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(
            self.rows,
            self.cols,
            self.den,
            tuple(tuple(-v for v in row) for row in self._re),
            tuple(tuple(-v for v in row) for row in self._im),
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        re, im = kernels.matmul(self._re, self._im, other._re, other._im)
        return ExactMatrix._from_raw(
            self.rows, other.cols, self.den * other.den, re, im
        )

    def scale(self, value) -> "ExactMatrix":
        z = _as_gaussian(value)
        if z.is_zero():
            return ExactMatrix.zeros(self.rows, self.cols)
        d = self.den * lcm(z.re.denominator, z.im.denominator)
        cr = int(z.re * (d // self.den))
        ci = int(z.im * (d // self.den))
        re = [
            [cr * self._re[i][j] - ci * self._im[i][j] for j in range(self.cols)]
            for i in range(self.rows)
        ]
        im = [
            [cr * self._im[i][j] + ci * self._re[i][j] for j in range(self.cols)]
            for i in range(self.rows)
        ]
        return ExactMatrix._from_raw(self.rows, self.cols, d, re, im)

    def times_i(self) -> "ExactMatrix":
        """Multiply by the imaginary unit (cheap rotation of the grids)."""
        return ExactMatrix(
            self.rows,
            self.cols,
            self.den,
            tuple(tuple(-v for v in row) for row in self._im),
            self._re,
        )

    def conjugate(self) -> "ExactMatrix":
        return ExactMatrix(
            self.rows,
            self.cols,
            self.den,
            self._re,
            tuple(tuple(-v for v in row) for row in self._im),
        )

    def transpose(self) -> "ExactMatrix":
        re = tuple(
            tuple(self._re[i][j] for i in range(self.rows)) for j in range(self.cols)
        )
        im = tuple(
            tuple(self._im[i][j] for i in range(self.rows)) for j in range(self.cols)
        )
        return ExactMatrix(self.cols, self.rows, self.den, re, im)

    def conj_transpose(self) -> "ExactMatrix":
        return self.transpose().conjugate()

    def scale_rows(self, factors) -> "ExactMatrix":
        """Multiply row i by the rational ``factors[i]``."""
        fr = [Fraction(f) for f in factors]
        if len(fr) != self.rows:
            raise DimensionMismatchError("one factor per row required")
        d = self.den * lcm(1, *(f.denominator for f in fr)) if fr else self.den
        mult = [int(f * (d // self.den)) for f in fr]
        re = [[mult[i] * v for v in self._re[i]] for i in range(self.rows)]
        im = [[mult[i] * v for v in self._im[i]] for i in range(self.rows)]
        return ExactMatrix._from_raw(self.rows, self.cols, d, re, im)

    def scale_cols(self, factors) -> "ExactMatrix":
        fr = [Fraction(f) for f in factors]
        if len(fr) != self.cols:
            raise DimensionMismatchError("one factor per column required")
        d = self.den * lcm(1, *(f.denominator for f in fr)) if fr else self.den
        mult = [int(f * (d // self.den)) for f in fr]
        re = [
            [mult[j] * self._re[i][j] for j in range(self.cols)]
            for i in range(self.rows)
        ]
        im = [
            [mult[j] * self._im[i][j] for j in range(self.cols)]
            for i in range(self.rows)
        ]
        return ExactMatrix._from_raw(self.rows, self.cols, d, re, im)

    # -- stacking ------------------------------------------------------------

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack needs equal row counts")
        d = lcm(self.den, other.den)
        sa, sb = d // self.den, d // other.den
        re = [
            [sa * v for v in self._re[i]] + [sb * v for v in other._re[i]]
            for i in range(self.rows)
        ]
        im = [
            [sa * v for v in self._im[i]] + [sb * v for v in other._im[i]]
            for i in range(self.rows)
        ]
        return ExactMatrix._from_raw(self.rows, self.cols + other.cols, d, re, im)

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise DimensionMismatchError("vstack needs equal column counts")
        d = lcm(self.den, other.den)
        sa, sb = d // self.den, d // other.den
        re = [[sa * v for v in row] for row in self._re] + [
            [sb * v for v in row] for row in other._re
        ]
        im = [[sa * v for v in row] for row in self._im] + [
            [sb * v for v in row] for row in other._im
        ]
        return ExactMatrix._from_raw(self.rows + other.rows, self.cols, d, re, im)

    def submatrix(self, row_indices, col_indices) -> "ExactMatrix":
        ri = list(row_indices)
        ci = list(col_indices)
        re = [[self._re[i][j] for j in ci] for i in ri]
        im = [[self._im[i][j] for j in ci] for i in ri]
        return ExactMatrix._from_raw(len(ri), len(ci), self.den, re, im)

    # -- internal helpers ------------------------------------------------------

    def _require_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shapes {self.shape} != {other.shape}")

    def _gaussian_rows(self) -> list[list[GaussianRational]]:
        """Rows as GaussianRational lists with the denominator dropped.

        Dropping the (positive) denominator changes nothing that the
        row-space routines below care about.
        """
        return [
            [
                GaussianRational(self._re[i][j], self._im[i][j])
                for j in range(self.cols)
            ]
            for i in range(self.rows)
        ]


def _as_gaussian(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")


# -- rank / kernel / solve ------------------------------------------------


def rank(m: ExactMatrix) -> int:
    """Exact rank over Q(i) via fraction-free elimination."""
    return kernels.rank(m._re, m._im)


def _rref(rows: list[list[GaussianRational]]):
    """In-place reduced row echelon form; returns pivot column list."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = _ONE / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def kernel_basis(m: ExactMatrix) -> list[tuple[GaussianRational, ...]]:
    """Deterministic basis of the right kernel.

    Each vector is scaled so its first nonzero coordinate is 1; the
    basis is ordered by the free column it comes from.
    """
    if m.cols == 0:
        return []
    if m.rows == 0:
        rows = []
        pivots = []
    else:
        rows = m._gaussian_rows()
        pivots = _rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [_ZERO] * m.cols
        vec[free] = _ONE
        for r, pc in enumerate(pivots):
            if pc < free:
                vec[pc] = -rows[r][free]
        lead = next(v for v in vec if v)
        basis.append(tuple(v / lead for v in vec))
    return basis


def column_space_basis(m: ExactMatrix) -> ExactMatrix:
    """Submatrix of the pivot columns (a basis of the column space)."""
    if m.rows == 0 or m.cols == 0:
        return ExactMatrix.zeros(m.rows, 0)
    rows = m._gaussian_rows()
    pivots = _rref(rows)
    return m.submatrix(range(m.rows), pivots)


def solve(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact solution X of a @ X = b for square invertible ``a``."""
    if a.rows != a.cols:
        raise DimensionMismatchError("solve requires a square matrix")
    if a.rows != b.rows:
        raise DimensionMismatchError("incompatible right-hand side")
    n = a.rows
    a_rows = a.to_entries()
    aug = [a_rows[i] + [b.entry(i, j) for j in range(b.cols)] for i in range(n)]
    pivots = _rref(aug)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    if n == 0:
        return ExactMatrix.zeros(0, b.cols)
    return ExactMatrix.from_entries([row[n:] for row in aug])


def inverse(a: ExactMatrix) -> ExactMatrix:
    return solve(a, ExactMatrix.identity(a.rows))


# -- Hermitian Grams -------------------------------------------------------


class HermitianGram:
    """A conjugate-symmetric Gram matrix with a cached LDL* certificate.

    Construction checks conjugate symmetry; positive definiteness is
    certified on first use of :meth:`ldlt` (all pivots must be positive
    rationals) and raises :class:`NotPositiveDefiniteError` otherwise.
    """

    __slots__ = ("matrix", "_ldlt", "_inverse", "_diag")

    def __init__(self, matrix: ExactMatrix):
        if matrix.rows != matrix.cols:
            raise NotHermitianError("Gram matrix must be square")
        if matrix != matrix.conj_transpose():
            raise NotHermitianError("Gram matrix is not conjugate-symmetric")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "_ldlt", None)
        object.__setattr__(self, "_inverse", None)
        object.__setattr__(self, "_diag", None)

    def __setattr__(self, name, value):
        raise AttributeError("HermitianGram is immutable")

    @classmethod
    def from_entries(cls, entries) -> "HermitianGram":
        return cls(ExactMatrix.from_entries(entries))

    @classmethod
    def diagonal(cls, values) -> "HermitianGram":
        return cls(ExactMatrix.diagonal(values))

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def is_diagonal(self) -> bool:
        if self._diag is None:
            object.__setattr__(self, "_diag", self.matrix.is_diagonal())
        return self._diag

    def diagonal_values(self) -> list[Fraction]:
        return [self.matrix.entry(i, i).re for i in range(self.dim)]

    def ldlt(self) -> tuple[ExactMatrix, list[Fraction]]:
        """L unit-lower-triangular and positive pivots D with L D L* = G."""
        if self._ldlt is None:
            object.__setattr__(self, "_ldlt", _ldlt_factor(self.matrix))
        return self._ldlt

    def validate(self) -> None:
        """Raise unless positive definite."""
        self.ldlt()

    def inverse(self) -> ExactMatrix:
        if self._inverse is None:
            self.validate()
            if self.is_diagonal():
                inv = ExactMatrix.diagonal([1 / d for d in self.diagonal_values()])
            else:
                inv = inverse(self.matrix)
            object.__setattr__(self, "_inverse", inv)
        return self._inverse

    def __eq__(self, other):
        if not isinstance(other, HermitianGram):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"HermitianGram(dim={self.dim})"


def _ldlt_factor(g: ExactMatrix):
    n = g.rows
    entries = g.to_entries()
    lower = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    pivots: list[Fraction] = []
    for j in range(n):
        s = entries[j][j]
        for k in range(j):
            s = s - lower[j][k] * lower[j][k].conjugate() * pivots[k]
        if s.im:
            raise NotHermitianError("diagonal of a Hermitian matrix must be real")
        d = s.re
        if d <= 0:
            raise NotPositiveDefiniteError(f"pivot {j} is {d}")
        pivots.append(d)
        for i in range(j + 1, n):
            t = entries[i][j]
            for k in range(j):
                t = t - lower[i][k] * lower[j][k].conjugate() * pivots[k]
            lower[i][j] = t / d
    return ExactMatrix.from_entries(lower), pivots


def ldlt(g: HermitianGram) -> tuple[ExactMatrix, list[Fraction]]:
    """Spec-level alias for :meth:`HermitianGram.ldlt`."""
    return g.ldlt()


def adjoint_wrt(
    m: ExactMatrix, g_domain: HermitianGram, g_codomain: HermitianGram
) -> ExactMatrix:
    """Metric adjoint: <m x, y>_cod = <x, A y>_dom for all x, y.

    ``m`` maps domain -> codomain, so its shape must be
    (codomain dim) x (domain dim); the result maps codomain -> domain.
    Concretely A = G_dom^-1 m^H G_cod, with a cheap path for diagonal
    Grams.
    """
    if m.rows != g_codomain.dim or m.cols != g_domain.dim:
        raise DimensionMismatchError(
            f"operator {m.shape} does not map dim {g_domain.dim} to {g_codomain.dim}"
        )
    g_domain.validate()
    g_codomain.validate()
    mh = m.conj_transpose()
    if g_domain.is_diagonal() and g_codomain.is_diagonal():
        dom = g_domain.diagonal_values()
        cod = g_codomain.diagonal_values()
        return mh.scale_rows([1 / d for d in dom]).scale_cols(cod)
    return solve(g_domain.matrix, mh @ g_codomain.matrix)
