"""Dense complex matrices over two scalar backends.

The ``exact`` backend stores Gaussian rationals and decides rank, PSD-ness,
determinants and pseudoinverses with no rounding: rank and determinants use
fraction-free Bareiss elimination over Gaussian integers (after clearing
denominators), PSD certification uses a diagonally pivoted LDL*-style
fraction-free elimination, and solves use reduced row echelon form over
rationals.  The ``float`` backend stores complex128 arrays and relies on
numpy's SVD/eigh with the usual ``max(m, n) * eps * sigma_max`` rank cutoff.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ..errors import BackendError, DimensionMismatchError
from .scalar import GaussianRational, QQ_ONE, QQ_ZERO

EXACT = "exact"
FLOAT = "float"

_EPS = float(np.finfo(np.float64).eps)


def default_rank_tol(rows: int, cols: int, smax: float) -> float:
    """Singular-value cutoff for numerical rank: max(m, n) * eps * sigma_max."""
    return max(rows, cols, 1) * _EPS * smax


class Matrix:
    """Immutable dense matrix tagged with its scalar backend.

    ``rows >= 1``; ``cols >= 0`` (zero-column matrices carry rank-0 subspace
    bases).  Use :meth:`exact` / :meth:`from_float` or the shape constructors.
    """

    __slots__ = ("rows", "cols", "backend", "_x", "_f")

    def __init__(self, rows, cols, backend, _x=None, _f=None):
        if rows < 1:
            raise ValueError("matrix needs at least one row")
        if cols < 0:
            raise ValueError("negative column count")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "_x", _x)
        object.__setattr__(self, "_f", _f)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @classmethod
    def exact(cls, data: Iterable[Iterable]) -> "Matrix":
        rows = tuple(
            tuple(GaussianRational.coerce(v) for v in row) for row in data
        )
        if not rows:
            raise ValueError("matrix needs at least one row")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, EXACT, _x=rows)

    @classmethod
    def from_float(cls, data) -> "Matrix":
        arr = np.array(data, dtype=np.complex128, order="C")
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        if arr.shape[0] < 1:
            raise ValueError("matrix needs at least one row")
        if arr.size and not np.all(np.isfinite(arr)):
            raise ValueError("non-finite entry in float matrix")
        arr.flags.writeable = False
        return cls(arr.shape[0], arr.shape[1], FLOAT, _f=arr)

    @classmethod
    def zeros(cls, rows: int, cols: int, backend: str = EXACT) -> "Matrix":
        if backend == EXACT:
            return cls.exact([[0] * cols for _ in range(rows)])
        return cls.from_float(np.zeros((rows, cols), dtype=np.complex128))

    @classmethod
    def identity(cls, n: int, backend: str = EXACT) -> "Matrix":
        if backend == EXACT:
            return cls.exact(
                [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            )
        return cls.from_float(np.eye(n, dtype=np.complex128))

    @classmethod
    def diag(cls, values: Sequence, backend: str = EXACT) -> "Matrix":
        n = len(values)
        if backend == EXACT:
            return cls.exact(
                [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
            )
        return cls.from_float(np.diag(np.asarray(values, dtype=np.complex128)))

    @classmethod
    def column_vector(cls, values: Sequence, backend: str = EXACT) -> "Matrix":
        if backend == EXACT:
            return cls.exact([[v] for v in values])
        return cls.from_float(np.asarray(values, dtype=np.complex128).reshape(-1, 1))

    @classmethod
    def hstack(cls, parts: Sequence["Matrix"]) -> "Matrix":
        if not parts:
            raise ValueError("nothing to stack")
        backend = parts[0].backend
        rows = parts[0].rows
        if any(p.backend != backend or p.rows != rows for p in parts):
            raise DimensionMismatchError("hstack needs matching backends and row counts")
        if backend == EXACT:
            data = [
                tuple(v for p in parts for v in p._x[i]) for i in range(rows)
            ]
            return cls(rows, sum(p.cols for p in parts), EXACT, _x=tuple(data))
        return cls.from_float(np.hstack([p._f for p in parts]))

    # ------------------------------------------------------------------
    # access
    # ------------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def array(self) -> np.ndarray:
        """Read-only complex128 view (converting when exact)."""
        if self.backend == FLOAT:
            return self._f
        arr = np.array(
            [[complex(v) for v in row] for row in self._x], dtype=np.complex128
        )
        arr.flags.writeable = False
        return arr

    @property
    def exact_rows(self) -> tuple:
        self._need(EXACT)
        return self._x

    def entry(self, i: int, j: int):
        if self.backend == EXACT:
            return self._x[i][j]
        return complex(self._f[i, j])

    def column(self, j: int) -> "Matrix":
        if self.backend == EXACT:
            return Matrix(self.rows, 1, EXACT, _x=tuple((r[j],) for r in self._x))
        return Matrix.from_float(self._f[:, j : j + 1])

    def take_columns(self, idx: Sequence[int]) -> "Matrix":
        if self.backend == EXACT:
            data = tuple(tuple(row[j] for j in idx) for row in self._x)
            return Matrix(self.rows, len(idx), EXACT, _x=data)
        return Matrix.from_float(self._f[:, list(idx)])

    def column_entries(self, j: int) -> tuple:
        """Entries of column j as a tuple of scalars."""
        if self.backend == EXACT:
            return tuple(r[j] for r in self._x)
        return tuple(complex(v) for v in self._f[:, j])

    def _need(self, backend: str) -> None:
        if self.backend != backend:
            raise BackendError(f"operation requires the {backend} backend")

    # ------------------------------------------------------------------
    # conversions
    # ------------------------------------------------------------------

    def to_float(self) -> "Matrix":
        if self.backend == FLOAT:
            return self
        return Matrix.from_float(self.array)

    def to_exact(self) -> "Matrix":
        if self.backend == EXACT:
            return self
        data = [
            [
                GaussianRational(Fraction(float(v.real)), Fraction(float(v.imag)))
                for v in row
            ]
            for row in self._f
        ]
        return Matrix.exact(data)

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def _binary_check(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if self.backend != other.backend:
            raise BackendError("mixed backends; convert explicitly first")
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._binary_check(other)
        if self.backend == EXACT:
            data = tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self._x, other._x)
            )
            return Matrix(self.rows, self.cols, EXACT, _x=data)
        return Matrix.from_float(self._f + other._f)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._binary_check(other)
        if self.backend == EXACT:
            data = tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self._x, other._x)
            )
            return Matrix(self.rows, self.cols, EXACT, _x=data)
        return Matrix.from_float(self._f - other._f)

    def __neg__(self) -> "Matrix":
        if self.backend == EXACT:
            data = tuple(tuple(-a for a in row) for row in self._x)
            return Matrix(self.rows, self.cols, EXACT, _x=data)
        return Matrix.from_float(-self._f)

    def scale(self, s) -> "Matrix":
        if self.backend == EXACT:
            s = GaussianRational.coerce(s)
            data = tuple(tuple(s * a for a in row) for row in self._x)
            return Matrix(self.rows, self.cols, EXACT, _x=data)
        return Matrix.from_float(complex(s) * self._f)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if self.backend != other.backend:
            raise BackendError("mixed backends; convert explicitly first")
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        if self.backend == FLOAT:
            return Matrix.from_float(self._f @ other._f)
        if self.cols == 0:
            return Matrix.zeros(self.rows, other.cols, EXACT)
        bt = list(zip(*other._x))  # columns of other
        data = tuple(
            tuple(_dot(row, col) for col in bt) for row in self._x
        )
        return Matrix(self.rows, other.cols, EXACT, _x=data)

    def conj(self) -> "Matrix":
        """Entrywise complex conjugate."""
        if self.backend == EXACT:
            data = tuple(tuple(a.conjugate() for a in row) for row in self._x)
            return Matrix(self.rows, self.cols, EXACT, _x=data)
        return Matrix.from_float(np.conj(self._f))

    @property
    def H(self) -> "Matrix":
        """Conjugate transpose."""
        if self.backend == EXACT:
            if self.cols == 0:
                raise ValueError("cannot transpose a zero-column matrix into zero rows")
            data = tuple(
                tuple(self._x[i][j].conjugate() for i in range(self.rows))
                for j in range(self.cols)
            )
            return Matrix(self.cols, self.rows, EXACT, _x=data)
        return Matrix.from_float(self._f.conj().T)

    def trace(self):
        if self.backend == EXACT:
            t = QQ_ZERO
            for i in range(min(self.rows, self.cols)):
                t = t + self._x[i][i]
            return t
        return complex(np.trace(self._f))

    # ------------------------------------------------------------------
    # comparisons and norms
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.backend != other.backend or self.shape != other.shape:
            return False
        if self.backend == EXACT:
            return self._x == other._x
        return bool(np.array_equal(self._f, other._f))

    def __hash__(self) -> int:
        if self.backend == EXACT:
            return hash((self.rows, self.cols, self._x))
        return hash((self.rows, self.cols, self._f.tobytes()))

    def allclose(self, other: "Matrix", tol: float = 1e-12) -> bool:
        if self.shape != other.shape:
            return False
        a, b = self.array, other.array
        scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
        return bool(np.max(np.abs(a - b)) <= tol * scale) if a.size else True

    def norm(self) -> float:
        """Spectral norm (largest singular value); 0 for empty matrices."""
        a = self.array
        if a.size == 0:
            return 0.0
        return float(np.linalg.norm(a, 2))

    def max_abs(self) -> float:
        a = self.array
        return float(np.max(np.abs(a))) if a.size else 0.0

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.backend == EXACT:
            return all(not v for row in self._x for v in row)
        return self.max_abs() <= tol

    def is_hermitian(self, tol: float = 0.0) -> bool:
        if not self.is_square:
            return False
        if self.backend == EXACT:
            for i in range(self.rows):
                for j in range(i, self.cols):
                    if self._x[i][j] != self._x[j][i].conjugate():
                        return False
            return True
        scale = max(1.0, self.max_abs())
        return bool(np.max(np.abs(self._f - self._f.conj().T)) <= tol * scale)

    def hermitize(self) -> "Matrix":
        """(A + A*) / 2 — useful to scrub float asymmetry."""
        if self.backend == EXACT:
            return (self + self.H).scale(Fraction(1, 2))
        return Matrix.from_float((self._f + self._f.conj().T) / 2.0)

    # ------------------------------------------------------------------
    # rank / elimination
    # ------------------------------------------------------------------

    def rank(self, tol: float | None = None) -> int:
        if self.cols == 0:
            return 0
        if self.backend == EXACT:
            grid = _int_grid(self._x)
            r, _ = _bareiss_rank_pivots(grid, self.rows, self.cols, want_pivots=False)
            return r
        return _float_rank(self._f, tol)

    def pivot_columns(self) -> tuple[int, ...]:
        """Column indices where exact elimination places pivots."""
        self._need(EXACT)
        if self.cols == 0:
            return ()
        grid = _int_grid(self._x)
        _, piv = _bareiss_rank_pivots(grid, self.rows, self.cols, want_pivots=True)
        return tuple(piv)

    def det(self) -> GaussianRational:
        """Exact determinant (exact backend, square)."""
        self._need(EXACT)
        if not self.is_square:
            raise DimensionMismatchError("determinant needs a square matrix")
        grid, scale = _int_grid_scaled(self._x)
        d_re, d_im = _bareiss_det(grid, self.rows)
        denom = scale**self.rows
        return GaussianRational(Fraction(d_re, denom), Fraction(d_im, denom))

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns (exact backend)."""
        self._need(EXACT)
        work = [list(row) for row in self._x]
        pivots = _rref_inplace(work, self.rows, self.cols)
        data = tuple(tuple(row) for row in work)
        return Matrix(self.rows, self.cols, EXACT, _x=data), tuple(pivots)

    def null_space(self, tol: float | None = None) -> "Matrix":
        """Basis of the kernel as matrix columns (zero columns if trivial)."""
        if self.cols == 0:
            raise DimensionMismatchError("kernel of a zero-column matrix is degenerate")
        if self.backend == EXACT:
            return _exact_null_space(self)
        a = self._f
        u, s, vh = np.linalg.svd(a)
        cut = tol if tol is not None else default_rank_tol(self.rows, self.cols, s[0] if s.size else 0.0)
        r = int(np.sum(s > cut)) if s.size else 0
        basis = vh[r:].conj().T
        return Matrix.from_float(basis)

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise DimensionMismatchError("inverse needs a square matrix")
        if self.backend == FLOAT:
            return Matrix.from_float(np.linalg.inv(self._f))
        n = self.rows
        work = [list(self._x[i]) + [QQ_ONE if i == j else QQ_ZERO for j in range(n)] for i in range(n)]
        pivots = _rref_inplace(work, n, 2 * n)
        if list(pivots[:n]) != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        data = tuple(tuple(row[n:]) for row in work)
        return Matrix(n, n, EXACT, _x=data)

    def pinv(self, tol: float | None = None) -> "Matrix":
        """Moore–Penrose pseudoinverse.

        Exact backend: full-rank factorization m = F G (pivot columns times
        nonzero echelon rows) and m+ = G* (F* m G*)^{-1} F*.  Float backend:
        numpy's SVD-based pinv with the standard cutoff.
        """
        if self.backend == FLOAT:
            a = self._f
            if a.size == 0 or not a.any():
                return Matrix.from_float(np.zeros((self.cols, self.rows), dtype=np.complex128))
            smax = float(np.linalg.norm(a, 2))
            cut = tol if tol is not None else default_rank_tol(self.rows, self.cols, smax)
            return Matrix.from_float(np.linalg.pinv(a, rcond=cut / smax if smax else 0.0))
        if self.cols == 0:
            raise DimensionMismatchError("pseudoinverse of a zero-column matrix is empty")
        red, pivots = self.rref()
        r = len(pivots)
        if r == 0:
            return Matrix.zeros(self.cols, self.rows, EXACT)
        f = self.take_columns(pivots)                      # rows x r
        g = Matrix(r, self.cols, EXACT, _x=red._x[:r])     # r x cols
        core = (f.H @ self @ g.H).inverse()                # r x r
        return g.H @ core @ f.H


def _dot(row, col):
    acc = QQ_ZERO
    for a, b in zip(row, col):
        if a and b:
            acc = acc + a * b
    return acc


def _empty(rows: int) -> np.ndarray:
    arr = np.zeros((rows, 0), dtype=np.complex128)
    arr.flags.writeable = False
    return arr


# ----------------------------------------------------------------------
# exact kernels (Gaussian-integer fraction-free elimination)
# ----------------------------------------------------------------------


def _int_grid(rows) -> list[list[tuple[int, int]]]:
    grid, _ = _int_grid_scaled(rows)
    return grid


def _int_grid_scaled(rows) -> tuple[list[list[tuple[int, int]]], int]:
    """Clear denominators: return Gaussian-integer grid and the positive scale."""
    scale = 1
    for row in rows:
        for v in row:
            d = v.re.denominator
            if d != 1:
                scale = scale * d // _gcd(scale, d)
            d = v.im.denominator
            if d != 1:
                scale = scale * d // _gcd(scale, d)
    grid = []
    for row in rows:
        out = []
        for v in row:
            out.append(
                (
                    v.re.numerator * (scale // v.re.denominator),
                    v.im.numerator * (scale // v.im.denominator),
                )
            )
        grid.append(out)
    return grid, scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _gmul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gdiv_exact(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    """Exact Gaussian-integer division; Bareiss guarantees divisibility."""
    n = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    qr, rr = divmod(re, n)
    qi, ri = divmod(im, n)
    if rr or ri:
        raise ArithmeticError("non-exact division in fraction-free elimination")
    return (qr, qi)


def _bareiss_rank_pivots(grid, m, n, want_pivots=False):
    """Fraction-free row elimination; returns (rank, pivot column list)."""
    prev = (1, 0)
    r = 0
    pivots = []
    for c in range(n):
        pr = None
        for i in range(r, m):
            if grid[i][c] != (0, 0):
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            grid[r], grid[pr] = grid[pr], grid[r]
        piv = grid[r][c]
        for i in range(r + 1, m):
            gic = grid[i][c]
            row_i = grid[i]
            row_r = grid[r]
            if gic == (0, 0):
                for j in range(c + 1, n):
                    row_i[j] = _gdiv_exact(_gmul(piv, row_i[j]), prev)
            else:
                for j in range(c + 1, n):
                    num = _gmul(piv, row_i[j])
                    sub = _gmul(gic, row_r[j])
                    row_i[j] = _gdiv_exact((num[0] - sub[0], num[1] - sub[1]), prev)
                row_i[c] = (0, 0)
        prev = piv
        r += 1
        if want_pivots:
            pivots.append(c)
        if r == m:
            break
    return r, pivots


def _bareiss_det(grid, n) -> tuple[int, int]:
    """Determinant of a square Gaussian-integer grid (fraction-free)."""
    prev = (1, 0)
    sign = 1
    for c in range(n):
        pr = None
        for i in range(c, n):
            if grid[i][c] != (0, 0):
                pr = i
                break
        if pr is None:
            return (0, 0)
        if pr != c:
            grid[c], grid[pr] = grid[pr], grid[c]
            sign = -sign
        piv = grid[c][c]
        for i in range(c + 1, n):
            gic = grid[i][c]
            for j in range(c + 1, n):
                num = _gmul(piv, grid[i][j])
                sub = _gmul(gic, grid[c][j])
                grid[i][j] = _gdiv_exact((num[0] - sub[0], num[1] - sub[1]), prev)
            grid[i][c] = (0, 0)
        prev = piv
    d = grid[n - 1][n - 1]
    return (sign * d[0], sign * d[1])


def psd_certify_exact(m: Matrix) -> tuple[bool, int]:
    """Exact PSD certificate via diagonally pivoted fraction-free LDL*.

    Returns (is_psd, rank).  Pivots are successive ratios of principal minors
    of the (symmetrically permuted) matrix; positivity of every pivot plus a
    vanishing trailing block is equivalent to PSD-ness, and the pivot count
    is the rank.  Non-Hermitian input returns (False, 0).
    """
    if not m.is_hermitian():
        return (False, 0)
    n = m.rows
    grid, _ = _int_grid_scaled(m.exact_rows)
    active = list(range(n))
    prev_re = 1
    rank = 0
    while active:
        pivot_idx = None
        pivot_val = 0
        for i in active:
            d_re, d_im = grid[i][i]
            if d_im != 0:
                raise ArithmeticError("non-real diagonal on a Hermitian grid")
            if d_re < 0:
                return (False, rank)
            if d_re > pivot_val:
                pivot_val = d_re
                pivot_idx = i
        if pivot_idx is None:
            # all remaining diagonal entries vanish: PSD iff the block is zero
            for i in active:
                for j in active:
                    if grid[i][j] != (0, 0):
                        return (False, rank)
            return (True, rank)
        p = (pivot_val, 0)
        active.remove(pivot_idx)
        for i in active:
            gip = grid[i][pivot_idx]
            for j in active:
                num = _gmul(p, grid[i][j])
                sub = _gmul(gip, grid[pivot_idx][j])
                grid[i][j] = _gdiv_exact(
                    (num[0] - sub[0], num[1] - sub[1]), (prev_re, 0)
                )
        prev_re = pivot_val
        rank += 1
    return (True, rank)


def _rref_inplace(work: list[list[GaussianRational]], m: int, n: int) -> list[int]:
    """Reduced row echelon form over Gaussian rationals; returns pivot columns."""
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if work[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            work[r], work[pr] = work[pr], work[r]
        inv = QQ_ONE / work[r][c]
        work[r] = [inv * v for v in work[r]]
        for i in range(m):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def _exact_null_space(m: Matrix) -> Matrix:
    red, pivots = m.rref()
    free = [c for c in range(m.cols) if c not in pivots]
    if not free:
        return Matrix(m.cols, 0, EXACT, _x=tuple(() for _ in range(m.cols)))
    cols = []
    for fc in free:
        vec = [QQ_ZERO] * m.cols
        vec[fc] = QQ_ONE
        for i, pc in enumerate(pivots):
            vec[pc] = -red.exact_rows[i][fc]
        cols.append(vec)
    data = tuple(tuple(col[i] for col in cols) for i in range(m.cols))
    return Matrix(m.cols, len(free), EXACT, _x=data)


# ----------------------------------------------------------------------
# float kernels
# ----------------------------------------------------------------------


def _float_rank(a: np.ndarray, tol: float | None) -> int:
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    cut = tol if tol is not None else default_rank_tol(a.shape[0], a.shape[1], float(s[0]))
    return int(np.sum(s > cut))
