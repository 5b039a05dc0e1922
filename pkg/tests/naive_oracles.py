"""Independent reference implementations used to pin expected test values.

Everything here is deliberately naive — cofactor determinants, textbook
Gaussian elimination over hand-rolled complex rationals, bisection for the
smallest domination constant — so the package under test is checked against
code that shares none of its algorithms.
"""

from fractions import Fraction

CZERO = (Fraction(0), Fraction(0))
CONE = (Fraction(1), Fraction(0))


def cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def csub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cdiv(a, b):
    d = b[0] * b[0] + b[1] * b[1]
    if d == 0:
        raise ZeroDivisionError
    return ((a[0] * b[0] + a[1] * b[1]) / d, (a[1] * b[0] - a[0] * b[1]) / d)


def grid_of(m):
    """Matrix -> list of lists of (Fraction re, Fraction im) pairs."""
    return [
        [(m.entry(i, j).re, m.entry(i, j).im) for j in range(m.cols)]
        for i in range(m.rows)
    ]


def naive_det(grid):
    """Cofactor expansion along the first row."""
    n = len(grid)
    if n == 1:
        return grid[0][0]
    total = CZERO
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in grid[1:]]
        term = cmul(grid[0][j], naive_det(minor))
        if j % 2:
            term = (-term[0], -term[1])
        total = cadd(total, term)
    return total


def naive_rank(grid):
    """Row reduction with exact arithmetic; counts nonzero pivot rows."""
    work = [list(row) for row in grid]
    rows = len(work)
    cols = len(work[0]) if rows else 0
    rank = 0
    for col in range(cols):
        pivot_row = None
        for r in range(rank, rows):
            if work[r][col] != CZERO:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        pivot = work[rank][col]
        for r in range(rows):
            if r == rank or work[r][col] == CZERO:
                continue
            factor = cdiv(work[r][col], pivot)
            work[r] = [csub(work[r][c], cmul(factor, work[rank][c])) for c in range(cols)]
        rank += 1
        if rank == rows:
            break
    return rank


def min_constant_bisect(a, b, *, bits: int = 40, cap: int = 2**60):
    """Smallest c with a <= c*b, by bisection over exact feasibility.

    ``a`` and ``b`` are exact-backend PSD operators from the package; only
    their ``matrix`` and the package's exact PSD certificate are used, so
    the search shares no code with the spectral formula it checks.  Returns
    a Fraction bracket midpoint accurate to ``2**-bits``, or None when even
    ``cap`` does not dominate.
    """
    from psdcone.linalg import psd_check

    def feasible(c: Fraction) -> bool:
        return psd_check(b.matrix.scale(c) - a.matrix)

    if feasible(Fraction(0)):
        return Fraction(0)
    if not feasible(Fraction(cap)):
        return None
    lo, hi = Fraction(0), Fraction(cap)
    # shrink the bracket fast before bisecting
    probe = Fraction(1)
    while probe < cap and not feasible(probe):
        probe *= 2
    lo, hi = probe / 2, min(probe, Fraction(cap))
    for _ in range(bits):
        mid = (lo + hi) / 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2
