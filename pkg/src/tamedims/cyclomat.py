"""Exact matrices over Q(zeta_m).

Matrices are stored sparsely (one dict of nonzero entries per row), but
behave as dense grids: indexing an absent entry gives zero.  The
representations built in this package are diagonal or permutation
matrices, and sparse storage keeps their products linear in the size.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

from .cyclo import CycloElt
from .errors import DimensionError, FieldMismatchError

CHARPOLY_MAX_DIM = 64
NULLSPACE_MAX_COLS = 4096


def _elt(m: int, x) -> CycloElt:
    if isinstance(x, CycloElt):
        if x.m != m:
            raise FieldMismatchError(f"entry lives in Q(zeta_{x.m}), matrix in Q(zeta_{m})")
        return x
    return CycloElt.rational(m, x)


class CycloMatrix:
    """An immutable rows x cols matrix with entries in Q(zeta_m)."""

    __slots__ = ("m", "rows", "cols", "_rows", "_hash")

    def __init__(self, m: int, rows: int, cols: int, entries: Mapping[tuple[int, int], object] = ()):
        self.m = m
        self.rows = rows
        self.cols = cols
        data: list[dict[int, CycloElt]] = [{} for _ in range(rows)]
        for (i, j), x in dict(entries).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionError(f"entry ({i}, {j}) outside {rows}x{cols}")
            x = _elt(m, x)
            if not x.is_zero():
                data[i][j] = x
        self._rows = tuple(data)
        self._hash = None

    @classmethod
    def _from_rows(cls, m: int, cols: int, rows: Sequence[dict[int, CycloElt]]) -> CycloMatrix:
        obj = cls.__new__(cls)
        obj.m, obj.rows, obj.cols = m, len(rows), cols
        obj._rows = tuple(rows)
        obj._hash = None
        return obj

    @classmethod
    def from_rows(cls, m: int, grid: Sequence[Sequence[object]]) -> CycloMatrix:
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        if any(len(r) != cols for r in grid):
            raise DimensionError("ragged rows")
        return cls(m, rows, cols, {(i, j): x for i, r in enumerate(grid) for j, x in enumerate(r)})

    @classmethod
    def identity(cls, m: int, n: int) -> CycloMatrix:
        one = CycloElt.one(m)
        return cls._from_rows(m, n, [{i: one} for i in range(n)])

    @classmethod
    def zeros(cls, m: int, rows: int, cols: int) -> CycloMatrix:
        return cls._from_rows(m, cols, [{} for _ in range(rows)])

    @classmethod
    def diagonal(cls, m: int, diag: Iterable[object]) -> CycloMatrix:
        diag = [_elt(m, x) for x in diag]
        return cls._from_rows(m, len(diag), [{i: x} if not x.is_zero() else {} for i, x in enumerate(diag)])

    @classmethod
    def permutation(cls, m: int, images: Sequence[int]) -> CycloMatrix:
        """The matrix sending basis vector j to basis vector images[j]."""
        n = len(images)
        if sorted(images) != list(range(n)):
            raise ValueError("not a permutation")
        one = CycloElt.one(m)
        rows: list[dict[int, CycloElt]] = [{} for _ in range(n)]
        for j, i in enumerate(images):
            rows[i][j] = one
        return cls._from_rows(m, n, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> CycloElt:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._rows[i].get(j) or CycloElt.zero(self.m)

    def row_entries(self, i: int) -> dict[int, CycloElt]:
        """Nonzero entries of row i as {column: value} (a copy)."""
        return dict(self._rows[i])

    def nonzero(self) -> Iterable[tuple[int, int, CycloElt]]:
        for i, row in enumerate(self._rows):
            for j in sorted(row):
                yield i, j, row[j]

    def to_rows(self) -> list[list[CycloElt]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def is_diagonal(self) -> bool:
        return all(set(row) <= {i} for i, row in enumerate(self._rows))

    def _check_same(self, other: CycloMatrix) -> None:
        if other.m != self.m:
            raise FieldMismatchError(f"Q(zeta_{self.m}) vs Q(zeta_{other.m})")

    def __matmul__(self, other: CycloMatrix) -> CycloMatrix:
        return mat_mul(self, other)

    def __add__(self, other: CycloMatrix) -> CycloMatrix:
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionError(f"{self.shape} + {other.shape}")
        out = []
        for ra, rb in zip(self._rows, other._rows):
            row = dict(ra)
            for j, x in rb.items():
                y = row[j] + x if j in row else x
                if y.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = y
            out.append(row)
        return CycloMatrix._from_rows(self.m, self.cols, out)

    def __neg__(self) -> CycloMatrix:
        return self.scale(-1)

    def __sub__(self, other: CycloMatrix) -> CycloMatrix:
        return self + (-other)

    def scale(self, c) -> CycloMatrix:
        c = _elt(self.m, c)
        if c.is_zero():
            return CycloMatrix.zeros(self.m, self.rows, self.cols)
        return CycloMatrix._from_rows(
            self.m, self.cols, [{j: x * c for j, x in row.items()} for row in self._rows]
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        return self.m == other.m and self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (self.m, self.rows, self.cols, tuple(tuple(sorted(r.items())) for r in self._rows))
            )
        return self._hash

    def __repr__(self) -> str:
        nnz = sum(len(r) for r in self._rows)
        return f"CycloMatrix(m={self.m}, {self.rows}x{self.cols}, nnz={nnz})"


def mat_mul(a: CycloMatrix, b: CycloMatrix) -> CycloMatrix:
    a._check_same(b)
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    out = []
    for row in a._rows:
        acc: dict[int, CycloElt] = {}
        for k, x in row.items():
            for j, y in b._rows[k].items():
                p = x * y
                acc[j] = acc[j] + p if j in acc else p
        out.append({j: v for j, v in acc.items() if not v.is_zero()})
    return CycloMatrix._from_rows(a.m, b.cols, out)


def mat_inverse_permutation(a: CycloMatrix) -> CycloMatrix:
    """Inverse of a monomial matrix (exactly one nonzero entry per row and column).

    Permutation and invertible diagonal matrices are the cases used here.
    """
    if a.rows != a.cols:
        raise DimensionError(f"{a.shape} is not square")
    seen_cols = set()
    out: list[dict[int, CycloElt]] = [{} for _ in range(a.rows)]
    for i, row in enumerate(a._rows):
        if len(row) != 1:
            raise ValueError("matrix is not permutation-structured")
        (j, x), = row.items()
        if j in seen_cols:
            raise ValueError("matrix is not permutation-structured")
        seen_cols.add(j)
        out[j][i] = x.inverse()
    return CycloMatrix._from_rows(a.m, a.rows, out)


def mat_pow(a: CycloMatrix, e: int) -> CycloMatrix:
    """a**e by binary exponentiation; negative e needs a monomial matrix."""
    if a.rows != a.cols:
        raise DimensionError(f"{a.shape} is not square")
    if e < 0:
        return mat_pow(mat_inverse_permutation(a), -e)
    result = CycloMatrix.identity(a.m, a.rows)
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def mat_trace(a: CycloMatrix) -> CycloElt:
    if a.rows != a.cols:
        raise DimensionError(f"trace of non-square {a.shape}")
    total = CycloElt.zero(a.m)
    for i, row in enumerate(a._rows):
        if i in row:
            total = total + row[i]
    return total


def charpoly(a: CycloMatrix, max_dim: int = CHARPOLY_MAX_DIM) -> list[CycloElt]:
    """Coefficients of det(X*I - a), constant term first (Faddeev-LeVerrier)."""
    n = a.rows
    if n != a.cols:
        raise DimensionError(f"charpoly of non-square {a.shape}")
    if n > max_dim:
        raise DimensionError(f"dimension {n} exceeds charpoly bound {max_dim}")
    coeffs = [CycloElt.zero(a.m)] * (n + 1)
    coeffs[n] = CycloElt.one(a.m)
    eye = CycloMatrix.identity(a.m, n)
    am = CycloMatrix.zeros(a.m, n, n)  # a @ M_{k-1}
    for k in range(1, n + 1):
        mk = am + eye.scale(coeffs[n - k + 1])
        am = mat_mul(a, mk)
        coeffs[n - k] = mat_trace(am) * Fraction(-1, k)
    return coeffs


def _row_elimination(
    m: int, rows: list[dict[int, CycloElt]], ncols: int
) -> dict[int, dict[int, CycloElt]]:
    """Reduce sparse rows to reduced row echelon form.

    Columns are taken left to right; the pivot is any row with a nonzero
    in that column, preferring the sparsest to limit fill-in. Returns
    {pivot column: normalised pivot row}.
    """
    live = {r: row for r, row in enumerate(rows) if row}
    by_col: dict[int, set[int]] = defaultdict(set)
    for r, row in live.items():
        for j in row:
            by_col[j].add(r)
    pivots: dict[int, int] = {}
    pivot_rows: set[int] = set()
    one = CycloElt.one(m)
    for c in range(ncols):
        cands = [r for r in by_col.get(c, ()) if r not in pivot_rows]
        if not cands:
            continue
        r = min(cands, key=lambda s: (len(live[s]), s))
        prow = live[r]
        piv = prow[c]
        if len(prow) == 1:
            prow = {c: one}
        elif piv != 1:
            inv = piv.inverse()
            prow = {j: (one if j == c else x * inv) for j, x in prow.items()}
        live[r] = prow
        pivots[c] = r
        pivot_rows.add(r)
        for s in list(by_col[c]):
            if s == r:
                continue
            srow = live[s]
            f = srow[c]
            for j, x in prow.items():
                if j == c:
                    del srow[c]
                    by_col[c].discard(s)
                    continue
                y = srow[j] - f * x if j in srow else -(f * x)
                if y.is_zero():
                    srow.pop(j, None)
                    by_col[j].discard(s)
                else:
                    srow[j] = y
                    by_col[j].add(s)
            if not srow:
                del live[s]
    return {c: live[r] for c, r in pivots.items()}


def _check_nullspace_bound(a: CycloMatrix, max_cols: int) -> None:
    if a.cols > max_cols:
        raise DimensionError(f"{a.cols} unknowns exceed the bound {max_cols}")


def rank(a: CycloMatrix, max_cols: int = NULLSPACE_MAX_COLS) -> int:
    _check_nullspace_bound(a, max_cols)
    return len(_row_elimination(a.m, [dict(r) for r in a._rows], a.cols))


def solve_nullspace(a: CycloMatrix, max_cols: int = NULLSPACE_MAX_COLS) -> list[tuple[CycloElt, ...]]:
    """Basis of {x : a x = 0}, one vector per free column of the echelon form."""
    _check_nullspace_bound(a, max_cols)
    pivots = _row_elimination(a.m, [dict(r) for r in a._rows], a.cols)
    zero = CycloElt.zero(a.m)
    one = CycloElt.one(a.m)
    free = [j for j in range(a.cols) if j not in pivots]
    basis = []
    for f in free:
        vec = [zero] * a.cols
        vec[f] = one
        for c, row in pivots.items():
            if f in row:
                vec[c] = -row[f]
        basis.append(tuple(vec))
    return basis
