"""Sparse exact matrices over a scalar ring, with rank and nullspace kernels.

Matrices over a real rational point are handed to FLINT's fraction-free
row reduction; everything else goes through a small Gaussian elimination
written against the scalar interface.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from flint import fmpq_mat

from .scalar import Flt, GaussRing, Ring

__all__ = ["Matrix", "rank", "nullspace", "span_basis", "solve_nullspace_rows"]


@dataclass
class Matrix:
    """Sparse matrix: entries[(i, j)] holds the nonzero scalars."""

    ring: Ring
    nrows: int
    ncols: int
    entries: dict = field(default_factory=dict)

    @staticmethod
    def identity(ring: Ring, n: int) -> Matrix:
        return Matrix(ring, n, n, {(k, k): ring.one for k in range(n)})

    @staticmethod
    def zeros(ring: Ring, r: int, c: int) -> Matrix:
        return Matrix(ring, r, c, {})

    @staticmethod
    def from_columns(ring: Ring, nrows: int, cols: list[dict]) -> Matrix:
        e = {}
        for j, col in enumerate(cols):
            for i, x in col.items():
                if not x.is_zero():
                    e[(i, j)] = x
        return Matrix(ring, nrows, len(cols), e)

    @staticmethod
    def from_rows(ring: Ring, ncols: int, rows: list[dict]) -> Matrix:
        e = {}
        for i, row in enumerate(rows):
            for j, x in row.items():
                if not x.is_zero():
                    e[(i, j)] = x
        return Matrix(ring, len(rows), ncols, e)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def get(self, i: int, j: int):
        return self.entries.get((i, j), self.ring.zero)

    def column(self, j: int) -> dict:
        return {i: x for (i, jj), x in self.entries.items() if jj == j}

    def rows_dict(self) -> list[dict]:
        rows = [dict() for _ in range(self.nrows)]
        for (i, j), x in self.entries.items():
            rows[i][j] = x
        return rows

    def cols_dict(self) -> list[dict]:
        cols = [dict() for _ in range(self.ncols)]
        for (i, j), x in self.entries.items():
            cols[j][i] = x
        return cols

    def _prune(self, e: dict) -> dict:
        return {k: x for k, x in e.items() if not x.is_zero()}

    def __add__(self, o: Matrix) -> Matrix:
        if self.shape != o.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {o.shape}")
        e = dict(self.entries)
        for k, x in o.entries.items():
            e[k] = e[k] + x if k in e else x
        return Matrix(self.ring, self.nrows, self.ncols, self._prune(e))

    def __neg__(self) -> Matrix:
        return Matrix(self.ring, self.nrows, self.ncols, {k: -x for k, x in self.entries.items()})

    def __sub__(self, o: Matrix) -> Matrix:
        return self + (-o)

    def scale(self, c) -> Matrix:
        c = self.ring.coerce(c) if not hasattr(c, "ring") else c
        if c.is_zero():
            return Matrix.zeros(self.ring, self.nrows, self.ncols)
        return Matrix(self.ring, self.nrows, self.ncols, self._prune({k: x * c for k, x in self.entries.items()}))

    def __matmul__(self, o: Matrix) -> Matrix:
        if self.ncols != o.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {o.shape}")
        orows = o.rows_dict()
        acc: dict = {}
        for (i, k), x in self.entries.items():
            for j, y in orows[k].items():
                key = (i, j)
                acc[key] = acc[key] + x * y if key in acc else x * y
        return Matrix(self.ring, self.nrows, o.ncols, self._prune(acc))

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector {index: scalar}."""
        out: dict = {}
        cols = self.cols_dict() if len(vec) > 1 else None
        if cols is None:
            for j, y in vec.items():
                for (i, jj), x in self.entries.items():
                    if jj == j:
                        out[i] = out[i] + x * y if i in out else x * y
        else:
            for j, y in vec.items():
                for i, x in cols[j].items():
                    out[i] = out[i] + x * y if i in out else x * y
        return {i: x for i, x in out.items() if not x.is_zero()}

    def transpose(self) -> Matrix:
        return Matrix(self.ring, self.ncols, self.nrows, {(j, i): x for (i, j), x in self.entries.items()})

    def kron(self, o: Matrix) -> Matrix:
        e = {}
        for (i, j), x in self.entries.items():
            for (k, l), y in o.entries.items():
                z = x * y
                if not z.is_zero():
                    e[(i * o.nrows + k, j * o.ncols + l)] = z
        return Matrix(self.ring, self.nrows * o.nrows, self.ncols * o.ncols, e)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries.values())

    def __eq__(self, o) -> bool:
        if not isinstance(o, Matrix) or self.shape != o.shape:
            return False
        return (self - o).is_zero()

    def to_lists(self) -> list[list]:
        out = [[self.ring.zero] * self.ncols for _ in range(self.nrows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out

    def flatten(self) -> dict:
        """Entries as a sparse vector indexed by i * ncols + j."""
        return {i * self.ncols + j: x for (i, j), x in self.entries.items()}

    def rank(self) -> int:
        return rank(self)

    def nullspace(self) -> list[dict]:
        return nullspace(self)


# ---------------------------------------------------------------------------
# kernels


def _real_rational(M: Matrix) -> bool:
    return isinstance(M.ring, GaussRing) and all(x.im == 0 for x in M.entries.values())


def _to_fmpq_mat(M: Matrix) -> fmpq_mat:
    A = fmpq_mat(M.nrows, M.ncols)
    for (i, j), x in M.entries.items():
        A[i, j] = x.re
    return A


def _pivot_key(x):
    if isinstance(x, Flt):
        return -abs(x.z)
    return 0


def _eliminate(rows: list[dict], ncols: int, ring: Ring):
    """Reduced row echelon form over a field given sparse rows; returns (rows, pivots)."""
    rows = [dict(r) for r in rows if r]
    pivots = []
    out = []
    floaty = not ring.exact
    for col in range(ncols):
        cands = [k for k, r in enumerate(rows) if col in r and not r[col].is_zero()]
        if not cands:
            continue
        if floaty:
            k = min(cands, key=lambda k: _pivot_key(rows[k][col]))
        else:
            k = min(cands, key=lambda k: len(rows[k]))
        prow = rows.pop(k)
        inv = prow[col].inverse()
        prow = {j: x * inv for j, x in prow.items()}
        prow[col] = ring.one
        new_rows = []
        for r in rows:
            f = r.get(col)
            if f is not None and not f.is_zero():
                for j, x in prow.items():
                    y = r.get(j)
                    r[j] = y - f * x if y is not None else -(f * x)
                r = {j: x for j, x in r.items() if not x.is_zero()}
            if r:
                new_rows.append(r)
        rows = new_rows
        # back-substitute into earlier pivot rows
        for r in out:
            f = r.get(col)
            if f is not None and not f.is_zero():
                for j, x in prow.items():
                    y = r.get(j)
                    r[j] = y - f * x if y is not None else -(f * x)
                for j in [j for j, x in r.items() if x.is_zero()]:
                    del r[j]
        out.append(prow)
        pivots.append(col)
        if not rows:
            break
    return out, pivots


def rank(M: Matrix) -> int:
    if not M.entries:
        return 0
    if _real_rational(M):
        return _to_fmpq_mat(M).rank()
    _, piv = _eliminate(M.rows_dict(), M.ncols, M.ring)
    return len(piv)


def nullspace(M: Matrix) -> list[dict]:
    """Basis of {x : M x = 0} as sparse dicts, one per free column, in column order."""
    ring = M.ring
    if _real_rational(M) and M.entries:
        R, rk = _to_fmpq_mat(M).rref()
        piv = []
        prow = []
        for i in range(rk):
            for j in range(M.ncols):
                if R[i, j] != 0:
                    piv.append(j)
                    prow.append(i)
                    break
        pivset = set(piv)
        basis = []
        for f in range(M.ncols):
            if f in pivset:
                continue
            vec = {f: ring.one}
            for i, pc in zip(prow, piv):
                c = R[i, f]
                if c != 0:
                    vec[pc] = ring.gauss(-Fraction(int(c.p), int(c.q)))
            basis.append(vec)
        return basis
    rows, piv = _eliminate(M.rows_dict(), M.ncols, ring)
    pivset = set(piv)
    basis = []
    for f in range(M.ncols):
        if f in pivset:
            continue
        vec = {f: ring.one}
        for r, pc in zip(rows, piv):
            c = r.get(f)
            if c is not None and not c.is_zero():
                vec[pc] = -c
        basis.append(vec)
    return basis


def span_basis(vectors: list[dict], ring: Ring) -> list[int]:
    """Indices of a maximal independent subfamily (greedy, in order)."""
    chosen = []
    if not vectors:
        return chosen
    keys = sorted({k for v in vectors for k in v})
    pos = {k: n for n, k in enumerate(keys)}
    current: list[dict] = []
    for idx, v in enumerate(vectors):
        trial = current + [{pos[k]: x for k, x in v.items()}]
        M = Matrix.from_rows(ring, len(keys), trial)
        if rank(M) == len(trial):
            current = trial
            chosen.append(idx)
    return chosen


def solve_nullspace_rows(rows: list[dict], ncols: int, ring: Ring) -> list[dict]:
    return nullspace(Matrix.from_rows(ring, ncols, rows))
