"""Exact dense matrices over Q(i) with rank, kernel, and characteristic polynomial.

A matrix is stored as a positive integer common denominator plus numpy object
arrays of arbitrary-precision Python ints for the real and imaginary numerator
parts; the imaginary array is ``None`` when the matrix is real, which keeps
the frequent all-real case on a single-array fast path.  A COO view of the
nonzero entries is cached lazily so that products of the very sparse generator
families cost O(nonzeros) instead of O(n^3).

Matrices are immutable values; every operation returns a new matrix.  Rank is
computed by fraction-free (Bareiss) elimination over the Gaussian integers,
preceded by a rank-preserving peel of zero and singleton rows/columns.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import ShapeError, SingularMatrixError
from .polynomials import Polynomial, rational_complex_roots
from .scalars import GaussianRational, ScalarLike


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


class ExactMatrix:
    """Immutable dense matrix of Gaussian rationals."""

    __slots__ = ("rows", "cols", "_den", "_re", "_im", "_cache")

    def __init__(self, entries: Sequence[Sequence[ScalarLike]]):
        built = ExactMatrix.from_rows(entries)
        object.__setattr__(self, "rows", built.rows)
        object.__setattr__(self, "cols", built.cols)
        object.__setattr__(self, "_den", built._den)
        object.__setattr__(self, "_re", built._re)
        object.__setattr__(self, "_im", built._im)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- construction ---------------------------------------------------------

    @staticmethod
    def _raw(den: int, re: np.ndarray, im: np.ndarray | None) -> "ExactMatrix":
        """Internal constructor from numerator arrays; normalizes in place."""
        if den <= 0:
            raise ValueError("denominator must be positive")
        if im is not None and not im.any():
            im = None
        if den != 1:
            g = den
            for v in re.flat:
                if v:
                    g = gcd(g, v)
                    if g == 1:
                        break
            if g != 1 and im is not None:
                for v in im.flat:
                    if v:
                        g = gcd(g, v)
                        if g == 1:
                            break
            if g != 1:
                re = re // g
                if im is not None:
                    im = im // g
                den //= g
        obj = object.__new__(ExactMatrix)
        object.__setattr__(obj, "rows", re.shape[0])
        object.__setattr__(obj, "cols", re.shape[1])
        object.__setattr__(obj, "_den", den)
        object.__setattr__(obj, "_re", _freeze(re))
        object.__setattr__(obj, "_im", _freeze(im) if im is not None else None)
        object.__setattr__(obj, "_cache", {})
        return obj

    @classmethod
    def from_rows(cls, entries: Sequence[Sequence[ScalarLike]]) -> "ExactMatrix":
        rows = [list(r) for r in entries]
        if not rows:
            raise ShapeError("matrix needs at least one row")
        ncols = len(rows[0])
        if ncols == 0:
            raise ShapeError("matrix needs at least one column")
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged rows")
        den = 1
        vals: list[list[GaussianRational]] = []
        for r in rows:
            vr = [v if isinstance(v, GaussianRational) else GaussianRational(v) for v in r]
            vals.append(vr)
            for v in vr:
                den = _lcm(den, v.re.denominator)
                den = _lcm(den, v.im.denominator)
        re = _zeros(len(rows), ncols)
        im = _zeros(len(rows), ncols)
        any_im = False
        for i, vr in enumerate(vals):
            for j, v in enumerate(vr):
                re[i, j] = int(v.re * den)
                ij = int(v.im * den)
                if ij:
                    im[i, j] = ij
                    any_im = True
        return cls._raw(den, re, im if any_im else None)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        re = _zeros(n, n)
        for i in range(n):
            re[i, i] = 1
        return cls._raw(1, re, None)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls._raw(1, _zeros(rows, cols), None)

    # -- basic queries ---------------------------------------------------------

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: tuple[int, int]) -> GaussianRational:
        i, j = key
        re = Fraction(int(self._re[i, j]), self._den)
        im = Fraction(int(self._im[i, j]), self._den) if self._im is not None else Fraction(0)
        return GaussianRational(re, im)

    def to_rows(self) -> list[list[GaussianRational]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def is_zero(self) -> bool:
        if "is_zero" not in self._cache:
            self._cache["is_zero"] = self._im is None and not self._re.any()
        return self._cache["is_zero"]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols, self._den) != (other.rows, other.cols, other._den):
            return False
        if (self._im is None) != (other._im is None):
            return False
        if not np.array_equal(self._re, other._re):
            return False
        return self._im is None or np.array_equal(self._im, other._im)

    __hash__ = None  # mutable-sized big values; identity hashing would mislead

    def __repr__(self) -> str:
        if self.rows * self.cols <= 36:
            body = "; ".join(
                " ".join(str(self[i, j]) for j in range(self.cols)) for i in range(self.rows)
            )
            return f"ExactMatrix({self.rows}x{self.cols}: {body})"
        return f"ExactMatrix({self.rows}x{self.cols})"

    # -- sparsity bookkeeping ----------------------------------------------------

    def _nnz(self) -> int:
        if "nnz" not in self._cache:
            cnt = int(np.count_nonzero(self._re != 0))
            if self._im is not None:
                cnt = int(np.count_nonzero((self._re != 0) | (self._im != 0)))
            self._cache["nnz"] = cnt
        return self._cache["nnz"]

    def _max_row_nnz(self) -> int:
        if "max_row_nnz" not in self._cache:
            mask = self._re != 0
            if self._im is not None:
                mask = mask | (self._im != 0)
            per_row = np.count_nonzero(mask, axis=1)
            self._cache["max_row_nnz"] = int(per_row.max()) if per_row.size else 0
        return self._cache["max_row_nnz"]

    def _coo(self) -> tuple[tuple[int, tuple[tuple[int, int, int], ...]], ...]:
        """Rows with nonzero entries as (i, ((j, re, im), ...)); cached."""
        if "coo" not in self._cache:
            out = []
            im = self._im
            for i in range(self.rows):
                rre = self._re[i]
                if im is None:
                    cols = np.nonzero(rre != 0)[0]
                    if cols.size:
                        out.append((i, tuple((int(j), rre[j], 0) for j in cols)))
                else:
                    rim = im[i]
                    cols = np.nonzero((rre != 0) | (rim != 0))[0]
                    if cols.size:
                        out.append((i, tuple((int(j), rre[j], rim[j]) for j in cols)))
            self._cache["coo"] = tuple(out)
        return self._cache["coo"]

    def _row_lists(self) -> list[tuple[tuple[int, int, int], ...]]:
        """COO rows indexed by row number (empty tuple for zero rows)."""
        if "row_lists" not in self._cache:
            rl: list[tuple] = [()] * self.rows
            for i, entries in self._coo():
                rl[i] = entries
            self._cache["row_lists"] = rl
        return self._cache["row_lists"]

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("addition shape mismatch")
        den = _lcm(self._den, other._den)
        sa, sb = den // self._den, den // other._den
        re = self._re * sa + other._re * sb
        if self._im is None and other._im is None:
            im = None
        else:
            ia = self._im * sa if self._im is not None else 0
            ib = other._im * sb if other._im is not None else 0
            im = ia + ib
            if isinstance(im, int):
                im = None
        return ExactMatrix._raw(den, re, im)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._raw(self._den, -self._re, -self._im if self._im is not None else None)

    def scale(self, s: ScalarLike) -> "ExactMatrix":
        s = s if isinstance(s, GaussianRational) else GaussianRational(s)
        q = _lcm(s.re.denominator, s.im.denominator)
        sr, si = int(s.re * q), int(s.im * q)
        re = self._re * sr
        im = None
        if si:
            im = self._re * si
        if self._im is not None:
            if si:
                re = re - self._im * si
                im = im + self._im * sr
            else:
                im = self._im * sr
        return ExactMatrix._raw(self._den * q, re, im)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._raw(
            self._den,
            self._re.T.copy(),
            self._im.T.copy() if self._im is not None else None,
        )

    def conj_transpose(self) -> "ExactMatrix":
        return ExactMatrix._raw(
            self._den,
            self._re.T.copy(),
            (-self._im.T).copy() if self._im is not None else None,
        )

    def trace(self) -> GaussianRational:
        if not self.is_square:
            raise ShapeError("trace of a non-square matrix")
        tr = sum(int(self._re[i, i]) for i in range(self.rows))
        ti = sum(int(self._im[i, i]) for i in range(self.rows)) if self._im is not None else 0
        return GaussianRational(Fraction(tr, self._den), Fraction(ti, self._den))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        den = self._den * other._den
        # Sparse path: beneficial when the term count is far below rows*inner*cols.
        terms = self._nnz() * max(1, other._max_row_nnz())
        if terms * 8 <= self.rows * self.cols * other.cols:
            re, im = _sparse_matmul(self, other)
            return ExactMatrix._raw(den, re, im)
        a_re, a_im, b_re, b_im = self._re, self._im, other._re, other._im
        if a_im is None and b_im is None:
            return ExactMatrix._raw(den, a_re @ b_re, None)
        if a_im is None:
            return ExactMatrix._raw(den, a_re @ b_re, a_re @ b_im)
        if b_im is None:
            return ExactMatrix._raw(den, a_re @ b_re, a_im @ b_re)
        p1 = a_re @ b_re
        p2 = a_im @ b_im
        p3 = (a_re + a_im) @ (b_re + b_im)
        return ExactMatrix._raw(den, p1 - p2, p3 - p1 - p2)

    def __pow__(self, e: int) -> "ExactMatrix":
        return mat_pow(self, e)


def _sparse_matmul(a: ExactMatrix, b: ExactMatrix) -> tuple[np.ndarray, np.ndarray | None]:
    """Product numerators via COO rows; returns dense (re, im|None) arrays."""
    b_rows = b._row_lists()
    re = _zeros(a.rows, b.cols)
    im = _zeros(a.rows, b.cols)
    any_im = False
    for i, entries in a._coo():
        acc: dict[int, list[int]] = {}
        for k, ar, ai in entries:
            for j, br, bi in b_rows[k]:
                vr = ar * br - ai * bi
                vi = ar * bi + ai * br
                cell = acc.get(j)
                if cell is None:
                    acc[j] = [vr, vi]
                else:
                    cell[0] += vr
                    cell[1] += vi
        row_re, row_im = re[i], im[i]
        for j, (vr, vi) in acc.items():
            row_re[j] = vr
            if vi:
                row_im[j] = vi
                any_im = True
    return re, (im if any_im else None)


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact matrix product (a.cols must equal b.rows)."""
    return a @ b


def mat_pow(a: ExactMatrix, e: int) -> ExactMatrix:
    """Exact e-th power via binary exponentiation; short-circuits on zero."""
    if not a.is_square:
        raise ShapeError("power of a non-square matrix")
    if e < 0:
        raise ValueError("negative matrix power")
    result = ExactMatrix.identity(a.rows)
    base = a
    while e:
        if e & 1:
            result = result @ base
            if result.is_zero():
                return result
        e >>= 1
        if e:
            base = base @ base
            if base.is_zero():
                # the leading bit of e is set, so the result is annihilated
                return ExactMatrix.zeros(a.rows, a.rows)
    return result


# -- rank: peel + fraction-free elimination -------------------------------------


def _peel_rank(a: ExactMatrix) -> tuple[int, list[list[tuple[int, int, int]]]]:
    """Strip zero/singleton rows and columns, which each contribute rank 1.

    Removing a zero row/column never changes rank; a row (column) whose single
    nonzero entry sits at (r, c) contributes exactly 1 plus the rank of the
    minor without row r and column c.  Returns the peeled count and the
    remaining entries grouped per surviving row.
    """
    row_map: dict[int, dict[int, tuple[int, int]]] = {}
    col_map: dict[int, set[int]] = {}
    for i, entries in a._coo():
        row_map[i] = {j: (re, im) for j, re, im in entries}
        for j, _, _ in entries:
            col_map.setdefault(j, set()).add(i)
    rank = 0
    while True:
        target = None
        for i, cols in row_map.items():
            if len(cols) == 1:
                target = (i, next(iter(cols)))
                break
        if target is None:
            for j, rows_set in col_map.items():
                if len(rows_set) == 1:
                    target = (next(iter(rows_set)), j)
                    break
        if target is None:
            break
        r, c = target
        rank += 1
        for jj in row_map.pop(r):
            s = col_map[jj]
            s.discard(r)
            if not s:
                del col_map[jj]
        if c in col_map:
            for ii in col_map.pop(c):
                row_map[ii].pop(c, None)
                if not row_map[ii]:
                    del row_map[ii]
    remaining = [
        [(j, v[0], v[1]) for j, v in sorted(cols.items())] for _, cols in sorted(row_map.items())
    ]
    return rank, remaining


def _bareiss_rank_real(m: np.ndarray) -> int:
    rows, cols = m.shape
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = None
        for i in range(r, rows):
            if m[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        p = m[r, c]
        if r + 1 < rows:
            sub = m[r + 1 :, c + 1 :]
            colv = m[r + 1 :, c].reshape(-1, 1)
            m[r + 1 :, c + 1 :] = (sub * p - colv * m[r, c + 1 :]) // prev
            m[r + 1 :, c] = 0
        prev = p
        r += 1
    return r


def _bareiss_rank_complex(mre: np.ndarray, mim: np.ndarray) -> int:
    rows, cols = mre.shape
    pr, pi_, pn = 1, 0, 1  # previous pivot and its norm
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = None
        for i in range(r, rows):
            if mre[i, c] or mim[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            mre[[r, piv]] = mre[[piv, r]]
            mim[[r, piv]] = mim[[piv, r]]
        qr, qi = mre[r, c], mim[r, c]
        if r + 1 < rows:
            sre = mre[r + 1 :, c + 1 :]
            sim = mim[r + 1 :, c + 1 :]
            cre = mre[r + 1 :, c].reshape(-1, 1)
            cim = mim[r + 1 :, c].reshape(-1, 1)
            rre = mre[r, c + 1 :]
            rim = mim[r, c + 1 :]
            tre = sre * qr - sim * qi - (cre * rre - cim * rim)
            tim = sre * qi + sim * qr - (cre * rim + cim * rre)
            # exact division by the previous pivot pr + pi_*i
            mre[r + 1 :, c + 1 :] = (tre * pr + tim * pi_) // pn
            mim[r + 1 :, c + 1 :] = (tim * pr - tre * pi_) // pn
            mre[r + 1 :, c] = 0
            mim[r + 1 :, c] = 0
        pr, pi_ = qr, qi
        pn = pr * pr + pi_ * pi_
        r += 1
    return r


def rank(a: ExactMatrix) -> int:
    """Exact rank via singleton peeling plus fraction-free Bareiss elimination."""
    if "rank" in a._cache:
        return a._cache["rank"]
    peeled, remaining = _peel_rank(a)
    result = peeled
    if remaining:
        cols_used = sorted({j for row in remaining for j, _, _ in row})
        col_index = {j: idx for idx, j in enumerate(cols_used)}
        sub_re = _zeros(len(remaining), len(cols_used))
        sub_im = _zeros(len(remaining), len(cols_used))
        any_im = False
        for ii, row in enumerate(remaining):
            for j, vre, vim in row:
                sub_re[ii, col_index[j]] = vre
                if vim:
                    sub_im[ii, col_index[j]] = vim
                    any_im = True
        if any_im:
            result += _bareiss_rank_complex(sub_re, sub_im)
        else:
            result += _bareiss_rank_real(sub_re)
    a._cache["rank"] = result
    return result


def power_rank(a: ExactMatrix, e: int) -> int:
    """rank(a^e) without always forming a^e: stops once power ranks stabilize.

    rank(a^m) is non-increasing in m, and equality of consecutive ranks at m
    means the rank is stable for every exponent >= m.
    """
    if not a.is_square:
        raise ShapeError("power of a non-square matrix")
    if e < 1:
        raise ValueError("power_rank expects e >= 1")
    cur = a
    r = rank(a)
    m = 1
    while m < e:
        if r == 0 or r == a.rows:
            return r
        nxt = cur @ a
        m += 1
        r2 = rank(nxt)
        if r2 == r:
            return r
        cur, r = nxt, r2
    return r


# -- reduced row echelon form and its consumers ----------------------------------


def _entries_array(a: ExactMatrix) -> np.ndarray:
    """Matrix as a numpy object array of GaussianRational values."""
    g = np.empty((a.rows, a.cols), dtype=object)
    d = a._den
    im = a._im
    for i in range(a.rows):
        for j in range(a.cols):
            g[i, j] = GaussianRational(
                Fraction(int(a._re[i, j]), d),
                Fraction(int(im[i, j]), d) if im is not None else Fraction(0),
            )
    return g


_GR_ZERO = GaussianRational(0)


def _rref(g: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """In-place reduced row echelon form over Q(i); returns pivot columns."""
    rows, cols = g.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = None
        for i in range(r, rows):
            if g[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            g[[r, piv]] = g[[piv, r]]
        inv = g[r, c].inverse()
        g[r, :] = g[r, :] * inv
        col = g[:, c].copy()
        col[r] = _GR_ZERO
        mask = np.array([bool(v) for v in col])
        if mask.any():
            g[mask, :] = g[mask, :] - np.outer(col[mask], g[r, :])
        pivots.append(c)
        r += 1
    return g, pivots


def _primitive_integer_column(vals: list[GaussianRational]) -> list[GaussianRational]:
    """Scale a rational column to primitive Gaussian-integer form, deterministic sign."""
    den = 1
    for v in vals:
        den = _lcm(den, v.re.denominator)
        den = _lcm(den, v.im.denominator)
    ints = [(int(v.re * den), int(v.im * den)) for v in vals]
    g = 0
    for xr, xi in ints:
        g = gcd(g, gcd(xr, xi))
    if g > 1:
        ints = [(xr // g, xi // g) for xr, xi in ints]
    for xr, xi in ints:
        if xr or xi:
            if xr < 0 or (xr == 0 and xi < 0):
                ints = [(-yr, -yi) for yr, yi in ints]
            break
    return [GaussianRational(xr, xi) for xr, xi in ints]


def kernel_basis(a: ExactMatrix) -> ExactMatrix | None:
    """Columns spanning the null space (count = cols - rank), or None if trivial.

    The basis is the canonical free-column construction from the RREF, with
    each vector scaled to primitive Gaussian-integer form.
    """
    g, pivots = _rref(_entries_array(a))
    free = [c for c in range(a.cols) if c not in pivots]
    if not free:
        return None
    columns = []
    for f in free:
        vec = [_GR_ZERO] * a.cols
        vec[f] = GaussianRational(1)
        for r_idx, c_piv in enumerate(pivots):
            vec[c_piv] = -g[r_idx, f]
        columns.append(_primitive_integer_column(vec))
    return ExactMatrix.from_rows([[columns[j][i] for j in range(len(columns))] for i in range(a.cols)])


def row_space_basis(a: ExactMatrix) -> list[list[GaussianRational]]:
    """Canonical (RREF, primitive-integer-scaled) basis of the row space."""
    g, pivots = _rref(_entries_array(a))
    out = []
    for r_idx in range(len(pivots)):
        row = list(g[r_idx, :])
        out.append(_primitive_integer_column(row))
    return out


# -- inverse and similarity -------------------------------------------------------


def inverse(a: ExactMatrix) -> ExactMatrix:
    """Exact inverse via fraction-free Gauss-Jordan (Montante) elimination."""
    if not a.is_square:
        raise ShapeError("inverse of a non-square matrix")
    n = a.rows
    mre = _zeros(n, 2 * n)
    mim = _zeros(n, 2 * n)
    mre[:, :n] = a._re
    if a._im is not None:
        mim[:, :n] = a._im
    for i in range(n):
        mre[i, n + i] = 1
    pr, pi_, pn = 1, 0, 1
    for k in range(n):
        piv = None
        for i in range(k, n):
            if mre[i, k] or mim[i, k]:
                piv = i
                break
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != k:
            mre[[k, piv]] = mre[[piv, k]]
            mim[[k, piv]] = mim[[piv, k]]
        qr, qi = mre[k, k], mim[k, k]
        prow_re = mre[k].copy()
        prow_im = mim[k].copy()
        col_re = mre[:, k].copy().reshape(-1, 1)
        col_im = mim[:, k].copy().reshape(-1, 1)
        tre = mre * qr - mim * qi - (col_re * prow_re - col_im * prow_im)
        tim = mre * qi + mim * qr - (col_re * prow_im + col_im * prow_re)
        mre = (tre * pr + tim * pi_) // pn
        mim = (tim * pr - tre * pi_) // pn
        mre[k] = prow_re
        mim[k] = prow_im
        pr, pi_ = qr, qi
        pn = pr * pr + pi_ * pi_
    det_re, det_im = pr, pi_
    aug_re = mre[:, n:]
    aug_im = mim[:, n:]
    # inverse = den * adj / det; multiply by conj(det) to rationalize
    out_re = (aug_re * det_re + aug_im * det_im) * a._den
    out_im = (aug_im * det_re - aug_re * det_im) * a._den
    return ExactMatrix._raw(pn, out_re, out_im)


def conjugate(a: ExactMatrix, v: ExactMatrix) -> ExactMatrix:
    """Similarity transform v a v^-1; raises SingularMatrixError for singular v."""
    if not (a.is_square and v.is_square and a.rows == v.rows):
        raise ShapeError("conjugation needs square matrices of equal size")
    return v @ a @ inverse(v)


# -- block constructions -----------------------------------------------------------


def direct_sum(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Block-diagonal sum of two square matrices."""
    if not (a.is_square and b.is_square):
        raise ShapeError("direct sum needs square matrices")
    n = a.rows + b.rows
    den = _lcm(a._den, b._den)
    sa, sb = den // a._den, den // b._den
    re = _zeros(n, n)
    re[: a.rows, : a.rows] = a._re * sa
    re[a.rows :, a.rows :] = b._re * sb
    im = None
    if a._im is not None or b._im is not None:
        im = _zeros(n, n)
        if a._im is not None:
            im[: a.rows, : a.rows] = a._im * sa
        if b._im is not None:
            im[a.rows :, a.rows :] = b._im * sb
    return ExactMatrix._raw(den, re, im)


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product a (x) b."""
    den = a._den * b._den
    if a._im is None and b._im is None:
        return ExactMatrix._raw(den, np.kron(a._re, b._re), None)
    a_im = a._im if a._im is not None else _zeros(a.rows, a.cols)
    b_im = b._im if b._im is not None else _zeros(b.rows, b.cols)
    re = np.kron(a._re, b._re) - np.kron(a_im, b_im)
    im = np.kron(a._re, b_im) + np.kron(a_im, b._re)
    return ExactMatrix._raw(den, re, im)


def hcat(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    """Horizontal concatenation of matrices with equal row counts."""
    if not mats:
        raise ShapeError("hcat of nothing")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ShapeError("hcat row mismatch")
    den = 1
    for m in mats:
        den = _lcm(den, m._den)
    re = np.concatenate([m._re * (den // m._den) for m in mats], axis=1)
    if all(m._im is None for m in mats):
        im = None
    else:
        im = np.concatenate(
            [
                (m._im * (den // m._den)) if m._im is not None else _zeros(rows, m.cols)
                for m in mats
            ],
            axis=1,
        )
    return ExactMatrix._raw(den, re, im)


def vcat(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    """Vertical concatenation of matrices with equal column counts."""
    if not mats:
        raise ShapeError("vcat of nothing")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ShapeError("vcat column mismatch")
    den = 1
    for m in mats:
        den = _lcm(den, m._den)
    re = np.concatenate([m._re * (den // m._den) for m in mats], axis=0)
    if all(m._im is None for m in mats):
        im = None
    else:
        im = np.concatenate(
            [
                (m._im * (den // m._den)) if m._im is not None else _zeros(m.rows, cols)
                for m in mats
            ],
            axis=0,
        )
    return ExactMatrix._raw(den, re, im)


def block(a: ExactMatrix, r0: int, r1: int, c0: int, c1: int) -> ExactMatrix:
    """Submatrix with rows [r0, r1) and columns [c0, c1)."""
    re = a._re[r0:r1, c0:c1].copy()
    im = a._im[r0:r1, c0:c1].copy() if a._im is not None else None
    return ExactMatrix._raw(a._den, re, im)


def stack_flattened(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    """Stack each matrix, flattened row-major, as one row of a new matrix."""
    if not mats:
        raise ShapeError("stack of nothing")
    size = mats[0].rows * mats[0].cols
    if any(m.rows * m.cols != size for m in mats):
        raise ShapeError("stack size mismatch")
    den = 1
    for m in mats:
        den = _lcm(den, m._den)
    re = np.stack([(m._re * (den // m._den)).reshape(-1) for m in mats])
    if all(m._im is None for m in mats):
        im = None
    else:
        im = np.stack(
            [
                ((m._im * (den // m._den)) if m._im is not None else _zeros(m.rows, m.cols)).reshape(-1)
                for m in mats
            ]
        )
    return ExactMatrix._raw(den, re, im)


# -- characteristic polynomial, spectrum, nilpotency ---------------------------------


def _add_scalar_diag(a: ExactMatrix, s: GaussianRational) -> ExactMatrix:
    q = _lcm(s.re.denominator, s.im.denominator)
    den = _lcm(a._den, q)
    sa = den // a._den
    re = a._re * sa
    im = a._im * sa if a._im is not None else None
    dr, di = int(s.re * den), int(s.im * den)
    re = re.copy()
    for i in range(a.rows):
        re[i, i] += dr
    if di:
        im = im.copy() if im is not None else _zeros(a.rows, a.cols)
        for i in range(a.rows):
            im[i, i] += di
    return ExactMatrix._raw(den, re, im)


def char_poly(a: ExactMatrix) -> Polynomial:
    """Monic characteristic polynomial det(xI - a), via Faddeev-LeVerrier."""
    if not a.is_square:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    if "char_poly" in a._cache:
        return a._cache["char_poly"]
    n = a.rows
    coeffs: list[GaussianRational] = [GaussianRational(0)] * (n + 1)
    coeffs[n] = GaussianRational(1)
    m = a
    coeffs[n - 1] = -m.trace()
    for k in range(2, n + 1):
        m = a @ _add_scalar_diag(m, coeffs[n - k + 1])
        coeffs[n - k] = -(m.trace() / k)
    p = Polynomial(coeffs)
    a._cache["char_poly"] = p
    return p


class SpectrumReport:
    """Q(i)-eigenvalues of a matrix with exact algebraic multiplicities."""

    __slots__ = ("found", "fully_split")

    def __init__(self, found: Sequence[tuple[GaussianRational, int]], fully_split: bool):
        object.__setattr__(self, "found", tuple(found))
        object.__setattr__(self, "fully_split", fully_split)

    def __setattr__(self, name, value):
        raise AttributeError("SpectrumReport is immutable")

    def multiplicity(self, value: GaussianRational) -> int:
        for v, m in self.found:
            if v == value:
                return m
        return 0

    def __repr__(self) -> str:
        items = ", ".join(f"{v}:{m}" for v, m in self.found)
        return f"SpectrumReport({{{items}}}, fully_split={self.fully_split})"


def gaussian_rational_spectrum(a: ExactMatrix) -> SpectrumReport:
    """All eigenvalues of ``a`` lying in Q(i), found exactly from char_poly.

    Eigenvalues outside Q(i) are never approximated; they only make
    ``fully_split`` false.
    """
    if not a.is_square:
        raise ShapeError("spectrum of a non-square matrix")
    if "spectrum" in a._cache:
        return a._cache["spectrum"]
    roots = rational_complex_roots(char_poly(a))
    total = sum(m for _, m in roots)
    rep = SpectrumReport(roots, total == a.rows)
    a._cache["spectrum"] = rep
    return rep


def is_nilpotent(a: ExactMatrix) -> bool:
    """True iff a^n = 0 (equivalently char_poly(a) = x^n).

    Computed by repeated squaring with a zero short-circuit: a is nilpotent
    iff a^(2^ceil(log2 n)) = 0.
    """
    if not a.is_square:
        raise ShapeError("nilpotency of a non-square matrix")
    cur = a
    exp = 1
    while True:
        if cur.is_zero():
            return True
        if exp >= a.rows:
            return False
        cur = cur @ cur
        exp *= 2
