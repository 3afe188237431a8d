"""Exact sparse linear algebra over the rationals.

Everything downstream (cochain complexes, filtration spaces, dilation
detection) reduces to rank/kernel/solve questions over Q, so all arithmetic
here is exact: scalars are `fractions.Fraction`, vectors are sparse dicts
``{index: Fraction}`` with no stored zeros, and matrices are canonical
row-major triplet lists.  No floating point is accepted anywhere.

Pivoting is deterministic (leftmost nonzero column, first available row), so
every derived basis -- reduced echelon forms, kernel and image bases,
subquotient coordinates -- is reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

QQ = Fraction

Vector = dict[int, Fraction]


class DimensionError(ValueError):
    """Shapes of the operands do not match."""


def as_q(x: object) -> Fraction:
    """Coerce an int / Fraction / rational string to Fraction, rejecting floats."""
    if isinstance(x, float):
        raise TypeError("floating point values are not allowed; use Fraction or int")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


# ---------------------------------------------------------------------------
# sparse vectors


def vec(entries: Mapping[int, object] | Iterable[tuple[int, object]] = ()) -> Vector:
    items = entries.items() if isinstance(entries, Mapping) else entries
    out: Vector = {}
    for i, x in items:
        q = as_q(x)
        if q:
            out[i] = out.get(i, Fraction(0)) + q
            if not out[i]:
                del out[i]
    return out


def unit_vec(i: int) -> Vector:
    return {i: Fraction(1)}


def vadd(u: Vector, v: Vector) -> Vector:
    out = dict(u)
    for i, x in v.items():
        s = out.get(i, Fraction(0)) + x
        if s:
            out[i] = s
        else:
            out.pop(i, None)
    return out


def vsub(u: Vector, v: Vector) -> Vector:
    return vadd(u, vscale(Fraction(-1), v))


def vscale(c: object, v: Vector) -> Vector:
    q = as_q(c)
    if not q:
        return {}
    return {i: q * x for i, x in v.items()}


def vis_zero(v: Vector) -> bool:
    return not v


def vrestrict(v: Vector, indices: Sequence[int]) -> Vector:
    """Reindex v onto the subspace spanned by `indices` (old index -> position)."""
    pos = {idx: p for p, idx in enumerate(indices)}
    out: Vector = {}
    for i, x in v.items():
        if i in pos:
            out[pos[i]] = x
    return out


def vpromote(v: Vector, indices: Sequence[int]) -> Vector:
    """Inverse of vrestrict: position -> old index."""
    return {indices[i]: x for i, x in v.items()}


# ---------------------------------------------------------------------------
# sparse matrices


@dataclass(frozen=True)
class SparseMatrix:
    """Immutable sparse rational matrix.

    `entries` is a row-major sorted tuple of (row, col, value) with no zero
    values and no duplicate positions; this canonical form makes equality and
    hashing structural.
    """

    rows: int
    cols: int
    entries: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self) -> None:
        last = None
        for r, c, v in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise DimensionError(f"entry ({r},{c}) out of range {self.rows}x{self.cols}")
            if not v:
                raise ValueError("zero coefficient stored in SparseMatrix")
            if last is not None and (r, c) <= last:
                raise ValueError("entries not in canonical row-major order")
            last = (r, c)

    # construction -----------------------------------------------------

    @staticmethod
    def from_entries(rows: int, cols: int,
                     entries: Iterable[tuple[int, int, object]]) -> "SparseMatrix":
        acc: dict[tuple[int, int], Fraction] = {}
        for r, c, x in entries:
            q = as_q(x)
            if not q:
                continue
            key = (r, c)
            s = acc.get(key, Fraction(0)) + q
            if s:
                acc[key] = s
            else:
                del acc[key]
        items = tuple((r, c, acc[(r, c)]) for r, c in sorted(acc))
        return SparseMatrix(rows, cols, items)

    @staticmethod
    def from_dense(data: Sequence[Sequence[object]], cols: int | None = None) -> "SparseMatrix":
        nrows = len(data)
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        ent = []
        for r, row in enumerate(data):
            if len(row) != ncols:
                raise DimensionError("ragged dense matrix")
            for c, x in enumerate(row):
                ent.append((r, c, x))
        return SparseMatrix.from_entries(nrows, ncols, ent)

    @staticmethod
    def from_columns(columns: Sequence[Vector], rows: int) -> "SparseMatrix":
        ent = []
        for c, col in enumerate(columns):
            for r, x in col.items():
                ent.append((r, c, x))
        return SparseMatrix.from_entries(rows, len(columns), ent)

    @staticmethod
    def identity(n: int) -> "SparseMatrix":
        return SparseMatrix(n, n, tuple((i, i, Fraction(1)) for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "SparseMatrix":
        return SparseMatrix(rows, cols, ())

    # access -----------------------------------------------------------

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def col(self, j: int) -> Vector:
        if not 0 <= j < self.cols:
            raise DimensionError(f"column {j} out of range")
        return {r: v for r, c, v in self.entries if c == j}

    def columns(self) -> list[Vector]:
        out: list[Vector] = [dict() for _ in range(self.cols)]
        for r, c, v in self.entries:
            out[c][r] = v
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def nnz(self) -> int:
        return len(self.entries)

    # algebra ------------------------------------------------------------

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_entries(self.cols, self.rows,
                                         ((c, r, v) for r, c, v in self.entries))

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("matrix shapes differ")
        return SparseMatrix.from_entries(
            self.rows, self.cols, list(self.entries) + list(other.entries))

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def scale(self, c: object) -> "SparseMatrix":
        q = as_q(c)
        if not q:
            return SparseMatrix.zero(self.rows, self.cols)
        return SparseMatrix(self.rows, self.cols,
                            tuple((r, col, q * v) for r, col, v in self.entries))

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise DimensionError("inner dimensions differ")
        by_col = _cols_of(self)
        acc: dict[tuple[int, int], Fraction] = {}
        for r, c, v in other.entries:
            # column c of the product picks up v * (column r of self)
            for rr, vv in by_col.get(r, ()):
                key = (rr, c)
                s = acc.get(key, Fraction(0)) + vv * v
                if s:
                    acc[key] = s
                else:
                    del acc[key]
        ent = tuple((r, c, acc[(r, c)]) for r, c in sorted(acc))
        return SparseMatrix(self.rows, other.cols, ent)

    def apply(self, v: Vector) -> Vector:
        """Matrix times sparse column vector."""
        by_col = _cols_of(self)
        out: Vector = {}
        for c, x in v.items():
            if c >= self.cols:
                raise DimensionError("vector index out of range")
            for r, m in by_col.get(c, ()):
                s = out.get(r, Fraction(0)) + m * x
                if s:
                    out[r] = s
                else:
                    del out[r]
        return out

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.rows != other.rows:
            raise DimensionError("row counts differ")
        ent = list(self.entries)
        ent.extend((r, c + self.cols, v) for r, c, v in other.entries)
        return SparseMatrix.from_entries(self.rows, self.cols + other.cols, ent)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "SparseMatrix":
        rpos = {idx: p for p, idx in enumerate(row_indices)}
        cpos = {idx: p for p, idx in enumerate(col_indices)}
        ent = [(rpos[r], cpos[c], v) for r, c, v in self.entries
               if r in rpos and c in cpos]
        return SparseMatrix.from_entries(len(row_indices), len(col_indices), ent)


@lru_cache(maxsize=512)
def _cols_of(m: SparseMatrix) -> dict[int, tuple[tuple[int, Fraction], ...]]:
    acc: dict[int, list[tuple[int, Fraction]]] = {}
    for r, c, v in m.entries:
        acc.setdefault(c, []).append((r, v))
    return {c: tuple(lst) for c, lst in acc.items()}


# ---------------------------------------------------------------------------
# elimination


def _rref_rows(rows: list[dict[int, Fraction]], cols: int) -> tuple[list[dict[int, Fraction]], list[int]]:
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(cols):
        piv = None
        for i in range(r, nrows):
            if c in rows[i]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pval = prow[c]
        if pval != 1:
            inv = Fraction(1) / pval
            for k in prow:
                prow[k] *= inv
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row.get(c)
            if f is None:
                continue
            for k, v in prow.items():
                s = row.get(k, Fraction(0)) - f * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(m: SparseMatrix) -> tuple[SparseMatrix, tuple[int, ...]]:
    """Reduced row-echelon form with strictly increasing pivot columns.

    Pivot selection is leftmost-column-first, first-row-first, so the output
    is a deterministic function of the input.
    """
    rows, pivots = _rref_rows(m.row_dicts(), m.cols)
    ent = []
    for r, row in enumerate(rows):
        for c in sorted(row):
            ent.append((r, c, row[c]))
    return SparseMatrix.from_entries(m.rows, m.cols, ent), tuple(pivots)


def rank(m: SparseMatrix) -> int:
    return len(rref(m)[1])


def solve(m: SparseMatrix, b: Vector) -> Vector | None:
    """One exact solution of m @ x = b, or None when b is not in the image.

    Free variables are set to zero, so the returned witness is deterministic.
    Absence is certified by the pivot landing in the augmented column.
    """
    for i in b:
        if not 0 <= i < m.rows:
            raise DimensionError("right-hand side index out of range")
    rows = m.row_dicts()
    aug = m.cols
    for i, x in b.items():
        rows[i][aug] = x
    rows, pivots = _rref_rows(rows, m.cols + 1)
    if pivots and pivots[-1] == aug:
        return None
    x: Vector = {}
    for r, p in enumerate(pivots):
        v = rows[r].get(aug)
        if v:
            x[p] = v
    return x


def kernel_basis(m: SparseMatrix) -> list[Vector]:
    """Deterministic basis of ker(m), one vector per free column."""
    red, pivots = rref(m)
    pivset = set(pivots)
    rows = red.row_dicts()
    out: list[Vector] = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v: Vector = {f: Fraction(1)}
        for r, p in enumerate(pivots):
            coeff = rows[r].get(f)
            if coeff:
                v[p] = -coeff
        out.append(v)
    return out


def image_basis(m: SparseMatrix) -> list[Vector]:
    """Basis of the column space: the original columns at the pivot indices."""
    _, pivots = rref(m)
    cols = m.columns()
    return [cols[p] for p in pivots]


def span_rank(vectors: Sequence[Vector], dim: int) -> int:
    return rank(SparseMatrix.from_columns(vectors, dim))


def span_contains(vectors: Sequence[Vector], v: Vector, dim: int) -> bool:
    return solve(SparseMatrix.from_columns(vectors, dim), v) is not None


def span_leq(a: Sequence[Vector], b: Sequence[Vector], dim: int) -> bool:
    """span(a) contained in span(b), decided by a rank identity."""
    mb = SparseMatrix.from_columns(list(b), dim)
    mba = SparseMatrix.from_columns(list(b) + list(a), dim)
    return rank(mb) == rank(mba)


# ---------------------------------------------------------------------------
# subquotients Z/B


@dataclass(frozen=True)
class Membership:
    """Outcome of reducing a vector against a subquotient Z/B."""

    in_z: bool
    coords: tuple[Fraction, ...] | None

    @property
    def in_b(self) -> bool:
        return bool(self.in_z and self.coords is not None and not any(self.coords))


class Subquotient:
    """A subquotient Z/B of an ambient Q-vector space.

    Z and B are presented by spanning sets; span(B) <= span(Z) is verified at
    construction.  A deterministic quotient basis is chosen by running the
    pivot search over the columns [B | preferred | Z]: the pivot columns
    beyond rank(B) represent the quotient, with any `preferred` vectors
    (e.g. a distinguished unit class) coming first when independent.
    """

    def __init__(self, ambient_dim: int, z_gens: Sequence[Vector],
                 b_gens: Sequence[Vector] = (),
                 preferred: Sequence[Vector] = ()):
        self.ambient_dim = ambient_dim
        self.z_gens = tuple(dict(v) for v in z_gens)
        self.b_gens = tuple(dict(v) for v in b_gens)
        self.preferred = tuple(dict(v) for v in preferred)
        for v in (*self.z_gens, *self.b_gens, *self.preferred):
            for i in v:
                if not 0 <= i < ambient_dim:
                    raise DimensionError("generator index out of ambient range")

        zmat = SparseMatrix.from_columns(self.z_gens, ambient_dim)
        self.rank_z = rank(zmat)
        if self.b_gens or self.preferred:
            ext = SparseMatrix.from_columns(
                list(self.z_gens) + list(self.b_gens) + list(self.preferred), ambient_dim)
            if rank(ext) != self.rank_z:
                raise ValueError("b_gens/preferred not contained in span(z_gens)")

        nb = len(self.b_gens)
        np_ = len(self.preferred)
        combined = list(self.b_gens) + list(self.preferred) + list(self.z_gens)
        _, pivots = rref(SparseMatrix.from_columns(combined, ambient_dim))
        self.rank_b = sum(1 for p in pivots if p < nb)
        b_basis = [combined[p] for p in pivots if p < nb]
        basis: list[Vector] = []
        sources: list[tuple[str, int]] = []
        for p in pivots:
            if p < nb:
                continue
            if p < nb + np_:
                basis.append(combined[p])
                sources.append(("preferred", p - nb))
            else:
                basis.append(combined[p])
                sources.append(("z", p - nb - np_))
        self.basis = tuple(basis)
        self.basis_sources = tuple(sources)
        self.dim = len(basis)
        assert self.dim == self.rank_z - self.rank_b
        self._solver = SparseMatrix.from_columns(b_basis + basis, ambient_dim)
        self._nb_basis = len(b_basis)

    def membership(self, v: Vector) -> Membership:
        for i in v:
            if not 0 <= i < self.ambient_dim:
                raise DimensionError("vector index out of ambient range")
        sol = solve(self._solver, v)
        if sol is None:
            return Membership(False, None)
        coords = tuple(sol.get(self._nb_basis + j, Fraction(0)) for j in range(self.dim))
        return Membership(True, coords)

    def coordinates(self, v: Vector) -> tuple[Fraction, ...]:
        m = self.membership(v)
        if not m.in_z:
            raise ValueError("vector is not in Z")
        assert m.coords is not None
        return m.coords

    def class_vector(self, coords: Sequence[object]) -> Vector:
        """Chain-level representative of the class with the given coordinates."""
        out: Vector = {}
        for j, c in enumerate(coords):
            out = vadd(out, vscale(c, self.basis[j]))
        return out

    def dims_by(self, grading: Sequence[int]) -> dict[int, int]:
        """Quotient dimension per value of a grading on the ambient basis."""
        out: dict[int, int] = {}
        for b in self.basis:
            d = grading[next(iter(sorted(b)))]
            out[d] = out.get(d, 0) + 1
        return out

    def __repr__(self) -> str:  # pragma: no cover
        return (f"Subquotient(dim={self.dim}, rank_z={self.rank_z}, "
                f"rank_b={self.rank_b}, ambient={self.ambient_dim})")


def subquotient_membership(s: Subquotient, v: Vector) -> Membership:
    """Reduce v against Z/B: not-in-Z, in-B, or class coordinates."""
    return s.membership(v)
