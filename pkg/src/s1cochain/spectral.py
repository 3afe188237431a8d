"""The u-adic filtration calculus: Z_k, B_k, the maps Delta^k, and page data.

Z_k collects the leading terms alpha_0 of closed elements
sum_{i=0}^k u^-i alpha_{k-i} of F^k; B_k collects the elements of C that are
exact in F^k.  These are nested,

    B_0 <= ... <= B_k <= Z_k <= ... <= Z_0,

and the structural map

    Delta^k : Z_{k-1}/B_0 -> Z_0/B_{k-1},
    Delta^k(alpha_0) = sum_{i=1}^k delta^i(alpha_{k-i})

of degree 1-2k packages the k-th differential of the spectral sequence of the
u-power filtration.  Delta^k is well-defined exactly when 2k does not exceed
the truncation; it satisfies ker = Z_k/B_0, im = B_k/B_{k-1},
coker = Z_0/B_k.

All spaces are kept as spanning sets inside the ambient complex so that the
inclusion chain and the kernel/image/cokernel identities are literal rank
assertions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    FilteredPlusComplex,
    S1Complex,
    TruncationError,
    build_filtered_plus,
)
from .linalg import (
    SparseMatrix,
    Subquotient,
    Vector,
    kernel_basis,
    rank as matrix_rank,
    rref,
    vadd,
    vis_zero,
)


@dataclass(frozen=True)
class WitnessedCycle:
    """A vector of C together with the full chain certifying its membership.

    For Z_k: alphas = (alpha_0, ..., alpha_k) with
    delta_S1(sum u^-i alpha_{k-i}) = 0 and leading term alpha_0.
    For B_k: the same shape, with boundary_value = delta_S1(sum u^-i alpha_{k-i})
    lying in C.
    """

    level: int
    alphas: tuple[Vector, ...]
    boundary_value: Vector | None = None

    @property
    def leading(self) -> Vector:
        return self.alphas[0]

    def filtered_vector(self, f: FilteredPlusComplex) -> Vector:
        """Assemble sum u^-i alpha_{k-i} in the basis of F^level."""
        out: Vector = {}
        for j, a in enumerate(self.alphas):
            power = self.level - j
            for i, x in a.items():
                out[f.index_of(i, power)] = x
        return out


def _split_filtered_vector(f: FilteredPlusComplex, v: Vector, level: int) -> tuple[Vector, ...]:
    """Decompose a vector of F^level into (alpha_0, ..., alpha_level)."""
    return tuple(f.power_component(v, level - j) for j in range(level + 1))


def _independent_by_leading(pairs: list[tuple[Vector, Vector]], dim: int) -> list[int]:
    """Indices of pairs whose first components form a deterministic basis."""
    mat = SparseMatrix.from_columns([p[0] for p in pairs], dim)
    _, pivots = rref(mat)
    return list(pivots)


def z_space(c: S1Complex, k: int) -> list[WitnessedCycle]:
    """Basis of Z_k with witnesses: the u^-k block of ker(delta_S1 on F^k)."""
    if k > c.truncation:
        raise TruncationError(f"Z_{k} needs truncation >= {k}")
    f = build_filtered_plus(c, k)
    kern = kernel_basis(f.differential)
    pairs = [(f.power_component(v, k), v) for v in kern]
    pairs = [p for p in pairs if not vis_zero(p[0])]
    chosen = _independent_by_leading(pairs, c.n)
    out = []
    for i in chosen:
        full = pairs[i][1]
        w = WitnessedCycle(k, _split_filtered_vector(f, full, k))
        assert vis_zero(f.differential.apply(w.filtered_vector(f)))
        out.append(w)
    return out


def b_space(c: S1Complex, k: int) -> list[WitnessedCycle]:
    """Basis of B_k with primitives: image of delta_S1 on F^k intersected with C.

    An element of C is exact in F^k iff some primitive A has delta_S1(A)
    supported entirely at u^0; the primitives are found as the kernel of the
    positive-power part of the differential.
    """
    if k > c.truncation:
        raise TruncationError(f"B_{k} needs truncation >= {k}")
    f = build_filtered_plus(c, k)
    n = c.n
    # rows of the differential landing at u-power >= 1
    high = SparseMatrix.from_entries(
        f.dim, f.dim, ((i, j, v) for i, j, v in f.differential.entries if i >= n))
    prims = kernel_basis(high)
    pairs = []
    for a in prims:
        value = f.differential.apply(a)
        value_c = f.power_component(value, 0)
        if not vis_zero(value_c):
            pairs.append((value_c, a))
    chosen = _independent_by_leading(pairs, n)
    out = []
    for i in chosen:
        value_c, a = pairs[i]
        w = WitnessedCycle(k, _split_filtered_vector(f, a, k), boundary_value=value_c)
        assert f.differential.apply(w.filtered_vector(f)) == f.include_chain(value_c, 0)
        out.append(w)
    return out


def z_basis(c: S1Complex, k: int) -> list[Vector]:
    return [w.leading for w in z_space(c, k)]


def b_basis(c: S1Complex, k: int) -> list[Vector]:
    return [w.boundary_value for w in b_space(c, k)]  # type: ignore[misc]


def delta_value(c: S1Complex, w: WitnessedCycle) -> Vector:
    """Chain-level Delta^{k+1} of a Z_k witness: sum_{i>=1} delta^i(alpha_{k+1-i})."""
    k1 = w.level + 1
    out: Vector = {}
    for i in range(1, k1 + 1):
        a = w.alphas[k1 - i] if 0 <= k1 - i < len(w.alphas) else {}
        if a and i <= c.truncation:
            out = vadd(out, c.deltas[i].apply(a))
    return out


@dataclass(frozen=True)
class DeltaKMap:
    """Delta^k : Z_{k-1}/B_0 -> Z_0/B_{k-1} in deterministic quotient bases."""

    k: int
    domain: Subquotient
    codomain: Subquotient
    matrix: SparseMatrix
    domain_witnesses: tuple[WitnessedCycle, ...]

    @property
    def kernel_dim(self) -> int:
        return len(kernel_basis(self.matrix))

    @property
    def rank(self) -> int:
        return matrix_rank(self.matrix)

    @property
    def coker_dim(self) -> int:
        return self.codomain.dim - self.rank


def _quotient_with_witnesses(c: S1Complex, z_wits: list[WitnessedCycle],
                             b_vecs: list[Vector]) -> tuple[Subquotient, list[WitnessedCycle]]:
    sq = Subquotient(c.n, [w.leading for w in z_wits], b_vecs)
    wits = []
    for kind, i in sq.basis_sources:
        assert kind == "z"
        wits.append(z_wits[i])
    return sq, wits


def delta_k(c: S1Complex, k: int) -> DeltaKMap:
    """The structural map Delta^k; requires 2k <= truncation."""
    if k < 1:
        raise ValueError("Delta^k is defined for k >= 1")
    if 2 * k > c.truncation:
        raise TruncationError(f"Delta^{k} needs truncation >= {2 * k}")
    dom_sq, dom_wits = _quotient_with_witnesses(c, z_space(c, k - 1), b_basis(c, 0))
    cod_sq = Subquotient(c.n, z_basis(c, 0), b_basis(c, k - 1))
    ent = []
    for j, w in enumerate(dom_wits):
        val = delta_value(c, w)
        coords = cod_sq.coordinates(val)
        for i, x in enumerate(coords):
            if x:
                ent.append((i, j, x))
    mat = SparseMatrix.from_entries(cod_sq.dim, dom_sq.dim, ent)
    return DeltaKMap(k, dom_sq, cod_sq, mat, tuple(dom_wits))


def perturbed_witness(c: S1Complex, w: WitnessedCycle, kernel_index: int = 0) -> WitnessedCycle:
    """Another witness family for the same leading term, if one exists.

    Adds a closed element of F^{level} with zero leading block; used to test
    that Delta^k and Phi^k do not depend on the witness choice.
    """
    f = build_filtered_plus(c, w.level)
    kern = kernel_basis(f.differential)
    candidates = [v for v in kern if vis_zero(f.power_component(v, w.level))]
    if not candidates:
        return w
    extra = candidates[kernel_index % len(candidates)]
    full = w.filtered_vector(f)
    perturbed = vadd(full, extra)
    return WitnessedCycle(w.level, _split_filtered_vector(f, perturbed, w.level),
                          boundary_value=w.boundary_value)


# ---------------------------------------------------------------------------
# Leray pages of the u-power filtration on F^N


@dataclass(frozen=True)
class PageColumn:
    u_power: int
    subquotient: Subquotient
    witnesses: tuple[WitnessedCycle, ...]

    def dims_by_total_degree(self, degrees: tuple[int, ...]) -> dict[int, int]:
        raw = self.subquotient.dims_by(degrees)
        return {d - 2 * self.u_power: m for d, m in raw.items()}


@dataclass(frozen=True)
class LerayPage:
    """Page k+1 of the filtration spectral sequence of F^N.

    Column i holds u^-i Z_{min(i,k)} / B_{min(k, N-i)}; the page differential
    maps column i+k+1 to column i and is induced by Delta^{k+1}.  The i = 0
    column is included by the same formula (giving Z_0/B_k there).
    """

    index: int
    truncation: int
    columns: tuple[PageColumn, ...]
    differentials: dict[int, SparseMatrix]

    @property
    def page_number(self) -> int:
        return self.index + 1

    def dims_by_total_degree(self, degrees: tuple[int, ...]) -> dict[int, int]:
        out: dict[int, int] = {}
        for col in self.columns:
            for d, m in col.dims_by_total_degree(degrees).items():
                out[d] = out.get(d, 0) + m
        return {d: m for d, m in sorted(out.items()) if m}


def leray_page(c: S1Complex, k: int, with_differential: bool | None = None) -> LerayPage:
    """Assemble page k+1; differentials need 2(k+1) <= truncation."""
    n_tr = c.truncation
    if k > n_tr:
        raise TruncationError(f"page index {k} exceeds truncation {n_tr}")
    if with_differential is None:
        with_differential = 2 * (k + 1) <= n_tr
    if with_differential and 2 * (k + 1) > n_tr:
        raise TruncationError(
            f"the differential of page {k + 1} needs truncation >= {2 * (k + 1)}")
    z_wits = {j: z_space(c, j) for j in range(min(k, n_tr) + 1)}
    b_vecs = {j: b_basis(c, j) for j in range(min(k, n_tr) + 1)}
    columns = []
    for i in range(n_tr + 1):
        zi = min(i, k)
        bi = min(k, n_tr - i)
        sq, wits = _quotient_with_witnesses(c, z_wits[zi], b_vecs[bi])
        columns.append(PageColumn(i, sq, tuple(wits)))
    diffs: dict[int, SparseMatrix] = {}
    if with_differential:
        for i in range(0, n_tr - k):  # target column i, source column i+k+1
            src = columns[i + k + 1]
            dst = columns[i]
            ent = []
            for j, w in enumerate(src.witnesses):
                val = delta_value(c, _truncate_witness(w, k))
                coords = dst.subquotient.coordinates(val)
                for r, x in enumerate(coords):
                    if x:
                        ent.append((r, j, x))
            diffs[i] = SparseMatrix.from_entries(dst.subquotient.dim,
                                                 src.subquotient.dim, ent)
    return LerayPage(k, n_tr, tuple(columns), diffs)


def _truncate_witness(w: WitnessedCycle, k: int) -> WitnessedCycle:
    """View a Z_j witness (j >= k) as a Z_k witness for the same leading term."""
    if w.level == k:
        return w
    if w.level < k:
        raise ValueError("witness level below requested level")
    return WitnessedCycle(k, w.alphas[: k + 1])


def e_infinity(c: S1Complex) -> LerayPage:
    """The last page: column i is u^-i Z_i / B_{N-i}."""
    return leray_page(c, c.truncation, with_differential=False)


def reduced_page_map(c: S1Complex, k: int) -> tuple[Subquotient, SparseMatrix]:
    """The induced endomorphism of Z_{k-1}/B_{k-1} squaring to zero.

    Its cohomology reproduces Z_k/B_k degreewise, which is the page-recursion
    property of the abstract spectral sequence.
    """
    if 2 * k > c.truncation:
        raise TruncationError(f"page map {k} needs truncation >= {2 * k}")
    sq, wits = _quotient_with_witnesses(c, z_space(c, k - 1), b_basis(c, k - 1))
    ent = []
    for j, w in enumerate(wits):
        val = delta_value(c, w)
        coords = sq.coordinates(val)
        for i, x in enumerate(coords):
            if x:
                ent.append((i, j, x))
    return sq, SparseMatrix.from_entries(sq.dim, sq.dim, ent)
