"""Morphisms and homotopies of truncated circle-equivariant complexes.

A morphism between N-truncated complexes (C, delta) and (D, partial) is a
family phi^0, ..., phi^N with phi^r of degree -2r satisfying

    sum_{i+j=k} phi^i . delta^j - partial^j . phi^i = 0      (k <= N),

and a homotopy between phi and psi is a family h^r of degree -2r-1 with

    phi^k - psi^k = sum_{i+j=k} h^i . delta^j + partial^j . h^i.

When the target carries no higher operators, the higher components of phi
descend to quotient maps

    Phi^k : Z_k/B_0 -> coker Phi^{k-1},
    Phi^k(alpha_0) = sum_{i=0}^k phi^i(alpha_{k-i}),

computed here with deterministic witness choices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import (
    FilteredPlusComplex,
    S1Complex,
    TruncationError,
    build_filtered_plus,
    cohomology,
)
from .linalg import (
    SparseMatrix,
    Subquotient,
    Vector,
    image_basis,
    kernel_basis,
    rank as matrix_rank,
    solve,
    span_leq,
    vadd,
    vis_zero,
)
from .spectral import WitnessedCycle, b_basis, delta_value, z_basis, z_space


@dataclass(frozen=True)
class S1Morphism:
    source: S1Complex
    target: S1Complex
    phis: tuple[SparseMatrix, ...]

    def __post_init__(self) -> None:
        if self.source.truncation != self.target.truncation:
            raise TruncationError("morphisms require equal truncations; truncate first")
        if len(self.phis) != self.source.truncation + 1:
            raise ValueError("need exactly truncation+1 component matrices")
        for m in self.phis:
            if (m.rows, m.cols) != (self.target.n, self.source.n):
                raise ValueError("component matrix shape mismatch")

    @property
    def truncation(self) -> int:
        return self.source.truncation

    def phi(self, r: int) -> SparseMatrix:
        return self.phis[r]


@dataclass(frozen=True)
class S1Homotopy:
    between: tuple[S1Morphism, S1Morphism]
    hs: tuple[SparseMatrix, ...]

    def __post_init__(self) -> None:
        a, b = self.between
        if a.source != b.source or a.target != b.target:
            raise ValueError("homotopy endpoints must share source and target")
        if len(self.hs) != a.truncation + 1:
            raise ValueError("need exactly truncation+1 homotopy matrices")
        for m in self.hs:
            if (m.rows, m.cols) != (a.target.n, a.source.n):
                raise ValueError("homotopy matrix shape mismatch")


def identity_morphism(c: S1Complex) -> S1Morphism:
    eye = SparseMatrix.identity(c.n)
    zero = SparseMatrix.zero(c.n, c.n)
    return S1Morphism(c, c, (eye,) + (zero,) * c.truncation)


def zero_morphism(source: S1Complex, target: S1Complex) -> S1Morphism:
    z = SparseMatrix.zero(target.n, source.n)
    return S1Morphism(source, target, (z,) * (source.truncation + 1))


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class MorphismCheck:
    k: int
    ok: bool
    residual_entries: tuple[tuple[str, str, Fraction], ...]


@dataclass(frozen=True)
class MorphismReport:
    relation_checks: tuple[MorphismCheck, ...]
    degree_checks: tuple[tuple[int, bool], ...]

    @property
    def valid(self) -> bool:
        return (all(c.ok for c in self.relation_checks)
                and all(ok for _, ok in self.degree_checks))


def verify_morphism(phi: S1Morphism) -> MorphismReport:
    src, dst = phi.source, phi.target
    src_names = [g.name for g in src.generators]
    dst_names = [g.name for g in dst.generators]
    degree_checks = []
    for r, m in enumerate(phi.phis):
        ok = all(dst.generators[i].degree - src.generators[j].degree == -2 * r
                 for i, j, _ in m.entries)
        degree_checks.append((r, ok))
    checks = []
    for k in range(phi.truncation + 1):
        total = SparseMatrix.zero(dst.n, src.n)
        for i in range(k + 1):
            j = k - i
            total = total + (phi.phis[i] @ src.deltas[j]) - (dst.deltas[j] @ phi.phis[i])
        bad = tuple((src_names[jj], dst_names[ii], v) for ii, jj, v in total.entries)
        checks.append(MorphismCheck(k, not bad, bad))
    return MorphismReport(tuple(checks), tuple(degree_checks))


def verify_homotopy(h: S1Homotopy) -> MorphismReport:
    phi, psi = h.between
    src, dst = phi.source, phi.target
    src_names = [g.name for g in src.generators]
    dst_names = [g.name for g in dst.generators]
    degree_checks = []
    for r, m in enumerate(h.hs):
        ok = all(dst.generators[i].degree - src.generators[j].degree == -2 * r - 1
                 for i, j, _ in m.entries)
        degree_checks.append((r, ok))
    checks = []
    for k in range(phi.truncation + 1):
        total = phi.phis[k] - psi.phis[k]
        for i in range(k + 1):
            j = k - i
            total = total - (h.hs[i] @ src.deltas[j]) - (dst.deltas[j] @ h.hs[i])
        bad = tuple((src_names[jj], dst_names[ii], v) for ii, jj, v in total.entries)
        checks.append(MorphismCheck(k, not bad, bad))
    return MorphismReport(tuple(checks), tuple(degree_checks))


def compose(outer: S1Morphism, inner: S1Morphism) -> S1Morphism:
    """(outer . inner)^k = sum_{i+j=k} outer^i . inner^j."""
    if inner.target != outer.source:
        raise ValueError("composition mismatch: target(inner) != source(outer)")
    phis = []
    for k in range(inner.truncation + 1):
        total = SparseMatrix.zero(outer.target.n, inner.source.n)
        for i in range(k + 1):
            total = total + (outer.phis[i] @ inner.phis[k - i])
        phis.append(total)
    return S1Morphism(inner.source, outer.target, tuple(phis))


def homotopy_deformation(phi: S1Morphism, hs: tuple[SparseMatrix, ...]) -> tuple[S1Morphism, S1Homotopy]:
    """The morphism phi - (h delta + partial h), homotopic to phi via h."""
    src, dst = phi.source, phi.target
    new = []
    for k in range(phi.truncation + 1):
        total = phi.phis[k]
        for i in range(k + 1):
            j = k - i
            total = total - (hs[i] @ src.deltas[j]) - (dst.deltas[j] @ hs[i])
        new.append(total)
    psi = S1Morphism(src, dst, tuple(new))
    return psi, S1Homotopy((phi, psi), hs)


# ---------------------------------------------------------------------------
# the assembled map on filtered complexes


def filtered_morphism_matrix(phi: S1Morphism, level: int) -> SparseMatrix:
    """phi_S1 = sum u^r phi^r as a matrix F^level(source) -> F^level(target)."""
    fs = build_filtered_plus(phi.source, level)
    ft = build_filtered_plus(phi.target, level)
    n_src, n_dst = phi.source.n, phi.target.n
    ent = []
    for p in range(level + 1):
        for r in range(0, min(p, phi.truncation) + 1):
            q = p - r
            for i, j, v in phi.phis[r].entries:
                ent.append((q * n_dst + i, p * n_src + j, v))
    return SparseMatrix.from_entries(ft.dim, fs.dim, ent)


def induced_cohomology_map(phi: S1Morphism, level: int) -> dict[int, SparseMatrix]:
    """Matrices of [phi_S1] on H(F^level) in the deterministic bases."""
    fs = build_filtered_plus(phi.source, level)
    ft = build_filtered_plus(phi.target, level)
    mat = filtered_morphism_matrix(phi, level)
    hs = cohomology(fs)
    ht = cohomology(ft)
    out: dict[int, SparseMatrix] = {}
    for d, grp in hs.items():
        tgt = ht.get(d)
        tdim = tgt.dim if tgt else 0
        ent = []
        for j, rep in enumerate(grp.representatives):
            img = mat.apply(rep)
            if tgt is None:
                if not vis_zero(img):
                    raise AssertionError("image class in missing degree")
                continue
            coords = tgt.subquotient.coordinates(img)
            for i, x in enumerate(coords):
                if x:
                    ent.append((i, j, x))
        out[d] = SparseMatrix.from_entries(tdim, grp.dim, ent)
    return out


# ---------------------------------------------------------------------------
# Phi^k for targets with trivial higher structure


@dataclass(frozen=True)
class PhiKMap:
    """Phi^k : Z_k/B_0 (source) -> H(target) / (im Phi^0 + ... + im Phi^{k-1})."""

    k: int
    domain: Subquotient
    codomain: Subquotient
    matrix: SparseMatrix
    domain_witnesses: tuple[WitnessedCycle, ...]
    accumulated_images: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return matrix_rank(self.matrix)

    @property
    def kernel_dim(self) -> int:
        return len(kernel_basis(self.matrix))

    @property
    def coker_dim(self) -> int:
        return self.codomain.dim - self.rank


def _require_trivial_target(phi: S1Morphism) -> None:
    for r in range(1, phi.truncation + 1):
        if not phi.target.deltas[r].is_zero():
            raise ValueError("target must have trivial higher structure for Phi^k")


def phi_value(phi: S1Morphism, w: WitnessedCycle) -> Vector:
    """Chain-level Phi^k of a Z_k witness: sum_{i=0}^k phi^i(alpha_{k-i})."""
    out: Vector = {}
    for i in range(0, w.level + 1):
        a = w.alphas[w.level - i]
        if a and i <= phi.truncation:
            out = vadd(out, phi.phis[i].apply(a))
    return out


def phi_k(phi: S1Morphism, k: int) -> PhiKMap:
    """The quotient map Phi^k; requires 2k <= truncation and a plain target."""
    _require_trivial_target(phi)
    if 2 * k > phi.truncation:
        raise TruncationError(f"Phi^{k} needs truncation >= {2 * k}")
    src, dst = phi.source, phi.target
    cum: list[Vector] = list(image_basis(dst.deltas[0]))
    for j in range(k):
        for w in z_space(src, j):
            val = phi_value(phi, w)
            if not vis_zero(val):
                cum.append(val)
    z_wits = z_space(src, k)
    dom = Subquotient(src.n, [w.leading for w in z_wits], b_basis(src, 0))
    dom_wits = []
    for kind, i in dom.basis_sources:
        assert kind == "z"
        dom_wits.append(z_wits[i])
    cod = Subquotient(dst.n, kernel_basis(dst.deltas[0]), cum)
    ent = []
    for j, w in enumerate(dom_wits):
        val = phi_value(phi, w)
        coords = cod.coordinates(val)
        for i, x in enumerate(coords):
            if x:
                ent.append((i, j, x))
    mat = SparseMatrix.from_entries(cod.dim, dom.dim, ent)
    return PhiKMap(k, dom, cod, mat, tuple(dom_wits), tuple(cum))


# ---------------------------------------------------------------------------
# functoriality of the filtration spaces


@dataclass(frozen=True)
class FunctorialityReport:
    z_containments: tuple[tuple[int, bool], ...]
    b_containments: tuple[tuple[int, bool], ...]
    squares: tuple[tuple[int, bool], ...]

    @property
    def valid(self) -> bool:
        return (all(ok for _, ok in self.z_containments)
                and all(ok for _, ok in self.b_containments)
                and all(ok for _, ok in self.squares))


def verify_functoriality(phi: S1Morphism) -> FunctorialityReport:
    """phi^0 preserves Z_k and B_k, and commutes with Delta^k (2k <= N).

    Containments are span inclusions (rank identities); the commuting square
    compares phi^0(Delta^k alpha) with Delta^k(phi^0 alpha) inside
    Z_0(target)/B_{k-1}(target), where the target witness is transported by
    the assembled filtered morphism.
    """
    src, dst = phi.source, phi.target
    phi0 = phi.phis[0]
    z_cont = []
    b_cont = []
    squares = []
    for k in range(0, phi.truncation // 2 + 1):
        zs = z_basis(src, k)
        zd = z_basis(dst, k)
        z_cont.append((k, span_leq([phi0.apply(v) for v in zs], zd, dst.n)))
        bs = b_basis(src, k)
        bd = b_basis(dst, k)
        b_cont.append((k, span_leq([phi0.apply(v) for v in bs], bd, dst.n)))
        if k >= 1:
            squares.append((k, _delta_square_commutes(phi, k)))
    return FunctorialityReport(tuple(z_cont), tuple(b_cont), tuple(squares))


def _delta_square_commutes(phi: S1Morphism, k: int) -> bool:
    src, dst = phi.source, phi.target
    phi0 = phi.phis[0]
    cod = Subquotient(dst.n, z_basis(dst, 0), b_basis(dst, k - 1))
    fmat = filtered_morphism_matrix(phi, k - 1)
    fs = build_filtered_plus(src, k - 1)
    ft = build_filtered_plus(dst, k - 1)
    for w in z_space(src, k - 1):
        left = phi0.apply(delta_value(src, w))
        image_chain = fmat.apply(w.filtered_vector(fs))
        alphas = tuple(ft.power_component(image_chain, k - 1 - j) for j in range(k))
        w_dst = WitnessedCycle(k - 1, alphas)
        right = delta_value(dst, w_dst)
        diff = vadd(left, {i: -x for i, x in right.items()})
        m = cod.membership(diff)
        if not m.in_z or not m.in_b:
            return False
    return True


def verify_filtration_preservation(phi: S1Morphism, level: int | None = None) -> bool:
    """Diagnostic: [phi_S1] respects the u-power filtration on cohomology.

    The block-triangular reconstruction of [phi_S1] from the quotient maps is
    only defined up to non-canonical splittings, so the assertable content is
    that classes supported in F^j map into classes supported in F^j.
    """
    n_tr = phi.truncation if level is None else level
    ft = build_filtered_plus(phi.target, n_tr)
    mat = filtered_morphism_matrix(phi, n_tr)
    for j in range(n_tr + 1):
        fj_src = build_filtered_plus(phi.source, j)
        fj_dst = build_filtered_plus(phi.target, j)
        h_src = cohomology(fj_src)
        for grp in h_src.values():
            for rep in grp.representatives:
                # promote the F^j class to F^N (a prefix of the basis), push
                # forward, and test that the image class has a representative
                # supported inside F^j of the target
                img = mat.apply(dict(rep))
                if _representative_in_prefix(ft, img, fj_dst.dim) is None:
                    return False
    return True


def _representative_in_prefix(ft: FilteredPlusComplex, v: Vector,
                              prefix_dim: int) -> Vector | None:
    """A representative of [v] supported on the first prefix_dim coordinates."""
    diff = ft.differential
    # v - D w lies in the prefix iff the rows beyond the prefix cancel
    rows = list(range(prefix_dim, ft.dim))
    high = diff.submatrix(rows, list(range(ft.dim)))
    rhs = {i - prefix_dim: x for i, x in v.items() if i >= prefix_dim}
    w = solve(high, rhs)
    if w is None:
        return None
    corrected = vadd(v, {i: -x for i, x in diff.apply(w).items()})
    return corrected if all(i < prefix_dim for i in corrected) else None
