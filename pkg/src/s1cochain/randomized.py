"""Seeded random generators of valid complexes, splittings and morphisms.

Test utility, not part of the stable API.  The strategy follows the
structure of the objects rather than rejection sampling:

* delta^0 is sampled as a matched acyclic pairing (a square-zero map that is
  strictly triangular in a suitable basis order) and the whole family is
  conjugated by a random degree-preserving change of basis at the end;
* each higher operator delta^k is solved from its relation
  delta^0 delta^k + delta^k delta^0 = -sum_{0<i<k} delta^i delta^{k-i},
  a linear system over the degree-constrained entries, plus a random kernel
  element; when the bilinear obstruction makes a level unsolvable the draw
  is retried with fresh lower operators;
* connecting families delta_{+,0} and morphisms phi are sampled from the
  kernel of their (jointly linear) defining relations.

Every produced object passes the public verifiers; generation asserts this.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .complexes import Generator, S1Complex, verify_s1_relations
from .dilation import (
    PLUS_PART,
    ZERO_PART,
    SplitS1Complex,
    verify_splitting,
)
from .linalg import SparseMatrix, Vector, kernel_basis, solve, vadd, vscale
from .morphisms import S1Morphism, homotopy_deformation, verify_morphism

_SMALL = [Fraction(x) for x in (-2, -1, -1, 1, 1, 2)]


def _rand_coeff(rng: random.Random) -> Fraction:
    return rng.choice(_SMALL)


def _degree_preserving_change_of_basis(rng: random.Random,
                                       degrees: tuple[int, ...]) -> tuple[SparseMatrix, SparseMatrix]:
    """A random invertible block map P (per-degree blocks) and its inverse.

    P is a product of elementary transvections within each degree block, so
    the inverse is the reversed product of the negated transvections.
    """
    n = len(degrees)
    by_degree: dict[int, list[int]] = {}
    for i, d in enumerate(degrees):
        by_degree.setdefault(d, []).append(i)
    transvections: list[tuple[int, int, Fraction]] = []
    for idx in by_degree.values():
        if len(idx) < 2:
            continue
        for _ in range(len(idx)):
            a, b = rng.sample(idx, 2)
            transvections.append((a, b, _rand_coeff(rng)))

    def elementary(a: int, b: int, c: Fraction) -> SparseMatrix:
        return SparseMatrix.from_entries(
            n, n, [(i, i, Fraction(1)) for i in range(n)] + [(a, b, c)])

    p = SparseMatrix.identity(n)
    for a, b, c in transvections:
        p = p @ elementary(a, b, c)
    q = SparseMatrix.identity(n)
    for a, b, c in reversed(transvections):
        q = q @ elementary(a, b, -c)
    return p, q


def _matched_pairing_delta0(rng: random.Random, degrees: tuple[int, ...],
                            protected: set[int] = frozenset()) -> SparseMatrix:
    """A square-zero degree-1 map: disjoint source -> target matches."""
    n = len(degrees)
    used: set[int] = set()
    ent = []
    order = list(range(n))
    rng.shuffle(order)
    for i in order:
        if i in used or i in protected:
            continue
        targets = [j for j in order
                   if j != i and j not in used and j not in protected
                   and degrees[j] == degrees[i] + 1]
        if targets and rng.random() < 0.7:
            j = targets[0]
            ent.append((j, i, _rand_coeff(rng)))
            used.add(i)
            used.add(j)
    return SparseMatrix.from_entries(n, n, ent)


def _allowed_pairs(src_degrees: tuple[int, ...], dst_degrees: tuple[int, ...],
                   shift: int) -> list[tuple[int, int]]:
    return [(i, j) for j, dj in enumerate(src_degrees)
            for i, di in enumerate(dst_degrees) if di - dj == shift]


def _solve_relation_level(rng: random.Random, degrees: tuple[int, ...],
                          deltas: list[SparseMatrix], k: int,
                          density: float) -> SparseMatrix | None:
    """Solve delta^0 D + D delta^0 = -R_k for D over the allowed entries."""
    n = len(degrees)
    d0 = deltas[0]
    rhs_mat = SparseMatrix.zero(n, n)
    for i in range(1, k):
        rhs_mat = rhs_mat + (deltas[i] @ deltas[k - i])
    unknowns = _allowed_pairs(degrees, degrees, 1 - 2 * k)
    upos = {p: t for t, p in enumerate(unknowns)}
    rows = _allowed_pairs(degrees, degrees, 2 - 2 * k)
    rpos = {p: t for t, p in enumerate(rows)}
    ent = []
    for (a, c, v) in d0.entries:
        # term delta^0[a,c] * D[c,b] lands in row (a,b)
        for (cc, b) in unknowns:
            if cc == c and (a, b) in rpos:
                ent.append((rpos[(a, b)], upos[(c, b)], v))
    for (c, b, v) in d0.entries:
        # term D[a,c] * delta^0[c,b] lands in row (a,b)
        for (a, cc) in unknowns:
            if cc == c and (a, b) in rpos:
                ent.append((rpos[(a, b)], upos[(a, c)], v))
    sys = SparseMatrix.from_entries(len(rows), len(unknowns), ent)
    rhs: Vector = {}
    for a, b, v in rhs_mat.entries:
        if (a, b) not in rpos:
            return None  # residual outside the graded window: unsolvable
        rhs[rpos[(a, b)]] = -v
    part = solve(sys, rhs)
    if part is None:
        return None
    total = dict(part)
    for kv in kernel_basis(sys):
        if rng.random() < density:
            total = vadd(total, vscale(_rand_coeff(rng), kv))
    d_ent = [(unknowns[t][0], unknowns[t][1], x) for t, x in total.items()]
    return SparseMatrix.from_entries(n, n, d_ent)


def random_s1_complex(rng: random.Random, n_gens: int, truncation: int,
                      degree_span: tuple[int, int] = (-3, 4),
                      retries: int = 4) -> S1Complex:
    """A valid N-truncated complex with nonzero higher operators when possible."""
    degrees = tuple(rng.randint(*degree_span) for _ in range(n_gens))
    gens = tuple(Generator(f"g{i}", d) for i, d in enumerate(degrees))
    for attempt in range(retries + 1):
        deltas = [_matched_pairing_delta0(rng, degrees)]
        ok = True
        for k in range(1, truncation + 1):
            density = 0.5 if attempt < retries else 0.0
            dk = _solve_relation_level(rng, degrees, deltas, k, density)
            if dk is None:
                ok = False
                break
            deltas.append(dk)
        if ok:
            break
    if not ok:
        # last resort: the delta^0-only complex is always valid
        n = len(degrees)
        deltas = [_matched_pairing_delta0(rng, degrees)]
        deltas.extend(SparseMatrix.zero(n, n) for _ in range(truncation))
    p, q = _degree_preserving_change_of_basis(rng, degrees)
    conjugated = tuple(p @ d @ q for d in deltas)
    c = S1Complex(gens, truncation, conjugated)
    assert verify_s1_relations(c).valid
    return c


def _connecting_family(rng: random.Random, plus: S1Complex, zero_degrees: tuple[int, ...],
                       d0_zero: SparseMatrix, density: float = 0.5) -> list[SparseMatrix]:
    """Sample delta_{+,0}^r from the kernel of the joint linear relations."""
    n_p, n_z = plus.n, len(zero_degrees)
    n_tr = plus.truncation
    unknowns: list[tuple[int, int, int]] = []  # (r, zero-row, plus-col)
    for r in range(n_tr + 1):
        for (i, j) in _allowed_pairs(plus.degrees, zero_degrees, 1 - 2 * r):
            unknowns.append((r, i, j))
    upos = {u: t for t, u in enumerate(unknowns)}
    rows: list[tuple[int, int, int]] = []
    for k in range(n_tr + 1):
        for (i, j) in _allowed_pairs(plus.degrees, zero_degrees, 2 - 2 * k):
            rows.append((k, i, j))
    rpos = {u: t for t, u in enumerate(rows)}
    ent = []
    for k in range(n_tr + 1):
        # sum_{i+j=k} conn^i . delta_+^j  +  delta_0^0 . conn^k = 0
        for r in range(k + 1):
            dplus = plus.deltas[k - r]
            for (c, b, v) in dplus.entries:
                for (rr, a, cc) in unknowns:
                    if rr == r and cc == c and (k, a, b) in rpos:
                        ent.append((rpos[(k, a, b)], upos[(r, a, c)], v))
        for (a, c, v) in d0_zero.entries:
            for (rr, cc, b) in unknowns:
                if rr == k and cc == c and (k, a, b) in rpos:
                    ent.append((rpos[(k, a, b)], upos[(k, c, b)], v))
    sys = SparseMatrix.from_entries(len(rows), len(unknowns), ent)
    total: Vector = {}
    for kv in kernel_basis(sys):
        if rng.random() < density:
            total = vadd(total, vscale(_rand_coeff(rng), kv))
    mats = []
    for r in range(n_tr + 1):
        m_ent = [(i, j, x) for t, x in total.items()
                 for (rr, i, j) in [unknowns[t]] if rr == r]
        mats.append(SparseMatrix.from_entries(n_z, n_p, m_ent))
    return mats


def random_split_complex(rng: random.Random, n_plus: int, n_zero_extra: int,
                         truncation: int,
                         degree_span: tuple[int, int] = (-3, 4),
                         with_unit_killer: bool = False) -> SplitS1Complex:
    """A valid split complex with unit e and sampled connecting operators.

    `with_unit_killer` appends a plus generator x with delta^0 x = e, which
    forces a 0-dilation; useful for exercising the implications that are
    vacuous on complexes without any dilation.
    """
    plus = random_s1_complex(rng, n_plus, truncation, degree_span)
    zero_degrees = (0,) + tuple(rng.randint(degree_span[0], degree_span[1])
                                for _ in range(n_zero_extra))
    # e (index 0) is protected: never a pairing source or target
    d0_zero = _matched_pairing_delta0(rng, zero_degrees, protected={0})
    conn = _connecting_family(rng, plus, zero_degrees, d0_zero)

    n_z = len(zero_degrees)
    n_p = plus.n
    n = n_z + n_p
    gens = tuple([Generator("e", 0)]
                 + [Generator(f"z{i}", d) for i, d in enumerate(zero_degrees[1:])]
                 + [Generator(g.name, g.degree) for g in plus.generators])
    deltas = []
    for r in range(truncation + 1):
        ent = []
        if r == 0:
            ent.extend(d0_zero.entries)
        ent.extend((i + n_z, j + n_z, v) for i, j, v in plus.deltas[r].entries)
        ent.extend((i, j + n_z, v) for i, j, v in conn[r].entries)
        deltas.append(SparseMatrix.from_entries(n, n, ent))
    parts = (ZERO_PART,) * n_z + (PLUS_PART,) * n_p
    unit: Vector = {0: Fraction(1)}
    c = S1Complex(gens, truncation, tuple(deltas))
    s = SplitS1Complex(c, parts, unit)
    if with_unit_killer:
        s = _append_unit_killer(s)
    assert verify_s1_relations(s.complex).valid
    assert verify_splitting(s).valid
    return s


def _append_unit_killer(s: SplitS1Complex) -> SplitS1Complex:
    """Append a plus generator x of degree -1 with delta^0 x = unit chain."""
    c = s.complex
    n = c.n
    gens = tuple(c.generators) + (Generator("unit_killer", -1),)
    deltas = []
    for r in range(c.truncation + 1):
        ent = list(c.deltas[r].entries)
        if r == 0:
            ent.extend((i, n, x) for i, x in s.unit.items())
        deltas.append(SparseMatrix.from_entries(n + 1, n + 1, ent))
    return SplitS1Complex(S1Complex(gens, c.truncation, tuple(deltas)),
                          tuple(s.parts) + (PLUS_PART,), dict(s.unit))


def random_homotopy_blocks(rng: random.Random, phi: S1Morphism,
                           density: float = 0.4) -> tuple[SparseMatrix, ...]:
    """Arbitrary degree-(-2r-1) blocks; any choice is a valid homotopy datum."""
    src, dst = phi.source, phi.target
    hs = []
    for r in range(phi.truncation + 1):
        ent = []
        for (i, j) in _allowed_pairs(src.degrees, dst.degrees, -2 * r - 1):
            if rng.random() < density:
                ent.append((i, j, _rand_coeff(rng)))
        hs.append(SparseMatrix.from_entries(dst.n, src.n, ent))
    return tuple(hs)


def random_morphism(rng: random.Random, source: S1Complex, target: S1Complex,
                    density: float = 0.5) -> S1Morphism:
    """A random solution of the (jointly linear) morphism relations."""
    if source.truncation != target.truncation:
        raise ValueError("equal truncations required")
    n_tr = source.truncation
    unknowns: list[tuple[int, int, int]] = []
    for r in range(n_tr + 1):
        for (i, j) in _allowed_pairs(source.degrees, target.degrees, -2 * r):
            unknowns.append((r, i, j))
    upos = {u: t for t, u in enumerate(unknowns)}
    rows: list[tuple[int, int, int]] = []
    for k in range(n_tr + 1):
        for (i, j) in _allowed_pairs(source.degrees, target.degrees, 1 - 2 * k):
            rows.append((k, i, j))
    rpos = {u: t for t, u in enumerate(rows)}
    ent = []
    for k in range(n_tr + 1):
        for r in range(k + 1):
            dsrc = source.deltas[k - r]
            for (c, b, v) in dsrc.entries:          # phi^r . delta^{k-r}
                for a in range(target.n):
                    if (r, a, c) in upos and (k, a, b) in rpos:
                        ent.append((rpos[(k, a, b)], upos[(r, a, c)], v))
            ddst = target.deltas[k - r]
            for (a, c, v) in ddst.entries:          # - delta^{k-r} . phi^r
                for b in range(source.n):
                    if (r, c, b) in upos and (k, a, b) in rpos:
                        ent.append((rpos[(k, a, b)], upos[(r, c, b)], -v))
    sys = SparseMatrix.from_entries(len(rows), len(unknowns), ent)
    total: Vector = {}
    for kv in kernel_basis(sys):
        if rng.random() < density:
            total = vadd(total, vscale(_rand_coeff(rng), kv))
    phis = []
    for r in range(n_tr + 1):
        m_ent = [(i, j, x) for t, x in total.items()
                 for (rr, i, j) in [unknowns[t]] if rr == r]
        phis.append(SparseMatrix.from_entries(target.n, source.n, m_ent))
    phi = S1Morphism(source, target, tuple(phis))
    assert verify_morphism(phi).valid
    return phi


def random_endomorphism_pair(rng: random.Random, c: S1Complex):
    """A morphism and a homotopic deformation of it, with the homotopy."""
    from .morphisms import identity_morphism
    base = identity_morphism(c)
    hs = random_homotopy_blocks(rng, base)
    deformed, hom = homotopy_deformation(base, hs)
    return base, deformed, hom
