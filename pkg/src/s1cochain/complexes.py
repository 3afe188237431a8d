"""Truncated circle-equivariant cochain complexes over Q.

An N-truncated structure on a Z-graded complex is a family of operators
delta^0, ..., delta^N with delta^r of degree 1-2r, subject to

    sum_{i+j=k} delta^i . delta^j = 0   for every k <= N.

The associated filtered complex F^k = C (x) <1, u^-1, ..., u^-k> carries the
total differential sum_r u^r delta^r, where the formal degree-2 variable u
acts by lowering the u-power and truncating at u^0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    SparseMatrix,
    Subquotient,
    Vector,
    image_basis,
    kernel_basis,
)


class TruncationError(ValueError):
    """A filtration level or operator order exceeds the truncation."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


@dataclass(frozen=True)
class S1Complex:
    """Graded basis plus the operator family (delta^0, ..., delta^N).

    Matrices act on column vectors in the generator basis: column j of
    deltas[r] is delta^r applied to generators[j].  Structural constraints
    (shapes, unique names) are enforced here; the graded relations are
    checked by `verify_s1_relations`.
    """

    generators: tuple[Generator, ...]
    truncation: int
    deltas: tuple[SparseMatrix, ...]

    def __post_init__(self) -> None:
        if self.truncation < 0:
            raise ValueError("truncation must be non-negative")
        if len(self.deltas) != self.truncation + 1:
            raise ValueError("need exactly truncation+1 operator matrices")
        n = len(self.generators)
        names = set()
        for g in self.generators:
            if g.name in names:
                raise ValueError(f"duplicate generator name {g.name!r}")
            names.add(g.name)
        for d in self.deltas:
            if (d.rows, d.cols) != (n, n):
                raise ValueError("operator matrix shape does not match basis")

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    def delta(self, r: int) -> SparseMatrix:
        if not 0 <= r <= self.truncation:
            raise TruncationError(f"delta^{r} beyond truncation {self.truncation}")
        return self.deltas[r]

    def index_of(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise KeyError(name)

    def indices_of_degree(self, d: int) -> list[int]:
        return [i for i, g in enumerate(self.generators) if g.degree == d]

    def degree_range(self) -> range:
        if not self.generators:
            return range(0, 0)
        degs = self.degrees
        return range(min(degs), max(degs) + 1)


def make_complex(generators: list[tuple[str, int]], truncation: int,
                 ops: dict[int, list[tuple[str, str, object]]]) -> S1Complex:
    """Convenience constructor: ops[r] lists (source, target, coefficient)."""
    gens = tuple(Generator(n, d) for n, d in generators)
    idx = {g.name: i for i, g in enumerate(gens)}
    n = len(gens)
    deltas = []
    for r in range(truncation + 1):
        ent = [(idx[to], idx[frm], c) for frm, to, c in ops.get(r, [])]
        deltas.append(SparseMatrix.from_entries(n, n, ent))
    return S1Complex(gens, truncation, tuple(deltas))


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class RelationCheck:
    k: int
    ok: bool
    residual_entries: tuple[tuple[str, str, Fraction], ...]


@dataclass(frozen=True)
class DegreeCheck:
    r: int
    ok: bool
    violations: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class S1ValidationReport:
    relation_checks: tuple[RelationCheck, ...]
    degree_checks: tuple[DegreeCheck, ...]

    @property
    def valid(self) -> bool:
        return (all(c.ok for c in self.relation_checks)
                and all(c.ok for c in self.degree_checks))

    def summary(self) -> str:
        lines = []
        for c in self.degree_checks:
            lines.append(f"degree shift of delta^{c.r} (1-2r): {'ok' if c.ok else 'VIOLATED ' + str(c.violations[:3])}")
        for c in self.relation_checks:
            lines.append(f"relation sum_(i+j={c.k}) delta^i delta^j = 0: "
                         f"{'ok' if c.ok else 'VIOLATED ' + str(c.residual_entries[:3])}")
        return "\n".join(lines)


def verify_s1_relations(c: S1Complex) -> S1ValidationReport:
    """Check every truncated relation and every operator's degree shift."""
    names = [g.name for g in c.generators]
    degs = c.degrees
    degree_checks = []
    for r in range(c.truncation + 1):
        bad = tuple((names[j], names[i]) for i, j, _ in c.deltas[r].entries
                    if degs[i] - degs[j] != 1 - 2 * r)
        degree_checks.append(DegreeCheck(r, not bad, bad))
    relation_checks = []
    for k in range(c.truncation + 1):
        total = SparseMatrix.zero(c.n, c.n)
        for i in range(k + 1):
            total = total + (c.deltas[i] @ c.deltas[k - i])
        bad = tuple((names[j], names[i], v) for i, j, v in total.entries)
        relation_checks.append(RelationCheck(k, not bad, bad))
    return S1ValidationReport(tuple(relation_checks), tuple(degree_checks))


# ---------------------------------------------------------------------------
# filtered complexes F^k


@dataclass(frozen=True)
class FilteredPlusComplex:
    """F^k of an N-truncated complex: basis pairs (generator, u-power).

    Basis pairs are ordered power-major, so for k' <= k the pairs with power
    <= k' form a prefix, and that prefix spans a subcomplex (the differential
    never raises the power).  The pair (g, p) has total degree |g| - 2p.
    """

    source: S1Complex
    level: int
    basis: tuple[tuple[int, int], ...]
    degrees: tuple[int, ...]
    differential: SparseMatrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index_of(self, gen_index: int, power: int) -> int:
        return power * self.source.n + gen_index

    def labels(self) -> list[str]:
        return [f"{self.source.generators[g].name}*u^-{p}" for g, p in self.basis]

    def include_chain(self, v: Vector, power: int = 0) -> Vector:
        """A chain of C placed at the given u-power."""
        return {self.index_of(i, power): x for i, x in v.items()}

    def power_component(self, v: Vector, power: int) -> Vector:
        """Coefficient of u^-power, as a chain of C."""
        n = self.source.n
        return {i - power * n: x for i, x in v.items() if i // n == power}

    def indices_of_degree(self, d: int) -> list[int]:
        return [i for i, dd in enumerate(self.degrees) if dd == d]


def build_filtered_plus(c: S1Complex, k: int) -> FilteredPlusComplex:
    """Assemble F^k with differential sum_r u^r delta^r (truncated at u^0)."""
    if k > c.truncation:
        raise TruncationError(f"level {k} exceeds truncation {c.truncation}")
    if k < 0:
        raise ValueError("level must be non-negative")
    n = c.n
    basis = tuple((g, p) for p in range(k + 1) for g in range(n))
    degrees = tuple(c.generators[g].degree - 2 * p for g, p in basis)
    ent = []
    for p in range(k + 1):  # source power
        for r in range(0, min(p, c.truncation) + 1):  # target power p - r
            q = p - r
            for i, j, v in c.deltas[r].entries:
                ent.append((q * n + i, p * n + j, v))
    diff = SparseMatrix.from_entries(len(basis), len(basis), ent)
    return FilteredPlusComplex(c, k, basis, degrees, diff)


def u_power_matrix(f: FilteredPlusComplex, j: int = 1) -> SparseMatrix:
    """The action of u^j on F^level: (g, p) -> (g, p-j), truncating at u^0.

    u commutes with the total differential, so this is a chain map of
    total degree 2j.
    """
    if j < 0:
        raise ValueError("only non-negative powers of u act on F^k")
    n = f.source.n
    ent = []
    for idx, (g, p) in enumerate(f.basis):
        if p - j >= 0:
            ent.append((f.index_of(g, p - j), idx, Fraction(1)))
    return SparseMatrix.from_entries(f.dim, f.dim, ent)


def filtered_inclusion_matrix(small: FilteredPlusComplex, big: FilteredPlusComplex) -> SparseMatrix:
    """Chain-level inclusion F^{k'} -> F^k for k' <= k (a prefix map)."""
    if small.source is not big.source and small.source != big.source:
        raise ValueError("filtered complexes of different sources")
    if small.level > big.level:
        raise ValueError("first argument must be the lower level")
    ent = [(i, i, Fraction(1)) for i in range(small.dim)]
    return SparseMatrix.from_entries(big.dim, small.dim, ent)


# ---------------------------------------------------------------------------
# cohomology


@dataclass(frozen=True)
class CohomologyGroup:
    degree: int
    dim: int
    representatives: tuple[Vector, ...]
    subquotient: Subquotient


def _graded_data(obj: S1Complex | FilteredPlusComplex) -> tuple[tuple[int, ...], SparseMatrix]:
    if isinstance(obj, S1Complex):
        return obj.degrees, obj.deltas[0]
    return obj.degrees, obj.differential


def cohomology(obj: S1Complex | FilteredPlusComplex,
               degrees: range | None = None,
               preferred: dict[int, list[Vector]] | None = None) -> dict[int, CohomologyGroup]:
    """Per-degree cohomology of (C, delta^0) or of a filtered complex.

    Returns {degree: group} with exact dimensions and deterministic
    representative cycles.  `preferred` optionally requests distinguished
    representatives (per degree) to head the chosen basis.
    """
    degs, diff = _graded_data(obj)
    cycles: dict[int, list[Vector]] = {}
    for v in kernel_basis(diff):
        d = degs[min(v)]
        cycles.setdefault(d, []).append(v)
    bounds: dict[int, list[Vector]] = {}
    for v in image_basis(diff):
        d = degs[min(v)]
        bounds.setdefault(d, []).append(v)
    out: dict[int, CohomologyGroup] = {}
    all_degrees = sorted(set(cycles) | set(bounds))
    for d in all_degrees:
        if degrees is not None and d not in degrees:
            continue
        pref = (preferred or {}).get(d, [])
        sq = Subquotient(len(degs), cycles.get(d, []), bounds.get(d, []), preferred=pref)
        out[d] = CohomologyGroup(d, sq.dim, sq.basis, sq)
    if degrees is not None:
        for d in degrees:
            if d not in out:
                sq = Subquotient(len(degs), [], [])
                out[d] = CohomologyGroup(d, 0, (), sq)
    return out


def cohomology_dims(obj: S1Complex | FilteredPlusComplex,
                    degrees: range | None = None) -> dict[int, int]:
    return {d: g.dim for d, g in cohomology(obj, degrees).items() if g.dim or degrees is not None}


# ---------------------------------------------------------------------------
# constructions


def truncate(c: S1Complex, new_truncation: int) -> S1Complex:
    """Forget the operators above a lower truncation level."""
    if new_truncation > c.truncation:
        raise TruncationError("cannot extend a truncation")
    return S1Complex(c.generators, new_truncation, c.deltas[: new_truncation + 1])


def shift(c: S1Complex, s: int = 1) -> S1Complex:
    """Degree shift C[s]: degrees drop by s, operators pick up the sign (-1)^s."""
    gens = tuple(Generator(g.name, g.degree - s) for g in c.generators)
    sign = -1 if s % 2 else 1
    deltas = tuple(d.scale(sign) for d in c.deltas)
    return S1Complex(gens, c.truncation, deltas)


def direct_sum(a: S1Complex, b: S1Complex) -> S1Complex:
    if a.truncation != b.truncation:
        raise TruncationError("summands must share the truncation")
    taken = {g.name for g in a.generators}
    b_names = []
    for g in b.generators:
        name = g.name
        while name in taken:
            name += "'"
        taken.add(name)
        b_names.append(name)
    gens = tuple(a.generators) + tuple(
        Generator(n, g.degree) for n, g in zip(b_names, b.generators))
    n, m = a.n, b.n
    deltas = []
    for r in range(a.truncation + 1):
        ent = list(a.deltas[r].entries)
        ent.extend((i + n, j + n, v) for i, j, v in b.deltas[r].entries)
        deltas.append(SparseMatrix.from_entries(n + m, n + m, ent))
    return S1Complex(gens, a.truncation, tuple(deltas))
