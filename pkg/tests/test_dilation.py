import random

from fractions import Fraction as F

import pytest

from s1cochain.brieskorn import milnor_model
from s1cochain.complexes import (
    TruncationError,
    build_filtered_plus,
    cohomology,
    make_complex,
)
from s1cochain.dilation import (
    delta_partial_k,
    delta_plus0_k,
    delta_plus_k,
    has_k_dilation,
    has_k_semidilation,
    make_split_complex,
    order_of_dilation,
    order_of_semidilation,
    order_via_torsion,
    pi0_coordinate,
    tautological_les,
    verify_splitting,
)
from s1cochain.linalg import SparseMatrix, vis_zero
from s1cochain.randomized import random_split_complex
from s1cochain.spectral import delta_k


def unit_only_complex(n_tr=2):
    c = make_complex([("e", 0)], n_tr, {})
    return make_split_complex(c, ["e"], "e")


def modified_milnor(k, m):
    """A degree-0 zero-part class s' added to delta^0 p_check_{m-k}.

    The extra class never dies, so the unit cannot become exact at any level,
    while the pi_0-projection still reaches it: a semi-dilation without a
    dilation at the same truncation.
    """
    base = milnor_model(k, m, include_spheres=False)
    c = base.complex
    n = c.n
    gens = [(g.name, g.degree) for g in c.generators] + [("s_extra", 0)]
    ops = {}
    for r in range(c.truncation + 1):
        ops[r] = [(c.generators[j].name, c.generators[i].name, v)
                  for i, j, v in c.deltas[r].entries]
    ops[0] = ops.get(0, []) + [(f"p{m-k}_check", "s_extra", F(1))]
    big = make_complex(gens, c.truncation, ops)
    zero_names = [g.name for g, p in zip(c.generators, base.parts) if p == "zero"]
    return make_split_complex(big, zero_names + ["s_extra"], "e")


class TestVerifySplitting:
    def test_unit_only_valid(self):
        assert verify_splitting(unit_only_complex()).valid

    def test_higher_delta_on_zero_part_flagged(self):
        c = make_complex([("e", 0), ("x", -1)], 1, {1: [("e", "x", 1)]})
        s = make_split_complex(c, ["e"], "e")
        rep = verify_splitting(s)
        assert not rep.valid
        assert (1, "e") in rep.higher_violations
        assert any("delta^1" in v for v in rep.violations())

    def test_exact_unit_flagged(self):
        c = make_complex([("e", 0), ("f", -1)], 0, {0: [("f", "e", 1)]})
        s = make_split_complex(c, ["e", "f"], "e")
        rep = verify_splitting(s)
        assert not rep.valid
        assert not rep.unit_nonexact

    def test_milnor_models_valid(self):
        for k, m in [(1, 1), (2, 3), (3, 4), (2, 2)]:
            assert verify_splitting(milnor_model(k, m)).valid


class TestHasKDilation:
    def test_immediate_vanishing(self):
        c = make_complex([("e", 0), ("x", -1)], 1, {0: [("x", "e", 1)]})
        s = make_split_complex(c, ["e"], "e")
        ok, witness = has_k_dilation(s, 0)
        assert ok
        f = build_filtered_plus(c, 0)
        assert f.differential.apply(witness) == {c.index_of("e"): F(1)}

    def test_milnor_found_at_k_minus_1_not_before(self):
        for k, m in [(2, 2), (2, 3), (3, 3)]:
            s = milnor_model(k, m, include_spheres=False)
            assert has_k_dilation(s, k - 1)[0]
            assert not has_k_dilation(s, k - 2)[0]

    def test_level_above_truncation(self):
        with pytest.raises(TruncationError):
            has_k_dilation(unit_only_complex(1), 2)


class TestHasKSemidilation:
    def test_dilation_implies_semidilation(self):
        for k, m in [(1, 2), (2, 2), (3, 3)]:
            s = milnor_model(k, m, include_spheres=False)
            assert has_k_dilation(s, k - 1)[0]
            assert has_k_semidilation(s, k - 1)[0]

    def test_semidilation_witness_is_closed(self):
        s = milnor_model(2, 2, include_spheres=False)
        ok, witness = has_k_semidilation(s, 1)
        assert ok
        fp = build_filtered_plus(s.plus_part_complex(), 1)
        assert vis_zero(fp.differential.apply(witness))

    def test_gap_between_semidilation_and_dilation(self):
        # the extra zero-part class blocks exactness of the unit entirely
        # while pi_0 still reaches it
        for k, m in [(2, 2), (3, 3)]:
            s = modified_milnor(k, m)
            assert verify_splitting(s).valid
            assert has_k_semidilation(s, k - 1)[0]
            assert not has_k_semidilation(s, k - 2)[0]
            for lvl in range(s.truncation + 1):
                assert not has_k_dilation(s, lvl)[0]


class TestOrders:
    def test_milnor_small_orders(self):
        assert order_of_dilation(milnor_model(1, 1)).order == 0
        assert order_of_dilation(milnor_model(2, 2)).order == 1

    def test_milnor_55_at_higher_truncation(self):
        s = milnor_model(5, 5, truncation=8, include_spheres=False)
        assert order_of_dilation(s).order == 4
        assert order_of_semidilation(s).order == 4

    def test_not_found_reports_truncation(self):
        rep = order_of_dilation(unit_only_complex(3))
        assert not rep.found and rep.order is None
        assert rep.truncation == 3
        assert "greater than" in rep.describe() or ">" in rep.describe()

    def test_max_k_caps_scan(self):
        s = milnor_model(3, 3, include_spheres=False)
        rep = order_of_dilation(s, max_k=1)
        assert not rep.found

    def test_report_witness_reverifies(self):
        for k, m in [(1, 1), (2, 3), (3, 3)]:
            s = milnor_model(k, m, include_spheres=False)
            rep = order_of_dilation(s)
            f = build_filtered_plus(s.complex, rep.order)
            assert f.differential.apply(rep.witness) \
                == f.include_chain(s.unit, 0)


class TestTorsionRoute:
    def test_milnor_22_both_routes(self):
        s = milnor_model(2, 2, truncation=4, include_spheres=False)
        assert order_of_dilation(s).order == 1
        assert order_via_torsion(s).order == 1
        assert order_via_torsion(s, semi=True).order == 1

    def test_milnor_33_both_routes(self):
        s = milnor_model(3, 3, truncation=6, include_spheres=False)
        assert order_of_dilation(s).order == 2
        assert order_via_torsion(s).order == 2

    def test_all_zero_both_routes_unbounded(self):
        s = unit_only_complex(3)
        assert order_of_dilation(s).order is None
        assert order_via_torsion(s).order is None
        assert order_via_torsion(s, semi=True).order is None

    def test_agreement_on_random_split_complexes(self):
        rng = random.Random(61)
        for i in range(10):
            s = random_split_complex(rng, rng.randint(3, 8), rng.randint(1, 3),
                                     rng.randint(2, 4), with_unit_killer=(i % 3 == 0))
            assert order_of_dilation(s).order == order_via_torsion(s).order
            assert (order_of_semidilation(s).order
                    == order_via_torsion(s, semi=True).order)


class TestOperators:
    def test_delta_plus0_level0_milnor22(self):
        # the connecting map on first-page classes is zero for (2,2): the
        # only degree -1 class of C_+ dies under delta0_+
        s = milnor_model(2, 2, include_spheres=False)
        p = delta_plus0_k(s, 0)
        assert p.matrix.is_zero()

    def test_delta_plus0_level1_reaches_unit(self):
        # ker Delta^1_+ of (2,2) is spanned by [p0_hat] (killed) and
        # [p1_check], which is sent to -2 [e]
        s = milnor_model(2, 2, include_spheres=False)
        p = delta_plus0_k(s, 1)
        cz = s.zero_part_complex()
        cp = s.plus_part_complex()
        assert p.domain.dim == 2
        assert p.rank == 1
        col = [j for j, w in enumerate(p.domain_witnesses)
               if w.leading == {cp.index_of("p1_check"): F(1)}]
        assert len(col) == 1
        coords = p.matrix.col(col[0])
        val = p.codomain.class_vector(
            [coords.get(i, F(0)) for i in range(p.codomain.dim)])
        assert val == {cz.index_of("e"): F(-2)}

    def test_delta_plus_zero_when_delta1_plus_zero(self):
        c = make_complex([("e", 0), ("a", 0), ("b", 1)], 2, {0: [("a", "b", 1)]})
        s = make_split_complex(c, ["e"], "e")
        dk = delta_plus_k(s, 1)
        assert dk.matrix.is_zero()

    def test_delta_plus_matches_spectral_module(self):
        s = milnor_model(3, 3, include_spheres=False)
        dk_split = delta_plus_k(s, 1)
        dk_direct = delta_k(s.plus_part_complex(), 1)
        assert dk_split.matrix == dk_direct.matrix

    def test_delta_partial_identity_matches(self):
        s = milnor_model(2, 2, include_spheres=False)
        cz = s.zero_part_complex()
        ident = SparseMatrix.identity(cz.n)
        via_partial = delta_partial_k(s, ident, cz, 1)
        direct = delta_plus0_k(s, 1)
        assert via_partial.matrix == direct.matrix

    def test_delta_partial_zero_map(self):
        s = milnor_model(2, 2, include_spheres=False)
        cz = s.zero_part_complex()
        zero = SparseMatrix.zero(cz.n, cz.n)
        p = delta_partial_k(s, zero, cz, 1)
        assert p.matrix.is_zero()

    def test_delta_partial_killing_unit_loses_it(self):
        # target D = C_0 / <e>: project away the unit; the image class that
        # previously hit e becomes zero while the semi-dilation persists
        s = milnor_model(2, 2, include_spheres=False)
        cz = s.zero_part_complex()
        e = cz.index_of("e")
        keep = [i for i in range(cz.n) if i != e]
        target = make_complex(
            [(cz.generators[i].name, cz.generators[i].degree) for i in keep],
            cz.truncation, {})
        proj = SparseMatrix.from_entries(
            len(keep), cz.n, [(t, i, F(1)) for t, i in enumerate(keep)])
        p = delta_partial_k(s, proj, target, 1)
        assert p.matrix.is_zero()
        assert has_k_semidilation(s, 1)[0]

    def test_delta_partial_requires_cochain_map(self):
        c2 = make_complex([("e", 0), ("z", 0), ("w", 1)], 2,
                          {0: [("z", "w", 1)]})
        s2 = make_split_complex(c2, ["e", "z", "w"], "e")
        cz2 = s2.zero_part_complex()
        # degree violation
        bad_degree = SparseMatrix.from_entries(
            cz2.n, cz2.n, [(cz2.index_of("w"), cz2.index_of("e"), F(1))])
        with pytest.raises(ValueError):
            delta_partial_k(s2, bad_degree, cz2, 0)
        # identity into the trivialized zero part does not commute with delta0
        trivial = make_complex(
            [(g.name, g.degree) for g in cz2.generators], cz2.truncation, {})
        with pytest.raises(ValueError):
            delta_partial_k(s2, SparseMatrix.identity(cz2.n), trivial, 0)


class TestPi0:
    def test_unit_coordinate_is_one(self):
        s = milnor_model(2, 2)
        assert pi0_coordinate(s, s.unit) == F(1)

    def test_non_unit_class_reads_zero(self):
        s = modified_milnor(2, 2)
        c = s.complex
        extra = {c.index_of("s_extra"): F(1)}
        assert pi0_coordinate(s, extra) == F(0)
        mixed = {c.index_of("e"): F(3), c.index_of("s_extra"): F(5)}
        assert pi0_coordinate(s, mixed) == F(3)


class TestTautologicalLes:
    def test_no_plus_part_degenerates(self):
        c = make_complex([("e", 0), ("z", 2)], 2, {})
        s = make_split_complex(c, ["e", "z"], "e")
        rep = tautological_les(s)
        assert rep.exact
        assert rep.dims_plus == {}
        assert rep.dims_zero == rep.dims_full

    def test_unit_with_free_plus_part(self):
        c = make_complex([("e", 0), ("x", 1)], 1, {})
        s = make_split_complex(c, ["e"], "e")
        rep = tautological_les(s)
        assert rep.exact
        for d in rep.dims_full:
            assert rep.dims_full[d] == (rep.dims_zero.get(d, 0)
                                        + rep.dims_plus.get(d, 0))

    def test_milnor_models_exact(self):
        for m in range(1, 6):
            for k in range(1, m + 1):
                s = milnor_model(k, m, include_spheres=False)
                window = range(-2 * m, 2 * m + 1)
                assert tautological_les(s, window).exact

    def test_random_split_complexes_exact(self):
        rng = random.Random(67)
        for _ in range(6):
            s = random_split_complex(rng, rng.randint(3, 8), rng.randint(1, 3),
                                     rng.randint(1, 4))
            assert tautological_les(s).exact


class TestHierarchy:
    def test_models_and_killers(self):
        rng = random.Random(71)
        subjects = [milnor_model(2, 2, include_spheres=False),
                    milnor_model(2, 3, include_spheres=False),
                    milnor_model(3, 3, include_spheres=False)]
        subjects += [random_split_complex(rng, 5, 2, 3, with_unit_killer=True)
                     for _ in range(3)]
        for s in subjects:
            n_tr = s.truncation
            for k in range(n_tr):
                dil, _ = has_k_dilation(s, k)
                semi, _ = has_k_semidilation(s, k)
                if dil:
                    assert semi
                    assert has_k_dilation(s, k + 1)[0]
                if semi:
                    assert has_k_semidilation(s, k + 1)[0]


def test_zero_part_cohomology_tensor_factorization():
    # H(F^N C_0) = H(C_0) (x) <1, ..., u^-N> as graded dimensions
    rng = random.Random(73)
    for _ in range(5):
        s = random_split_complex(rng, rng.randint(3, 7), rng.randint(1, 4),
                                 rng.randint(1, 4))
        cz = s.zero_part_complex()
        base = {d: g.dim for d, g in cohomology(cz).items() if g.dim}
        f = build_filtered_plus(cz, s.truncation)
        full = {d: g.dim for d, g in cohomology(f).items() if g.dim}
        expected: dict[int, int] = {}
        for p in range(s.truncation + 1):
            for d, m in base.items():
                expected[d - 2 * p] = expected.get(d - 2 * p, 0) + m
        assert full == expected
