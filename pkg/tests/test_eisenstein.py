from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratify._backend import eis_identity_flat, eis_mul_flat
from stratify.eisenstein import (
    E1,
    E2,
    E3,
    E4,
    H,
    THETA,
    EisInt,
    ZLattice,
    boundary_betti,
    discriminant_form,
    divisibility,
    eis_gcd,
    eis_lattice,
    eisenstein_roots,
    enumerate_roots,
    enumerate_vectors,
    find_norm_div_vector,
    glue_overlattice,
    named_lattice,
    triflection,
    verify_unimodular_complement_vector,
    weyl_group,
    z_form,
)
from stratify.invariants import flatten_eis_matrix

O3E1_GENS = {
    "generators": [
        [[(0, 1), (0, 0), (0, 0)], [(0, 0), (1, 0), (0, 0)], [(0, 0), (0, 0), (1, 0)]],
        [[(-1, 0), (0, 0), (0, 0)], [(0, 0), (1, 0), (0, 0)], [(0, 0), (0, 0), (1, 0)]],
        [[(0, 0), (1, 0), (0, 0)], [(1, 0), (0, 0), (0, 0)], [(0, 0), (0, 0), (1, 0)]],
        [[(0, 0), (0, 0), (1, 0)], [(1, 0), (0, 0), (0, 0)], [(0, 0), (1, 0), (0, 0)]],
    ]
}


class TestEisInt:
    def test_ring_relations(self):
        w = EisInt(0, 1)
        assert w * w == EisInt(-1, -1)
        assert THETA == w - w * w
        assert THETA * THETA.conj() == EisInt(3, 0)
        assert THETA.conj() == -THETA

    def test_exact_division(self):
        x = EisInt(3, 6)
        assert x.exact_div(THETA) * THETA == x
        with pytest.raises(ValueError):
            EisInt(1, 0).exact_div(THETA)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
    def test_gcd_divides_both(self, a, b, c, d):
        x, y = EisInt(a, b), EisInt(c, d)
        if x.is_zero() and y.is_zero():
            return
        g = eis_gcd(x, y)
        assert not g.is_zero()
        x.exact_div(g)
        y.exact_div(g)


class TestZForm:
    def test_rank1_is_hexagonal_root_lattice(self):
        zl = z_form(E1)
        assert zl.gram == ((-2, 1), (1, -2))

    def test_hyperbolic_summand_is_unimodular(self):
        zl = z_form(H)
        assert zl.is_even() and abs(zl.det()) == 1
        # signature (2, 2): indefinite
        with pytest.raises(ValueError):
            enumerate_roots(zl)

    def test_rank4_is_even_unimodular_definite(self):
        zl = z_form(E4)
        assert zl.is_even() and abs(zl.det()) == 1 and zl.rank == 8

    def test_determinant_matches_eisenstein_norm(self):
        for lat in (E1, E2, E3, E4, H):
            zl = z_form(lat)
            assert abs(zl.det()) * 3**lat.rank == lat.det().norm()

    def test_lattice_file_format(self):
        lat = eis_lattice([[3, [1, 2]], [[-1, -2], 3]])
        assert lat.gram == E2.gram

    def test_theta_valued_validation(self):
        with pytest.raises(ValueError):
            eis_lattice([[1]])
        with pytest.raises(ValueError):
            eis_lattice([[3, [1, 0]], [[1, 0], 3]])


class TestRoots:
    def test_classical_root_counts(self):
        assert len(enumerate_roots(z_form(E1))) == 6
        assert len(enumerate_roots(z_form(E2))) == 24
        assert len(enumerate_roots(z_form(E3))) == 72
        assert len(enumerate_roots(z_form(E4))) == 240

    def test_block_sum_root_count(self):
        assert len(enumerate_roots(z_form(named_lattice("3E3")))) == 216

    def test_eisenstein_roots_have_norm_three(self):
        for r in eisenstein_roots(E3):
            assert E3.pair(r, r) == EisInt(3, 0)

    def test_root_sets_coincide(self):
        # Eisenstein roots correspond exactly to the square -2 vectors
        assert len(eisenstein_roots(E4)) == len(enumerate_roots(z_form(E4)))

    def test_vectors_of_other_norm(self):
        # norm -4 vectors of the hexagonal plane: none (only -2, -6, -8...)
        assert enumerate_vectors(z_form(E1), -4) == []


class TestWeylGroups:
    def test_orders(self):
        assert weyl_group(E1).order == 3
        assert weyl_group(E3).order == 648
        assert weyl_group(E4).order == 155520

    def test_order_divides_declared_supergroup(self):
        # the rank-3 triflection group sits inside the rank-6 real Weyl group
        assert 51840 % weyl_group(E3).order == 0

    def test_triflections_order_three_and_isometry(self):
        k = E3.rank
        ident = eis_identity_flat(k)
        for r in eisenstein_roots(E3):
            flat = flatten_eis_matrix(triflection(E3, r))
            cube = eis_mul_flat(eis_mul_flat(flat, flat, k), flat, k)
            assert cube == ident and flat != ident

    def test_triflection_requires_root(self):
        with pytest.raises(ValueError):
            triflection(E3, [EisInt(1, 0), EisInt(1, 0), EisInt(0, 0)])


class TestDiscriminant:
    def test_rank6_root_lattice(self):
        d = discriminant_form(z_form(E3))
        assert d.invariant_factors == (3,)
        assert d.q_values[0] % 2 == Fraction(-4, 3) % 2

    def test_unimodular_trivial(self):
        assert discriminant_form(z_form(E4)).invariant_factors == ()

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError):
            discriminant_form(ZLattice(2, ((1, 1), (1, 1))))


class TestDivisibility:
    def test_basis_root(self):
        zl = z_form(E3)
        v = [0] * 6
        v[0] = 1
        assert divisibility(v, zl) == 1

    def test_norm_minus12_div3_vector_exists(self):
        zl = z_form(E3)
        v = find_norm_div_vector(zl, -12, 3)
        assert v is not None
        assert zl.pair(v, v) == -12 and divisibility(v, zl) == 3

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            divisibility([0] * 6, z_form(E3))


def _three_copies(zl):
    n = zl.rank
    big = [[0] * (3 * n) for _ in range(3 * n)]
    for c in range(3):
        for i in range(n):
            for j in range(n):
                big[c * n + i][c * n + j] = zl.gram[i][j]
    return ZLattice(3 * n, tuple(tuple(r) for r in big))


class TestGlue:
    def test_diagonal_glue(self):
        zl = z_form(E3)
        z = find_norm_div_vector(zl, -12, 3)
        big = _three_copies(zl)
        glue = [Fraction(x, 3) for _ in range(3) for x in z]
        res = glue_overlattice(big, [glue])
        assert res.index == 3
        assert res.lattice.is_even()
        assert res.disc.invariant_factors == (3,)
        # difference of glue summands: square -24, divisibility 3
        diff = [0] * 18
        for i, x in enumerate(z):
            diff[i] = x
            diff[6 + i] = -x
        assert big.pair(diff, diff) == -24
        # divisibility inside the overlattice: pair against the glued basis
        vals = []
        for row in res.basis:
            vals.append(sum(Fraction(row[i]) * big.gram[i][j] * diff[j]
                            for i in range(18) for j in range(18)))
        assert all(v.denominator == 1 for v in vals)
        from math import gcd
        assert gcd(*[int(v) for v in vals]) == 3

    def test_empty_glue_is_identity(self):
        zl = z_form(E1)
        res = glue_overlattice(zl, [])
        assert res.index == 1 and res.lattice.gram == zl.gram

    def test_non_isotropic_glue_rejected(self):
        zl = z_form(E3)
        z = find_norm_div_vector(zl, -12, 3)
        big = _three_copies(zl)
        bad = [Fraction(x, 3) for x in z] + [Fraction(0)] * 12
        with pytest.raises(ValueError):
            glue_overlattice(big, [bad])

    def test_dual_membership_enforced(self):
        zl = z_form(E1)
        with pytest.raises(ValueError):
            glue_overlattice(zl, [[Fraction(1, 5), Fraction(0)]])


def test_cusp_vector_verification():
    rep = verify_unimodular_complement_vector()
    assert rep.ok and rep.norm == 3 and rep.div_norm == 9


class TestBoundary:
    def test_wreath_pair_with_line_factor(self):
        t = boundary_betti({"factors": [
            {"lattice": "E1", "group": O3E1_GENS_RANK1, "count": 1},
            {"lattice": "E4", "group": "weyl", "count": 2}]})
        assert t.even() == [1, 2, 3, 4, 5, 5, 4, 3, 2, 1]
        assert all(b == 0 for b in t.odd())

    def test_wreath_triple(self):
        t = boundary_betti({"factors": [{"lattice": "E3", "group": "weyl", "count": 3}]})
        assert t.even() == [1, 1, 2, 3, 3, 3, 3, 2, 1, 1]

    def test_full_isometry_enumeration(self):
        t = boundary_betti({"factors": [
            {"lattice": "3E1", "group": O3E1_GENS, "count": 1}]})
        assert t.even() == [1, 1, 1, 1] and t.odd() == [0, 0, 0]

    def test_empty_spec_rejected(self):
        with pytest.raises(ValueError):
            boundary_betti({"factors": []})


O3E1_GENS_RANK1 = {"generators": [[[(0, 1)]], [[(-1, 0)]]]}
