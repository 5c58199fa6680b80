import math
from fractions import Fraction

import pytest

from latticeineq import (
    Cuboid,
    DegenerateInputError,
    DomainError,
    InvalidInputError,
    LatticeSet,
    SparseFunction,
    axis_variation,
    boundary_count,
    boundary_edges,
    coord_projection,
    diff_norm,
    entropy,
    indicator,
    max_projection,
    norm,
    partial_difference,
    pointwise_line_bound,
    shadow_projection,
)

from oracles import (
    oracle_axis_variation,
    oracle_boundary,
    oracle_entropy,
    oracle_max_projection,
    oracle_norm,
    oracle_partial_difference,
)

F = Fraction

RECT = Cuboid(((0, 1), (0, 2)))          # [0,1] x [0,2], six cells
L_SHAPE = LatticeSet(2, [(0, 0), (1, 0), (0, 1)])
TWO_POINT = SparseFunction(2, {(0, 0): 2, (1, 0): 1})


def chi(region, scale=1):
    return indicator(region, scale)


class TestSparseFunction:
    def test_zero_entries_pruned(self):
        f = SparseFunction(2, {(0, 0): 1, (1, 1): 0})
        assert f.support() == {(0, 0)}

    def test_duplicate_keys_accumulate(self):
        f = SparseFunction(1, [((0,), 1), ((0,), -1)])
        assert f.is_zero()

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(InvalidInputError):
            SparseFunction(2, {(0,): 1})

    def test_float_values_rejected(self):
        with pytest.raises(InvalidInputError):
            SparseFunction(1, {(0,): 0.5})

    def test_string_values_parse_exactly(self):
        f = SparseFunction(1, {(0,): "3/4", (1,): "0.25"})
        assert f.value((0,)) == F(3, 4)
        assert f.value((1,)) == F(1, 4)

    def test_entries_sorted(self):
        f = SparseFunction(2, {(1, 0): 1, (0, 2): 2, (0, 1): 3})
        assert list(dict(f.items())) == [(0, 1), (0, 2), (1, 0)]

    def test_translate_and_neg_and_abs(self):
        f = SparseFunction(2, {(0, 0): -2, (1, 0): 1})
        g = f.translate((3, -1))
        assert g.value((3, -1)) == -2
        assert (-f).value((0, 0)) == 2
        assert f.abs().value((0, 0)) == 2


class TestIndicator:
    def test_singleton(self):
        f = chi(LatticeSet(2, [(0, 0)]))
        assert dict(f.items()) == {(0, 0): 1}

    def test_uniform_on_cuboid(self):
        f = chi(RECT, F(1, 6))
        assert f.support_size() == 6
        assert all(v == F(1, 6) for _, v in f.items())

    def test_three_points_scale_two(self):
        f = chi(L_SHAPE, 2)
        assert f.support_size() == 3
        assert all(v == 2 for _, v in f.items())

    def test_zero_scale_rejected(self):
        with pytest.raises(InvalidInputError):
            chi(RECT, 0)

    def test_empty_set_rejected(self):
        with pytest.raises(DegenerateInputError):
            chi(LatticeSet(2, []))


class TestPartialDifference:
    def test_single_point_telescope(self):
        f = chi(LatticeSet(2, [(0, 0)]))
        g = partial_difference(f, 1)
        assert dict(g.items()) == {(-1, 0): 1, (0, 0): -1}

    def test_rect_axis1_matches_oracle(self):
        f = chi(RECT)
        g = partial_difference(f, 1)
        expected = oracle_partial_difference(f, 1)
        assert dict(g.items()) == expected
        assert g.support_size() == 6
        assert all(abs(v) == 1 for _, v in g.items())

    def test_two_point_axis2(self):
        g = partial_difference(TWO_POINT, 2)
        assert dict(g.items()) == {
            (0, -1): 2, (0, 0): -2, (1, -1): 1, (1, 0): -1,
        }
        assert dict(g.items()) == oracle_partial_difference(TWO_POINT, 2)

    def test_axis_out_of_range(self):
        with pytest.raises(InvalidInputError):
            partial_difference(TWO_POINT, 3)
        with pytest.raises(InvalidInputError):
            partial_difference(TWO_POINT, 0)


class TestNorms:
    def test_single_point_any_p(self):
        f = chi(LatticeSet(2, [(0, 0)]), F(-7, 3))
        for p in (F(1, 2), 1, 2, 3):
            value = norm(f, p)
            assert math.isclose(float(value), 7 / 3, rel_tol=1e-12)

    def test_rect_l2(self):
        f = chi(RECT)
        assert math.isclose(norm(f, 2), math.sqrt(6), rel_tol=1e-15)
        assert math.isclose(norm(f, 2), oracle_norm(f, 2), rel_tol=1e-15)

    def test_two_point_l2(self):
        assert math.isclose(norm(TWO_POINT, 2), math.sqrt(5), rel_tol=1e-15)

    def test_p1_exact(self):
        value = norm(TWO_POINT, 1)
        assert isinstance(value, Fraction) and value == 3

    def test_zero_function(self):
        assert norm(SparseFunction(2), 2) == 0.0

    def test_bad_p(self):
        with pytest.raises(InvalidInputError):
            norm(TWO_POINT, 0)
        with pytest.raises(InvalidInputError):
            norm(TWO_POINT, -1)


class TestDiffNorm:
    def test_point_crossings(self):
        f = chi(LatticeSet(2, [(0, 0)]))
        assert diff_norm(f, 1) == 4

    def test_rect(self):
        f = chi(RECT)
        assert diff_norm(f, 1) == 10
        assert axis_variation(f, 1) == 6 == oracle_axis_variation(f, 1)
        assert axis_variation(f, 2) == 4 == oracle_axis_variation(f, 2)

    def test_half_square(self):
        f = chi(Cuboid(((0, 1), (0, 1))), F(1, 2))
        assert diff_norm(f, 1) == 4

    def test_p2_matches_componentwise(self):
        f = TWO_POINT
        total = sum(float(norm(partial_difference(f, i), 2)) ** 2 for i in (1, 2))
        assert math.isclose(diff_norm(f, 2) ** 2, total, rel_tol=1e-12)


class TestMaxProjection:
    def test_singleton(self):
        f = chi(LatticeSet(2, [(0, 0)]))
        g = max_projection(f, 1)
        assert g.dim == 1 and dict(g.items()) == {(0,): 1}
        assert norm(g, 1) == 1

    def test_max_over_dropped_axis(self):
        f = SparseFunction(2, {(0, 0): 2, (0, 1): 1})
        g = max_projection(f, 1)
        assert dict(g.items()) == {(0,): 2, (1,): 1}
        assert dict(g.items()) == oracle_max_projection(f, 1)

    def test_two_point_axis2(self):
        g = max_projection(TWO_POINT, 2)
        assert dict(g.items()) == {(0,): 2, (1,): 1}
        assert norm(g, 1) == 3

    def test_negative_rejected(self):
        f = SparseFunction(2, {(0, 0): -1})
        with pytest.raises(DomainError):
            max_projection(f, 1)

    def test_dim1_rejected(self):
        f = SparseFunction(1, {(0,): 1})
        with pytest.raises(InvalidInputError):
            max_projection(f, 1)


class TestSetOperations:
    def test_coord_projection(self):
        A = RECT.points()
        assert coord_projection(A, 2) == {0, 1, 2}
        assert coord_projection(L_SHAPE, 1) == {0, 1}
        B = LatticeSet(2, [(0, 0), (0, 2), (1, 0), (1, 2)])
        assert coord_projection(B, 2) == {0, 2}

    def test_shadow_projection(self):
        A = LatticeSet(3, [(0, 0, 0), (1, 1, 0), (0, 1, 0)])
        assert shadow_projection(A, 3) == {(0, 0), (1, 1), (0, 1)}
        assert shadow_projection(A, 1) == {(0, 0), (1, 0)}

    def test_boundary_counts(self):
        assert boundary_count(LatticeSet(2, [(0, 0)])) == 4
        assert boundary_count(RECT.points()) == 10
        assert boundary_count(L_SHAPE) == 8
        for A in (RECT.points(), L_SHAPE):
            assert boundary_count(A) == oracle_boundary(A.points, 2)

    def test_boundary_edges_match_count(self):
        edges = boundary_edges(L_SHAPE)
        assert len(edges) == boundary_count(L_SHAPE)
        for inside, outside in edges:
            assert inside in L_SHAPE and outside not in L_SHAPE

    def test_boundary_is_diff_norm_of_indicator(self):
        for A in (RECT.points(), L_SHAPE, LatticeSet(2, [(0, 0), (5, 5)])):
            assert boundary_count(A) == diff_norm(chi(A), 1)


class TestCuboid:
    def test_sides_and_cube_flag(self):
        assert RECT.sides() == (2, 3)
        assert not RECT.is_cube
        assert Cuboid.from_sides((3, 3)).is_cube
        assert Cuboid(((2, 2), (5, 5))).is_cube

    def test_points(self):
        assert len(RECT.points()) == 6

    def test_empty_interval_rejected(self):
        with pytest.raises(InvalidInputError):
            Cuboid(((1, 0),))


class TestEntropy:
    def test_unit_indicator_is_zero(self):
        f = chi(LatticeSet(2, [(0, 0)]))
        for p in (F(1, 2), 1, 2):
            assert entropy(f, p) == 0.0

    def test_uniform_distribution(self):
        # mass-1 uniform on |A|=6 at p=1, and on |A|=4 at p=2 (scale 1/2)
        f = chi(RECT, F(1, 6))
        assert math.isclose(entropy(f, 1), -math.log(6), rel_tol=1e-12)
        g = chi(Cuboid(((0, 1), (0, 1))), F(1, 2))
        assert math.isclose(entropy(g, 2), -math.log(4), rel_tol=1e-12)

    def test_two_point(self):
        assert math.isclose(entropy(TWO_POINT, 1), 2 * math.log(2), rel_tol=1e-12)
        assert math.isclose(entropy(TWO_POINT, 1), oracle_entropy(TWO_POINT, 1),
                            rel_tol=1e-12)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            entropy(SparseFunction(1, {(0,): -1}), 1)


class TestPointwiseLineBound:
    def test_single_point_equality(self):
        f = chi(LatticeSet(2, [(0, 0)]))
        check = pointwise_line_bound(f, 1)
        assert check.ok
        assert check.worst_max == 1 and check.worst_half_variation == 1
        assert check.margin == 0

    def test_two_point_line_equality(self):
        check = pointwise_line_bound(TWO_POINT, 1)
        assert check.ok
        assert check.worst_line == (0,)
        assert check.worst_max == 2
        assert check.worst_half_variation == F(1, 2) * (2 + 1 + 1)

    def test_separated_plateaus_strict(self):
        f = SparseFunction(2, {(0, 0): 1, (5, 0): 1})
        check = pointwise_line_bound(f, 1)
        assert check.ok
        assert check.worst_max == 1
        assert check.worst_half_variation == 2
        assert check.margin == 1

    def test_signed_function(self):
        f = SparseFunction(2, {(0, 0): 1, (1, 0): -1})
        assert pointwise_line_bound(f, 1).ok
        assert pointwise_line_bound(f, 2).ok


class TestEdgeCases:
    def test_line_bound_on_zero_function(self):
        check = pointwise_line_bound(SparseFunction(2), 1)
        assert check.ok
        assert check.lines_checked == 0
        assert check.worst_line is None

    def test_cuboid_rejects_float_endpoints(self):
        with pytest.raises(InvalidInputError):
            Cuboid(((0, 1.5),))

    def test_certificate_decides_when_floats_disagree_by_an_ulp(self):
        from latticeineq import Relation, check_gn

        # 2x1x2 cuboid: the two float sides land on adjacent doubles, so a
        # float-only comparison could not certify equality; the integers can
        r = check_gn(indicator(Cuboid.from_sides((2, 1, 2))))
        assert r.lhs != r.rhs
        assert abs(r.lhs - r.rhs) < 1e-15
        cert = r.exact_certificate
        assert cert.lhs_integer == cert.rhs_integer == 128
        assert r.relation is Relation.EXACT_EQUAL

    def test_long_thin_rectangle_certificates(self):
        from latticeineq import Relation, check_gn, check_isoperimetric

        side = 3 ** 8
        strip = Cuboid.from_sides((side, 1))
        r = check_gn(indicator(strip))
        cert = r.exact_certificate
        assert cert.lhs_integer == cert.rhs_integer == 4 * side
        assert r.relation is Relation.EXACT_EQUAL
        iso = check_isoperimetric(strip.points())
        assert iso.exact_certificate.lhs_integer == 16 * side
        assert iso.exact_certificate.rhs_integer == (2 * side + 2) ** 2
        assert iso.relation is Relation.STRICT
