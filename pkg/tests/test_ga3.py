"""Kernel checks for the dense Cl(3,0) implementation."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import ga_oracle
from electronlab.errors import DomainError
from electronlab.ga3 import (
    BASIS,
    E1,
    E2,
    E3,
    E12,
    E123,
    E23,
    E31,
    ONE,
    Multivector3,
    Rotor3,
    gp,
    grade,
    reverse,
    rotor,
    scalar,
    vector,
)

COMPONENTS = ("s", "v1", "v2", "v3", "b23", "b31", "b12", "p")

coeff = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
multivectors = st.builds(Multivector3, *([coeff] * 8))
angles = st.floats(min_value=-4.0 * math.pi, max_value=4.0 * math.pi,
                   allow_nan=False, allow_infinity=False)


def assert_close(a: Multivector3, b: Multivector3, tol: float):
    for name in COMPONENTS:
        assert abs(getattr(a, name) - getattr(b, name)) <= tol, (name, a, b)


class TestBladeTable:
    def test_all_64_products_match_parity_oracle_exactly(self):
        for i in range(8):
            for j in range(8):
                got = gp(BASIS[i], BASIS[j])
                coefficient, name = ga_oracle.basis_product(i, j)
                for component in COMPONENTS:
                    want = coefficient if component == name else 0.0
                    assert getattr(got, component) == want, (i, j, component)

    def test_e1_e2_equals_pseudoscalar_times_e3(self):
        assert gp(E1, E2) == gp(E123, E3) == E12

    def test_pseudoscalar_squares_to_minus_one(self):
        assert gp(E123, E123) == scalar(-1.0)

    def test_identity_element(self):
        x = Multivector3(0.3, -1.2, 4.0, 0.7, -2.5, 1.1, 0.0, 9.0)
        assert gp(x, ONE) == x
        assert gp(ONE, x) == x


class TestProductLaws:
    @given(multivectors, multivectors, multivectors)
    def test_associative(self, a, b, c):
        left = gp(gp(a, b), c)
        right = gp(a, gp(b, c))
        scale = a.norm() * b.norm() * c.norm() + 1.0
        assert_close(left, right, 1e-10 * scale)

    @given(multivectors, multivectors, multivectors)
    def test_distributes_over_addition(self, a, b, c):
        left = gp(a, b + c)
        right = gp(a, b) + gp(a, c)
        scale = a.norm() * (b.norm() + c.norm()) + 1.0
        assert_close(left, right, 1e-12 * scale)

    @given(multivectors)
    def test_pseudoscalar_commutes(self, x):
        assert_close(gp(E123, x), gp(x, E123), 1e-14 * (x.norm() + 1.0))

    @given(multivectors, multivectors)
    def test_matches_oracle_on_random_inputs(self, a, b):
        got = gp(a, b)
        want = ga_oracle.gp_oracle(a.components(), b.components())
        scale = a.norm() * b.norm() + 1.0
        for name in COMPONENTS:
            assert abs(getattr(got, name) - want[name]) <= 1e-12 * scale


class TestGrade:
    def test_selects_component(self):
        assert grade(E1 + E12, 1) == E1
        assert grade(E1 + E12, 2) == E12

    def test_completeness(self):
        x = Multivector3(1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0)
        total = grade(x, 0) + grade(x, 1) + grade(x, 2) + grade(x, 3)
        assert total == x

    def test_product_grade_projection(self):
        assert grade(gp(E1, E2), 2) == E12

    @pytest.mark.parametrize("bad", [-1, 4, 17])
    def test_invalid_grade_rejected(self, bad):
        with pytest.raises(DomainError):
            grade(ONE, bad)


class TestReverse:
    def test_bivector_negated(self):
        assert reverse(E12) == -E12

    def test_vector_and_scalar_kept(self):
        x = scalar(2.0) + vector(1.0, -1.0, 3.0)
        assert reverse(x) == x

    @given(multivectors)
    def test_involution(self, x):
        assert reverse(reverse(x)) == x

    @given(multivectors, multivectors)
    def test_anti_automorphism(self, a, b):
        left = reverse(gp(a, b))
        right = gp(reverse(b), reverse(a))
        assert_close(left, right, 1e-12 * (a.norm() * b.norm() + 1.0))


class TestRotor:
    def test_quarter_turn_sends_e1_to_e2(self):
        r = rotor(E12, math.pi / 2.0)
        assert_close(r.apply(E1), E2, 1e-12)
        assert_close(r.apply(E2), -E1, 1e-12)

    def test_zero_angle_is_identity(self):
        r = rotor(E12, 0.0)
        assert r.as_multivector() == ONE

    def test_full_turn_is_minus_one_but_acts_as_identity(self):
        r = rotor(E12, 2.0 * math.pi)
        mv = r.as_multivector()
        assert mv.s == -1.0
        assert abs(mv.b12) <= 1e-12 and mv.b23 == 0.0 and mv.b31 == 0.0
        assert_close(r.apply(E1), E1, 1e-12)

    @given(angles)
    def test_double_cover(self, theta):
        r = rotor(E23, theta)
        shifted = rotor(E23, theta + 2.0 * math.pi)
        assert abs(shifted.s + r.s) <= 1e-12
        assert abs(shifted.b23 + r.b23) <= 1e-12
        assert abs(shifted.b31 + r.b31) <= 1e-12
        assert abs(shifted.b12 + r.b12) <= 1e-12
        x = vector(0.3, -0.4, 0.5)
        assert_close(shifted.apply(x), r.apply(x), 1e-12)

    @given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), angles,
           st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
    def test_norm_preserved(self, bx, by, bz, theta, vx, vy, vz):
        n = math.sqrt(bx * bx + by * by + bz * bz)
        if n < 1e-3:
            return
        plane = Multivector3(b23=bx / n, b31=by / n, b12=bz / n)
        r = rotor(plane, theta)
        x = vector(vx, vy, vz)
        assert abs(r.apply(x).norm() - x.norm()) <= 1e-12 * (x.norm() + 1.0)

    def test_sandwich_preserves_grade(self):
        r = rotor(E31, 0.77)
        out = r.apply(vector(1.0, 2.0, 3.0))
        assert abs(out.s) <= 1e-12 and abs(out.p) <= 1e-12
        assert out.grade(2).norm() <= 1e-12

    def test_rejects_non_unit_plane(self):
        with pytest.raises(DomainError):
            rotor(2.0 * E12, 1.0)

    def test_rejects_mixed_grade_plane(self):
        with pytest.raises(DomainError):
            rotor(E12 + E1, 1.0)

    def test_rotor3_rejects_non_unit(self):
        with pytest.raises(DomainError):
            Rotor3(0.5, 0.5, 0.0, 0.0)
