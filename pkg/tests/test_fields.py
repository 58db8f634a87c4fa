from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from isoflag.fields import (RATIONALS, FieldElement, get_finite_field,
                            sqrt_extend)


class TestRationalTower:
    def test_rational_sqrt(self):
        x = RATIONALS.from_int(4)
        assert RATIONALS.sqrt_or_none(x) == RATIONALS.from_int(2)

    def test_nonsquare_extends(self):
        x = RATIONALS.from_int(2)
        assert RATIONALS.sqrt_or_none(x) is None
        root, field = sqrt_extend(x)
        assert root * root == field.lift(x)
        # adjoining again does not extend further
        again, field2 = sqrt_extend(field.lift(x))
        assert field2 == field and again == root

    def test_canonical_root_positive_leading(self):
        root, field = sqrt_extend(RATIONALS.from_int(3))
        # first nonzero coordinate of the canonical root is positive
        nz = next(c for c in root.coords if c != 0)
        assert nz > 0

    def test_negative_square(self):
        root, field = sqrt_extend(RATIONALS.from_int(-16))
        assert root * root == field.from_int(-16)

    def test_arithmetic_with_scalars(self):
        x = RATIONALS.element((Fraction(3, 2),))
        assert x + 1 == RATIONALS.element((Fraction(5, 2),))
        assert 2 * x == RATIONALS.from_int(3)
        assert (x / x) == RATIONALS.one

    @given(st.fractions(), st.fractions())
    @settings(max_examples=50, deadline=None)
    def test_field_axioms_rational(self, a, b):
        x, y = RATIONALS.element((a,)), RATIONALS.element((b,))
        assert x + y == y + x
        assert x * y == y * x
        if not y.is_zero:
            assert (x / y) * y == x


class TestFiniteFields:
    def test_sqrt_gf7(self):
        f = get_finite_field(7)
        assert f.sqrt_or_none(f.from_int(2)) == f.from_int(3)

    def test_sqrt_tie_break_minimal_encoding(self):
        f = get_finite_field(7)
        r = f.sqrt_or_none(f.from_int(2))
        assert f.encode(r.coords) <= f.encode((-r).coords)

    def test_char2_sqrt_never_extends(self):
        for f in (get_finite_field(2), get_finite_field(2, 2),
                  get_finite_field(2, 3)):
            for n in range(f.p ** f.m):
                x = f.element(f.decode(n))
                r = f.sqrt_or_none(x)
                assert r is not None and r * r == x

    def test_extension_embedding(self):
        f = get_finite_field(7)
        x = f.from_int(3)  # not a square mod 7
        assert f.sqrt_or_none(x) is None
        root, big = sqrt_extend(x)
        assert big.m == 2
        assert root * root == big.lift(x)

    def test_lift_is_homomorphism(self):
        small = get_finite_field(3)
        big = get_finite_field(3, 2)
        for a in range(3):
            for b in range(3):
                x, y = small.from_int(a), small.from_int(b)
                assert big.lift(x * y) == big.lift(x) * big.lift(y)
                assert big.lift(x + y) == big.lift(x) + big.lift(y)

    @given(st.integers(0, 124), st.integers(0, 124))
    @settings(max_examples=60, deadline=None)
    def test_field_axioms_gf125(self, a, b):
        f = get_finite_field(5, 3)
        x, y = f.element(f.decode(a)), f.element(f.decode(b))
        assert x * y == y * x
        assert x * (y + 1) == x * y + x
        if not y.is_zero:
            assert y * y.inverse() == f.one

    def test_frobenius_identity(self):
        f = get_finite_field(5, 2)
        for n in range(25):
            x = f.element(f.decode(n))
            assert x ** 25 == x

    def test_modulus_is_canonical_gf4(self):
        f = get_finite_field(2, 2)
        # x^2 + x + 1 is the only irreducible quadratic over GF(2)
        assert f.modulus == (1, 1, 1)


class TestElementProtocol:
    def test_cross_field_mixing_rejected(self):
        a = get_finite_field(3).one
        b = get_finite_field(5).one
        with pytest.raises(Exception):
            _ = a + b

    def test_hash_consistency(self):
        f = get_finite_field(7)
        assert hash(f.from_int(9)) == hash(f.from_int(2))
        assert len({f.from_int(i) for i in range(14)}) == 7
