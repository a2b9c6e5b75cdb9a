"""Fixed-relative-precision ultrametric floats: exact-then-truncate semantics."""

import random
from fractions import Fraction

import pytest

from padicprs.floats import DivisionByZero, FloatContext, correct_digits, hensel_inverse
from padicprs.rings import val_fraction


class TestAdd:
    def test_exact_power_result(self):
        ctx = FloatContext(2, 4)
        x = ctx.from_rational(1)
        y = ctx.from_rational(15)
        assert (x + y).as_triple() == (4, 1, 4)

    def test_identity(self):
        ctx = FloatContext(2, 6)
        x = ctx.from_rational(13)
        assert x + ctx.zero == x
        assert ctx.zero + x == x

    def test_truncation_after_carry(self):
        ctx = FloatContext(2, 3)
        x = ctx.from_rational(7)
        y = ctx.from_rational(3)
        # exact 10 = 2 * 5, and 5 already fits in three digits
        assert (x + y).as_triple() == (1, 5, 3)

    def test_cancellation_to_zero(self):
        ctx = FloatContext(3, 5)
        x = ctx.from_rational(11)
        assert (x - x).is_zero


class TestMulDiv:
    def test_self_division(self):
        ctx = FloatContext(2, 3)
        x = ctx.from_rational(40)
        assert (x / x).as_triple() == (0, 1, 3)

    def test_inverse_of_three(self):
        ctx = FloatContext(2, 3)
        q = ctx.from_rational(1) / ctx.from_rational(3)
        assert q.as_triple() == (0, 3, 3)

    def test_zero_dividend(self):
        ctx = FloatContext(2, 3)
        assert (ctx.zero / ctx.from_rational(5)).is_zero

    def test_division_by_zero(self):
        ctx = FloatContext(2, 3)
        with pytest.raises(DivisionByZero):
            ctx.from_rational(1) / ctx.zero

    def test_valuation_homomorphism(self):
        rng = random.Random(5)
        ctx = FloatContext(3, 6)
        for _ in range(300):
            a = ctx.from_rational(Fraction(rng.randrange(1, 2000), rng.randrange(1, 50)))
            b = ctx.from_rational(Fraction(rng.randrange(1, 2000), rng.randrange(1, 50)))
            assert (a * b).valuation == a.valuation + b.valuation
            s = a + b
            if not s.is_zero:
                assert s.valuation >= min(a.valuation, b.valuation)
                if a.valuation != b.valuation:
                    assert s.valuation == min(a.valuation, b.valuation)


class TestTruncationError:
    def test_relative_error_bound(self):
        # denoted result differs from the exact one by valuation >= v_exact + N
        rng = random.Random(17)
        ctx = FloatContext(2, 8)
        for _ in range(500):
            xe = Fraction(rng.randrange(1, 10**6), rng.randrange(1, 10**3))
            ye = Fraction(rng.randrange(1, 10**6), rng.randrange(1, 10**3))
            x, y = ctx.from_rational(xe), ctx.from_rational(ye)
            # operate on the *denoted* values so only one truncation is at play
            for op, exact in (("mul", x.value() * y.value()), ("div", x.value() / y.value()),
                              ("add", x.value() + y.value())):
                got = x * y if op == "mul" else x / y if op == "div" else x + y
                if exact == 0:
                    assert got.is_zero
                    continue
                diff = got.value() - exact
                if diff != 0:
                    assert val_fraction(diff, 2) >= val_fraction(exact, 2) + ctx.prec

    def test_straight_line_program_digit_agreement(self):
        # run random +,*,/ DAGs in floats and exactly; measured agreement window
        rng = random.Random(23)
        ctx = FloatContext(2, 12)
        for _ in range(100):
            vals = [Fraction(rng.randrange(1, 500)) for _ in range(4)]
            floats = [ctx.from_rational(v) for v in vals]
            for _ in range(6):
                i, j = rng.randrange(len(vals)), rng.randrange(len(vals))
                op = rng.choice("+*/")
                if op == "+":
                    vals.append(vals[i] + vals[j])
                    floats.append(floats[i] + floats[j])
                elif op == "*":
                    vals.append(vals[i] * vals[j])
                    floats.append(floats[i] * floats[j])
                else:
                    if vals[j] == 0:
                        continue
                    vals.append(vals[i] / vals[j])
                    floats.append(floats[i] / floats[j])
            for v, f in zip(vals, floats):
                k = correct_digits(f, v)
                assert 0 <= k <= ctx.prec
                if v != 0 and not f.is_zero:
                    # digits agree on [v, v + k) by definition of the measure
                    if k > 0:
                        diff = f.value() - v
                        assert diff == 0 or val_fraction(diff, 2) >= val_fraction(v, 2) + k


class TestHenselInverse:
    def test_matches_pow(self):
        rng = random.Random(3)
        for _ in range(200):
            p = rng.choice((2, 3, 5))
            n = rng.randrange(1, 40)
            a = rng.randrange(1, p**n)
            if a % p == 0:
                a += 1
            assert hensel_inverse(a, p, n) == pow(a, -1, p**n)


class TestRendering:
    def test_str(self):
        ctx = FloatContext(2, 4)
        x = ctx.from_rational(12)
        assert str(x) == "2^2 * (1 1 0 0)_2"

    def test_triple(self):
        ctx = FloatContext(5, 3)
        assert ctx.from_rational(50).as_triple() == (2, 2, 3)
