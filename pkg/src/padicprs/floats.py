"""Ultrametric floating-point numbers: fixed relative precision N.

A nonzero value is p^e * s with e its valuation and s a significand in
[1, p^N) not divisible by p; there is a distinguished Zero.  Every operation
computes the exact result in Q_p and truncates its expansion to N digits
starting at the valuation, so the relative error is bounded by p^{-N} per
operation.  No rounding modes, truncation only.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import PadicError, is_prime, val_int


class DivisionByZero(PadicError):
    """Division by the distinguished float Zero."""


def hensel_inverse(a: int, p: int, n: int) -> int:
    """Inverse of a modulo p^n by Newton lifting, for a coprime to p.

    The iterate x <- x(2 - ax) doubles the number of correct digits, so the
    cost is dominated by the last multiplication.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    x = pow(a % p, -1, p)
    k = 1
    while k < n:
        k = min(2 * k, n)
        mod = p**k
        x = x * (2 - a * x) % mod
    return x


class FloatContext:
    """Shared (p, N) context for ultrametric floats."""

    __slots__ = ("p", "prec")

    def __init__(self, p: int, prec: int):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if prec < 1:
            raise ValueError("precision must be >= 1")
        self.p = p
        self.prec = prec

    def __eq__(self, other):
        return isinstance(other, FloatContext) and (self.p, self.prec) == (other.p, other.prec)

    def __hash__(self):
        return hash((self.p, self.prec))

    def __repr__(self):
        return f"FloatContext(p={self.p}, prec={self.prec})"

    @property
    def zero(self) -> PadicFloat:
        return PadicFloat(self, 0, 0)

    def one(self) -> PadicFloat:
        return PadicFloat(self, 0, 1)

    def from_rational(self, x) -> PadicFloat:
        """Truncate an exact rational (or int) to N significant digits."""
        x = Fraction(x)
        if x == 0:
            return self.zero
        num, den = x.numerator, x.denominator
        e = val_int(num, self.p) - val_int(den, self.p)
        num //= self.p ** max(0, val_int(num, self.p))
        den //= self.p ** max(0, val_int(den, self.p))
        mod = self.p**self.prec
        s = num * hensel_inverse(den % mod, self.p, self.prec) % mod if den != 1 else num % mod
        return PadicFloat(self, e, s)


class PadicFloat:
    """Immutable ultrametric float; use FloatContext to construct."""

    __slots__ = ("context", "e", "significand")

    def __init__(self, context: FloatContext, e: int, significand: int):
        self.context = context
        self.e = e
        self.significand = significand

    @property
    def is_zero(self) -> bool:
        return self.significand == 0

    def value(self) -> Fraction:
        """The denoted value p^e * significand, exactly."""
        if self.is_zero:
            return Fraction(0)
        p = self.context.p
        return Fraction(self.significand) * (Fraction(p) ** self.e)

    @property
    def valuation(self) -> int:
        if self.is_zero:
            raise ValueError("Zero has no valuation")
        return self.e

    def _truncate_value(self, num: int, den_unit: int, e: int) -> PadicFloat:
        # num is a unit times p^0 already; den_unit coprime to p
        ctx = self.context
        mod = ctx.p**ctx.prec
        s = num % mod
        if den_unit != 1:
            s = s * hensel_inverse(den_unit % mod, ctx.p, ctx.prec) % mod
        return PadicFloat(ctx, e, s)

    def _check(self, other) -> PadicFloat:
        if not isinstance(other, PadicFloat):
            raise TypeError("expected a PadicFloat")
        if other.context != self.context:
            raise ValueError("floats from different contexts")
        return other

    def __add__(self, other):
        b = self._check(other)
        if self.is_zero:
            return b
        if b.is_zero:
            return self
        ctx = self.context
        v = min(self.e, b.e)
        u = self.significand * ctx.p ** (self.e - v) + b.significand * ctx.p ** (b.e - v)
        if u == 0:
            return ctx.zero
        w = val_int(u, ctx.p)
        return self._truncate_value(u // ctx.p**w, 1, v + w)

    def __neg__(self):
        # truncation of the exact negation: p^N - s agrees with -s to N digits
        if self.is_zero:
            return self
        mod = self.context.p**self.context.prec
        return PadicFloat(self.context, self.e, mod - self.significand)

    def __sub__(self, other):
        # single truncation of the exact difference (add(neg(.)) would be two)
        b = self._check(other)
        if b.is_zero:
            return self
        if self.is_zero:
            return -b
        ctx = self.context
        v = min(self.e, b.e)
        u = self.significand * ctx.p ** (self.e - v) - b.significand * ctx.p ** (b.e - v)
        if u == 0:
            return ctx.zero
        w = val_int(u, ctx.p)
        return self._truncate_value(u // ctx.p**w, 1, v + w)

    def __mul__(self, other):
        b = self._check(other)
        if self.is_zero or b.is_zero:
            return self.context.zero
        return self._truncate_value(self.significand * b.significand, 1, self.e + b.e)

    def __truediv__(self, other):
        b = self._check(other)
        if b.is_zero:
            raise DivisionByZero("division by float Zero")
        if self.is_zero:
            return self.context.zero
        return self._truncate_value(self.significand, b.significand, self.e - b.e)

    def __eq__(self, other):
        if not isinstance(other, PadicFloat):
            return NotImplemented
        return self.context == other.context and (self.e, self.significand) == (other.e, other.significand)

    def __hash__(self):
        return hash((self.context, self.e, self.significand))

    def digits(self) -> list[int]:
        out, s, p = [], self.significand, self.context.p
        for _ in range(self.context.prec):
            s, r = divmod(s, p)
            out.append(r)
        return out

    def as_triple(self) -> tuple[int, int, int]:
        """CSV-friendly (exponent, significand, precision)."""
        return (self.e, self.significand, self.context.prec)

    def __repr__(self):
        return f"PadicFloat{self.as_triple()}"

    def __str__(self):
        if self.is_zero:
            return "0"
        body = " ".join(str(d) for d in self.digits())
        return f"{self.context.p}^{self.e} * ({body})_{self.context.p}"


def correct_digits(x: PadicFloat, exact, cap: int | None = None) -> int:
    """Digits of x agreeing with the exact value, counted from its valuation.

    Returns a count in [0, N]; 0 when the valuations disagree (no significant
    digit is right).
    """
    ctx = x.context
    n = ctx.prec if cap is None else cap
    exact = Fraction(exact)
    if exact == 0:
        return n if x.is_zero else 0
    if x.is_zero:
        return 0
    v = val_int(exact.numerator, ctx.p) - val_int(exact.denominator, ctx.p)
    if x.e != v:
        return 0
    diff = x.value() - exact
    if diff == 0:
        return n
    dv = val_int(diff.numerator, ctx.p) - val_int(diff.denominator, ctx.p)
    return max(0, min(n, dv - v))
