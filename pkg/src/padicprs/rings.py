"""Arithmetic on p-adic balls.

A ball is a coset c + p^N Z_p: it represents a p-adic number whose digits are
known on the exponent window [val(c), N) and unknown from N on.  Centers are
stored as a pair (v, mantissa) meaning c = mantissa * p^v with mantissa a unit
modulo p (or 0), reduced so that the digit expansion of c is supported on
[v, N).  With that canonical form, coset equality is structural equality.

Precision propagates through the four field operations by

    add/sub : N = min(N_a, N_b)
    mul     : N = min(N_a + val(b), N_b + val(a))
    div     : N = min(N_a - val(b), N_b + val(a) - 2 val(b))

with the convention val(x) = N_x when all known digits of x are zero.
Absolute precisions may be negative (fraction-field elements).  Exactly
representable constants are ordinary balls at the ring's precision cap.
"""

from __future__ import annotations

import re
from fractions import Fraction


class PadicError(Exception):
    """Base class for errors raised by this package."""


# widest digit window that is ever reduced to canonical form; beyond it the
# mantissa is kept as an exact signed unit (see Zp._reduce)
CANON_WINDOW = 10**5


class DivisionByUnknownZero(PadicError):
    """Divisor has no known nonzero digit, so its valuation is unbounded."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def val_int(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined for integers")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_fraction(x: Fraction | int, p: int) -> int:
    if isinstance(x, int):
        return val_int(x, p)
    return val_int(x.numerator, p) - val_int(x.denominator, p)


class Zp:
    """The ring Z_p (and its fraction field Q_p) as a context for balls.

    `prec_cap` bounds every absolute precision; exact constants live at the
    cap.  The residue cardinality q equals p (prime residue fields only).
    """

    __slots__ = ("p", "prec_cap")

    def __init__(self, p: int, prec_cap: int = 2**30):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if prec_cap < 1:
            raise ValueError("precision cap must be positive")
        self.p = p
        self.prec_cap = prec_cap

    @property
    def q(self) -> int:
        return self.p

    def __eq__(self, other):
        return isinstance(other, Zp) and other.p == self.p and other.prec_cap == self.prec_cap

    def __hash__(self):
        return hash((self.p, self.prec_cap))

    def __repr__(self):
        return f"Zp({self.p})"

    def ball(self, value, abs_prec: int | None = None) -> Ball:
        """Ball with the given center, reduced modulo p^abs_prec."""
        n = self.prec_cap if abs_prec is None else min(abs_prec, self.prec_cap)
        if isinstance(value, Ball):
            if value.ring.p != self.p:
                raise ValueError("ball from a different ring")
            return value.truncate(n) if n <= value.abs_prec else value.lift(n)
        if isinstance(value, int):
            if value == 0:
                return Ball(self, n, 0, n)
            return self._reduce(0, value, n)
        if isinstance(value, Fraction):
            if value == 0:
                return Ball(self, n, 0, n)
            v = val_fraction(value, self.p)
            unit = value / Fraction(self.p) ** v
            if unit.denominator == 1 or n <= v:
                return self._reduce(v, unit.numerator, n)
            if n - v > CANON_WINDOW:
                # the canonical expansion of this quotient would not fit
                raise PadicError("canonical mantissa would exceed the window limit")
            inv = pow(unit.denominator, -1, self.p ** (n - v))
            return self._reduce(v, unit.numerator * inv, n)
        raise TypeError(f"cannot build a ball from {type(value).__name__}")

    def exact(self, value) -> Ball:
        """Exactly representable constant: a ball at the precision cap."""
        return self.ball(value, self.prec_cap)

    def zero(self, abs_prec: int) -> Ball:
        """The unknown-zero ball O(p^abs_prec)."""
        n = min(abs_prec, self.prec_cap)
        return Ball(self, n, 0, n)

    def _reduce(self, v: int, m: int, n: int) -> Ball:
        """Canonicalize mantissa m at valuation v to the window [v, n).

        Windows wider than CANON_WINDOW digits (exact constants at the
        precision cap) skip the modular reduction: the mantissa is kept as the
        exact signed unit, since materializing p^(n-v) is not feasible there.
        """
        if m == 0 or v >= n:
            return Ball(self, n, 0, n)
        w = val_int(m, self.p)
        if w:
            v += w
            m //= self.p**w
            if v >= n:
                return Ball(self, n, 0, n)
        if n - v > CANON_WINDOW:
            return Ball(self, v, m, n)
        m %= self.p ** (n - v)
        if m == 0:
            return Ball(self, n, 0, n)
        w = val_int(m, self.p)
        if w:
            v += w
            m //= self.p**w
            if v >= n:
                return Ball(self, n, 0, n)
            m %= self.p ** (n - v)
        return Ball(self, v, m, n)

    def parse(self, text: str) -> Ball:
        """Parse "c + O(p^N)", "O(p^N)" or an exact integer/rational "c"."""
        return parse_ball(text, self)


_BALL_RE = re.compile(
    r"^\s*(?:(?P<center>-?\d+(?:/\d+)?)\s*)?"
    r"(?:(?(center)\+\s*)O\(\s*(?P<p>\d+)\^(?P<n>-?\d+)\s*\))?\s*$"
)


def parse_ball(text: str, ring: Zp | None = None) -> Ball:
    m = _BALL_RE.match(text)
    if not m or (m.group("center") is None and m.group("p") is None):
        raise ValueError(f"cannot parse ball: {text!r}")
    if m.group("p") is not None:
        p = int(m.group("p"))
        if ring is None:
            ring = Zp(p)
        elif ring.p != p:
            raise ValueError(f"ball is over p = {p}, expected p = {ring.p}")
        n = int(m.group("n"))
    else:
        if ring is None:
            raise ValueError("exact constant needs an explicit ring")
        n = None
    center = Fraction(m.group("center")) if m.group("center") else Fraction(0)
    return ring.ball(center if center.denominator != 1 else center.numerator, n)


class Ball:
    """One p-adic number known modulo p^N (immutable).

    Fields: `v` and `m` encode the center m * p^v (m = 0 for the unknown-zero
    ball, in which case v == N), `abs_prec` is N.  Use `Zp.ball` to construct;
    the raw constructor trusts its arguments.
    """

    __slots__ = ("ring", "v", "m", "abs_prec")

    def __init__(self, ring: Zp, v: int, m: int, abs_prec: int):
        self.ring = ring
        self.v = v
        self.m = m
        self.abs_prec = abs_prec

    # -- inspection ---------------------------------------------------------

    @property
    def valuation(self) -> int:
        """val(center), or N when all known digits are zero."""
        return self.v if self.m else self.abs_prec

    @property
    def relative_precision(self) -> int:
        return self.abs_prec - self.v if self.m else 0

    @property
    def is_known_nonzero(self) -> bool:
        return self.m != 0

    def center(self) -> Fraction:
        return Fraction(self.m) * Fraction(self.ring.p) ** self.v if self.m else Fraction(0)

    def center_int(self) -> int:
        """Center as an integer; requires v >= 0."""
        if not self.m:
            return 0
        if self.v < 0:
            raise ValueError("center is not p-integral")
        return self.m * self.ring.p**self.v

    def digits(self) -> list[int]:
        """Base-p digits of the center on the window [v, N)."""
        if not self.m:
            return []
        if self.abs_prec - self.v > CANON_WINDOW:
            raise PadicError("digit window too wide to enumerate")
        out, m, p = [], self.m % self.ring.p ** (self.abs_prec - self.v), self.ring.p
        for _ in range(self.abs_prec - self.v):
            m, r = divmod(m, p)
            out.append(r)
        return out

    # -- precision management ----------------------------------------------

    def truncate(self, abs_prec: int) -> Ball:
        """Forget digits at exponents >= abs_prec (always coset-sound)."""
        if abs_prec >= self.abs_prec:
            return self
        return self.ring._reduce(self.v, self.m, abs_prec) if self.m else self.ring.zero(abs_prec)

    def lift(self, abs_prec: int) -> Ball:
        """Zero-fill lift: declare the digits on [N, abs_prec) to be zero.

        This picks a representative of the coset, so it is only legitimate
        where any member of the coset is an acceptable center.
        """
        if abs_prec <= self.abs_prec:
            return self
        abs_prec = min(abs_prec, self.ring.prec_cap)
        if not self.m:
            return Ball(self.ring, abs_prec, 0, abs_prec)
        return Ball(self.ring, self.v, self.m, abs_prec)

    def lift_random(self, abs_prec: int, rng) -> Ball:
        """Lift with uniformly random digits on [N, abs_prec)."""
        if abs_prec <= self.abs_prec:
            return self
        abs_prec = min(abs_prec, self.ring.prec_cap)
        p = self.ring.p
        extra = rng.randrange(p ** (abs_prec - self.abs_prec))
        if not self.m:
            if extra == 0:
                return Ball(self.ring, abs_prec, 0, abs_prec)
            return self.ring._reduce(self.abs_prec, extra, abs_prec)
        return self.ring._reduce(self.v, self.m + extra * p ** (self.abs_prec - self.v), abs_prec)

    def at_precision(self, abs_prec: int, rng=None) -> Ball:
        """Truncate or (zero-fill / random) lift to exactly abs_prec."""
        if abs_prec <= self.abs_prec:
            return self.truncate(abs_prec)
        return self.lift_random(abs_prec, rng) if rng is not None else self.lift(abs_prec)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Ball):
            if other.ring.p != self.ring.p:
                raise ValueError("balls over different primes")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.exact(other)
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        ring, p = self.ring, self.ring.p
        n = min(self.abs_prec, b.abs_prec)
        if not self.m and not b.m:
            return ring.zero(n)
        if not self.m:
            return ring._reduce(b.v, b.m, n)
        if not b.m:
            return ring._reduce(self.v, self.m, n)
        v0 = min(self.v, b.v)
        u = self.m * p ** (self.v - v0) + b.m * p ** (b.v - v0)
        return ring._reduce(v0, u, n) if u else ring.zero(n)

    __radd__ = __add__

    def __neg__(self):
        if not self.m:
            return self
        return self.ring._reduce(self.v, -self.m, self.abs_prec)

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self.__add__(-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b.__add__(-self)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        ring = self.ring
        n = min(self.abs_prec + b.valuation, b.abs_prec + self.valuation, ring.prec_cap)
        if not self.m or not b.m:
            return ring.zero(n)
        return ring._reduce(self.v + b.v, self.m * b.m, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        ring, p = self.ring, self.ring.p
        if not b.m:
            raise DivisionByUnknownZero(f"division by {b}")
        n = min(self.abs_prec - b.v, b.abs_prec + self.valuation - 2 * b.v, ring.prec_cap)
        if not self.m:
            return ring.zero(n)
        v = self.v - b.v
        if v >= n:
            return ring.zero(n)
        if n - v > CANON_WINDOW:
            # beyond the canonical window only exactly representable
            # quotients fit in memory
            if abs(b.m) == 1:
                return ring._reduce(v, self.m * b.m, n)
            if self.m % b.m == 0:
                return ring._reduce(v, self.m // b.m, n)
            raise PadicError(
                "quotient of exact constants has an infinite expansion; "
                "truncate an operand first"
            )
        inv = pow(b.m, -1, p ** (n - v))
        return ring._reduce(v, self.m * inv, n)

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b.__truediv__(self)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out = self.ring.exact(1)
        for _ in range(e):
            out = out * self
        return out

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return (
            self.ring.p == other.ring.p
            and self.abs_prec == other.abs_prec
            and self.v == other.v
            and self.m == other.m
        )

    def __hash__(self):
        return hash((self.ring.p, self.v, self.m, self.abs_prec))

    def same_coset(self, other: Ball) -> bool:
        """Equality of denoted cosets (same as == thanks to canonical form)."""
        return self == other

    def __repr__(self):
        return f"Ball({self})"

    def __str__(self):
        p, n = self.ring.p, self.abs_prec
        if n >= self.ring.prec_cap:
            return str(self.center()) if self.m else "0"
        if not self.m:
            return f"O({p}^{n})"
        return f"{self.center()} + O({p}^{n})"


def haar_sample(ring: Zp, abs_prec: int, rng) -> Ball:
    """Haar-uniform ball at precision N: center uniform in [0, p^N)."""
    if abs_prec < 1:
        raise ValueError("need abs_prec >= 1")
    return ring.ball(rng.randrange(ring.p**abs_prec), abs_prec)
