"""Polynomials over balls, over a shared flat precision, and over exact scalars.

Coefficients are stored lowest degree first.  A BallPoly's degree is its
formal stored length minus one: a leading coefficient that is an unknown-zero
ball keeps the formal degree but cannot be used as a divisor.  Display is
highest degree first, matching the usual way these sequences are written.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import Ball, PadicError, Zp


class ZeroPolynomial(PadicError):
    """Operation undefined for the zero polynomial."""


class LeadingCoefficientUnknownZero(PadicError):
    """Divisor's leading coefficient has no known nonzero digit."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class BallPoly:
    """Polynomial with independent per-coefficient ball precision."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Zp, coeffs: list[Ball]):
        self.ring = ring
        self.coeffs = list(coeffs)

    @classmethod
    def from_centers(cls, ring: Zp, centers, abs_prec: int | None = None) -> BallPoly:
        return cls(ring, [ring.ball(c, abs_prec) for c in centers])

    @classmethod
    def zero(cls, ring: Zp) -> BallPoly:
        return cls(ring, [])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Ball:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> Ball:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ring.exact(0)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def is_formally_zero(self) -> bool:
        return not self.coeffs

    @property
    def has_known_digit(self) -> bool:
        return any(c.is_known_nonzero for c in self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lc.m == 1 and self.lc.v == 0

    def __eq__(self, other):
        if not isinstance(other, BallPoly):
            return NotImplemented
        return self.ring.p == other.ring.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring.p, tuple(self.coeffs)))

    def _pad(self, other: BallPoly):
        zero = self.ring.exact(0)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [zero] * (n - len(self.coeffs))
        b = other.coeffs + [zero] * (n - len(other.coeffs))
        return a, b

    def __add__(self, other: BallPoly) -> BallPoly:
        a, b = self._pad(other)
        return BallPoly(self.ring, [x + y for x, y in zip(a, b)])

    def __sub__(self, other: BallPoly) -> BallPoly:
        a, b = self._pad(other)
        return BallPoly(self.ring, [x - y for x, y in zip(a, b)])

    def __neg__(self) -> BallPoly:
        return BallPoly(self.ring, [-c for c in self.coeffs])

    def __mul__(self, other: BallPoly) -> BallPoly:
        if self.is_formally_zero or other.is_formally_zero:
            return BallPoly.zero(self.ring)
        out = [self.ring.exact(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BallPoly(self.ring, out)

    def scale(self, c: Ball) -> BallPoly:
        return BallPoly(self.ring, [a * c for a in self.coeffs])

    def scale_div(self, c: Ball) -> BallPoly:
        return BallPoly(self.ring, [a / c for a in self.coeffs])

    def centers(self) -> list[Fraction]:
        return [c.center() for c in self.coeffs]

    def map_precision(self, f) -> BallPoly:
        return BallPoly(self.ring, [f(c) for c in self.coeffs])

    def min_abs_prec(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no precision")
        return min(c.abs_prec for c in self.coeffs)

    def __repr__(self):
        return f"BallPoly({self})"

    def __str__(self):
        return render_poly(self)


def euclid_divrem(a: BallPoly, b: BallPoly, step: int | None = None) -> tuple[BallPoly, BallPoly]:
    """Euclidean division over balls; precision follows the scalar rules.

    The remainder has formal degree deg(b) - 1; the quotient-step leading
    slots cancel exactly and are dropped.
    """
    if b.is_formally_zero:
        raise ZeroPolynomial("division by the zero polynomial")
    if not b.lc.is_known_nonzero:
        raise LeadingCoefficientUnknownZero(f"divisor leading coefficient {b.lc} may vanish", step)
    ring = b.ring
    db = b.degree
    if a.degree < db:
        return BallPoly.zero(ring), BallPoly(ring, list(a.coeffs))
    rem = list(a.coeffs)
    q = [ring.exact(0)] * (a.degree - db + 1)
    for k in range(a.degree, db - 1, -1):
        c = rem[k] / b.lc
        q[k - db] = c
        for i in range(db):
            rem[k - db + i] = rem[k - db + i] - c * b.coeffs[i]
    return BallPoly(ring, q), BallPoly(ring, rem[:db])


def prem(a: BallPoly, b: BallPoly, step: int | None = None) -> BallPoly:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * (a % b) over balls."""
    if a.degree < b.degree:
        raise ValueError("prem needs deg a >= deg b")
    _, rem = euclid_divrem(a, b, step)
    return rem.scale(b.lc ** (a.degree - b.degree + 1))


def gauss_valuation(poly) -> int:
    """Minimum coefficient valuation (unknown-zero balls count as their N)."""
    if isinstance(poly, FlatPoly):
        poly = poly.as_ball_poly()
    if isinstance(poly, BallPoly):
        if poly.is_formally_zero:
            raise ZeroPolynomial("Gauss valuation of the zero polynomial")
        return min(c.valuation for c in poly.coeffs)
    raise TypeError("expected a BallPoly or FlatPoly")


def gauss_valuation_exact(coeffs: list, p: int) -> int:
    """Gauss valuation of an exact integer/rational coefficient list."""
    from .rings import val_fraction

    vals = [val_fraction(c, p) for c in coeffs if c != 0]
    if not vals:
        raise ZeroPolynomial("Gauss valuation of the zero polynomial")
    return min(vals)


class FlatPoly:
    """Polynomial under the flat precision model: one shared N."""

    __slots__ = ("ring", "coeffs", "abs_prec")

    def __init__(self, ring: Zp, coeffs: list[Ball], abs_prec: int):
        self.ring = ring
        self.abs_prec = abs_prec
        self.coeffs = [c.truncate(abs_prec) for c in coeffs]
        if any(c.abs_prec != abs_prec for c in self.coeffs):
            raise ValueError("coefficient known at less than the flat precision")

    @classmethod
    def from_centers(cls, ring: Zp, centers, abs_prec: int) -> FlatPoly:
        return cls(ring, [ring.ball(c, abs_prec) for c in centers], abs_prec)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def as_ball_poly(self) -> BallPoly:
        return BallPoly(self.ring, list(self.coeffs))

    def centers(self) -> list[Fraction]:
        return [c.center() for c in self.coeffs]

    def __eq__(self, other):
        if not isinstance(other, FlatPoly):
            return NotImplemented
        return self.abs_prec == other.abs_prec and self.coeffs == other.coeffs

    def __repr__(self):
        return f"FlatPoly({render_poly(self.as_ball_poly())}; N={self.abs_prec})"

    def __str__(self):
        return render_poly(self.as_ball_poly())


def flatten(poly: BallPoly) -> FlatPoly:
    """Truncate every coefficient to the smallest absolute precision."""
    if poly.is_formally_zero:
        raise ZeroPolynomial("cannot flatten the zero polynomial")
    n = poly.min_abs_prec()
    return FlatPoly(poly.ring, poly.coeffs, n)


# -- exact coefficient lists (lowest degree first) ---------------------------


def trim(coeffs: list) -> list:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def divrem_exact(a: list, b: list) -> tuple[list, list]:
    """Division with remainder over Fractions."""
    b = trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = [Fraction(c) for c in a]
    db = len(b) - 1
    lc = Fraction(b[-1])
    q = [Fraction(0)] * max(0, len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] / lc
        if c:
            q[k - db] = c
            for i in range(db + 1):
                rem[k - db + i] -= c * b[i]
    return trim(q), trim(rem)


def prem_exact(a: list, b: list) -> list:
    """Fraction-free pseudo-remainder lc(b)^(deg a - deg b + 1) * (a % b).

    Computed by the classical division-free loop, so integer inputs give
    integer outputs.
    """
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("prem by the zero polynomial")
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        raise ValueError("prem needs deg a >= deg b")
    lc = b[-1]
    rem = list(a)
    for k in range(da, db - 1, -1):
        top = rem[k] if k < len(rem) else 0
        rem = [lc * c for c in rem]
        for i in range(db + 1):
            rem[k - db + i] -= top * b[i]
        rem = rem[:k]
    return trim(rem)


# -- text format --------------------------------------------------------------


def render_poly(poly: BallPoly) -> str:
    if poly.is_formally_zero:
        return "0"
    terms = []
    for k in range(poly.degree, -1, -1):
        c = poly.coeffs[k]
        x = "" if k == 0 else "X" if k == 1 else f"X^{k}"
        exact_one = c.m == 1 and c.v == 0 and c.abs_prec >= c.ring.prec_cap
        if x and exact_one:
            terms.append(x)
        elif x:
            terms.append(f"({c})*{x}")
        else:
            terms.append(f"({c})" if " " in str(c) else str(c))
    return " + ".join(terms)


def parse_poly(text: str, ring: Zp | None = None) -> BallPoly:
    """Parse the render_poly format (highest degree first)."""
    from .rings import parse_ball

    parts = _split_terms(text)
    parsed = []
    for part in parts:
        part = part.strip()
        coeff_text, power = _split_power(part)
        parsed.append((coeff_text, power))
    if ring is None:
        for coeff_text, _ in parsed:
            if "O(" in coeff_text:
                ring = Zp(int(coeff_text.split("O(")[1].split("^")[0]))
                break
        if ring is None:
            raise ValueError("cannot infer the prime; pass a ring")
    degree = max(power for _, power in parsed)
    coeffs = [ring.exact(0)] * (degree + 1)
    for coeff_text, power in parsed:
        if coeff_text == "":
            ball = ring.exact(1)
        else:
            inner = coeff_text.strip()
            if inner.startswith("(") and inner.endswith(")"):
                inner = inner[1:-1]
            ball = parse_ball(inner, ring)
        coeffs[power] = ball
    return BallPoly(ring, coeffs)


def _split_terms(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p for p in (s.strip() for s in parts) if p]


def _split_power(term: str) -> tuple[str, int]:
    if "*" in term:
        coeff, x = term.rsplit("*", 1)
        x = x.strip()
    elif term.startswith("X"):
        coeff, x = "", term
    else:
        return term, 0
    if x == "X":
        return coeff.strip(), 1
    if x.startswith("X^"):
        return coeff.strip(), int(x[2:])
    raise ValueError(f"cannot parse term {term!r}")


def read_fixture(path, ring: Zp | None = None) -> list[BallPoly]:
    """Read a fixture file: one polynomial per non-comment line."""
    polys = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" in line.split("O(")[0]:
                line = line.split("=", 1)[1].strip()
            polys.append(parse_poly(line, ring))
            if ring is None:
                ring = polys[-1].ring
    return polys
