"""Ground-truth subresultants, cofactors and resultants over exact coefficients.

Two independent routes are implemented and cross-validated against each other:

* `subresultants_minors` builds everything from determinants of the truncated
  Sylvester matrices (Cramer cofactors, determinant polynomials).  It works
  over any commutative coefficient ring (integers fast path via fraction-free
  Bareiss elimination, generic rings via the division-free Berkowitz
  algorithm), with declared degrees that may exceed the actual ones.

* `prs_general` runs the subresultant pseudo-remainder sequence, including
  abnormal (degree-jump) steps, and assembles the full indexed family from
  it.  The recurrence is normalized so that the normal case collapses to
  R_{j-1} = r_j^2 r_{j+1}^{-2} (R_{j+1} % R_j) and the assembled family
  agrees with the minors route, signs included.

Sign conventions are pinned by the minors construction with target basis
(X^{dA+dB-j-1}, ..., X^j): in particular R_{d-1} = B - A for monic inputs of
equal degree d.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rings import PadicError, val_int


class NotInvertible(PadicError):
    """A division required a unit where there was none."""


# -- coefficient rings --------------------------------------------------------


class IntegerRing:
    """Z with exact division (asserts divisibility)."""

    zero = 0
    one = 1

    def coerce(self, x):
        return int(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a in (1, -1)

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise NotInvertible(f"{a} is not divisible by {b}")
        return q

    def pow(self, a, e):
        return a**e

    def __repr__(self):
        return "ZZ"


class PrimeField:
    """F_p with values stored as integers in [0, p)."""

    def __init__(self, p):
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def is_unit(self, a):
        return a % self.p != 0

    def exact_div(self, a, b):
        if b % self.p == 0:
            raise NotInvertible("division by zero in F_p")
        return a * pow(b, self.p - 2, self.p) % self.p

    def pow(self, a, e):
        return pow(a, e, self.p)

    def __repr__(self):
        return f"GF({self.p})"


class ResidueRing:
    """Z / p^n Z; division is only defined by units."""

    def __init__(self, p, n):
        self.p = p
        self.n = n
        self.modulus = p**n
        self.zero = 0
        self.one = 1 % self.modulus

    def coerce(self, x):
        return int(x) % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def is_zero(self, a):
        return a % self.modulus == 0

    def is_unit(self, a):
        return a % self.p != 0

    def exact_div(self, a, b):
        if not self.is_unit(b):
            raise NotInvertible(f"{b} is not a unit modulo {self.p}^{self.n}")
        return a * pow(b, -1, self.modulus) % self.modulus

    def pow(self, a, e):
        return pow(a, e, self.modulus)

    def __repr__(self):
        return f"Z/{self.p}^{self.n}"


class DualRing:
    """Dual numbers a + b*eps (eps^2 = 0) over the integers.

    Multiplying through an integer determinant formula yields the exact
    directional derivative in the eps component; no division is ever needed
    because determinants are evaluated with the Berkowitz algorithm.
    """

    zero = (0, 0)
    one = (1, 0)

    def coerce(self, x):
        return (int(x), 0) if not isinstance(x, tuple) else x

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def mul(self, a, b):
        return (a[0] * b[0], a[0] * b[1] + a[1] * b[0])

    def neg(self, a):
        return (-a[0], -a[1])

    def is_zero(self, a):
        return a == (0, 0)

    def __repr__(self):
        return "ZZ[eps]"


ZZ = IntegerRing()


# -- generic polynomial helpers (lists, lowest degree first) ------------------


def ptrim(R, a):
    out = list(a)
    while out and R.is_zero(out[-1]):
        out.pop()
    return out


def pdeg(a):
    return len(a) - 1


def padd(R, a, b):
    n = max(len(a), len(b))
    out = [
        R.add(a[i] if i < len(a) else R.zero, b[i] if i < len(b) else R.zero)
        for i in range(n)
    ]
    return ptrim(R, out)


def psub(R, a, b):
    n = max(len(a), len(b))
    out = [
        R.sub(a[i] if i < len(a) else R.zero, b[i] if i < len(b) else R.zero)
        for i in range(n)
    ]
    return ptrim(R, out)


def pmul(R, a, b):
    if not a or not b:
        return []
    out = [R.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if R.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = R.add(out[i + j], R.mul(x, y))
    return ptrim(R, out)


def pscale(R, a, c):
    return ptrim(R, [R.mul(x, c) for x in a])


def pdiv_scalar(R, a, c):
    return [R.exact_div(x, c) for x in a]


def pseudo_rem(R, a, b):
    """lc(b)^(deg a - deg b + 1) * (a % b), by the division-free loop."""
    a, b = ptrim(R, a), ptrim(R, b)
    if not b:
        raise ZeroDivisionError("pseudo-remainder by the zero polynomial")
    da, db = pdeg(a), pdeg(b)
    if da < db:
        raise ValueError("pseudo_rem needs deg a >= deg b")
    lc = b[-1]
    rem = list(a)
    for k in range(da, db - 1, -1):
        top = rem[k] if k < len(rem) else R.zero
        rem = [R.mul(lc, x) for x in rem]
        for i in range(db + 1):
            rem[k - db + i] = R.sub(rem[k - db + i], R.mul(top, b[i]))
        rem = rem[:k]
    return ptrim(R, rem)


# -- determinants -------------------------------------------------------------


def det_bareiss(m):
    """Integer determinant by fraction-free Gaussian elimination."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_berkowitz(m, R):
    """Division-free determinant over any commutative ring."""
    n = len(m)
    if n == 0:
        return R.one
    vec = [R.one, R.neg(m[0][0])]
    for i in range(1, n):
        row = m[i][:i]
        col = [m[k][i] for k in range(i)]
        moments = [m[i][i]]
        w = col
        for _ in range(i):
            acc = R.zero
            for x, y in zip(row, w):
                acc = R.add(acc, R.mul(x, y))
            moments.append(acc)
            w = [_dot(R, m[k][:i], w) for k in range(i)]
        first = [R.one] + [R.neg(x) for x in moments]
        vec = [
            _dot(R, [first[r - c] for c in range(min(r, i) + 1)], vec[: min(r, i) + 1])
            for r in range(i + 2)
        ]
    det = vec[n]
    return det if n % 2 == 0 else R.neg(det)


def _dot(R, xs, ys):
    acc = R.zero
    for x, y in zip(xs, ys):
        acc = R.add(acc, R.mul(x, y))
    return acc


def ring_det(m, R):
    if R is ZZ or isinstance(R, IntegerRing):
        return det_bareiss(m)
    return det_berkowitz(m, R)


# -- Sylvester matrices and the minors route ----------------------------------


def _padded(R, coeffs, declared_deg):
    out = [R.coerce(c) for c in coeffs]
    if len(out) > declared_deg + 1:
        raise ValueError("polynomial exceeds its declared degree")
    return out + [R.zero] * (declared_deg + 1 - len(out))


def _generator_row(A, B, dA, dB, j, power, R):
    """Coefficients of X^power in (X^s A)_s, (X^s B)_s for the map at level j."""
    out = []
    for c in range(dB - j):
        k = power - (dB - j - 1 - c)
        out.append(A[k] if 0 <= k <= dA else R.zero)
    for c in range(dA - j):
        k = power - (dA - j - 1 - c)
        out.append(B[k] if 0 <= k <= dB else R.zero)
    return out


def sylvester_matrix(A, B, dA, dB, R=ZZ):
    """Matrix of (U, V) -> AU + BV in the canonical bases (rows = X powers,
    highest first); its determinant is the resultant in degree (dA, dB)."""
    A, B = _padded(R, A, dA), _padded(R, B, dB)
    return [
        _generator_row(A, B, dA, dB, 0, dA + dB - 1 - r, R) for r in range(dA + dB)
    ]


def resultant(A, B, dA=None, dB=None, R=ZZ):
    from .poly import trim

    if dA is None:
        dA = len(ptrim(R, [R.coerce(c) for c in A])) - 1
    if dB is None:
        dB = len(ptrim(R, [R.coerce(c) for c in B])) - 1
    return ring_det(sylvester_matrix(A, B, dA, dB, R), R)


@dataclass
class SubresultantFamily:
    """The indexed family R_j, r_j, U_j, V_j for j in [0, min(dA, dB))."""

    ring: object
    dA: int
    dB: int
    R: list = field(default_factory=list)
    r: list = field(default_factory=list)
    U: list = field(default_factory=list)
    V: list = field(default_factory=list)

    @property
    def d(self):
        return min(self.dA, self.dB)


def subresultants_minors(A, B, dA=None, dB=None, R=ZZ):
    """Subresultants and cofactors from Cramer minors of the Sylvester map."""
    ring = R
    a0 = ptrim(ring, [ring.coerce(c) for c in A])
    b0 = ptrim(ring, [ring.coerce(c) for c in B])
    if dA is None:
        dA = pdeg(a0)
    if dB is None:
        dB = pdeg(b0)
    A = _padded(ring, a0, dA)
    B = _padded(ring, b0, dB)
    fam = SubresultantFamily(ring, dA, dB)
    for j in range(min(dA, dB)):
        n = dA + dB - 2 * j
        rows = [
            _generator_row(A, B, dA, dB, j, dA + dB - j - 1 - t, ring)
            for t in range(n - 1)
        ]
        cof = []
        for c in range(n):
            sub = [row[:c] + row[c + 1 :] for row in rows]
            dv = ring_det(sub, ring)
            cof.append(dv if (n - 1 + c) % 2 == 0 else ring.neg(dv))
        uj = [ring.zero] * (dB - j)
        vj = [ring.zero] * (dA - j)
        for c in range(dB - j):
            uj[dB - j - 1 - c] = cof[c]
        for c in range(dA - j):
            vj[dA - j - 1 - c] = cof[dB - j + c]
        uj, vj = ptrim(ring, uj), ptrim(ring, vj)
        rj_poly = padd(ring, pmul(ring, A, uj), pmul(ring, B, vj))
        if pdeg(rj_poly) > j:
            raise AssertionError("subresultant degree bound violated")
        fam.U.append(uj)
        fam.V.append(vj)
        fam.R.append(rj_poly)
        fam.r.append(rj_poly[j] if len(rj_poly) > j else ring.zero)
    return fam


# -- subresultant pseudo-remainder sequence (general case) --------------------


@dataclass
class PrsTranscript:
    """Record of the pseudo-remainder sequence S_{-1} = A, S_0 = B, S_1, ...

    `polys[k]` is S_{k-1}; `leads`, `degrees` follow the same offset, with
    leads[0] = 1 by convention.  `aux[k]` is c_{k-1} and `gaps[i]` is
    eps_i = n_{i-1} - n_i for the i-th computed step (i >= 0).
    """

    ring: object
    polys: list
    degrees: list
    leads: list
    aux: list
    gaps: list

    def S(self, i):
        return self.polys[i + 1]

    @property
    def last_nonzero_index(self):
        return len(self.polys) - 3  # the appended final element is zero


def prs_general(A, B, R=ZZ):
    """Pseudo-remainder sequence plus the assembled family of subresultants.

    Returns (transcript, res) where res[j] is the j-th subresultant for
    j in [0, deg B); requires deg A >= deg B >= 0 and B != 0.  Signs agree
    with `subresultants_minors` on normal and abnormal inputs.
    """
    ring = R
    a = ptrim(ring, [ring.coerce(c) for c in A])
    b = ptrim(ring, [ring.coerce(c) for c in B])
    if not b:
        raise ValueError("B must be nonzero")
    if pdeg(a) < pdeg(b):
        raise ValueError("need deg A >= deg B")
    polys = [a, b]
    degrees = [pdeg(a), pdeg(b)]
    leads = [ring.one, b[-1]]
    aux = [ring.one]  # c_{-1}
    gaps = []
    while polys[-1]:
        s_prev, s_cur = polys[-2], polys[-1]
        e = degrees[-2] - degrees[-1]
        gaps.append(e)
        num = pseudo_rem(ring, s_prev, s_cur)
        if e % 2 == 0:  # (-s_i)^{e+1} flips the pseudo-remainder's sign
            num = [ring.neg(x) for x in num]
        den = ring.mul(leads[-2], ring.pow(aux[-1], e)) if e else ring.mul(leads[-2], ring.one)
        nxt = pdiv_scalar(ring, num, den)
        # c_i = s_i^e * c_{i-1}^{1-e}, kept exact via division when e >= 2
        if e == 0:
            aux.append(aux[-1])
        elif e == 1:
            aux.append(s_cur[-1])
        else:
            aux.append(ring.exact_div(ring.pow(s_cur[-1], e), ring.pow(aux[-1], e - 1)))
        polys.append(nxt)
        degrees.append(pdeg(nxt))
        leads.append(nxt[-1] if nxt else ring.zero)
        if len(polys) > degrees[0] + 3:
            raise AssertionError("pseudo-remainder sequence failed to terminate")
    t = PrsTranscript(ring, polys, degrees, leads, aux, gaps)
    d = pdeg(b)
    res = [[] for _ in range(d)]
    for i in range(1, len(polys) - 1):
        n_prev, n_i = degrees[i], degrees[i + 1]  # n_{i-1}, n_i
        s_i, s_prev = leads[i + 1], leads[i]
        j1 = n_prev - 1
        if 0 <= j1 < d:
            res[j1] = polys[i + 1]
        if polys[i + 1]:
            j2 = n_i
            e = gaps[i]
            # the divisor is c_{i-1}, the principal at the previous regular
            # level (equal to s_{i-1} in the normal case)
            c_prev = aux[i]
            if 0 <= j2 < d and j2 != j1:
                scaled = pscale(ring, polys[i + 1], ring.pow(s_i, e - 1))
                res[j2] = pdiv_scalar(ring, scaled, ring.pow(c_prev, e - 1))
    # any j strictly below the degree of the last nonzero element stays zero
    return t, res


# -- the structural identities as checkable predicates -------------------------


def check_relations(A, B, R=ZZ):
    """Verify the cofactor/subresultant identities for a monic equal-degree pair.

    Returns a report dict: each identity maps to (ok, failures).  Signs follow
    the minors convention; see the module docstring.
    """
    ring = R
    a = ptrim(ring, [ring.coerce(c) for c in A])
    b = ptrim(ring, [ring.coerce(c) for c in B])
    d = pdeg(a)
    if pdeg(b) != d or not ring.is_unit(a[-1]) or not ring.is_unit(b[-1]):
        raise ValueError("expected monic polynomials of equal degree")
    fam = subresultants_minors(a, b, d, d, ring)
    report = {}

    def sign_pow(k):
        return ring.one if k % 2 == 0 else ring.neg(ring.one)

    # (i) Wronskian of consecutive cofactors: (-1)^{d-j+1} r_j^2
    fails = []
    for j in range(1, d):
        lhs = psub(
            ring,
            pmul(ring, fam.U[j - 1], fam.V[j]),
            pmul(ring, fam.U[j], fam.V[j - 1]),
        )
        want = pscale(ring, [ring.mul(fam.r[j], fam.r[j])], sign_pow(d - j + 1))
        if lhs != want:
            fails.append(("wronskian", j, lhs, want))
    report["wronskian"] = (not fails, fails)

    # (ii) top cofactor coefficients: U_j[d-j-1] = -V_j[d-j-1] = (-1)^{d-j} r_{j+1}
    fails = []
    for j in range(d):
        r_next = fam.r[j + 1] if j + 1 < d else ring.one  # r_d = 1 by convention
        want = ring.mul(sign_pow(d - j), r_next)
        ucoef = fam.U[j][d - j - 1] if len(fam.U[j]) > d - j - 1 else ring.zero
        vcoef = fam.V[j][d - j - 1] if len(fam.V[j]) > d - j - 1 else ring.zero
        if ucoef != want or vcoef != ring.neg(want):
            fails.append(("top_cofactor", j, ucoef, vcoef, want))
    report["top_cofactor"] = (not fails, fails)

    # (iii) subresultants of (R_j, R_{j-1}) reproduce the lower R_k, scaled
    fails = []
    for j in range(1, d):
        if ring.is_zero(fam.r[j]) or pdeg(fam.R[j - 1]) != j - 1:
            continue
        sub = subresultants_minors(fam.R[j], fam.R[j - 1], j, j - 1, ring)
        for k in range(j - 1):
            want = pscale(ring, fam.R[k], ring.pow(fam.r[j], 2 * (j - k - 1)))
            if sub.R[k] != want:
                fails.append(("nested_R", j, k))
    report["nested_subresultants"] = (not fails, fails)

    # (iv) same shape for the cofactors U
    fails = []
    for j in range(1, d):
        if ring.is_zero(fam.r[j]) or pdeg(fam.U[j - 1]) != d - j:
            continue
        sub = subresultants_minors(fam.U[j - 1], fam.U[j], d - j, d - j - 1, ring)
        for k in range(d - j - 1):
            want = pscale(ring, fam.U[d - 1 - k], ring.pow(fam.r[j], 2 * (d - j - k - 1)))
            if sub.R[k] != want:
                fails.append(("nested_U", j, k))
    report["nested_cofactors"] = (not fails, fails)

    return report


def principal_depends_only_on_top(A, B, j, perturb_index, side, R=ZZ):
    """True if r_j is unchanged when the given low coefficient is perturbed.

    r_j depends only on the 2(d-j)-1 highest-degree coefficients, i.e. on
    indices >= 2j - d + 1; callers perturb below that threshold.
    """
    ring = R
    _, res = prs_general(A, B, ring)
    before = res[j][j] if len(res[j]) > j else ring.zero
    a2, b2 = list(A), list(B)
    if side == 0:
        a2[perturb_index] = ring.add(ring.coerce(a2[perturb_index]), ring.one)
    else:
        b2[perturb_index] = ring.add(ring.coerce(b2[perturb_index]), ring.one)
    _, res2 = prs_general(a2, b2, ring)
    after = res2[j][j] if len(res2[j]) > j else ring.zero
    return before == after


# -- inverse of the quadruple map (over Z/p^N, principal subresultant a unit) --


def solve_unit_system(mat, rhs, R: ResidueRing):
    """Solve mat x = rhs over Z/p^n by elimination on unit pivots."""
    n = len(mat)
    m = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    perm = list(range(n))
    for col in range(n):
        piv = next((r for r in range(col, n) if R.is_unit(m[r][col])), None)
        if piv is None:
            raise NotInvertible("system is singular modulo p")
        m[col], m[piv] = m[piv], m[col]
        inv = pow(m[col][col], -1, R.modulus)
        m[col] = [x * inv % R.modulus for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % R.modulus for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def reconstruct_pair(Uj, Ujm1, Rj, Rjm1, d, j, R: ResidueRing):
    """Invert (A, B) -> (U_j, U_{j-1}, R_j, R_{j-1}) when r_j is a unit.

    The missing cofactors are the unique solution of the Wronskian identity
    with the leading coefficient of V_{j-1} pinned; (A, B) then follow by
    Cramer from the two Bezout identities.
    """
    ring = R
    Uj = _padded(ring, Uj, d - j - 1)
    Ujm1 = _padded(ring, Ujm1, d - j)
    Rj = _padded(ring, Rj, j)
    Rjm1 = _padded(ring, Rjm1, j - 1)
    a = Rj[j]
    if not ring.is_unit(a):
        raise NotInvertible("principal subresultant is not a unit")
    wsign = 1 if (d - j + 1) % 2 == 0 else -1
    lcsign = 1 if (d - j) % 2 == 0 else -1
    nv = d - j  # len(Vj) = nv, len(Vjm1) = nv + 1
    nunk = 2 * nv + 1
    mat = [[ring.zero] * nunk for _ in range(nunk)]
    rhs = [ring.zero] * nunk
    for t in range(2 * nv):
        for y in range(nv):
            x = t - y
            if 0 <= x <= d - j:
                mat[t][y] = Ujm1[x]
        for y in range(nv + 1):
            x = t - y
            if 0 <= x <= d - j - 1:
                mat[t][nv + y] = ring.neg(Uj[x])
    rhs[0] = ring.coerce(wsign * a * a)
    mat[2 * nv][nv + nv] = ring.one  # pin lc(V_{j-1})
    rhs[2 * nv] = ring.coerce(lcsign * a)
    sol = solve_unit_system(mat, rhs, ring)
    Vj, Vjm1 = sol[:nv], sol[nv:]
    det = ring.coerce(-wsign * a * a)  # U_j V_{j-1} - U_{j-1} V_j
    A = pdiv_scalar(ring, psub(ring, pmul(ring, Rj, Vjm1), pmul(ring, Rjm1, Vj)), det)
    B = pdiv_scalar(ring, psub(ring, pmul(ring, Uj, Rjm1), pmul(ring, Ujm1, Rj)), det)
    return _padded(ring, A, d), _padded(ring, B, d)
