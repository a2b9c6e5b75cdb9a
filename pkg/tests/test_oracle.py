"""Exact subresultant oracle: minors route vs pseudo-remainder route."""

import random

import pytest

from padicprs.oracle import (
    ZZ,
    NotInvertible,
    PrimeField,
    ResidueRing,
    check_relations,
    det_bareiss,
    det_berkowitz,
    pdeg,
    principal_depends_only_on_top,
    prs_general,
    ptrim,
    reconstruct_pair,
    resultant,
    subresultants_minors,
    sylvester_matrix,
)

# the monic degree-5 pair used by the worked traces
A5 = [25, 18, 5, 11, 27, 1]
B5 = [10, 3, 12, 25, 24, 1]


class TestSylvester:
    def test_two_by_two(self):
        assert resultant([-1, 1], [1, 1]) == 2

    def test_declared_degree_above_actual_vanishes(self):
        assert resultant([1, 1], [2, 3], dA=2, dB=1) == 0

    def test_res_of_equal_polys_vanishes(self):
        rng = random.Random(0)
        for _ in range(20):
            d = rng.randrange(1, 6)
            a = [rng.randrange(-9, 10) for _ in range(d)] + [1]
            assert resultant(a, a) == 0

    def test_matrix_shape(self):
        m = sylvester_matrix([1, 2, 1], [3, 1], 2, 1)
        assert len(m) == 3 and all(len(row) == 3 for row in m)


class TestDeterminants:
    def test_berkowitz_matches_bareiss(self):
        rng = random.Random(5)
        for _ in range(200):
            n = rng.randrange(1, 6)
            m = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(n)]
            assert det_bareiss(m) == det_berkowitz(m, ZZ)

    def test_singular(self):
        m = [[1, 2], [2, 4]]
        assert det_bareiss(m) == 0
        assert det_berkowitz(m, ZZ) == 0


class TestClassicalChain:
    """Frozen values for the standard degree-8 / degree-6 abnormal pair."""

    A = [-5, 2, 8, -3, -3, 0, 1, 0, 1]
    B = [21, -9, -4, 0, 5, 0, 3]

    def test_prs_values(self):
        _, res = prs_general(self.A, self.B)
        assert res[0] == [260708]
        assert res[1] == [-12300, 9326]
        assert res[2] == [-637, 325, 169]
        assert res[3] == [-245, 125, 65]
        assert res[4] == [15, 0, -5, 0, 25]
        assert res[5] == [9, 0, -3, 0, 15]

    def test_matches_minors(self):
        fam = subresultants_minors(self.A, self.B, 8, 6)
        _, res = prs_general(self.A, self.B)
        assert res == fam.R


class TestCrossValidation:
    """prs_general and subresultants_minors agree, signs included."""

    def test_random_instances(self):
        rng = random.Random(2024)
        checked = 0
        # 300 integer instances (mixed degrees, non-monic allowed)
        for _ in range(300):
            dA = rng.randrange(1, 9)
            dB = rng.randrange(1, dA + 1)
            A = [rng.randrange(-9, 10) for _ in range(dA)] + [rng.choice((1, 2, 3, -1))]
            B = [rng.randrange(-9, 10) for _ in range(dB)] + [rng.choice((1, 2, 3, -1))]
            fam = subresultants_minors(A, B, dA, dB)
            _, res = prs_general(A, B)
            assert res == fam.R, (A, B)
            checked += 1
        # 250 finite-field instances: degree jumps are frequent here
        for _ in range(250):
            p = rng.choice((2, 3, 5))
            R = PrimeField(p)
            dA = rng.randrange(1, 8)
            dB = rng.randrange(1, dA + 1)
            A = [rng.randrange(p) for _ in range(dA)] + [rng.randrange(1, p)]
            B = [rng.randrange(p) for _ in range(dB)] + [rng.randrange(1, p)]
            fam = subresultants_minors(A, B, dA, dB, R)
            _, res = prs_general(A, B, R)
            assert [ptrim(R, x) for x in res] == [ptrim(R, x) for x in fam.R], (p, A, B)
            checked += 1
        assert checked >= 500

    def test_sparse_abnormal(self):
        _, res = prs_general([0, 0, 0, 0, 1], [0, 0, 1])
        fam = subresultants_minors([0, 0, 0, 0, 1], [0, 0, 1], 4, 2)
        assert res == fam.R
        assert res[1] == []  # the gap index vanishes

    def test_subresultants_of_equal_pair_vanish(self):
        fam = subresultants_minors(A5, A5, 5, 5)
        assert all(r == [] for r in fam.R)

    def test_worked_pair_resultant_is_odd(self):
        fam = subresultants_minors(A5, B5, 5, 5)
        assert fam.R[0][0] % 2 == 1

    def test_normal_case_indexing(self):
        # R_j = S_{d-j} when all principal subresultants are nonzero
        rng = random.Random(9)
        for _ in range(40):
            d = rng.randrange(1, 7)
            A = [rng.randrange(-9, 10) for _ in range(d)] + [1]
            B = [rng.randrange(-9, 10) for _ in range(d)] + [1]
            t, res = prs_general(A, B)
            if any(len(r) != j + 1 for j, r in enumerate(res)):
                continue  # not normal
            for j in range(d):
                assert res[j] == t.S(d - j)

    def test_proposition_overlap_when_gap_is_one(self):
        # at a normal step the two indexing formulas give the same polynomial
        rng = random.Random(10)
        for _ in range(40):
            d = rng.randrange(2, 7)
            A = [rng.randrange(-9, 10) for _ in range(d)] + [1]
            B = [rng.randrange(-9, 10) for _ in range(d)] + [1]
            t, res = prs_general(A, B)
            for i in range(1, len(t.polys) - 1):
                n_prev, n_i = t.degrees[i], t.degrees[i + 1]
                if t.polys[i + 1] and t.gaps[i] == 1:
                    assert n_i == n_prev - 1  # definition of a gap of one
                    # factor (s_i/c_{i-1})^0 = 1: both cases name S_i itself

    def test_equal_degree_monic_first_step(self):
        # S_1 = B - A up to the recurrence sign: the sign is exactly +1 here
        t, res = prs_general(A5, B5)
        diff = [b - a for a, b in zip(A5, B5)]
        assert t.S(1) == ptrim(ZZ, diff)


class TestFunctoriality:
    def test_reduce_then_compute_vs_compute_then_reduce(self):
        rng = random.Random(31)
        for _ in range(200):
            p = rng.choice((2, 3))
            n = rng.randrange(2, 6)
            R = ResidueRing(p, n)
            dA = rng.randrange(1, 5)
            dB = rng.randrange(1, dA + 1)
            A = [rng.randrange(-40, 40) for _ in range(dA + 1)]
            B = [rng.randrange(-40, 40) for _ in range(dB + 1)]
            famZ = subresultants_minors(A, B, dA, dB, ZZ)
            famR = subresultants_minors(A, B, dA, dB, R)
            for j in range(min(dA, dB)):
                assert ptrim(R, [R.coerce(c) for c in famZ.R[j]]) == ptrim(R, famR.R[j])


class TestRelations:
    def test_hundred_random_instances(self):
        rng = random.Random(6)
        count = 0
        while count < 100:
            d = rng.randrange(2, 7)
            A = [rng.randrange(0, 2**10) for _ in range(d)] + [1]
            B = [rng.randrange(0, 2**10) for _ in range(d)] + [1]
            rep = check_relations(A, B)
            for name, (ok, fails) in rep.items():
                assert ok, (name, d, A, B, fails[:1])
            count += 1

    def test_base_case_top_cofactor(self):
        # j = d-1 uses the convention r_d = 1: U_{d-1} = -1, V_{d-1} = 1
        rng = random.Random(8)
        for d in (2, 3, 4, 5):
            A = [rng.randrange(-9, 10) for _ in range(d)] + [1]
            B = [rng.randrange(-9, 10) for _ in range(d)] + [1]
            fam = subresultants_minors(A, B, d, d)
            assert fam.U[d - 1] == [-1]
            assert fam.V[d - 1] == [1]
            diff = ptrim(ZZ, [y - x for x, y in zip(A, B)])
            assert fam.R[d - 1] == diff

    def test_printed_sign_is_parity_dependent(self):
        # the (-1)^j version of the Wronskian identity cannot hold for all d:
        # the true sign is (-1)^{d-j+1} (ledger entry)
        for d, expected_match in ((3, True), (4, False)):
            rng = random.Random(d)
            A = [rng.randrange(-9, 10) for _ in range(d)] + [1]
            B = [rng.randrange(-9, 10) for _ in range(d)] + [1]
            fam = subresultants_minors(A, B, d, d)
            j = 1
            lhs = subtract_polys(
                mul_polys(fam.U[j - 1], fam.V[j]), mul_polys(fam.U[j], fam.V[j - 1])
            )
            printed = [(-1) ** j * fam.r[j] ** 2]
            assert (lhs == printed) == expected_match

    def test_top_coefficient_dependence(self):
        rng = random.Random(12)
        for _ in range(25):
            d = rng.randrange(2, 7)
            A = [rng.randrange(-9, 10) for _ in range(d)] + [1]
            B = [rng.randrange(-9, 10) for _ in range(d)] + [1]
            for j in range(d):
                threshold = 2 * j - d + 1
                for idx in range(max(0, threshold)):
                    for side in (0, 1):
                        assert principal_depends_only_on_top(A, B, j, idx, side)


def mul_polys(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return out


def subtract_polys(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


class TestReconstruction:
    def test_round_trip_over_residue_ring(self):
        rng = random.Random(15)
        done = 0
        while done < 100:
            p = rng.choice((2, 3))
            n = rng.randrange(4, 10)
            R = ResidueRing(p, n)
            d = rng.randrange(2, 6)
            j = rng.randrange(1, d)
            A = [rng.randrange(p**n) for _ in range(d)] + [1]
            B = [rng.randrange(p**n) for _ in range(d)] + [1]
            fam = subresultants_minors(A, B, d, d, R)
            if not R.is_unit(fam.r[j]):
                continue
            A2, B2 = reconstruct_pair(fam.U[j], fam.U[j - 1], fam.R[j], fam.R[j - 1], d, j, R)
            assert A2 == [R.coerce(c) for c in A]
            assert B2 == [R.coerce(c) for c in B]
            done += 1

    def test_requires_unit_principal(self):
        R = ResidueRing(2, 6)
        d, j = 3, 1
        rng = random.Random(44)
        while True:
            A = [rng.randrange(2**6) for _ in range(d)] + [1]
            B = [rng.randrange(2**6) for _ in range(d)] + [1]
            fam = subresultants_minors(A, B, d, d, R)
            if not R.is_unit(fam.r[j]) and fam.R[j]:
                break
        with pytest.raises(NotInvertible):
            reconstruct_pair(fam.U[j], fam.U[j - 1], fam.R[j], fam.R[j - 1], d, j, R)
