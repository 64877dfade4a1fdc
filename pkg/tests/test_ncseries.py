from fractions import Fraction
from math import factorial
from random import Random

import pytest

from elladic.bernoulli import bernoulli_number, bernoulli_poly
from elladic.ncseries import (
    NcSeries,
    ReducedSeries,
    bch,
    bch_reduced,
    bch_scaled_pair,
    bch_scaled_pair_display,
    bernoulli_kernel,
    gamma_series,
    inversion_closed_form,
    inversion_pipeline,
    l_from_li,
    li_from_l,
    p_x_over_em1,
    pcompose,
    pmul,
    pneg,
    ptrim,
    reduce_series,
)

F = Fraction


def one_y(alpha, phi, degree, max_y=None):
    coeffs = {}
    if alpha:
        coeffs["X"] = F(alpha)
    for k, c in enumerate(phi):
        if c and 1 + k <= degree:
            coeffs["Y" + "X" * k] = F(c)
    return NcSeries(degree, coeffs, max_y)


class TestNcSeries:
    def test_exp_log_inverse(self):
        D = 7
        rng = Random(4)
        s = NcSeries(
            D,
            {
                "X": F(1),
                "Y": F(-2),
                "XY": F(rng.randint(-3, 3)),
                "YXX": F(1, 2),
            },
        )
        assert s.exp().log() == s
        t = s.exp()
        assert t.log().exp() == t

    def test_bch_inverse_element(self):
        D = 8
        a = one_y(F(2, 3), [1, 0, F(-1, 2)], D)
        z = bch(a, -a)
        assert z.coeffs == {}

    def test_bch_commuting_case(self):
        D = 6
        x = NcSeries.variable("X", D)
        assert bch(x, x) == NcSeries(D, {"X": F(2)})

    def test_bch_degree_two(self):
        D = 4
        x = NcSeries.variable("X", D)
        y = NcSeries.variable("Y", D)
        b = bch(x, y)
        assert b["XY"] == F(1, 2) and b["YX"] == F(-1, 2)
        assert b["X"] == 1 and b["Y"] == 1

    def test_max_y_cap_agrees_on_surviving_words(self):
        D = 8
        a_full = one_y(1, [1, 2], D)
        b_full = one_y(-1, [0, 1, 1], D)
        a_cap = one_y(1, [1, 2], D, max_y=2)
        b_cap = one_y(-1, [0, 1, 1], D, max_y=2)
        assert reduce_series(bch(a_full, b_full)) == reduce_series(bch(a_cap, b_cap))


class TestReduction:
    def test_basis_words(self):
        D = 5
        assert reduce_series(NcSeries(D, {"XY": 1})).b == ptrim([], D)
        r = reduce_series(NcSeries(D, {"YX": 1}))
        assert r.b == ptrim([0, 1], D)
        assert reduce_series(NcSeries(D, {"YXY": 1})) == ReducedSeries(D)

    def test_quotient_multiplication_matches_full(self):
        D = 6
        rng = Random(9)
        for _ in range(10):
            def rand_series():
                words = ["", "X", "Y", "XX", "YX", "XY", "YXX", "XYX"]
                return NcSeries(
                    D, {w: F(rng.randint(-2, 2)) for w in rng.sample(words, 5)}
                )

            s1, s2 = rand_series(), rand_series()
            lhs = reduce_series(s1 * s2)
            rhs = reduce_series(s1) * reduce_series(s2)
            assert lhs == rhs

    def test_reduced_exp_log_inverse(self):
        D = 8
        s = ReducedSeries(D, [0, 1, F(1, 3)], [2, 0, F(-1, 2)])
        assert s.exp().log() == s


class TestBchReduced:
    def test_inverse_collapses(self):
        D = 8
        phi = [F(1), F(-2), F(1, 3)]
        out = bch_reduced(F(3, 2), phi, F(-3, 2), pneg(phi, D), D)
        assert out == ReducedSeries(D)

    def test_x_circ_y(self):
        D = 9
        got = bch_reduced(1, [0], 0, [1], D)
        assert got.a == ptrim([0, 1], D)
        assert got.b == p_x_over_em1(1, D)

    def test_y_circ_x(self):
        D = 9
        got = bch_reduced(0, [1], 1, [0], D)
        # X + Y * X e^X/(e^X - 1)
        want = pmul(p_x_over_em1(1, D), [F(1, factorial(k)) for k in range(D + 1)], D)
        assert got.b == want

    def test_matches_full_route(self):
        D = 10
        rng = Random(71)
        for _ in range(6):
            alpha = F(rng.choice([1, -1, 2, 3]), rng.randint(1, 3))
            beta = F(rng.choice([1, -1, 2, -3]), rng.randint(1, 3))
            phi1 = [F(rng.randint(-2, 2)) for _ in range(4)]
            phi2 = [F(rng.randint(-2, 2)) for _ in range(4)]
            a = one_y(alpha, phi1, D + 1, max_y=2)
            b = one_y(beta, phi2, D + 1, max_y=2)
            got = reduce_series(bch(a, b)).truncate(D)
            assert got == bch_reduced(alpha, phi1, beta, phi2, D)

    def test_z_series_identity(self):
        D = 12
        x = NcSeries.variable("X", D + 1, max_y=2)
        y = NcSeries.variable("Y", D + 1, max_y=2)
        z = reduce_series(-bch(x, y)).truncate(D)
        assert z.a == ptrim([0, -1], D)
        assert z.b == pneg(p_x_over_em1(1, D), D)

    def test_group_power_is_scalar_multiple(self):
        D = 9
        alpha, phi = F(2, 3), [F(1), F(0), F(-1, 2), F(2)]
        for p, q in [(F(2), F(3)), (F(1, 2), F(-1, 3)), (F(-2), F(2))]:
            got = bch_reduced(p * alpha, [p * c for c in phi],
                              q * alpha, [q * c for c in phi], D)
            want = ReducedSeries(
                D, [0, (p + q) * alpha], [(p + q) * c for c in phi]
            )
            assert got == want


class TestPolylogCoefficients:
    def test_zero_log_scalar_is_identity(self):
        ls = [F(3), F(-1), F(2)]
        assert li_from_l(0, ls, 3) == ls

    def test_li2_formula(self):
        l, l1, l2 = F(2, 3), F(5), F(-7)
        out = li_from_l(l, [l1, l2], 2)
        assert out[1] == l2 + l * l1 / 2

    def test_roundtrip(self):
        rng = Random(13)
        ls = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(8)]
        l = F(3, 2)
        assert l_from_li(l, li_from_l(l, ls, 8), 8) == ls


class TestGammaSeries:
    @staticmethod
    def even_inputs(chi, degree):
        return [
            bernoulli_number(2 * k) / (2 * factorial(2 * k)) * (1 - F(chi) ** (2 * k))
            for k in range(1, degree // 2 + 1)
        ]

    def test_trivial_scaling_vanishes(self):
        out = gamma_series(1, self.even_inputs(1, 10), [F(4), F(-1)], 10)
        assert out == ReducedSeries(10)

    @pytest.mark.parametrize("chi", [F(2), F(3), F(1, 2)])
    def test_output_is_bernoulli_kernel(self, chi):
        D = 10
        out = gamma_series(chi, self.even_inputs(chi, D), [F(1), F(2), F(-3)], D)
        assert not any(out.a)
        assert out.b == bernoulli_kernel(chi, 0, D)
        # coefficient of X^(k-1) is B_k/k! (1 - chi^k)
        for k in range(1, D + 2):
            assert out.b[k - 1] == bernoulli_number(k) / factorial(k) * (1 - chi ** k)

    def test_odd_inputs_cancel(self):
        D = 10
        rng = Random(5)
        chi = F(3)
        ref = gamma_series(chi, self.even_inputs(chi, D), [F(0)] * 5, D)
        for _ in range(5):
            odd = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(5)]
            assert gamma_series(chi, self.even_inputs(chi, D), odd, D) == ref


class TestInversionPipeline:
    def test_trivial_chi(self):
        D = 8
        a = [F(2), F(-1), F(0), F(3)]
        got = inversion_pipeline(a, 1, F(1, 3), D)
        want = ReducedSeries(D, None, pcompose(ptrim(a, D), [0, -1], D))
        assert got == want

    def test_zero_input_gives_bernoulli_polynomial_coefficients(self):
        D = 8
        chi, t = F(2), F(1, 3)
        got = inversion_pipeline([F(0)], chi, t, D)
        for k in range(1, D + 2):
            assert got.b[k - 1] == bernoulli_poly(k, t) / factorial(k) * (1 - chi ** k)

    def test_matches_closed_form_random(self):
        D = 8
        rng = Random(17)
        for _ in range(10):
            a = [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(D + 1)]
            chi = F(rng.choice([2, 3, 5, -1]), rng.choice([1, 2]))
            t = F(rng.randint(1, 6), rng.choice([5, 7, 3]))
            assert inversion_pipeline(a, chi, t, D) == inversion_closed_form(a, chi, t, D)

    def test_display_matches_recomputation(self):
        for chi, t in [(F(2), F(1, 3)), (F(3), F(2, 5)), (F(1, 2), F(1, 7))]:
            loop = bch_scaled_pair(chi, t, 9)
            assert loop.b == bch_scaled_pair_display(chi, t, 9)
            assert loop.a == ptrim([0, t * (1 - chi)], 9)
