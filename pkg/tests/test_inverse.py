import cmath
import math

import numpy as np
import pytest

from zetatheta import fields as fd
from zetatheta import inverse_theta as iv
from zetatheta import numerics as nx
from zetatheta.errors import DomainError, ParseError, ValidationError


class TestZeroList:
    def test_load(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("# three zeros\n14.134725\n21.022040\n25.010858\n")
        zl = iv.load_zeros(p)
        assert len(zl) == 3
        assert zl.gammas[0] == pytest.approx(14.134725)

    def test_out_of_order(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("14.13\n13.0\n")
        with pytest.raises(ParseError) as err:
            iv.load_zeros(p)
        assert err.value.line == 2

    def test_not_a_number(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("14.13\nxyz\n")
        with pytest.raises(ParseError):
            iv.load_zeros(p)

    def test_empty_is_valid_but_unusable(self, tmp_path, field_q):
        p = tmp_path / "z.txt"
        p.write_text("# nothing\n")
        zl = iv.load_zeros(p)
        assert len(zl) == 0
        with pytest.raises(ValidationError):
            iv.zero_sum(field_q, 1, 1.0, zl)

    def test_write_round_trip(self, tmp_path, riemann_zeros_reference):
        p = tmp_path / "out.txt"
        iv.write_zeros(p, riemann_zeros_reference)
        back = iv.load_zeros(p)
        assert len(back) == len(riemann_zeros_reference)
        for a, b in zip(back.gammas, riemann_zeros_reference.gammas):
            assert abs(a - b) < 1e-11

    def test_separation_validation(self):
        with pytest.raises(ValidationError):
            iv.ZeroList(gammas=(14.0, 14.0))


class TestLSeries:
    def test_rational_closed_form(self, field_q):
        # L(x) = sum mu(n)/n * 2 (e^{-pi x / n^2} - 1), absolutely convergent
        x = 4.0
        val = iv.l_series(field_q, 1, x, tol=1e-9)
        mu = fd.moebius_coeffs(field_q, 1, 400000).values
        n = np.arange(1, 400001, dtype=float)
        ref = float(np.sum(mu[1:] / n * 2.0 * (np.exp(-math.pi * x / n ** 2) - 1.0)))
        assert abs(val - ref) < 1e-9

    def test_large_argument_regime(self, field_q):
        # at large x each exponential is negligible but the -1 parts resum to
        # ~0 through sum mu(n)/n = 0; the naive single-term guess -2 is off by 2
        x = 30.0
        val = iv.l_series(field_q, 1, x, tol=1e-6)
        assert abs(val) < 0.05
        assert abs(val - 2.0 * iv.smoothed_mu_exp_sum(math.pi * x)) < 1e-4

    def test_sector(self, field_q):
        from zetatheta.errors import SectorError
        with pytest.raises(SectorError):
            iv.l_series(field_q, 1, cmath.exp(1j * (math.pi / 2 - 0.1)))

    def test_truncation_stability(self, field_sqrt5):
        a = iv.l_series(field_sqrt5, 1, 2.0, tol=1e-5)
        b = iv.l_series(field_sqrt5, 1, 2.0, tol=1e-7)
        assert abs(a - b) < 1e-5


class TestR0Inverse:
    def test_rational_vanishes(self, field_q):
        for k in (1, 2, 3):
            assert iv.r0_inverse(field_q, k, 2.0) == 0

    def test_quadratic_constant(self, field_sqrt5):
        # k=1, r=1: lim s Lambda(s) = -4 / H_F, x-independent
        ref = -4.0 / fd.residue_constant(field_sqrt5)
        for x in (0.5, 1.0, 3.0):
            assert iv.r0_inverse(field_sqrt5, 1, x) == pytest.approx(ref, rel=1e-10)

    def test_k2_log_parity(self, field_sqrt5):
        # degree kr - 1 = 1 polynomial in log x: P(log(1/x)) flips the odd part
        poly = iv.r0_inverse_polynomial(field_sqrt5, 2)
        assert poly.degree == 1
        x = 3.0
        direct = iv.r0_inverse(field_sqrt5, 2, 1.0 / x)
        flipped = poly.coeffs[0] - poly.coeffs[1] * math.log(x)
        assert abs(direct - flipped) < 1e-12


class TestRRho:
    def test_k1_against_direct_formula(self, field_q, riemann_zeros_reference):
        # residue of Lambda at rho is -prefactor(rho)/zeta'(1-rho)
        g = riemann_zeros_reference.gammas[0]
        rho = 0.5 + 1j * g
        for x in (1.0, 4.0):
            pair = iv.r_rho(field_q, 1, x, g)
            pref = fd.gamma_prefactor_many(field_q, np.array([rho]), 1)[0]
            res = -pref / nx.zeta_derivative(1.0 - rho, 1)
            direct = x ** (-rho / 2.0) * res
            assert abs(pair - 2.0 * direct.real) < 1e-12

    def test_pair_scale(self, field_q, riemann_zeros_reference):
        # one-sided residue magnitude ~ e^{-pi gamma / 4} ~ 1e-5 at the first zero
        g = riemann_zeros_reference.gammas[0]
        _, poly = iv._lambda_principal_at_zero(field_q, 1, g)
        assert 1e-6 < abs(poly.coeffs[0]) < 1e-4

    def test_pair_at_one_is_structurally_tiny(self, field_q, riemann_zeros_reference):
        # Lambda(1-s) = Lambda(s) makes Res_rho Lambda purely imaginary, so the
        # conjugate pair cancels at x = 1
        g = riemann_zeros_reference.gammas[0]
        assert abs(iv.r_rho(field_q, 1, 1.0, g)) < 1e-15

    def test_double_pole_extraction(self, field_q, riemann_zeros_reference):
        g = riemann_zeros_reference.gammas[0]
        pair = iv.r_rho(field_q, 2, 4.0, g)
        assert np.isfinite(pair.real) and np.isfinite(pair.imag)
        _, poly = iv._lambda_principal_at_zero(field_q, 2, g)
        assert poly.degree == 1


class TestZeroSum:
    def test_reality(self, field_q, riemann_zeros_reference):
        total, _ = iv.zero_sum(field_q, 1, 4.0, riemann_zeros_reference)
        assert abs(total.imag) < 1e-10

    def test_tail_decay(self, field_q, riemann_zeros_reference):
        _, tail = iv.zero_sum(field_q, 1, 1.0, riemann_zeros_reference)
        assert tail < 1e-25

    def test_cauchy_doubling(self, field_q, riemann_zeros_reference):
        s15, _ = iv.zero_sum(field_q, 1, 4.0, riemann_zeros_reference.head(15))
        s30, tail30 = iv.zero_sum(field_q, 1, 4.0, riemann_zeros_reference)
        pair16 = abs(iv.r_rho(field_q, 1, 4.0, riemann_zeros_reference.gammas[15]))
        assert abs(s30 - s15) < 20.0 * max(pair16, 1e-30)

    def test_empty(self, field_q):
        with pytest.raises(ValidationError):
            iv.zero_sum(field_q, 1, 1.0, iv.ZeroList(gammas=()))


class TestCheckInverseTheta:
    def test_rational_k1(self, field_q, riemann_zeros_reference):
        rep = iv.check_inverse_theta(field_q, 1, 4.0, riemann_zeros_reference)
        assert rep.rel_error < 1e-6
        assert rep.zeros_used == 30

    def test_rational_k2_fixed_point(self, field_q, riemann_zeros_reference):
        rep = iv.check_inverse_theta(field_q, 2, 1.0, riemann_zeros_reference)
        assert rep.rel_error < 1e-12   # identical sides; double poles must stay finite

    def test_rational_k2(self, field_q, riemann_zeros_reference):
        rep = iv.check_inverse_theta(field_q, 2, 2.0, riemann_zeros_reference)
        assert rep.rel_error < 1e-5

    def test_quadratic_with_scanned_zeros(self, field_sqrt5, scanned_zeros_sqrt5):
        rep = iv.check_inverse_theta(field_sqrt5, 1, 2.0, scanned_zeros_sqrt5)
        assert rep.rel_error < 1e-5

    def test_zero_count_stability(self, field_q, riemann_zeros_reference):
        a = iv.check_inverse_theta(field_q, 1, 4.0, riemann_zeros_reference.head(15))
        b = iv.check_inverse_theta(field_q, 1, 4.0, riemann_zeros_reference)
        assert abs(a.residual - b.residual) < 1e-8


class TestHLR:
    def test_residual_small(self, riemann_zeros_reference):
        for x in (1.0, 4.0, math.pi ** 2):
            rep = iv.hlr_check(x, riemann_zeros_reference)
            assert rep.residual < 1e-4, x

    def test_symmetric_point(self, riemann_zeros_reference):
        # x = pi: the two exponential sums cancel termwise, so the residual
        # equals the standalone zero-term magnitude to near machine precision
        rep = iv.hlr_check(math.pi, riemann_zeros_reference)
        standalone = abs(iv.hlr_zero_term(math.pi, riemann_zeros_reference))
        assert abs(rep.residual - standalone) < 1e-8

    def test_domain(self, riemann_zeros_reference):
        with pytest.raises(DomainError):
            iv.hlr_check(-1.0, riemann_zeros_reference)

    def test_u_inverse_specialization(self, field_q, riemann_zeros_reference):
        # the remark's simplification: U_{Q,-1}(x) = 2 sum mu(n)/n e^{-pi x/n^2}
        # (+ half the zero sum), using sum mu(n)/n = 0
        x = 2.0
        u = iv.u_inverse(field_q, 1, x, riemann_zeros_reference, tol=1e-8)
        smoothed = iv.smoothed_mu_exp_sum(math.pi * x)
        zs, _ = iv.zero_sum(field_q, 1, x, riemann_zeros_reference)
        assert abs(u - (2.0 * smoothed + 0.5 * zs)) < 1e-4


class TestDGV:
    def test_trivial_fixed_point(self, field_sqrt5, scanned_zeros_sqrt5):
        rep = iv.dgv_check(field_sqrt5, 1.0, scanned_zeros_sqrt5)
        assert rep.residual == 0.0

    def test_quadratic(self, field_sqrt5, scanned_zeros_sqrt5):
        rep = iv.dgv_check(field_sqrt5, 4.0, scanned_zeros_sqrt5)
        assert rep.residual < 1e-5

    def test_rational_matches_hlr_content(self, field_q, riemann_zeros_reference):
        rep = iv.dgv_check(field_q, 4.0, riemann_zeros_reference)
        assert rep.residual < 1e-4

    def test_degree_guard(self, field_cubic7, riemann_zeros_reference):
        with pytest.raises(DomainError):
            iv.dgv_check(field_cubic7, 4.0, riemann_zeros_reference)


class TestInverseResidueReflection:
    def test_r1_equals_reflected_r0(self, field_sqrt5, field_cubic7):
        # Res_{s=1} Lambda^k(s) x^{-s/2} = -(1/sqrt(x)) R_0(1/x)
        for field, k in [(field_sqrt5, 1), (field_sqrt5, 2), (field_cubic7, 1)]:
            for x in (0.7, 2.0):
                lhs = iv.r1_inverse(field, k, x)
                rhs = -iv.r0_inverse(field, k, 1.0 / x) / cmath.sqrt(x)
                assert abs(lhs - rhs) < 1e-8 * max(1.0, abs(rhs)), (field.label, k, x)
