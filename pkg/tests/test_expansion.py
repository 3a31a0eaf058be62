import math
from fractions import Fraction

import pytest

from specexp import expansion as ex
from specexp import symcore as sc

R_MAIN, R_PLUS, R_MINUS = ex.R_MAIN, ex.R_PLUS, ex.R_MINUS
PAIRS = ((R_MAIN, 0), (R_PLUS, 2), (R_MINUS, 0))


class TestCrmDirect:
    def test_order_zero_main(self):
        terms = ex.crm_direct(R_MAIN, 0, 0)
        assert len(terms) == 1
        t = terms[0]
        assert t.sym == sc.DerivMonomial(-3) and t.scalar == 1 and t.letters == ()

    def test_odd_order_letters_all_odd(self):
        for r, m in PAIRS:
            for M in (1, 3):
                for t in ex.crm_direct(r, m, M):
                    assert sum(t.letters) % 2 == 1

    def test_enumeration_counts_bounded(self):
        # each term's composition data obeys N + 2n = M with k+p letters
        M = 2
        for t in ex.crm_direct(R_MINUS, 0, M):
            assert sum(t.letters) <= M
            assert len(t.letters) <= M

    def test_sym_poly_view(self):
        t = ex.crm_direct(R_MAIN, 0, 0)[0]
        assert t.sym_poly() == sc.SymPoly.b_power(-3)


class TestCrmBell:
    def test_trivial_plus(self):
        terms = ex.crm_bell(R_PLUS, 2, 0)
        assert len(terms) == 1
        assert terms[0].sym == sc.DerivMonomial(-5, ((1, 2),))
        assert terms[0].scalar == 1

    def test_trivial_minus(self):
        terms = ex.crm_bell(R_MINUS, 0, 0)
        assert len(terms) == 1 and terms[0].sym == sc.DerivMonomial(-1)

    def test_odd_order_rejected(self):
        with pytest.raises(ValueError):
            ex.crm_bell(R_MAIN, 0, 3)

    def test_route_equality_after_integration(self):
        for r, m in PAIRS:
            for order in (0, 2, 4):
                lhs = ex.integrate_bridge(ex.crm_direct(r, m, order))
                rhs = ex.integrate_bridge(ex.crm_bell(r, m, order))
                assert lhs == rhs, (r, m, order)


class TestIntegrateBridge:
    def test_empty_multiset_passthrough(self):
        term = ex.MomentTerm(sc.ExactScalar(Fraction(3, 7)), sc.DerivMonomial(-1), ())
        got = ex.integrate_bridge([term])
        assert got == sc.SymPoly.b_power(-1, Fraction(3, 7))

    def test_odd_moment_drops(self):
        term = ex.MomentTerm(sc.ExactScalar(0, 1), sc.DerivMonomial(0), (1,))
        assert ex.integrate_bridge([term]).is_zero()

    def test_pair_moment_scales(self):
        term = ex.MomentTerm(sc.ExactScalar(6), sc.DerivMonomial(-3), (1, 1))
        got = ex.integrate_bridge([term])
        assert got == sc.SymPoly.b_power(-3, Fraction(1, 2))  # 6 * 1/12

    def test_residual_sqrt2_raises(self):
        bogus = ex.MomentTerm(sc.ExactScalar(0, 1), sc.DerivMonomial(0), (1, 1))
        with pytest.raises(ex.ConsistencyError):
            ex.integrate_bridge([bogus])

    def test_odd_orders_integrate_to_zero(self):
        for r, m in PAIRS:
            for M in (1, 3, 5):
                assert ex.integrate_bridge(ex.crm_direct(r, m, M)).is_zero()


def expected_a2():
    return (
        sc.SymPoly(
            {sc.DerivMonomial(-5, ((1, 2),)): sc.ExactScalar(Fraction(3, 8))}
        )
        + sc.SymPoly(
            {sc.DerivMonomial(-5, (), ((2, 1),)): sc.ExactScalar(Fraction(-1, 8))}
        )
        + sc.SymPoly(
            {sc.DerivMonomial(-7, (), ((1, 2),)): sc.ExactScalar(Fraction(5, 32))}
        )
        + sc.SymPoly.b_power(-1, Fraction(-1, 4))
    )


class TestHeatCoefficients:
    def test_a0(self):
        assert ex.a2M(0) == sc.SymPoly.b_power(-3, Fraction(1, 2))

    def test_a2_closed_form(self):
        assert ex.a2M(1) == expected_a2()

    def test_coefficients_rational(self):
        for M in range(0, 4):
            assert ex.a2M(M).all_rational()

    def test_ab_weight_grading(self):
        for M in (1, 2, 3):
            weights = {mono.weight() for mono in ex.a2M(M).terms}
            assert weights <= {2 * M - 2, 2 * M}

    def test_a_form_grading(self):
        for M in (1, 2):
            aform = sc.to_a_form(ex.a2M(M))
            for (a_pow, dexp), _ in aform.terms.items():
                k0 = a_pow + 2 * M - 3
                total = k0 + sum(e for _, e in dexp)
                weighted = sum(i * e for i, e in dexp)
                assert k0 >= 0 and total == weighted and total in (2 * M - 2, 2 * M)

    def test_differentiation_commutes_on_a4(self):
        poly = ex.a2M(2)
        lhs = sc.to_a_form(sc.differentiate(poly))
        rhs = sc.to_a_form(poly).differentiate()
        assert lhs == rhs

    def test_a2_in_a_form(self):
        # a^2 a''/4 + a a'^2/4 - a/4
        want = sc.AFormPoly(
            {
                (2, ((2, 1),)): Fraction(1, 4),
                (1, ((1, 2),)): Fraction(1, 4),
                (1, ()): Fraction(-1, 4),
            }
        )
        assert sc.to_a_form(ex.a2M(1)) == want


class TestHeatTraceSeries:
    def test_empty_universe_a2(self):
        # symbolic substitution gives (H^3 t - H t)/4 for a(t) = H t
        for H, t in ((1.0, 2.0), (2.0, 2.0), (0.7, 1.3)):
            factor = ex.scale_factor("empty", H=H)
            rows = dict(ex.heat_trace_series(1, factor, t))
            assert abs(rows[-2] - (H**3 * t - H * t) / 4) < 1e-12

    def test_empty_universe_higher_vanish(self):
        for H in (1.0, 2.0):
            factor = ex.scale_factor("empty", H=H)
            rows = dict(ex.heat_trace_series(3, factor, 2.0))
            assert rows[0] == 0.0 and rows[2] == 0.0

    def test_inflation_a0_at_origin(self):
        factor = ex.scale_factor("inflation", H=1.0)
        assert abs(ex.heat_trace_series(0, factor, 0.0)[0][1] - 0.5) < 1e-14

    def test_inflation_a0_away_from_origin(self):
        # binding value is substitution into a_0 = a^3/2, i.e. exp(3Ht)/2
        factor = ex.scale_factor("inflation", H=1.0)
        got = ex.heat_trace_series(0, factor, 1.0)[0][1]
        assert abs(got - math.exp(3.0) / 2) < 1e-12

    def test_matter_a2(self):
        factor = ex.scale_factor("matter", H=1.0)
        got = dict(ex.heat_trace_series(1, factor, 1.0))[-2]
        want = 1.0 / 8.0 - (1.5) ** (2.0 / 3.0) / 4.0
        assert abs(got - want) < 1e-12

    def test_radiation_a2(self):
        factor = ex.scale_factor("radiation", H=1.0)
        got = dict(ex.heat_trace_series(1, factor, 1.0))[-2]
        assert abs(got + math.sqrt(2.0) / 4.0) < 1e-12

    def test_sphere_finite_inside_domain(self):
        factor = ex.scale_factor("sphere")
        rows = ex.heat_trace_series(2, factor, 1.0)
        assert all(math.isfinite(v) for _, v in rows)
        # a_4(sin t) = 11 sin^3 t / 120
        assert abs(rows[2][1] - 11 * math.sin(1.0) ** 3 / 120) < 1e-12

    def test_singularity_signal(self):
        # a_6's a-form carries negative powers of a, so a(t) = 0 must signal
        factor = ex.scale_factor("empty", H=1.0)
        with pytest.raises(ZeroDivisionError):
            ex.heat_trace_series(3, factor, 0.0)

    def test_custom_family(self):
        inflation_like = ex.scale_factor(
            "custom", fn=lambda i, t: math.exp(t)
        )
        ref = ex.scale_factor("inflation", H=1.0)
        a = ex.heat_trace_series(2, inflation_like, 0.7)
        b = ex.heat_trace_series(2, ref, 0.7)
        for (pa, va), (pb, vb) in zip(a, b):
            assert pa == pb and abs(va - vb) < 1e-12


class TestRescaling:
    def test_identity(self):
        assert ex.rescale_uv(2.5, -1.0, 1) == (2.5, -1.0)

    def test_definition(self):
        assert ex.rescale_uv(1, 1, 2) == (Fraction(1, 4), Fraction(1, 2))

    def test_positive_factor_required(self):
        with pytest.raises(ValueError):
            ex.rescale_uv(1.0, 1.0, 0)

    def test_scaling_exponent_law(self):
        for r, m in PAIRS:
            for M in range(0, 5):
                assert ex.verify_uv_scaling(r, m, M)

    def test_c0_main_scaling_example(self):
        # C^(-3/2,0)_0 = B^(-3/2) picks up a^3 under the rescaling
        (term,) = ex.crm_direct(R_MAIN, 0, 0)
        assert ex.term_scaling_exponent(term) == 3
