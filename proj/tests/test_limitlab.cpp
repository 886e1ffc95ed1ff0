#include <cmath>
#include <vector>

#include "doctest.h"
#include "qsu11/limitlab.hpp"

using namespace qsu;

namespace {

// (q/lambda, q/lambda; q^2)_k / (1/lambda^2; q^2)_k factor by factor.
cplx naive_b1(double q, cplx lambda, long k)
{
    cplx num = 1.0, den = 1.0;
    double b = 1.0;
    for (long i = 0; i < k; ++i) {
        num *= (1.0 - q / lambda * b) * (1.0 - q / lambda * b);
        den *= 1.0 - b / (lambda * lambda);
        b *= q * q;
    }
    return num / den;
}

}  // namespace

TEST_CASE("stable ratio equals the naive product away from lambda = q")
{
    const QBase b(0.5);
    for (long k : {1L, 2L, 3L, 4L, 10L}) {
        for (cplx lam : {cplx{0.6, 0.0}, cplx{0.7, 0.3}, cplx{1.4, -0.2}}) {
            CHECK(std::abs(lemma_b1_ratio(b, lam, B1Order::finite(k)).value - naive_b1(0.5, lam, k)) < 1e-12);
        }
    }
    // Infinite order versus a long finite product.
    const cplx lam{0.6, 0.1};
    const auto inf = lemma_b1_ratio(b, lam, B1Order::infinity());
    CHECK(std::abs(inf.value - naive_b1(0.5, lam, 80)) < 1e-12);
    CHECK(inf.tail_factor_bound < 1e-12);
    CHECK_THROWS_AS(B1Order::finite(0), Error);
}

TEST_CASE("stable ratio vanishes as lambda -> q")
{
    const QBase b(0.5);
    for (const auto order : {B1Order::finite(1), B1Order::finite(3), B1Order::finite(10), B1Order::infinity()}) {
        double prev = 1e300;
        for (int j = 1; j <= 6; ++j) {
            const double m = std::abs(lemma_b1_ratio(b, 0.5 * (1.0 + std::pow(10.0, -j)), order).value);
            CHECK(m < prev);
            prev = m;
        }
        CHECK(prev < 1e-5);
        // Exactly at lambda = q the reduced pair is 0.
        CHECK(std::abs(lemma_b1_ratio(b, 0.5, order).value) == 0.0);
    }
}

TEST_CASE("limit sweeps record monotonicity and thresholds")
{
    const QBase b(0.5);
    SweepFixed fixed;
    fixed.p0 = IqPoint::positive(-1);
    const std::vector<cplx> zs = {0.9, 0.99, 0.999};
    const auto r = limit_sweep("case1", Family::SphericalCase1, b, fixed, zs, 1.0, 5e-3, true);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.monotone_deviation);
    CHECK(r.strictly_decreasing);
    CHECK(r.pass);
    for (const auto& row : r.rows) {
        CHECK(row.error.empty());
        CHECK(row.deviation == doctest::Approx(std::abs(row.value - 1.0)).epsilon(1e-15));
    }

    // Reversed approach breaks monotonicity.
    const std::vector<cplx> back = {0.999, 0.99, 0.9};
    const auto rb = limit_sweep("case1", Family::SphericalCase1, b, fixed, back, 1.0, 1.0, true);
    CHECK_FALSE(rb.monotone_deviation);
    CHECK_FALSE(rb.pass);

    // Evaluation failures become row errors, not exceptions.
    fixed.p0 = IqPoint::positive(3);
    const std::vector<cplx> bad = {0.9, 1.0};
    const auto re = limit_sweep("case2", Family::SphericalCase2, b, fixed, bad, 1.0, 1.0, false);
    CHECK(re.rows[0].error.empty());
    CHECK_FALSE(re.rows[1].error.empty());
    CHECK_FALSE(re.pass);
}

TEST_CASE("coamenability sweep families")
{
    const QBase b(0.5);
    SweepFixed fixed;
    fixed.m = 1;
    fixed.lambda = std::polar(1.0, 0.4);
    const std::vector<cplx> js = {2.0, 4.0, 8.0, 16.0};
    const auto r = limit_sweep("coamen", Family::Coamen, b, fixed, js, 1.0, 1e-6, true);
    CHECK(r.strictly_decreasing);
    CHECK(r.pass);
    const auto direct = coamen_coeff(b, 1, fixed.lambda, IqPoint::positive(-8), CoamenForm::Raw);
    CHECK(std::abs(r.rows[2].value - direct.value) < 1e-13);

    const std::vector<cplx> ns = {5.0, 10.0, 20.0};
    const auto a = limit_sweep("avg", Family::AveragedCoamen, b, fixed, ns, 1.0, 0.15, true);
    CHECK(a.strictly_decreasing);
    CHECK(a.pass);
    // Floor from the 2(n-|m|)+1 of 2n+1 terms: deviation stays near 2|m|/(2n+1).
    CHECK(a.rows[2].deviation == doctest::Approx(2.0 / 41.0).epsilon(1e-2));
}

TEST_CASE("uniform sup gap")
{
    const QBase b(0.5);
    CHECK(uniform_sup_gap(b, SpectralParam(b, 1.0)) == 0.0);
    const double g9 = uniform_sup_gap(b, SpectralParam(b, 0.9));
    const double g999 = uniform_sup_gap(b, SpectralParam(b, 0.999));
    CHECK(g999 < g9);
    CHECK(g999 < 5e-3);
    // The sup is attained somewhere on the window.
    double best = 0.0;
    for (long k = 0; k >= -24; --k)
        best = std::max(best, std::abs(spherical_az(b, SpectralParam(b, 0.999), IqPoint::positive(k)).value - 1.0));
    CHECK(g999 == best);
}

TEST_CASE("symbols and the approximate-identity gap")
{
    const QBase b(0.5);
    const auto zero = Symbol::zero();
    CHECK(approx_identity_gap(b, SpectralParam(b, 0.9), zero).gap_total == 0.0);

    const auto sym = Symbol::min_one_abs();
    CHECK(sym.decay_at_zero);
    CHECK(decay_claim_holds(sym, b, 24));
    CHECK(decay_claim_holds(Symbol::constant_one(), b, 24));  // makes no claim
    Symbol liar = Symbol::constant_one();
    liar.decay_at_zero = true;
    CHECK_FALSE(decay_claim_holds(liar, b, 24));

    const auto g9 = approx_identity_gap(b, SpectralParam(b, 0.9), sym);
    const auto g99 = approx_identity_gap(b, SpectralParam(b, 0.99), sym);
    const auto g999 = approx_identity_gap(b, SpectralParam(b, 0.999), sym);
    CHECK(g99.gap_total < g9.gap_total);
    CHECK(g999.gap_total < 0.02);
    CHECK(g999.gap_total == std::max(g999.gap_p0, g999.gap_p1));

    // An indicator only sees its own point.
    const auto p = IqPoint::negative(2);
    const auto ind = Symbol::indicator(p);
    const auto gi = approx_identity_gap(b, SpectralParam(b, 0.9), ind);
    const double at_p = std::abs(spherical_az(b, SpectralParam(b, 0.9), p).value - 1.0);
    CHECK(gi.gap_total == doctest::Approx(at_p).epsilon(1e-14));
}
