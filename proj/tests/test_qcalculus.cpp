#include <cmath>
#include <vector>

#include "doctest.h"
#include "qsu11/qcalculus.hpp"

using namespace qsu;

namespace {

// (q; q)_inf from Euler's pentagonal number theorem.
double euler_pentagonal(double q)
{
    double sum = 1.0;
    for (long k = 1; k < 60; ++k) {
        const double sign = (k % 2) ? -1.0 : 1.0;
        sum += sign * (std::pow(q, k * (3 * k - 1) / 2.0) + std::pow(q, k * (3 * k + 1) / 2.0));
    }
    return sum;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("QBase integer powers and c_q")
{
    const QBase b(0.5);
    CHECK(b.pow(0) == 1.0);
    CHECK(b.pow(3) == 0.125);
    CHECK(b.pow(-4) == 16.0);
    CHECK(b.log_q() == doctest::Approx(std::log(0.5)).epsilon(1e-15));
    for (double q : {0.3, 0.5, 0.8}) {
        const QBase qb(q);
        const double q2 = q * q;
        const cplx den = std::sqrt(2.0) * q * qpoch_infinite(q2, q2).value * qpoch_infinite(-q2, q2).value;
        CHECK(rel(1.0 / den, qb.cq()) < 1e-14);
    }
    CHECK_THROWS_AS(QBase(0.0), Error);
    CHECK_THROWS_AS(QBase(1.0), Error);
}

TEST_CASE("finite and signed q-Pochhammer against hand products")
{
    CHECK(std::abs(qpoch_finite(0.3, 0.5, 0) - 1.0) == 0.0);
    CHECK(rel(qpoch_finite(0.3, 0.5, 3), 0.7 * 0.85 * 0.925) < 1e-15);
    // (a; b)_{-2} = 1 / ((1 - a/b)(1 - a/b^2))
    const cplx a{0.3, 0.2};
    CHECK(rel(qpoch_signed(a, 0.5, -2), 1.0 / ((1.0 - a / 0.5) * (1.0 - a / 0.25))) < 1e-15);
    CHECK(rel(qpoch_signed(a, 0.5, 2), (1.0 - a) * (1.0 - a * 0.5)) < 1e-15);
}

TEST_CASE("signed q-Pochhammer splits additively in the length")
{
    const double b = 0.6;
    const cplx a{0.7, -0.4};
    for (long n = -4; n <= 4; ++n) {
        for (long m = -4; m <= 4; ++m) {
            const cplx lhs = qpoch_signed(a, b, n + m);
            const cplx rhs = qpoch_signed(a, b, n) * qpoch_signed(a * std::pow(b, n), b, m);
            CHECK(rel(lhs, rhs) < 1e-13);
        }
    }
}

TEST_CASE("infinite product matches the pentagonal series")
{
    for (double q : {0.1, 0.3, 0.5, 0.8}) {
        const auto p = qpoch_infinite(q, q);
        CHECK(rel(p.value, euler_pentagonal(q)) < 1e-13);
    }
    const auto vanishing = qpoch_infinite(4.0, 0.5);  // 1 - 4 * 0.5^2 = 0
    CHECK(vanishing.degenerate_zero);
    CHECK(vanishing.value == cplx{});
}

TEST_CASE("doubling identity (-1; b)_inf = 2 (-b; b)_inf")
{
    for (double b : {0.09, 0.25, 0.64}) {
        CHECK(rel(qpoch_infinite(-1.0, b).value, 2.0 * qpoch_infinite(-b, b).value) < 1e-14);
    }
}

TEST_CASE("scaled products survive ranges that overflow doubles")
{
    ScaledComplex x(1e200);
    x *= ScaledComplex(1e200);
    x *= ScaledComplex(1e200);
    x /= ScaledComplex(1e300);
    x /= ScaledComplex(1e250);
    CHECK(rel(x.value(), 1e50) < 1e-14);
    CHECK(ScaledComplex::from_log2(2000.0).log2_abs() == doctest::Approx(2000.0));
    CHECK(ScaledComplex(0.0).is_zero());
}

TEST_CASE("product ratio and pole guard")
{
    const cplx num[] = {0.3, cplx{0.1, 0.4}};
    const cplx den[] = {-0.2};
    const auto r = qpoch_ratio(num, den, 0.5);
    const cplx expect =
        qpoch_infinite(0.3, 0.5).value * qpoch_infinite(cplx{0.1, 0.4}, 0.5).value / qpoch_infinite(-0.2, 0.5).value;
    CHECK(rel(r.value.value(), expect) < 1e-14);
    const cplx bad[] = {4.0};  // 1 - 4 * 0.5^2 = 0
    CHECK_THROWS_AS(qpoch_ratio(num, bad, 0.5), Error);
}

TEST_CASE("theta identity residuals")
{
    for (double b : {0.3, 0.5, 0.8}) {
        for (long k = -5; k <= 5; ++k) {
            const auto t = theta_pair(cplx{0.6, 0.9}, k, b);
            CHECK(t.residual < 1e-12);
            CHECK_FALSE(t.absolute_mode);
        }
    }
    const auto on_lattice = theta_pair(0.125, 2, 0.5);  // a = b^3: both sides vanish
    CHECK(on_lattice.absolute_mode);
    CHECK(on_lattice.residual < 1e-12);
    CHECK_THROWS_AS(theta_pair(0.0, 1, 0.5), Error);
}

TEST_CASE("terminating index")
{
    CHECK(terminating_index(std::pow(0.5, -3), 0.5) == 3);
    CHECK(terminating_index(1.0, 0.5) == 0);
    CHECK(terminating_index(cplx{0.3, 0.1}, 0.5) == -1);
}

TEST_CASE("2phi1 with b = c is the q-binomial theorem")
{
    const double base = 0.5;
    for (cplx z : {cplx{0.3, 0.0}, cplx{-0.6, 0.2}, cplx{0.1, -0.8}}) {
        const cplx a{0.4, -0.7};
        const cplx b{1.3, 0.2};
        const auto s = phi21_direct(a, b, b, base, z);
        const cplx expect = qpoch_infinite(a * z, base).value / qpoch_infinite(z, base).value;
        CHECK(rel(s.value, expect) < 1e-13);
        CHECK(s.tail_bound <= 1e-15 * std::abs(s.value));
    }
}

TEST_CASE("2phi1 at z = c/(ab) is the q-Gauss sum")
{
    const double base = 0.4;
    const cplx a{2.0, 0.5}, b{1.5, -1.0}, c{0.3, 0.1};
    const cplx z = c / (a * b);
    REQUIRE(std::abs(z) < 1.0);
    const auto s = phi21_direct(a, b, c, base, z);
    const cplx num[] = {c / a, c / b};
    const cplx den[] = {c, z};
    const cplx expect = qpoch_ratio(num, den, base).value.value();
    CHECK(rel(s.value, expect) < 1e-13);
}

TEST_CASE("terminating 2phi1 is the q-Chu-Vandermonde sum")
{
    const double base = 0.5;
    const cplx b{0.7, 0.3}, c{0.2, -0.1};
    for (long n = 0; n <= 6; ++n) {
        const auto s = phi21_direct(std::pow(base, -n), b, c, base, base);
        const cplx expect = qpoch_finite(c / b, base, n) / qpoch_finite(c, base, n) * std::pow(b, static_cast<double>(n));
        // Error measured against the sum of |terms| (the sum cancels).
        double mass = 0.0;
        cplx t = 1.0;
        for (long k = 0; k <= n; ++k) {
            mass += std::abs(t);
            const double bk = std::pow(base, k);
            t *= (1.0 - std::pow(base, -n) * bk) * (1.0 - b * bk) / ((1.0 - c * bk) * (1.0 - base * bk)) * base;
        }
        CHECK(std::abs(s.value - expect) < 1e-14 * mass);
        CHECK(s.terms_used == static_cast<std::size_t>(n + 1));
        CHECK(s.tail_bound == 0.0);
    }
    // Terminating before the pole in c is fine; a pole reached first is not.
    CHECK_NOTHROW(phi21_direct(std::pow(base, -1), 0.3, std::pow(base, -3), base, 0.5));
    CHECK_THROWS_AS(phi21_direct(0.3, 0.4, std::pow(base, -2), base, 0.5), Error);
    CHECK_THROWS_AS(phi21_direct(0.3, 0.4, 0.2, base, 1.2), Error);
}

TEST_CASE("two-term continuation agrees with direct summation in the overlap")
{
    const QBase b(0.5);
    const double q = b.q(), q2 = b.q2();
    for (double th : {0.3, 1.1, 2.0}) {
        for (double r : {0.3, 0.5, 0.7}) {
            const cplx lambda = std::polar(1.0, th);
            const cplx kappa = std::polar(r, 0.4 * th);
            const auto h = heine_terms(lambda, kappa, b);
            CHECK(h.total.value == h.term_a + h.term_b);
            const auto d = phi21_direct(q / lambda, lambda * q, q2, q2, -q2 / kappa);
            CHECK(std::abs(h.total.value - d.value) < 1e-12);
        }
    }
    CHECK_THROWS_AS(heine_terms(0.0, 0.3, b), Error);
    CHECK_THROWS_AS(heine_terms(cplx{0.0, 1.0}, 1.2, b), Error);
    CHECK_THROWS_AS(heine_terms(q, 0.3, b), Error);  // lambda^2 = q^2
}

TEST_CASE("q-difference continuation agrees with the two-term formula outside the disc")
{
    const QBase b(0.5);
    const double q = b.q(), q2 = b.q2();
    for (double th : {0.0, 0.4, 1.7}) {
        for (long j = 1; j <= 8; ++j) {
            const cplx lambda = std::polar(0.9, th);
            const double kappa = b.pow(2 * j);
            const auto rec = phi21_analytic(q / lambda, lambda * q, q2, q2, -q2 / kappa);
            const auto heine = phi21_continued(lambda, kappa, b);
            const double scale = std::max(1.0, std::abs(heine.value));
            CHECK(std::abs(rec.value - heine.value) / scale < 1e-11);
            CHECK(std::abs(rec.value - heine.value) <= rec.tail_bound + heine.tail_bound + 1e-13 * scale);
        }
    }
}
