#include <cmath>

#include "doctest.h"
#include "qsu11/smoother.hpp"

using namespace qsu;

TEST_CASE("paths")
{
    const auto v = ContourPath::vertical(0.5, 3.0);
    CHECK(v.point(1.0) == cplx{0.5, 1.0});
    CHECK(v.derivative(0.7) == cplx{0.0, 1.0});
    const auto w = ContourPath::perturbed(0.5, 0.05, 3.0);
    CHECK(std::abs(w.point(1.0) - cplx{0.5 + 0.05 * std::sin(1.0), 1.0}) < 1e-16);
    CHECK(std::abs(w.derivative(1.0) - cplx{0.05 * std::cos(1.0), 1.0}) < 1e-16);
}

TEST_CASE("Gaussian moments in closed form")
{
    const QBase b(0.5);
    for (int k : {2, 5}) {
        const double c = 1.0 - 1.0 / k;
        for (double n : {4.0, 64.0}) {
            const auto quad = QuadratureSpec::for_run(b, n, 1e-10);
            const auto path = ContourPath::vertical(c, quad.half_span);
            const auto one = gaussian_smooth([](cplx) { return cplx{1.0, 0.0}; }, k, n, path, quad);
            CHECK(std::abs(one.value - 1.0) < 1e-12);
            CHECK(std::abs(one.mass - 1.0) < 1e-12);
            // Along the line the mean is c.
            const auto lin = gaussian_smooth([](cplx z) { return z; }, k, n, path, quad);
            CHECK(std::abs(lin.value - c) < 1e-12);
            // exp(a z) averages to exp(a c - a^2/(4n)) on the vertical line.
            for (cplx a : {cplx{1.0, 0.0}, cplx{0.5, 2.0}}) {
                const auto e = gaussian_smooth([a](cplx z) { return std::exp(a * z); }, k, n, path, quad);
                const cplx expect = std::exp(a * c - a * a / (4.0 * n));
                CHECK(std::abs(e.value - expect) < 1e-10);
                const auto wiggle = ContourPath::perturbed(c, 0.05, quad.half_span);
                const auto e2 = gaussian_smooth([a](cplx z) { return std::exp(a * z); }, k, n, wiggle, quad);
                CHECK(std::abs(e2.value - expect) < 1e-9);
            }
        }
    }
}

TEST_CASE("smoothing of the spherical coefficients")
{
    const QBase b(0.5);
    for (int k : {2, 5}) {
        const double c = 1.0 - 1.0 / k;
        for (long e : {0L, -1L, -2L, -4L}) {
            const auto p0 = IqPoint::positive(e);
            const cplx target = spherical_az(b, SpectralParam(b, c), p0).value;
            double prev = 1e300;
            for (double n : {4.0, 16.0, 64.0, 256.0}) {
                const auto quad = QuadratureSpec::for_run(b, n, 1e-8);
                const auto r = gaussian_smooth(b, p0, k, n, ContourPath::vertical(c, quad.half_span), quad);
                const double d = std::abs(r.value - target);
                CHECK(d <= prev + 1e-13);
                CHECK(std::abs(r.mass - 1.0) < 1e-8);
                prev = d;
            }
            CHECK(prev < 1e-2);
            const auto quad = QuadratureSpec::for_run(b, 16.0, 1e-8);
            const double pi = path_independence(b, p0, k, 16.0, ContourPath::vertical(c, quad.half_span),
                                                ContourPath::perturbed(c, 0.05, quad.half_span), quad);
            CHECK(pi < 1e-6);
        }
    }
}

TEST_CASE("smoothing is bit-deterministic")
{
    const QBase b(0.5);
    const auto quad = QuadratureSpec::for_run(b, 64.0, 1e-8);
    const auto path = ContourPath::vertical(0.5, quad.half_span);
    const auto r1 = gaussian_smooth(b, IqPoint::positive(-2), 2, 64.0, path, quad);
    const auto r2 = gaussian_smooth(b, IqPoint::positive(-2), 2, 64.0, path, quad);
    CHECK(r1.value == r2.value);
    CHECK(r1.mass == r2.mass);
    CHECK(r1.nodes == r2.nodes);
}

TEST_CASE("doubled nodes agree within tol_quad")
{
    const QBase b(0.5);
    auto quad = QuadratureSpec::for_run(b, 16.0, 1e-8);
    const auto path = ContourPath::vertical(0.5, quad.half_span);
    const auto r1 = gaussian_smooth(b, IqPoint::positive(0), 2, 16.0, path, quad);
    quad.nodes_per_unit *= 2;
    const auto r2 = gaussian_smooth(b, IqPoint::positive(0), 2, 16.0, path, quad);
    CHECK(std::abs(r1.value - r2.value) < 1e-8);
}

TEST_CASE("errors: domain and resolution")
{
    const QBase b(0.5);
    const auto quad = QuadratureSpec::for_run(b, 16.0, 1e-8);
    // Case-2 point on a path crossing Re z = 1.
    try {
        gaussian_smooth(b, IqPoint::positive(2), 2, 16.0, ContourPath::vertical(1.2, quad.half_span), quad);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PathOutsideDomain);
    }
    // Inside the strip the Case-2 point is fine.
    CHECK_NOTHROW(gaussian_smooth(b, IqPoint::positive(2), 2, 16.0, ContourPath::vertical(0.5, quad.half_span), quad));

    QuadratureSpec coarse = QuadratureSpec::for_run(b, 256.0, 1e-8, 1);
    try {
        gaussian_smooth([](cplx) { return cplx{1.0, 0.0}; }, 2, 256.0, ContourPath::vertical(0.5, coarse.half_span),
                        coarse);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::QuadratureUnderResolved);
    }
}
