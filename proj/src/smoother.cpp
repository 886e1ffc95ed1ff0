#include "qsu11/smoother.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qsu {

ContourPath ContourPath::vertical(double anchor, double half_span)
{
    return ContourPath{Kind::VerticalLine, anchor, 0.0, half_span};
}

ContourPath ContourPath::perturbed(double anchor, double delta, double half_span)
{
    if (delta < 0.0) throw Error(ErrorKind::InvalidArgument, "wiggle amplitude must be nonnegative");
    return ContourPath{Kind::Perturbed, anchor, delta, half_span};
}

cplx ContourPath::point(double s) const
{
    const double wiggle = kind == Kind::Perturbed ? wiggle_amplitude * std::sin(s) : 0.0;
    return {anchor + wiggle, s};
}

cplx ContourPath::derivative(double s) const
{
    const double wiggle = kind == Kind::Perturbed ? wiggle_amplitude * std::cos(s) : 0.0;
    return {wiggle, 1.0};
}

QuadratureSpec QuadratureSpec::for_run(const QBase& base, double n, double tol_quad, int nodes_per_unit)
{
    if (!(n > 0.0) || !(tol_quad > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "n and tol_quad must be positive");
    }
    QuadratureSpec spec;
    spec.nodes_per_unit = nodes_per_unit;
    spec.tol_quad = tol_quad;
    spec.half_span = std::sqrt(std::log(4.0 / tol_quad) / n) + 2.0 * std::numbers::pi / std::abs(base.log_q());
    return spec;
}

SmoothResult gaussian_smooth(const Integrand& f, int k, double n, const ContourPath& path, const QuadratureSpec& quad)
{
    if (k < 2) throw Error(ErrorKind::InvalidArgument, "k must be at least 2");
    if (!(n > 0.0)) throw Error(ErrorKind::InvalidArgument, "n must be positive");
    if (quad.nodes_per_unit < 1 || !(quad.half_span > 0.0) || !(quad.tol_quad > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "invalid quadrature spec");
    }
    if (path.half_span < quad.half_span) {
        throw Error(ErrorKind::InvalidArgument, "path is shorter than the quadrature span");
    }

    const double centre = 1.0 - 1.0 / k;
    const double norm = std::sqrt(n / std::numbers::pi);
    const long half_nodes = static_cast<long>(std::ceil(quad.half_span * quad.nodes_per_unit));
    const double h = quad.half_span / static_cast<double>(half_nodes);

    struct Sample {
        cplx weighted;
        cplx weight;
    };
    auto sample = [&](double s) {
        const cplx z = path.point(s);
        const cplx d = z - centre;
        const cplx w = norm * std::exp(n * d * d) * cplx{0.0, -1.0} * path.derivative(s);
        return Sample{w * f(z), w};
    };

    // Coarse trapezoid on j h, then the midpoints for the halved step.
    cplx coarse{}, coarse_mass{};
    for (long j = -half_nodes; j <= half_nodes; ++j) {
        const double end_weight = (j == -half_nodes || j == half_nodes) ? 0.5 : 1.0;
        const auto smp = sample(static_cast<double>(j) * h);
        coarse += end_weight * smp.weighted;
        coarse_mass += end_weight * smp.weight;
    }
    coarse *= h;
    coarse_mass *= h;

    cplx mids{}, mids_mass{};
    for (long j = -half_nodes; j < half_nodes; ++j) {
        const auto smp = sample((static_cast<double>(j) + 0.5) * h);
        mids += smp.weighted;
        mids_mass += smp.weight;
    }
    const cplx fine = 0.5 * coarse + 0.5 * h * mids;
    const cplx fine_mass = 0.5 * coarse_mass + 0.5 * h * mids_mass;

    if (std::abs(fine - coarse) > quad.tol_quad) {
        throw Error(ErrorKind::QuadratureUnderResolved,
                    "node doubling changed the value by " + std::to_string(std::abs(fine - coarse)));
    }

    SmoothResult out;
    out.value = fine;
    out.mass = fine_mass;
    out.nodes = static_cast<std::size_t>(4 * half_nodes + 1);
    return out;
}

SmoothResult gaussian_smooth(const QBase& base, const IqPoint& p0, int k, double n, const ContourPath& path,
                             const QuadratureSpec& quad)
{
    const bool entire = classify(p0) == SphericalCase::PositiveLarge;
    const Integrand f = [&](cplx z) {
        if (!entire && !(z.real() > 0.0 && z.real() < 1.0)) {
            throw Error(ErrorKind::PathOutsideDomain, "node leaves the strip 0 < Re z < 1");
        }
        try {
            return spherical_az(base, SpectralParam(base, z), p0).value;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::PoleGuard) throw Error(ErrorKind::PathOutsideDomain, e.what());
            throw;
        }
    };
    return gaussian_smooth(f, k, n, path, quad);
}

double path_independence(const QBase& base, const IqPoint& p0, int k, double n, const ContourPath& path_a,
                         const ContourPath& path_b, const QuadratureSpec& quad)
{
    const auto a = gaussian_smooth(base, p0, k, n, path_a, quad);
    const auto b = gaussian_smooth(base, p0, k, n, path_b, quad);
    return std::abs(a.value - b.value);
}

}  // namespace qsu
