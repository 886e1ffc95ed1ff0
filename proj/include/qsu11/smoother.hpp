#pragma once

#include <functional>

#include "qsu11/qcalculus.hpp"
#include "qsu11/su11core.hpp"

namespace qsu {

/// s -> anchor + delta sin(s) + i s on s in [-half_span, half_span]; delta = 0
/// for the vertical line.
struct ContourPath {
    enum class Kind { VerticalLine, Perturbed };

    Kind kind = Kind::VerticalLine;
    double anchor = 0.0;
    double wiggle_amplitude = 0.0;
    double half_span = 1.0;

    static ContourPath vertical(double anchor, double half_span);
    static ContourPath perturbed(double anchor, double delta, double half_span);

    cplx point(double s) const;
    cplx derivative(double s) const;
};

struct QuadratureSpec {
    int nodes_per_unit = 64;
    double half_span = 1.0;
    double tol_quad = 1e-8;

    /// Half-span sqrt(ln(4/tol_quad)/n) + 2 pi/|log q|: Gaussian tail below
    /// tol_quad/2 plus one period of lambda.
    static QuadratureSpec for_run(const QBase& base, double n, double tol_quad, int nodes_per_unit = 64);
};

struct SmoothResult {
    cplx value;
    cplx mass;  // the weight integrated alone
    std::size_t nodes = 0;
};

using Integrand = std::function<cplx(cplx z)>;

/// sqrt(n/pi) * integral over the path of the Gaussian centred at c = 1 - 1/k
/// times f(z). The weight is taken as -i e^{n (z - c)^2}, which is entire and
/// on a vertical line reduces to e^{-n s^2} ds, so its total mass is 1.
/// Composite trapezoid rule with a node-doubling check against tol_quad.
SmoothResult gaussian_smooth(const Integrand& f, int k, double n, const ContourPath& path, const QuadratureSpec& quad);

/// The canonical run with f = a_z(p0). Paths for points other than +q^k, k <= 0
/// must keep 0 < Re z < 1, where a_z(p0) has no poles.
SmoothResult gaussian_smooth(const QBase& base, const IqPoint& p0, int k, double n, const ContourPath& path,
                             const QuadratureSpec& quad);

double path_independence(const QBase& base, const IqPoint& p0, int k, double n, const ContourPath& path_a,
                         const ContourPath& path_b, const QuadratureSpec& quad);

}  // namespace qsu
