#include "qsu11/limitlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qsu {

B1Order B1Order::finite(long k)
{
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "B1 order must be a positive integer");
    return B1Order{k, false};
}

B1Ratio lemma_b1_ratio(const QBase& base, cplx lambda, B1Order order, long trunc_K)
{
    if (lambda == cplx{}) throw Error(ErrorKind::InvalidArgument, "lambda must be nonzero");
    if (order.infinite && trunc_K < 2) throw Error(ErrorKind::InvalidArgument, "trunc_K must be at least 2");

    const double q2 = base.q2();
    const cplx u = base.q() / lambda;  // numerator parameter
    const cplx v = 1.0 / (lambda * lambda);
    const long k = order.infinite ? trunc_K : order.k;

    auto guarded = [](cplx d, long i) {
        if (std::abs(d) < kPoleGuard) {
            throw Error(ErrorKind::PoleGuard, "denominator factor " + std::to_string(i) + " vanishes");
        }
        return d;
    };

    B1Ratio out;
    if (k == 1) {
        out.value = (1.0 - u) * (1.0 - u) / guarded(1.0 - v, 0);
        return out;
    }

    out.value = (1.0 - u) / guarded(1.0 + u, 1);
    out.value /= guarded(1.0 - v, 0);
    double qi = q2;  // q^{2i}
    for (long i = 1; i < k; ++i) {
        const cplx f = 1.0 - u * qi;
        out.value *= f * f;
        if (i >= 2) out.value /= guarded(1.0 - v * qi, i);
        qi *= q2;
    }

    if (order.infinite) {
        const double vm = std::abs(v) * qi;
        if (vm >= 1.0) {
            out.tail_factor_bound = std::numeric_limits<double>::infinity();
        } else {
            out.tail_factor_bound = std::expm1((2.0 * std::abs(u) + std::abs(v) / (1.0 - vm)) * qi / (1.0 - q2));
        }
    }
    return out;
}

std::string_view to_string(Family family) noexcept
{
    switch (family) {
    case Family::SphericalCase1: return "spherical_case1";
    case Family::SphericalCase2: return "spherical_case2";
    case Family::SphericalCase3: return "spherical_case3";
    case Family::Coamen: return "coamen";
    case Family::AveragedCoamen: return "averaged_coamen";
    case Family::B1Ratio: return "b1_ratio";
    }
    return "unknown";
}

namespace {

SphericalCase expected_case(Family family)
{
    switch (family) {
    case Family::SphericalCase1: return SphericalCase::PositiveLarge;
    case Family::SphericalCase2: return SphericalCase::PositiveSmall;
    default: return SphericalCase::Negative;
    }
}

SeriesEval evaluate(Family family, const QBase& base, const SweepFixed& fixed, cplx param)
{
    switch (family) {
    case Family::SphericalCase1:
    case Family::SphericalCase2:
    case Family::SphericalCase3:
        if (classify(fixed.p0) != expected_case(family)) {
            throw Error(ErrorKind::InvalidArgument, "p0 " + fixed.p0.label() + " does not belong to this case");
        }
        return spherical_az(base, SpectralParam(base, param), fixed.p0, fixed.series);
    case Family::Coamen: {
        const long j = std::lround(param.real());
        return coamen_coeff(base, fixed.m, fixed.lambda, IqPoint::positive(-j), CoamenForm::Simplified, fixed.series);
    }
    case Family::AveragedCoamen: {
        const long n = std::lround(param.real());
        return averaged_coamen(base, n, IqPoint::positive(fixed.p1_per_n * n), fixed.m, fixed.lambda, fixed.series);
    }
    case Family::B1Ratio: {
        const auto r = lemma_b1_ratio(base, param, fixed.b1);
        SeriesEval out;
        out.value = r.value;
        out.terms_used = 1;
        out.tail_bound = std::abs(r.value) * r.tail_factor_bound;
        return out;
    }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown family");
}

}  // namespace

SweepReport limit_sweep(std::string label, Family family, const QBase& base, const SweepFixed& fixed,
                        std::span<const cplx> approach, cplx target, double threshold, bool require_monotone)
{
    if (approach.empty()) throw Error(ErrorKind::InvalidArgument, "approach sequence is empty");

    SweepReport report;
    report.label = std::move(label);
    report.family = family;
    report.threshold = threshold;
    report.require_monotone = require_monotone;

    bool any_error = false;
    for (const cplx param : approach) {
        SweepRow row;
        row.param = param;
        try {
            const auto v = evaluate(family, base, fixed, param);
            row.value = v.value;
            row.tail_bound = v.tail_bound;
            row.deviation = std::abs(v.value - target);
        } catch (const Error& e) {
            row.error = e.what();
            row.deviation = std::numeric_limits<double>::infinity();
            any_error = true;
        }
        report.rows.push_back(std::move(row));
    }

    report.monotone_deviation = true;
    report.strictly_decreasing = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const double prev = report.rows[i - 1].deviation;
        const double cur = report.rows[i].deviation;
        if (!(cur <= prev + kMonotoneSlack)) report.monotone_deviation = false;
        if (!(cur < prev)) report.strictly_decreasing = false;
    }

    report.pass = !any_error && report.rows.back().deviation < threshold &&
                  (!require_monotone || report.monotone_deviation);
    return report;
}

double uniform_sup_gap(const QBase& base, const SpectralParam& zp, long max_exponent)
{
    if (max_exponent < 1) throw Error(ErrorKind::InvalidArgument, "max_exponent must be positive");
    // The series argument -q^{2+2k} shrinks as k grows, so the window already
    // contains the points where |a_z - 1| is largest.
    double sup = 0.0;
    for (long k = 0; k <= max_exponent; ++k) {
        const auto a = spherical_az(base, zp, IqPoint::positive(-k));
        sup = std::max(sup, std::abs(a.value - 1.0));
    }
    return sup;
}

Symbol Symbol::zero()
{
    return Symbol{"zero", [](const IqPoint&, const QBase&) { return cplx{}; }, true};
}

Symbol Symbol::constant_one()
{
    return Symbol{"one", [](const IqPoint&, const QBase&) { return cplx{1.0, 0.0}; }, false};
}

Symbol Symbol::min_one_abs()
{
    return Symbol{"min(1,|p0|)",
                  [](const IqPoint& p, const QBase& base) {
                      return cplx{std::min(1.0, std::abs(structural_maps(p, base).value)), 0.0};
                  },
                  true};
}

Symbol Symbol::indicator(const IqPoint& point)
{
    return Symbol{"indicator(" + point.label() + ")",
                  [point](const IqPoint& p, const QBase&) { return p == point ? cplx{1.0, 0.0} : cplx{}; }, true};
}

bool decay_claim_holds(const Symbol& sym, const QBase& base, long max_exponent)
{
    if (!sym.decay_at_zero) return true;
    for (const int sign : {+1, -1}) {
        auto point = [sign](long k) { return sign > 0 ? IqPoint::positive(k) : IqPoint::negative(k); };
        const double first = std::abs(sym.eval(point(1), base));
        double prev = first;
        for (long k = 2; k <= max_exponent; ++k) {
            const double cur = std::abs(sym.eval(point(k), base));
            if (cur > prev) return false;
            prev = cur;
        }
        if (first > 0.0 && !(prev < first)) return false;
    }
    return true;
}

GapRecord approx_identity_gap(const QBase& base, const SpectralParam& zp, const Symbol& sym, long max_exponent)
{
    if (max_exponent < 1) throw Error(ErrorKind::InvalidArgument, "max_exponent must be positive");

    auto weighted = [&](const IqPoint& p) {
        const cplx phi = sym.eval(p, base);
        if (phi == cplx{}) return 0.0;
        return std::abs((spherical_az(base, zp, p).value - 1.0) * phi);
    };

    GapRecord out;
    for (long k = 0; k <= max_exponent; ++k) out.gap_p1 = std::max(out.gap_p1, weighted(IqPoint::positive(-k)));
    for (long k = 1; k <= max_exponent; ++k) {
        out.gap_p0 = std::max(out.gap_p0, weighted(IqPoint::positive(k)));
        out.gap_p0 = std::max(out.gap_p0, weighted(IqPoint::negative(k)));
    }
    out.gap_total = std::max(out.gap_p0, out.gap_p1);
    return out;
}

}  // namespace qsu
