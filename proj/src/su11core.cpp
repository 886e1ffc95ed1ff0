#include "qsu11/su11core.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qsu {

namespace {

long nu_exponent_twice(long k) { return (k - 1) * (k - 2); }

void require_lambda(cplx lambda)
{
    if (lambda == cplx{}) throw Error(ErrorKind::InvalidArgument, "lambda must be nonzero");
}

void require_unguarded(cplx lambda, const QBase& base)
{
    const cplx l2 = lambda * lambda;
    const long j = std::lround(std::log(std::abs(l2)) / std::log(base.q2()));
    if (std::abs(l2 / base.pow(2 * j) - 1.0) < kPoleGuard) {
        throw Error(ErrorKind::PoleGuard, "lambda^2 is within the pole guard of q^" + std::to_string(2 * j));
    }
}

// Negative points: the displayed Case-3 expression, with (q^2/p0^2; q^2)_inf
// cancelled against (-q^2/kappa(p0); q^2)_inf (same argument, both vanish),
// (-kappa(p0); q^2)_inf against itself, one (q^2; q^2)_inf, and in the second
// term the pair (-q^3 lambda/kappa, -kappa/(q lambda)) against the prefactor
// denominator (lambda q^3/p0^2, p0^2/(q lambda)).
SeriesEval spherical_negative(const QBase& base, cplx lambda, const IqPoint& p0, const Phi21Options& opt)
{
    require_unguarded(lambda, base);
    const double q = base.q();
    const double q2 = base.q2();
    const long k = p0.exponent();
    const double p2 = base.pow(2 * k);  // p0^2
    const double kappa = -p2;
    const cplx l2 = lambda * lambda;

    // p0^2 nu(p0)^2 c_q^2 (q^2; q^2)_inf
    const cplx q2_arg[] = {q2};
    const double q2_prod = qpoch_infinite(q2_arg, q2).value.real();
    const double log2_scalar = static_cast<double>(2 * k + nu_exponent_twice(k)) * std::log2(q) +
                               std::log2(base.cq() * base.cq() * q2_prod);
    const ScaledComplex scalar = ScaledComplex::from_log2(log2_scalar);

    const cplx shared_a = -lambda * q * q2 / p2;   // -lambda q^3 / p0^2
    const cplx shared_b = -p2 / (q * lambda);      // -p0^2 / (q lambda)

    const cplx num_a[] = {q * lambda, q * lambda, -q * q2 / (lambda * kappa), -lambda * kappa / q, shared_a, shared_b};
    const cplx den_a[] = {l2, p2 / (q * lambda), lambda * q * q2 / p2};
    const cplx num_b[] = {q / lambda, q / lambda, shared_a, shared_b};
    const cplx den_b[] = {1.0 / l2};

    const auto ra = qpoch_ratio(num_a, den_a, q2);
    const auto rb = qpoch_ratio(num_b, den_b, q2);
    const auto phi_a = phi21_direct(q / lambda, q / lambda, q2 / l2, q2, -kappa, opt);
    const auto phi_b = phi21_direct(q * lambda, q * lambda, q2 * l2, q2, -kappa, opt);

    const cplx pa = (scalar * ra.value).value();
    const cplx pb = (scalar * rb.value).value();
    const cplx ta = pa * phi_a.value;
    const cplx tb = pb * phi_b.value;

    SeriesEval out;
    out.value = ta + tb;
    out.terms_used = phi_a.terms_used + phi_b.terms_used;
    out.tail_bound = std::abs(ta) * ra.rel_tail_bound + std::abs(pa) * phi_a.tail_bound +
                     std::abs(tb) * rb.rel_tail_bound + std::abs(pb) * phi_b.tail_bound;
    return out;
}

}  // namespace

IqPoint IqPoint::negative(long exponent)
{
    if (exponent < 1) {
        throw Error(ErrorKind::InvalidArgument, "negative points of I_q need exponent >= 1");
    }
    return IqPoint(-1, exponent);
}

IqPoint IqPoint::times_q_pow(long delta) const
{
    return sign_ > 0 ? positive(exponent_ + delta) : negative(exponent_ + delta);
}

std::string IqPoint::label() const
{
    return std::string(sign_ > 0 ? "+" : "-") + "q^" + std::to_string(exponent_);
}

StructuralMaps structural_maps(const IqPoint& p, const QBase& base)
{
    const long k = p.exponent();
    StructuralMaps out;
    out.value = p.sign() * base.pow(k);
    out.kappa = p.sign() * base.pow(2 * k);
    out.chi = k;
    out.nu = base.pow(nu_exponent_twice(k) / 2);
    return out;
}

// ---------------------------------------------------------------------------

SpectralParam::SpectralParam(const QBase& base, cplx z) : period_(period(base))
{
    // Only parameters beyond one full period are folded back.
    const double p = std::abs(period_.imag());
    long m = 0;
    if (std::abs(z.imag()) > p) m = std::lround(z.imag() / p);
    // z = base_point + periods * period, period = -i p
    periods_ = -m;
    base_point_ = z - static_cast<double>(periods_) * period_;
    lambda_ = std::exp(base_point_ * base.log_q());
}

SpectralParam SpectralParam::shifted(long periods) const
{
    return SpectralParam(base_point_, periods_ + periods, period_, lambda_);
}

cplx SpectralParam::z() const { return base_point_ + static_cast<double>(periods_) * period_; }

cplx SpectralParam::period(const QBase& base) { return cplx{0.0, 2.0 * std::numbers::pi / base.log_q()}; }

// ---------------------------------------------------------------------------

SphericalCase classify(const IqPoint& p0)
{
    if (p0.sign() < 0) return SphericalCase::Negative;
    return p0.exponent() <= 0 ? SphericalCase::PositiveLarge : SphericalCase::PositiveSmall;
}

SeriesEval spherical_az(const QBase& base, const SpectralParam& zp, const IqPoint& p0, Phi21Options opt)
{
    const cplx lambda = zp.lambda();
    const double q = base.q();
    const double q2 = base.q2();
    switch (classify(p0)) {
    case SphericalCase::PositiveLarge: {
        const double kappa = base.pow(2 * p0.exponent());
        return phi21_direct(q / lambda, lambda * q, q2, q2, -q2 / kappa, opt);
    }
    case SphericalCase::PositiveSmall:
        return phi21_continued(lambda, base.pow(2 * p0.exponent()), base, opt);
    case SphericalCase::Negative:
        return spherical_negative(base, lambda, p0, opt);
    }
    throw Error(ErrorKind::InvalidArgument, "unreachable point class");
}

// ---------------------------------------------------------------------------

double coamen_prefactor(const QBase& base, long m, const IqPoint& p1, CoamenForm form)
{
    if (p1.sign() < 0) throw Error(ErrorKind::InvalidArgument, "p1 must lie in q^Z");
    const double q2 = base.q2();
    const long l = p1.exponent();
    const long n = l + 2 * m;  // exponent of p1 q^{2m}

    if (form == CoamenForm::Simplified) {
        // x = -q^2 / (p1^2 q^{4m}); negative-length symbols use the reciprocal convention
        const double x = -base.pow(2 - 2 * l - 4 * m);
        return std::sqrt(qpoch_signed(x, q2, 2 * m).real());
    }

    // p1^2 q^{2m} nu(p1) nu(p1 q^{2m}) c_q^2 sqrt((-kappa(p1), -kappa(p1 q^{2m}); q^2)_inf)
    //   (q^2, -q^2/kappa(p1 q^{2m}); q^2)_inf (q^2; q^2)_inf, all positive, summed in log2
    const double log2q = std::log2(base.q());
    const long q_exponent_twice = 4 * l + 4 * m + nu_exponent_twice(l) + nu_exponent_twice(n);
    const auto log2_prod = [q2](cplx a) {
        const cplx arg[] = {a};
        return qpoch_ratio(arg, {}, q2).value.log2_abs();
    };
    double log2_total = 0.5 * static_cast<double>(q_exponent_twice) * log2q;
    log2_total += 2.0 * std::log2(base.cq());
    log2_total += 0.5 * (log2_prod(-base.pow(2 * l)) + log2_prod(-base.pow(2 * n)));
    log2_total += 2.0 * log2_prod(q2) + log2_prod(-base.pow(2 - 2 * n));
    return std::exp2(log2_total);
}

SeriesEval coamen_coeff(const QBase& base, long m, cplx lambda, const IqPoint& p1, CoamenForm form, Phi21Options opt)
{
    require_lambda(lambda);
    const double prefactor = coamen_prefactor(base, m, p1, form);

    const double q2 = base.q2();
    const long n = p1.exponent() + 2 * m;
    const double shift = base.pow(1 + 2 * m);
    const cplx arg = -base.pow(2 - 2 * n);  // -q^2 / kappa(p1 q^{2m})
    const auto phi = phi21_analytic(-shift / lambda, -lambda * shift, q2, q2, arg, opt);

    SeriesEval out;
    out.value = prefactor * phi.value;
    out.terms_used = phi.terms_used;
    // Prefactor products are converged to kProductTol.
    out.tail_bound = prefactor * phi.tail_bound + 16.0 * kProductTol * std::abs(out.value);
    return out;
}

SeriesEval averaged_coamen(const QBase& base, long n, const IqPoint& p1, long m, cplx lambda, Phi21Options opt)
{
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "n must be nonnegative");
    if (std::abs(m) > n) throw Error(ErrorKind::InvalidArgument, "|m| must not exceed n");
    if (p1.sign() < 0) throw Error(ErrorKind::InvalidArgument, "p1 must lie in q^Z");

    SeriesEval out;
    out.value = 0.0;
    const long top = n - 2 * std::abs(m);
    for (long e = top; e >= -n; --e) {
        const auto c = coamen_coeff(base, m, lambda, p1.times_q_pow(e), CoamenForm::Simplified, opt);
        out.value += c.value;
        out.tail_bound += c.tail_bound;
        out.terms_used += c.terms_used;
    }
    const double norm = static_cast<double>(2 * n + 1);
    out.value /= norm;
    out.tail_bound /= norm;
    return out;
}

}  // namespace qsu
