#include "qsu11/qcalculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace qsu {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Divergent: return "Divergent";
    case ErrorKind::PoleInC: return "PoleInC";
    case ErrorKind::PoleGuard: return "PoleGuard";
    case ErrorKind::PathOutsideDomain: return "PathOutsideDomain";
    case ErrorKind::QuadratureUnderResolved: return "QuadratureUnderResolved";
    }
    return "Unknown";
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double ipow(double x, long k)
{
    if (k < 0) return 1.0 / ipow(x, -k);
    double result = 1.0;
    while (k > 0) {
        if (k & 1) result *= x;
        x *= x;
        k >>= 1;
    }
    return result;
}

cplx ipow(cplx x, long k)
{
    if (k < 0) return 1.0 / ipow(x, -k);
    cplx result{1.0, 0.0};
    while (k > 0) {
        if (k & 1) result *= x;
        x *= x;
        k >>= 1;
    }
    return result;
}

void require_base(double base)
{
    if (!(base > 0.0 && base < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "base must lie in (0,1), got " + std::to_string(base));
    }
}

void require_tol(double tol)
{
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
}

// Factors 1 - x base^l with |x| base^l below this are within tol of 1 and the
// remaining tail satisfies exp(|x| base^K / (1 - base)) - 1 <= tol.
double product_cutoff(double tol, double base)
{
    return std::min(tol / 4.0, tol * (1.0 - base) / 2.0);
}

// Nearest j with |x| ~ base^j, if x is within the pole guard of base^j.
bool near_integer_power(cplx x, double base, long& j)
{
    if (x == cplx{}) return false;
    const double r = std::log(std::abs(x)) / std::log(base);
    if (!std::isfinite(r)) return false;
    j = std::lround(r);
    return std::abs(x / ipow(base, j) - 1.0) < kPoleGuard;
}

}  // namespace

QBase::QBase(double q) : q_(q)
{
    if (!(q > 0.0 && q < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "q must lie in (0,1), got " + std::to_string(q));
    }
    log_q_ = std::log(q);
    const cplx args[] = {q * q, -q * q};
    const auto prod = qpoch_infinite(args, q * q);
    cq_ = 1.0 / (std::sqrt(2.0) * q * prod.value.real());
}

double QBase::pow(long k) const { return ipow(q_, k); }

// ---------------------------------------------------------------------------

ScaledComplex::ScaledComplex(cplx v) : mantissa_(v) { normalize(); }

ScaledComplex ScaledComplex::from_log2(double log2_modulus)
{
    ScaledComplex out;
    const double whole = std::floor(log2_modulus);
    out.mantissa_ = std::exp2(log2_modulus - whole);
    out.exponent_ = static_cast<long>(whole);
    out.normalize();
    return out;
}

void ScaledComplex::normalize()
{
    const double m = std::max(std::abs(mantissa_.real()), std::abs(mantissa_.imag()));
    if (m == 0.0 || !std::isfinite(m)) {
        if (m == 0.0) exponent_ = 0;
        return;
    }
    int e = 0;
    std::frexp(m, &e);
    mantissa_ = {std::ldexp(mantissa_.real(), -e), std::ldexp(mantissa_.imag(), -e)};
    exponent_ += e;
}

ScaledComplex& ScaledComplex::operator*=(const ScaledComplex& other)
{
    mantissa_ *= other.mantissa_;
    exponent_ += other.exponent_;
    normalize();
    return *this;
}

ScaledComplex& ScaledComplex::operator/=(const ScaledComplex& other)
{
    mantissa_ /= other.mantissa_;
    exponent_ -= other.exponent_;
    normalize();
    return *this;
}

cplx ScaledComplex::value() const
{
    const int e = static_cast<int>(std::clamp(exponent_, -100000L, 100000L));
    return {std::ldexp(mantissa_.real(), e), std::ldexp(mantissa_.imag(), e)};
}

double ScaledComplex::log2_abs() const
{
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log2(std::abs(mantissa_)) + static_cast<double>(exponent_);
}

// ---------------------------------------------------------------------------

cplx qpoch_finite(cplx a, double base, long k)
{
    if (k < 0) throw Error(ErrorKind::InvalidArgument, "qpoch_finite needs k >= 0");
    cplx result{1.0, 0.0};
    double bl = 1.0;
    for (long l = 0; l < k; ++l) {
        result *= 1.0 - a * bl;
        bl *= base;
    }
    return result;
}

cplx qpoch_signed(cplx a, double base, long n)
{
    if (n >= 0) return qpoch_finite(a, base, n);
    return 1.0 / qpoch_finite(a * ipow(base, n), base, -n);
}

SeriesEval qpoch_infinite(cplx a, double base, double tol)
{
    require_base(base);
    require_tol(tol);
    const double cutoff = product_cutoff(tol, base);
    const double am = std::abs(a);

    SeriesEval out;
    cplx prod{1.0, 0.0};
    double bl = 1.0;
    std::size_t l = 0;
    while (am * bl >= cutoff) {
        const cplx factor = 1.0 - a * bl;
        if (factor == cplx{}) {
            out.value = 0.0;
            out.terms_used = l + 1;
            out.tail_bound = 0.0;
            out.degenerate_zero = true;
            return out;
        }
        prod *= factor;
        bl *= base;
        ++l;
    }
    out.value = prod;
    out.terms_used = l + 1;
    out.tail_bound = std::expm1(am * bl / (1.0 - base)) * std::abs(prod);
    return out;
}

SeriesEval qpoch_infinite(std::span<const cplx> args, double base, double tol)
{
    SeriesEval out;
    double rel = 1.0;
    for (const cplx a : args) {
        const auto part = qpoch_infinite(a, base, tol);
        out.value *= part.value;
        out.terms_used += part.terms_used;
        out.degenerate_zero = out.degenerate_zero || part.degenerate_zero;
        if (part.value != cplx{}) rel *= 1.0 + part.tail_bound / std::abs(part.value);
    }
    out.tail_bound = out.degenerate_zero ? 0.0 : (rel - 1.0) * std::abs(out.value);
    return out;
}

ProductRatio qpoch_ratio(std::span<const cplx> num, std::span<const cplx> den, double base, double tol)
{
    require_base(base);
    require_tol(tol);
    const double cutoff = product_cutoff(tol, base);

    double largest = 0.0;
    double total = 0.0;
    for (const cplx x : num) {
        largest = std::max(largest, std::abs(x));
        total += std::abs(x);
    }
    for (const cplx x : den) {
        largest = std::max(largest, std::abs(x));
        total += std::abs(x);
    }

    ProductRatio out;
    double bl = 1.0;
    std::size_t l = 0;
    while (largest * bl >= cutoff) {
        cplx factor{1.0, 0.0};
        for (const cplx x : num) factor *= 1.0 - x * bl;
        for (const cplx x : den) {
            const cplx d = 1.0 - x * bl;
            if (std::abs(d) < kPoleGuard) {
                throw Error(ErrorKind::PoleGuard, "denominator factor vanishes at index " + std::to_string(l));
            }
            factor /= d;
        }
        if (factor == cplx{}) {
            out.value = ScaledComplex(cplx{});
            out.terms_used = l + 1;
            return out;
        }
        out.value *= ScaledComplex(factor);
        bl *= base;
        ++l;
    }
    out.terms_used = l + 1;
    out.rel_tail_bound = std::expm1(total * bl / ((1.0 - base) * (1.0 - cutoff)));
    return out;
}

ThetaCheck theta_pair(cplx a, long k, double base, double tol)
{
    if (a == cplx{}) throw Error(ErrorKind::InvalidArgument, "theta_pair needs a != 0");
    require_base(base);

    const double bk = ipow(base, k);
    const cplx lhs_args[] = {a * bk, ipow(base, 1 - k) / a};
    const cplx rhs_args[] = {a, base / a};

    ThetaCheck out;
    out.lhs = qpoch_infinite(lhs_args, base, tol).value;
    // k(k-1)/2 is an integer for every integer k.
    const cplx prefactor = ipow(-a, -k) * ipow(base, -(k * (k - 1)) / 2);
    out.rhs = prefactor * qpoch_infinite(rhs_args, base, tol).value;

    long j = 0;
    out.absolute_mode = near_integer_power(a, base, j);
    const double diff = std::abs(out.lhs - out.rhs);
    if (out.absolute_mode) {
        out.residual = diff;
    } else {
        const double scale = std::max({std::abs(out.lhs), std::abs(out.rhs), std::numeric_limits<double>::min()});
        out.residual = diff / scale;
    }
    return out;
}

long terminating_index(cplx x, double base)
{
    long j = 0;
    if (!near_integer_power(x, base, j)) return -1;
    // x ~ base^j, so x base^{-j} ~ 1: the series stops after index n = -j.
    return j <= 0 ? -j : -1;
}

SeriesEval phi21_direct(cplx a, cplx b, cplx c, double base, cplx z, Phi21Options opt)
{
    require_base(base);
    require_tol(opt.tol);

    long n = -1;
    for (const cplx x : {a, b}) {
        const long idx = terminating_index(x, base);
        if (idx >= 0 && (n < 0 || idx < n)) n = idx;
    }
    const long c_pole = terminating_index(c, base);
    if (c_pole >= 0 && (n < 0 || n > c_pole)) {
        throw Error(ErrorKind::PoleInC, "c sits on base^{-" + std::to_string(c_pole) + "}");
    }

    SeriesEval out;
    cplx term{1.0, 0.0};
    cplx sum{0.0, 0.0};
    double bk = 1.0;  // base^k

    if (n >= 0) {
        for (long k = 0; k <= n; ++k) {
            sum += term;
            if (k == n) break;
            term *= (1.0 - a * bk) * (1.0 - b * bk) / ((1.0 - c * bk) * (1.0 - bk * base)) * z;
            bk *= base;
        }
        out.value = sum;
        out.terms_used = static_cast<std::size_t>(n + 1);
        out.tail_bound = 0.0;
        return out;
    }

    const double zm = std::abs(z);
    if (zm >= 1.0) throw Error(ErrorKind::Divergent, "|z| >= 1 and the series does not terminate");

    const double am = std::abs(a), bm = std::abs(b), cm = std::abs(c);
    out.tail_bound = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < opt.max_terms; ++k) {
        sum += term;
        term *= (1.0 - a * bk) * (1.0 - b * bk) / ((1.0 - c * bk) * (1.0 - bk * base)) * z;
        bk *= base;
        out.terms_used = k + 1;
        // Every later term ratio is bounded by rho once |c| base^{k+1} < 1.
        const double cb = cm * bk;
        if (cb >= 1.0) continue;
        const double rho = zm * (1.0 + am * bk) * (1.0 + bm * bk) / ((1.0 - cb) * (1.0 - bk * base));
        if (rho >= 1.0) continue;
        const double tail = std::abs(term) / (1.0 - rho);
        out.tail_bound = tail;
        if (tail <= opt.tol * std::max(std::abs(sum), 1e-300)) break;
    }
    out.value = sum;
    return out;
}

HeineTerms heine_terms(cplx lambda, cplx kappa, const QBase& base, Phi21Options opt)
{
    if (lambda == cplx{}) throw Error(ErrorKind::InvalidArgument, "lambda must be nonzero");
    if (kappa == cplx{} || std::abs(kappa) >= 1.0) {
        throw Error(ErrorKind::InvalidArgument, "continuation needs 0 < |kappa| < 1");
    }
    const double q = base.q();
    const double q2 = base.q2();
    const cplx l2 = lambda * lambda;
    long j = 0;
    if (near_integer_power(l2, q2, j)) {
        throw Error(ErrorKind::PoleGuard, "lambda^2 is within the pole guard of q^{2j}, j=" + std::to_string(j));
    }

    const cplx num_a[] = {q * lambda, q * lambda, -q * q2 / (lambda * kappa), -lambda * kappa / q};
    const cplx den_a[] = {q2, l2, -q2 / kappa, -kappa};
    const cplx num_b[] = {q / lambda, q / lambda, -q * q2 * lambda / kappa, -kappa / (q * lambda)};
    const cplx den_b[] = {q2, 1.0 / l2, -q2 / kappa, -kappa};

    const auto ra = qpoch_ratio(num_a, den_a, q2);
    const auto rb = qpoch_ratio(num_b, den_b, q2);
    const auto phi_a = phi21_direct(q / lambda, q / lambda, q2 / l2, q2, -kappa, opt);
    const auto phi_b = phi21_direct(q * lambda, q * lambda, q2 * l2, q2, -kappa, opt);

    const cplx pa = ra.value.value();
    const cplx pb = rb.value.value();

    HeineTerms out;
    out.term_a = pa * phi_a.value;
    out.term_b = pb * phi_b.value;
    out.total.value = out.term_a + out.term_b;
    out.total.terms_used = phi_a.terms_used + phi_b.terms_used;
    out.total.tail_bound = std::abs(out.term_a) * ra.rel_tail_bound + std::abs(pa) * phi_a.tail_bound +
                           std::abs(out.term_b) * rb.rel_tail_bound + std::abs(pb) * phi_b.tail_bound;
    return out;
}

SeriesEval phi21_continued(cplx lambda, cplx kappa, const QBase& base, Phi21Options opt)
{
    return heine_terms(lambda, kappa, base, opt).total;
}

SeriesEval phi21_analytic(cplx a, cplx b, cplx c, double base, cplx z, Phi21Options opt)
{
    constexpr double kDirectRadius = 0.75;
    constexpr double kSeedRadius = 0.5;

    require_base(base);
    const bool terminates = terminating_index(a, base) >= 0 || terminating_index(b, base) >= 0;
    if (terminates || std::abs(z) <= kDirectRadius) return phi21_direct(a, b, c, base, z, opt);

    if (terminating_index(c, base) >= 0) throw Error(ErrorKind::PoleInC, "c sits on base^{-j}");
    if (terminating_index(z, base) >= 0) throw Error(ErrorKind::PoleGuard, "z sits on a pole base^{-j}");

    long n = 0;
    double bn = 1.0;
    while (std::abs(z) * bn > kSeedRadius) {
        bn *= base;
        ++n;
    }

    const auto seed1 = phi21_direct(a, b, c, base, z * bn, opt);
    const auto seed2 = phi21_direct(a, b, c, base, z * bn * base, opt);
    cplx f1 = seed1.value, f2 = seed2.value;
    double e1 = seed1.tail_bound + kEps * std::abs(f1);
    double e2 = seed2.tail_bound + kEps * std::abs(f2);

    // (1 - w) f(w) = (1 + c/base - (a+b) w) f(base w) - (c/base - a b w) f(base^2 w)
    const cplx c_over = c / base;
    double bj = bn;
    for (long j = n - 1; j >= 0; --j) {
        bj /= base;
        const cplx w = z * bj;
        const cplx g1 = 1.0 + c_over - (a + b) * w;
        const cplx g2 = c_over - a * b * w;
        const double den = std::abs(1.0 - w);
        const cplx f0 = (g1 * f1 - g2 * f2) / (1.0 - w);
        const double e0 = (std::abs(g1) * e1 + std::abs(g2) * e2 +
                           8.0 * kEps * (std::abs(g1 * f1) + std::abs(g2 * f2))) / den;
        f2 = f1;
        e2 = e1;
        f1 = f0;
        e1 = e0;
    }

    SeriesEval out;
    out.value = f1;
    out.terms_used = seed1.terms_used + seed2.terms_used + static_cast<std::size_t>(n);
    out.tail_bound = e1;
    return out;
}

}  // namespace qsu
