#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include "qsu11/error.hpp"

namespace qsu {

using cplx = std::complex<double>;

/// Relative distance below which a parameter is treated as sitting on a pole
/// or on a terminating value base^{-n}.
inline constexpr double kPoleGuard = 1e-9;

/// Default truncation tolerance for infinite products (relative).
inline constexpr double kProductTol = 1e-17;

/// The deformation parameter 0 < q < 1 together with log q and
/// c_q = 1 / (sqrt(2) q (q^2, -q^2; q^2)_inf).
class QBase {
public:
    explicit QBase(double q);

    double q() const noexcept { return q_; }
    double q2() const noexcept { return q_ * q_; }
    double log_q() const noexcept { return log_q_; }
    double cq() const noexcept { return cq_; }

    /// q^k for integer k, by repeated squaring (no logarithms).
    double pow(long k) const;

private:
    double q_;
    double log_q_;
    double cq_;
};

struct SeriesEval {
    cplx value{1.0, 0.0};
    std::size_t terms_used = 0;
    double tail_bound = 0.0;
    /// Set by products when a factor vanished exactly; value is then exactly 0.
    bool degenerate_zero = false;
};

/// Complex number carried as mantissa * 2^exponent so that long products of
/// huge and tiny factors can be formed without overflow.
class ScaledComplex {
public:
    ScaledComplex() = default;
    ScaledComplex(cplx v);  // NOLINT(google-explicit-constructor)

    static ScaledComplex from_log2(double log2_modulus);

    ScaledComplex& operator*=(const ScaledComplex& other);
    ScaledComplex& operator/=(const ScaledComplex& other);
    friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
    friend ScaledComplex operator/(ScaledComplex a, const ScaledComplex& b) { return a /= b; }

    cplx value() const;
    bool is_zero() const noexcept { return mantissa_ == cplx{}; }
    double log2_abs() const;

private:
    void normalize();

    cplx mantissa_{1.0, 0.0};
    long exponent_ = 0;
};

/// (a; base)_k for k >= 0; the empty product is 1.
cplx qpoch_finite(cplx a, double base, long k);

/// (a; base)_n for any integer n, using (a; base)_{-n} = 1 / (a base^{-n}; base)_n.
cplx qpoch_signed(cplx a, double base, long n);

/// (a; base)_inf, truncated once the factors are within tol of 1.
SeriesEval qpoch_infinite(cplx a, double base, double tol = kProductTol);

/// (a_0, ..., a_n; base)_inf.
SeriesEval qpoch_infinite(std::span<const cplx> args, double base, double tol = kProductTol);

struct ProductRatio {
    ScaledComplex value;
    std::size_t terms_used = 0;
    /// Relative bound on the discarded tail.
    double rel_tail_bound = 0.0;
};

/// (num_0, ..., num_r; base)_inf / (den_0, ..., den_s; base)_inf, with the
/// factors divided index by index. Throws PoleGuard if a denominator factor
/// vanishes to within kPoleGuard.
ProductRatio qpoch_ratio(std::span<const cplx> num, std::span<const cplx> den, double base,
                         double tol = kProductTol);

struct ThetaCheck {
    cplx lhs;
    cplx rhs;
    double residual = 0.0;
    /// True when a sits on base^Z and both sides vanish; residual is then absolute.
    bool absolute_mode = false;
};

/// Both sides of (a base^k, base^{1-k}/a; base)_inf = (-a)^{-k} base^{-k(k-1)/2} (a, base/a; base)_inf.
ThetaCheck theta_pair(cplx a, long k, double base, double tol = kProductTol);

/// Smallest n >= 0 with |x base^n - 1| < kPoleGuard, or -1.
long terminating_index(cplx x, double base);

struct Phi21Options {
    double tol = 1e-16;
    std::size_t max_terms = 4000;
};

/// Sum_k (a, b; base)_k / (c, base; base)_k z^k.
SeriesEval phi21_direct(cplx a, cplx b, cplx c, double base, cplx z, Phi21Options opt = {});

/// The two Heine terms of 2phi1(q/lambda, lambda q; q^2; q^2, -q^2/kappa).
struct HeineTerms {
    cplx term_a;
    cplx term_b;
    SeriesEval total;
};

HeineTerms heine_terms(cplx lambda, cplx kappa, const QBase& base, Phi21Options opt = {});

/// 2phi1(q/lambda, lambda q; q^2; q^2, -q^2/kappa) for |kappa| < 1 through the
/// two-term transformation (valid where the direct series at -q^2/kappa diverges).
SeriesEval phi21_continued(cplx lambda, cplx kappa, const QBase& base, Phi21Options opt = {});

/// Analytic continuation of 2phi1 to any z off base^{-N}: direct summation for
/// small |z|, otherwise upward use of the q-difference equation from
/// convergent seeds at z base^n, z base^{n+1}.
SeriesEval phi21_analytic(cplx a, cplx b, cplx c, double base, cplx z, Phi21Options opt = {});

}  // namespace qsu
