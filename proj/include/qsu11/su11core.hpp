#pragma once

#include <string>

#include "qsu11/qcalculus.hpp"

namespace qsu {

/// A point sign * q^exponent of I_q = q^Z u -q^N. Negative points need exponent >= 1.
class IqPoint {
public:
    static IqPoint positive(long exponent) { return IqPoint(+1, exponent); }
    static IqPoint negative(long exponent);

    int sign() const noexcept { return sign_; }
    long exponent() const noexcept { return exponent_; }

    /// Shift the exponent: p * q^delta (sign kept).
    IqPoint times_q_pow(long delta) const;

    std::string label() const;

    friend bool operator==(const IqPoint&, const IqPoint&) = default;

private:
    IqPoint(int sign, long exponent) : sign_(sign), exponent_(exponent) {}

    int sign_;
    long exponent_;
};

struct StructuralMaps {
    double value = 0.0;  // sign q^k
    double kappa = 0.0;  // sign q^{2k}
    long chi = 0;        // k
    double nu = 0.0;     // q^{(k-1)(k-2)/2}
};

StructuralMaps structural_maps(const IqPoint& p, const QBase& base);

/// Spectral parameter z with lambda = q^z and x = (lambda + 1/lambda)/2.
///
/// z is held as a base point plus an integer count of periods 2*pi*i/log q;
/// lambda depends on the base point only, so shifting by whole periods leaves
/// every downstream value bit-identical.
class SpectralParam {
public:
    SpectralParam(const QBase& base, cplx z);

    SpectralParam shifted(long periods) const;

    cplx z() const;
    cplx lambda() const noexcept { return lambda_; }
    cplx x() const noexcept { return 0.5 * (lambda_ + 1.0 / lambda_); }
    long periods() const noexcept { return periods_; }

    /// 2*pi*i / log q.
    static cplx period(const QBase& base);

private:
    SpectralParam(cplx base_point, long periods, cplx period, cplx lambda)
        : base_point_(base_point), periods_(periods), period_(period), lambda_(lambda)
    {
    }

    cplx base_point_;
    long periods_ = 0;
    cplx period_;
    cplx lambda_;
};

enum class SphericalCase {
    PositiveLarge,  // +q^k, k <= 0: direct series
    PositiveSmall,  // +q^k, k >= 1: two-term continuation
    Negative,       // -q^k, k >= 1
};

SphericalCase classify(const IqPoint& p0);

/// Spherical coefficient a_z(p0).
SeriesEval spherical_az(const QBase& base, const SpectralParam& zp, const IqPoint& p0, Phi21Options opt = {});

enum class CoamenForm { Raw, Simplified };

/// Coefficient C(...; p1, p1 q^{2m}, 0): a positive prefactor times
/// 2phi1(-q^{1+2m}/lambda, -lambda q^{1+2m}; q^2; q^2, -q^2/kappa(p1 q^{2m})).
/// The raw form evaluates the unsimplified prefactor, the simplified one the
/// closed form sqrt((-q^2/(p1^2 q^{4m}); q^2)_{2m}); they must agree.
SeriesEval coamen_coeff(const QBase& base, long m, cplx lambda, const IqPoint& p1, CoamenForm form,
                        Phi21Options opt = {});

/// The two prefactors separately (the 2phi1 factor is shared).
double coamen_prefactor(const QBase& base, long m, const IqPoint& p1, CoamenForm form);

/// Mean of coamen_coeff over the 2(n-|m|)+1 points p1 q^{n-2|m|}, ..., p1 q^{-n},
/// normalised by 2n+1.
SeriesEval averaged_coamen(const QBase& base, long n, const IqPoint& p1, long m, cplx lambda,
                           Phi21Options opt = {});

}  // namespace qsu
