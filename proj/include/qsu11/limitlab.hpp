#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qsu11/qcalculus.hpp"
#include "qsu11/su11core.hpp"

namespace qsu {

/// Length of the q-factorials in the stable lambda -> q ratio: a positive integer or infinity.
struct B1Order {
    long k = 1;
    bool infinite = false;

    static B1Order finite(long k);
    static B1Order infinity() { return B1Order{0, true}; }
};

struct B1Ratio {
    cplx value;
    /// Bound on |tail - 1| for the factors dropped by truncating an infinite order.
    double tail_factor_bound = 0.0;
};

/// (q/lambda, q/lambda; q^2)_k / (1/lambda^2; q^2)_k with the vanishing pair
/// (1 - q/lambda)^2 / (1 - q^2/lambda^2) reduced to (1 - q/lambda)/(1 + q/lambda).
B1Ratio lemma_b1_ratio(const QBase& base, cplx lambda, B1Order order, long trunc_K = 60);

enum class Family { SphericalCase1, SphericalCase2, SphericalCase3, Coamen, AveragedCoamen, B1Ratio };

std::string_view to_string(Family family) noexcept;

/// Parameters held fixed along a sweep. Which fields matter depends on the family:
///   spherical_*     approach values are z; uses p0
///   coamen          approach values are j with p1 = q^{-j}; uses m, lambda
///   averaged_coamen approach values are n with p1 = q^{p1_per_n * n}; uses m, lambda
///   b1_ratio        approach values are lambda; uses b1
struct SweepFixed {
    IqPoint p0 = IqPoint::positive(0);
    long m = 0;
    cplx lambda{1.0, 0.0};
    long p1_per_n = -2;
    B1Order b1 = B1Order::finite(3);
    Phi21Options series{};
};

struct SweepRow {
    cplx param;
    cplx value;
    double deviation = 0.0;
    double tail_bound = 0.0;
    std::string error;  // empty unless evaluation failed
};

struct SweepReport {
    std::string label;
    Family family = Family::SphericalCase1;
    std::vector<SweepRow> rows;
    double threshold = 0.0;
    bool require_monotone = false;
    /// Consecutive deviations non-increasing up to kMonotoneSlack.
    bool monotone_deviation = false;
    bool strictly_decreasing = false;
    bool pass = false;
};

inline constexpr double kMonotoneSlack = 1e-13;

SweepReport limit_sweep(std::string label, Family family, const QBase& base, const SweepFixed& fixed,
                        std::span<const cplx> approach, cplx target, double threshold, bool require_monotone);

/// sup over p0 = q^0, q^{-1}, ..., q^{-max_exponent} of |a_z(p0) - 1|.
double uniform_sup_gap(const QBase& base, const SpectralParam& zp, long max_exponent = 24);

/// Diagonal symbol p0 -> Phi(p0) standing in for an element of C_0.
struct Symbol {
    std::string name;
    std::function<cplx(const IqPoint&, const QBase&)> eval;
    bool decay_at_zero = false;

    static Symbol zero();
    static Symbol constant_one();
    static Symbol min_one_abs();
    static Symbol indicator(const IqPoint& point);
};

/// Checks a decay_at_zero claim on the window: |Phi(+-q^k)| non-increasing in
/// k >= 1 and below its starting value at k = max_exponent.
bool decay_claim_holds(const Symbol& sym, const QBase& base, long max_exponent);

struct GapRecord {
    double gap_p0 = 0.0;  // sup over I_q n (-1, 1)
    double gap_p1 = 0.0;  // sup over I_q n [1, inf)
    double gap_total = 0.0;
};

/// Window sups of |(a_z(p0) - 1) Phi(p0)| over |exponent| <= max_exponent.
GapRecord approx_identity_gap(const QBase& base, const SpectralParam& zp, const Symbol& sym,
                              long max_exponent = 24);

}  // namespace qsu
