#include "qsu11/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>

#include "json.hpp"

#include "qsu11/limitlab.hpp"
#include "qsu11/smoother.hpp"
#include "qsu11/su11core.hpp"

namespace qsu {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 5> kSuiteNames = {"identities", "spherical", "coamenability", "smoothing",
                                                         "approxid"};

std::string fmt(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Short form for identifiers and messages.
std::string tag(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

json number(double x)
{
    if (!std::isfinite(x)) return nullptr;
    return x;
}

json cjson(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

std::string csv_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// dev < thr, except that an exact zero meets a zero threshold.
bool within(double dev, double thr) { return dev < thr || (dev == 0.0 && thr >= 0.0); }

// A series value is certified when its tail bound is within tol relative.
bool certified(double tail_bound, cplx value, double tol)
{
    return tail_bound <= tol * std::max(std::abs(value), 1e-300);
}

class RowSink {
public:
    RowSink(SuiteReport& report, const RunConfig& config) : report_(report), config_(config) {}

    const RunConfig& config() const { return config_; }

    void info(std::string id, std::string anchor, const json& params, cplx value, double deviation)
    {
        push(std::move(id), std::move(anchor), params, value, deviation, std::nullopt, Verdict::Info);
    }

    void check(std::string id, std::string anchor, const json& params, cplx value, double deviation,
               double threshold, bool extra_ok = true)
    {
        const bool ok = extra_ok && within(deviation, threshold);
        push(std::move(id), std::move(anchor), params, value, deviation, threshold, ok ? Verdict::Pass : Verdict::Fail);
    }

    void failure(std::string id, std::string anchor, json params, const std::string& what)
    {
        params["error"] = what;
        push(std::move(id), std::move(anchor), params, cplx{std::nan(""), std::nan("")}, std::nan(""), std::nullopt,
             Verdict::Fail);
    }

    // Runs body; a thrown Error becomes a failed row with the given id.
    template <class F>
    void guarded(const std::string& id, const std::string& anchor, const json& params, F&& body)
    {
        try {
            body();
        } catch (const std::exception& e) {
            failure(id, anchor, params, e.what());
        }
    }

private:
    void push(std::string id, std::string anchor, const json& params, cplx value, double deviation,
              std::optional<double> threshold, Verdict verdict)
    {
        report_.rows.push_back(ReportRow{std::move(id), std::move(anchor), params.dump(), value, deviation, threshold,
                                         verdict});
    }

    SuiteReport& report_;
    const RunConfig& config_;
};

Phi21Options series_options(const RunConfig& config)
{
    return Phi21Options{std::min(config.tol, 1e-15), static_cast<std::size_t>(config.max_terms)};
}

// Emits one row per sweep point (informational except the last, which carries
// the threshold) and a monotonicity row. strict selects d_{i+1} < d_i over
// d_{i+1} <= d_i + kMonotoneSlack.
void emit_sweep(RowSink& sink, const std::string& id, const std::string& anchor, const json& params,
                const std::string& param_name, const std::vector<cplx>& approach, const SweepReport& sweep, bool strict,
                bool real_param)
{
    const double tol = sink.config().tol;
    double max_step = -std::numeric_limits<double>::infinity();
    bool all_ok = true;
    for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
        const auto& row = sweep.rows[i];
        json p = params;
        if (real_param)
            p[param_name] = approach[i].real();
        else
            p[param_name] = cjson(approach[i]);
        const std::string rid = id + "/" + std::to_string(i);
        if (!row.error.empty()) {
            sink.failure(rid, anchor, p, row.error);
            all_ok = false;
            continue;
        }
        const bool cert = certified(row.tail_bound, row.value, tol);
        if (i + 1 == sweep.rows.size())
            sink.check(rid, anchor, p, row.value, row.deviation, sweep.threshold, cert);
        else if (!cert)
            sink.check(rid, anchor, p, row.value, row.deviation, std::numeric_limits<double>::max(), false);
        else
            sink.info(rid, anchor, p, row.value, row.deviation);
        if (i > 0) max_step = std::max(max_step, row.deviation - sweep.rows[i - 1].deviation);
    }
    json p = params;
    p["strict"] = strict;
    const bool mono = strict ? sweep.strictly_decreasing : sweep.monotone_deviation;
    sink.check(id + "/monotone", anchor, p, cplx{max_step, 0.0}, std::max(max_step, 0.0), strict ? 0.0 : kMonotoneSlack,
               all_ok && mono);
}

// ---------------------------------------------------------------- identities

// Fixed (a, k) grid: moduli and phases from the fractional parts of i*phi and
// i*sqrt(2), k cycling through -5..5.
std::vector<std::pair<cplx, long>> theta_grid()
{
    std::vector<std::pair<cplx, long>> grid;
    const double phi = std::numbers::phi;
    const double s2 = std::numbers::sqrt2;
    for (int i = 1; i <= 100; ++i) {
        const double u = i * phi - std::floor(i * phi);
        const double v = i * s2 - std::floor(i * s2);
        const double r = 0.2 + 1.6 * u;
        grid.emplace_back(std::polar(r, 2.0 * std::numbers::pi * v), static_cast<long>(i % 11) - 5);
    }
    return grid;
}

void identities_suite(RowSink& sink)
{
    const auto& cfg = sink.config();
    const QBase base(cfg.q);
    const auto grid = theta_grid();

    const double theta_thr = std::min(cfg.tol, 1e-10);
    for (double b : {0.3, 0.5, 0.8}) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto [a, k] = grid[i];
            const json p = {{"base", b}, {"a", cjson(a)}, {"k", k}};
            const std::string id = "theta/base=" + tag(b) + "/" + std::to_string(i + 1);
            sink.guarded(id, "Eq4.1", p, [&] {
                const auto t = theta_pair(a, k, b);
                sink.check(id, "Eq4.1", p, t.lhs, t.residual, theta_thr);
            });
        }
    }

    const double cq_thr = std::min(cfg.tol, 1e-12);
    std::vector<double> cq_bases = {0.3, 0.5, 0.8};
    if (std::find(cq_bases.begin(), cq_bases.end(), cfg.q) == cq_bases.end()) cq_bases.push_back(cfg.q);
    for (double qq : cq_bases) {
        const json p = {{"q", qq}};
        const std::string id = "cq_normalization/q=" + tag(qq);
        sink.guarded(id, "Eq5.2", p, [&] {
            const QBase b(qq);
            const double q2 = b.q2();
            const cplx pq = qpoch_infinite(q2, q2).value;
            const std::array<cplx, 2> args = {-1.0, -q2};
            const cplx pm = qpoch_infinite(args, q2).value;
            const cplx v = b.cq() * b.cq() * q2 * pq * pq * pm;
            sink.check(id, "Eq5.2", p, v, std::abs(v - 1.0), cq_thr);
        });
    }

    const double chain_thr = std::min(cfg.tol, 1e-9);
    const auto opt = series_options(cfg);
    const std::array<cplx, 3> lambdas = {cplx{1.0, 0.0}, std::polar(1.0, 0.4), cplx{std::sqrt(cfg.q), 0.0}};
    for (long m = -3; m <= 3; ++m) {
        for (long j = 0; j <= 10; ++j) {
            for (std::size_t li = 0; li < lambdas.size(); ++li) {
                const json p = {{"m", m}, {"j", j}, {"lambda", cjson(lambdas[li])}};
                const std::string id = "coamen_chain/m=" + std::to_string(m) + "/j=" + std::to_string(j) + "/l" +
                                       std::to_string(li);
                sink.guarded(id, "Eq5.2", p, [&] {
                    const auto p1 = IqPoint::positive(-j);
                    const auto raw = coamen_coeff(base, m, lambdas[li], p1, CoamenForm::Raw, opt);
                    const auto simp = coamen_coeff(base, m, lambdas[li], p1, CoamenForm::Simplified, opt);
                    const double rel = std::abs(raw.value - simp.value) / std::abs(simp.value);
                    sink.check(id, "Eq5.2", p, raw.value, rel, chain_thr);
                });
            }
        }
    }

    // Overlap q^2 < |kappa| < 1 where both the direct series at -q^2/kappa and
    // the two-term form converge.
    const double heine_thr = std::min(cfg.tol, 1e-8);
    const std::array<double, 5> angles = {0.3, 0.9, 1.5, 2.1, 2.7};
    const std::array<std::pair<double, double>, 4> kappas = {{{0.15, 0.0}, {0.35, 0.6}, {0.55, -1.2}, {0.7, 2.5}}};
    const double q2 = base.q2();
    int idx = 0;
    for (double th : angles) {
        for (const auto& [t, psi] : kappas) {
            const cplx lambda = std::polar(1.0, th);
            const cplx kappa = std::polar(q2 + (1.0 - q2) * t, psi);
            const json p = {{"lambda", cjson(lambda)}, {"kappa", cjson(kappa)}};
            const std::string id = "heine_overlap/" + std::to_string(++idx);
            sink.guarded(id, "PropB2.Case2", p, [&] {
                const auto cont = phi21_continued(lambda, kappa, base, opt);
                const auto direct = phi21_direct(base.q() / lambda, lambda * base.q(), q2, q2, -q2 / kappa, opt);
                const double dev = std::abs(cont.value - direct.value);
                const bool cert = certified(cont.tail_bound, cont.value, cfg.tol) &&
                                  certified(direct.tail_bound, direct.value, cfg.tol);
                sink.check(id, "PropB2.Case2", p, cont.value, dev, heine_thr, cert);
            });
        }
    }
}

// ----------------------------------------------------------------- spherical

json point_json(const IqPoint& p) { return {{"sign", p.sign()}, {"exponent", p.exponent()}}; }

std::vector<IqPoint> spherical_points(long reach)
{
    std::vector<IqPoint> pts;
    for (long k = 0; k >= -reach; --k) pts.push_back(IqPoint::positive(k));
    for (long k = 1; k <= reach; ++k) pts.push_back(IqPoint::positive(k));
    for (long k = 1; k <= reach; ++k) pts.push_back(IqPoint::negative(k));
    return pts;
}

std::string_view case_anchor(const IqPoint& p)
{
    switch (classify(p)) {
    case SphericalCase::PositiveLarge: return "PropB2.Case1";
    case SphericalCase::PositiveSmall: return "PropB2.Case2";
    case SphericalCase::Negative: return "PropB2.Case3";
    }
    return "PropB2";
}

Family case_family(const IqPoint& p)
{
    switch (classify(p)) {
    case SphericalCase::PositiveLarge: return Family::SphericalCase1;
    case SphericalCase::PositiveSmall: return Family::SphericalCase2;
    case SphericalCase::Negative: return Family::SphericalCase3;
    }
    return Family::SphericalCase1;
}

cplx b1_naive(const QBase& base, cplx lambda, B1Order order)
{
    const double q2 = base.q2();
    const cplx u = base.q() / lambda;
    const cplx v = 1.0 / (lambda * lambda);
    if (order.infinite) {
        const cplx pu = qpoch_infinite(u, q2).value;
        return pu * pu / qpoch_infinite(v, q2).value;
    }
    const cplx pu = qpoch_finite(u, q2, order.k);
    return pu * pu / qpoch_finite(v, q2, order.k);
}

void spherical_suite(RowSink& sink)
{
    const auto& cfg = sink.config();
    const QBase base(cfg.q);
    SweepFixed fixed;
    fixed.series = series_options(cfg);

    // Limit z -> 1 along real z.
    const std::vector<cplx> zs = {0.9, 0.99, 0.999};
    for (const auto& p0 : spherical_points(6)) {
        fixed.p0 = p0;
        const std::string anchor(case_anchor(p0));
        const auto sweep = limit_sweep(p0.label(), case_family(p0), base, fixed, zs, 1.0, 5e-3, true);
        emit_sweep(sink, "limit/" + p0.label(), anchor, {{"p0", point_json(p0)}}, "z", zs, sweep, true, true);
    }

    // Uniform convergence on I_q n [1, inf).
    double prev = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    for (double z : {0.9, 0.99, 0.999}) {
        const json p = {{"z", z}, {"max_exponent", cfg.max_exponent}};
        const std::string id = "uniform_sup_gap/z=" + tag(z);
        sink.guarded(id, "Prop6.1.3", p, [&] {
            const double gap = uniform_sup_gap(base, SpectralParam(base, z), cfg.max_exponent);
            decreasing = decreasing && gap < prev;
            prev = gap;
            if (z == 0.999)
                sink.check(id, "Prop6.1.3", p, gap, gap, 5e-3, decreasing);
            else
                sink.info(id, "Prop6.1.3", p, gap, gap);
        });
    }
    {
        const json p = {{"z", 1.0}, {"max_exponent", cfg.max_exponent}};
        sink.guarded("uniform_sup_gap/z=1", "Prop6.1.3", p, [&] {
            const double gap = uniform_sup_gap(base, SpectralParam(base, 1.0), cfg.max_exponent);
            sink.check("uniform_sup_gap/z=1", "Prop6.1.3", p, gap, gap, 0.0);
        });
    }

    // Stable ratio as lambda -> q.
    const std::array<B1Order, 5> orders = {B1Order::finite(1), B1Order::finite(2), B1Order::finite(3),
                                           B1Order::finite(10), B1Order::infinity()};
    const std::vector<cplx> lambdas = {base.q() * 1.1, base.q() * 1.01, base.q() * 1.001};
    for (const auto& order : orders) {
        const std::string k = order.infinite ? "inf" : std::to_string(order.k);
        fixed.b1 = order;
        const auto sweep = limit_sweep("b1/k=" + k, Family::B1Ratio, base, fixed, lambdas, 0.0, 1e-2, true);
        emit_sweep(sink, "b1_ratio/k=" + k, "LemmaB1", {{"k", k}}, "lambda", lambdas, sweep, true, true);

        const cplx lam = base.q() + 0.1;
        const json p = {{"k", k}, {"lambda", lam.real()}};
        const std::string id = "b1_naive/k=" + k;
        sink.guarded(id, "LemmaB1", p, [&] {
            const auto stable = lemma_b1_ratio(base, lam, order);
            const cplx naive = b1_naive(base, lam, order);
            sink.check(id, "LemmaB1", p, stable.value, std::abs(stable.value - naive), 1e-12);
        });
    }

    const auto opt = series_options(cfg);

    // Periodicity in z with period 2 pi i / log q: exact.
    const std::array<cplx, 3> pz = {cplx{0.0, 0.7}, cplx{0.3, 0.2}, cplx{0.0, -2.1}};
    for (const auto& p0 : {IqPoint::positive(-2), IqPoint::positive(0), IqPoint::positive(3), IqPoint::negative(2)}) {
        for (const cplx z : pz) {
            for (long shift : {1L, -3L}) {
                const json p = {{"p0", point_json(p0)}, {"z", cjson(z)}, {"periods", shift}};
                const std::string id = "periodicity/" + p0.label() + "/z=" + tag(z.real()) + "," + tag(z.imag()) +
                                       "/shift=" + std::to_string(shift);
                sink.guarded(id, "Prop6.1.2", p, [&] {
                    const SpectralParam zp(base, z);
                    const auto a = spherical_az(base, zp, p0, opt);
                    const auto b = spherical_az(base, zp.shifted(shift), p0, opt);
                    sink.check(id, "Prop6.1.2", p, b.value, std::abs(a.value - b.value), 0.0);
                });
            }
        }
    }

    // Reality for real z.
    for (const auto& p0 : spherical_points(6)) {
        for (double z : {0.1, 0.3, 0.5, 0.7, 0.9, 1.5, -0.4}) {
            const json p = {{"p0", point_json(p0)}, {"z", z}};
            const std::string id = "reality/" + p0.label() + "/z=" + tag(z);
            sink.guarded(id, "Prop6.1.1", p, [&] {
                const auto a = spherical_az(base, SpectralParam(base, z), p0, opt);
                sink.check(id, "Prop6.1.1", p, a.value, std::abs(a.value.imag()), cfg.tol,
                           certified(a.tail_bound, a.value, cfg.tol));
            });
        }
    }

    // Contraction on the unitary range z = i t, t at midpoints of 20 cells of one period.
    const double period = 2.0 * std::numbers::pi / std::abs(base.log_q());
    for (const auto& p0 : spherical_points(12)) {
        for (int j = 0; j < 20; ++j) {
            const double t = (j + 0.5) * period / 20.0;
            const json p = {{"p0", point_json(p0)}, {"t", t}};
            const std::string id = "contraction/" + p0.label() + "/" + std::to_string(j);
            sink.guarded(id, "Prop6.1.1", p, [&] {
                const auto a = spherical_az(base, SpectralParam(base, cplx{0.0, t}), p0, opt);
                const double excess = std::max(std::abs(a.value) - 1.0, 0.0);
                sink.check(id, "Prop6.1.1", p, a.value, excess, 1e-8, certified(a.tail_bound, a.value, cfg.tol));
            });
        }
    }
}

// ------------------------------------------------------------- coamenability

void coamenability_suite(RowSink& sink)
{
    const auto& cfg = sink.config();
    const QBase base(cfg.q);
    SweepFixed fixed;
    fixed.series = series_options(cfg);

    const std::array<std::pair<std::string, cplx>, 2> lambdas = {
        {{"1", cplx{1.0, 0.0}}, {"exp(0.4i)", std::polar(1.0, 0.4)}}};
    const std::vector<cplx> js = {2.0, 4.0, 8.0, 16.0};
    const std::vector<cplx> ns = {5.0, 10.0, 20.0};
    for (long m = -2; m <= 2; ++m) {
        for (const auto& [lname, lambda] : lambdas) {
            fixed.m = m;
            fixed.lambda = lambda;
            const json p = {{"m", m}, {"lambda", cjson(lambda)}};
            const std::string cell = "m=" + std::to_string(m) + "/lambda=" + lname;

            const auto sweep = limit_sweep(cell, Family::Coamen, base, fixed, js, 1.0, 1e-6, true);
            emit_sweep(sink, "coamen/" + cell, "Thm5.2", p, "j", js, sweep, true, true);

            fixed.p1_per_n = -2;
            const auto avg = limit_sweep(cell, Family::AveragedCoamen, base, fixed, ns, 1.0, 0.15, true);
            emit_sweep(sink, "averaged/" + cell, "Thm5.2", p, "n", ns, avg, true, true);
        }
    }
}

// ----------------------------------------------------------------- smoothing

void smoothing_suite(RowSink& sink)
{
    const auto& cfg = sink.config();
    const QBase base(cfg.q);
    const std::array<double, 4> ns = {4.0, 16.0, 64.0, 256.0};

    for (int k : {2, 5}) {
        const double c = 1.0 - 1.0 / k;
        for (long e : {0L, -1L, -2L, -4L}) {
            const auto p0 = IqPoint::positive(e);
            const std::string cell = "k=" + std::to_string(k) + "/" + p0.label();
            const json base_p = {{"k", k}, {"p0", point_json(p0)}};

            cplx target;
            try {
                target = spherical_az(base, SpectralParam(base, c), p0, series_options(cfg)).value;
            } catch (const std::exception& ex) {
                sink.failure("smoothing/" + cell + "/target", "Thm7.4", base_p, ex.what());
                continue;
            }

            double prev = std::numeric_limits<double>::infinity();
            double max_step = -std::numeric_limits<double>::infinity();
            bool mono = true, all_ok = true;
            for (std::size_t i = 0; i < ns.size(); ++i) {
                const double n = ns[i];
                json p = base_p;
                p["n"] = n;
                const std::string id = "smoothing/" + cell + "/n=" + tag(n);
                try {
                    const auto quad = QuadratureSpec::for_run(base, n, cfg.tol_quad);
                    const auto path = ContourPath::vertical(c, quad.half_span);
                    const auto r = gaussian_smooth(base, p0, k, n, path, quad);
                    const double dev = std::abs(r.value - target);
                    if (i + 1 == ns.size())
                        sink.check(id, "Thm7.4", p, r.value, dev, 1e-2);
                    else
                        sink.info(id, "Thm7.4", p, r.value, dev);
                    sink.check("mass/" + cell + "/n=" + tag(n), "Eq7.1", p, r.mass, std::abs(r.mass - 1.0),
                               cfg.tol_quad);
                    if (i > 0) max_step = std::max(max_step, dev - prev);
                    if (!(dev <= prev + kMonotoneSlack)) mono = false;
                    prev = dev;
                } catch (const std::exception& ex) {
                    sink.failure(id, "Thm7.4", p, ex.what());
                    all_ok = false;
                }
            }
            sink.check("smoothing/" + cell + "/monotone", "Thm7.4", base_p, max_step, std::max(max_step, 0.0),
                       kMonotoneSlack, all_ok && mono);

            json p = base_p;
            p["n"] = 16.0;
            p["delta"] = 0.05;
            const std::string id = "path_independence/" + cell;
            sink.guarded(id, "Eq7.1", p, [&] {
                const auto quad = QuadratureSpec::for_run(base, 16.0, cfg.tol_quad);
                const double d =
                    path_independence(base, p0, k, 16.0, ContourPath::vertical(c, quad.half_span),
                                      ContourPath::perturbed(c, 0.05, quad.half_span), quad);
                sink.check(id, "Eq7.1", p, d, d, 1e-6);
            });
        }
    }
}

// ------------------------------------------------------------------ approxid

void approxid_suite(RowSink& sink)
{
    const auto& cfg = sink.config();
    const QBase base(cfg.q);
    const long w = cfg.max_exponent;

    const auto sym = Symbol::min_one_abs();
    {
        const json p = {{"symbol", sym.name}, {"max_exponent", w}};
        const bool ok = decay_claim_holds(sym, base, w);
        sink.check("decay_claim/" + sym.name, "Thm6.3", p, ok ? 1.0 : 0.0, ok ? 0.0 : 1.0, 0.0);
    }

    std::array<double, 3> gaps{};
    const std::array<double, 3> zs = {0.9, 0.99, 0.999};
    bool ok = true;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const json p = {{"symbol", sym.name}, {"z", zs[i]}, {"max_exponent", w}};
        const std::string id = "gap/" + sym.name + "/z=" + tag(zs[i]);
        try {
            const auto g = approx_identity_gap(base, SpectralParam(base, zs[i]), sym, w);
            gaps[i] = g.gap_total;
            if (i + 1 == zs.size())
                sink.check(id, "Thm6.3", p, g.gap_total, g.gap_total, 0.02);
            else
                sink.info(id, "Thm6.3", p, g.gap_total, g.gap_total);
        } catch (const std::exception& ex) {
            sink.failure(id, "Thm6.3", p, ex.what());
            ok = false;
        }
    }
    {
        const json p = {{"symbol", sym.name}, {"z", json::array({0.9, 0.99})}};
        sink.check("gap/" + sym.name + "/decrease", "Thm6.3", p, gaps[1], gaps[1], gaps[0], ok);
    }

    const auto zero = Symbol::zero();
    const json p = {{"symbol", zero.name}, {"z", 0.9}, {"max_exponent", w}};
    sink.guarded("gap/" + zero.name, "Thm6.3", p, [&] {
        const auto g = approx_identity_gap(base, SpectralParam(base, 0.9), zero, w);
        sink.check("gap/" + zero.name, "Thm6.3", p, g.gap_total, g.gap_total, 0.0);
    });
}

std::string header_comment(const RunConfig& config)
{
    std::string out;
    for (const auto& w : config_warnings(config)) out += "# warning: " + w + "\n";
    return out;
}

json header_json(const RunConfig& config)
{
    json h = {{"q", config.q},
              {"tolerances", {{"tol", config.tol}, {"tol_quad", config.tol_quad}}},
              {"max_exponent", config.max_exponent},
              {"max_terms", config.max_terms},
              {"version", std::string(kVersion)}};
    h["warnings"] = config_warnings(config);
    return h;
}

bool write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << content;
    return static_cast<bool>(out);
}

}  // namespace

std::string_view to_string(Suite suite) noexcept { return kSuiteNames[static_cast<std::size_t>(suite)]; }

std::optional<Suite> parse_suite(std::string_view name)
{
    for (std::size_t i = 0; i < kSuiteNames.size(); ++i)
        if (kSuiteNames[i] == name) return static_cast<Suite>(i);
    return std::nullopt;
}

std::vector<Suite> all_suites()
{
    return {Suite::Identities, Suite::Spherical, Suite::Coamenability, Suite::Smoothing, Suite::ApproxId};
}

std::string_view to_string(ReportFormat format) noexcept
{
    switch (format) {
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Json: return "json";
    case ReportFormat::Both: return "both";
    }
    return "csv";
}

std::optional<ReportFormat> parse_format(std::string_view name)
{
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    if (name == "both") return ReportFormat::Both;
    return std::nullopt;
}

std::string_view to_string(Verdict verdict) noexcept
{
    switch (verdict) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Info: return "info";
    }
    return "info";
}

std::vector<std::string> validate(const RunConfig& config)
{
    std::vector<std::string> errors;
    if (!(config.q > 0.0 && config.q < 1.0)) errors.push_back("q must lie in (0, 1)");
    if (!(config.tol > 0.0) || !std::isfinite(config.tol)) errors.push_back("tol must be positive");
    if (!(config.tol_quad > 0.0) || !std::isfinite(config.tol_quad)) errors.push_back("tol_quad must be positive");
    if (config.max_exponent < 1) errors.push_back("max_exponent must be a positive integer");
    if (config.max_terms < 1) errors.push_back("max_terms must be a positive integer");
    if (config.suites.empty()) errors.push_back("no suite selected");
    if (config.out_dir.empty()) errors.push_back("out_dir is empty");
    return errors;
}

std::vector<std::string> config_warnings(const RunConfig& config)
{
    std::vector<std::string> w;
    if (config.q < 0.1 || config.q > 0.95)
        w.push_back("q = " + tag(config.q) + " lies outside [0.1, 0.95]; default tolerances are not calibrated there");
    return w;
}

std::size_t SuiteReport::count(Verdict v) const
{
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [v](const auto& r) { return r.verdict == v; }));
}

SuiteReport run_checks(Suite suite, const RunConfig& config)
{
    SuiteReport report;
    report.suite = suite;
    RowSink sink(report, config);
    switch (suite) {
    case Suite::Identities: identities_suite(sink); break;
    case Suite::Spherical: spherical_suite(sink); break;
    case Suite::Coamenability: coamenability_suite(sink); break;
    case Suite::Smoothing: smoothing_suite(sink); break;
    case Suite::ApproxId: approxid_suite(sink); break;
    }
    return report;
}

std::string render_csv(const SuiteReport& report)
{
    std::string out = "suite,check_id,paper_anchor,param_json,value_re,value_im,deviation,threshold,verdict\n";
    const std::string suite(to_string(report.suite));
    for (const auto& r : report.rows) {
        out += suite + "," + r.check_id + "," + r.paper_anchor + "," + csv_quote(r.param_json) + "," +
               fmt(r.value.real()) + "," + fmt(r.value.imag()) + "," + fmt(r.deviation) + "," +
               (r.threshold ? fmt(*r.threshold) : std::string()) + "," + std::string(to_string(r.verdict)) + "\n";
    }
    return out;
}

std::string render_json(const SuiteReport& report, const RunConfig& config)
{
    json rows = json::array();
    const std::string suite(to_string(report.suite));
    for (const auto& r : report.rows) {
        rows.push_back({{"suite", suite},
                        {"check_id", r.check_id},
                        {"paper_anchor", r.paper_anchor},
                        {"params", json::parse(r.param_json)},
                        {"value_re", number(r.value.real())},
                        {"value_im", number(r.value.imag())},
                        {"deviation", number(r.deviation)},
                        {"threshold", r.threshold ? number(*r.threshold) : json(nullptr)},
                        {"verdict", std::string(to_string(r.verdict))}});
    }
    json doc = {{"header", header_json(config)},
                {"suite", suite},
                {"verdict", report.pass() ? "pass" : "fail"},
                {"rows", std::move(rows)}};
    return doc.dump(2) + "\n";
}

std::string render_summary_csv(const std::vector<SuiteReport>& reports)
{
    std::string out = "suite,rows,passed,failed,info,verdict\n";
    for (const auto& r : reports) {
        out += std::string(to_string(r.suite)) + "," + std::to_string(r.rows.size()) + "," +
               std::to_string(r.count(Verdict::Pass)) + "," + std::to_string(r.count(Verdict::Fail)) + "," +
               std::to_string(r.count(Verdict::Info)) + "," + (r.pass() ? "pass" : "fail") + "\n";
    }
    return out;
}

std::string render_summary_json(const std::vector<SuiteReport>& reports, const RunConfig& config)
{
    json suites = json::array();
    bool all = true;
    for (const auto& r : reports) {
        all = all && r.pass();
        suites.push_back({{"suite", std::string(to_string(r.suite))},
                          {"rows", r.rows.size()},
                          {"passed", r.count(Verdict::Pass)},
                          {"failed", r.count(Verdict::Fail)},
                          {"info", r.count(Verdict::Info)},
                          {"verdict", r.pass() ? "pass" : "fail"}});
    }
    json doc = {{"header", header_json(config)}, {"verdict", all ? "pass" : "fail"}, {"suites", std::move(suites)}};
    return doc.dump(2) + "\n";
}

RunOutcome run_suite(const RunConfig& config)
{
    RunOutcome outcome;
    outcome.messages = validate(config);
    if (!outcome.messages.empty()) {
        outcome.exit_code = 2;
        return outcome;
    }

    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec || !std::filesystem::is_directory(config.out_dir)) {
        outcome.messages.push_back("cannot create output directory " + config.out_dir.string());
        outcome.exit_code = 2;
        return outcome;
    }

    const bool csv = config.format != ReportFormat::Json;
    const bool js = config.format != ReportFormat::Csv;
    auto emit = [&](const std::string& name, const std::string& content) {
        const auto path = config.out_dir / name;
        if (write_file(path, content))
            outcome.files.push_back(path);
        else
            outcome.messages.push_back("failed to write " + path.string());
    };

    // Canonical order, duplicates dropped.
    std::vector<Suite> order;
    for (Suite s : all_suites())
        if (std::find(config.suites.begin(), config.suites.end(), s) != config.suites.end()) order.push_back(s);

    for (Suite s : order) {
        auto report = run_checks(s, config);
        const std::string stem(to_string(s));
        if (csv) emit(stem + ".csv", header_comment(config) + render_csv(report));
        if (js) emit(stem + ".json", render_json(report, config));
        outcome.reports.push_back(std::move(report));
    }
    if (csv) emit("summary.csv", header_comment(config) + render_summary_csv(outcome.reports));
    if (js) emit("summary.json", render_summary_json(outcome.reports, config));

    const bool all_pass = std::all_of(outcome.reports.begin(), outcome.reports.end(), [](const auto& r) { return r.pass(); });
    const bool write_ok = outcome.files.size() == order.size() * ((csv ? 1 : 0) + (js ? 1 : 0)) + (csv ? 1 : 0) + (js ? 1 : 0);
    outcome.exit_code = (all_pass && write_ok) ? 0 : 1;
    return outcome;
}

}  // namespace qsu
