#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsu11/harness.hpp"

int main(int argc, char** argv)
{
    qsu::RunConfig config;
    std::vector<std::string> suites;
    std::string format = "csv";
    std::string out = config.out_dir.string();

    CLI::App app{"Verification suites for the q-series and SU_q(1,1) routines"};
    app.add_option("--q", config.q, "deformation parameter in (0,1)")->capture_default_str();
    app.add_option("--tol", config.tol, "identity and certification tolerance")->capture_default_str();
    app.add_option("--tol-quad", config.tol_quad, "quadrature tolerance")->capture_default_str();
    app.add_option("--max-exponent", config.max_exponent, "window |exponent| <= N for sup checks")->capture_default_str();
    app.add_option("--max-terms", config.max_terms, "series term cap")->capture_default_str();
    app.add_option("--suite", suites, "identities, spherical, coamenability, smoothing, approxid (repeatable; default all)");
    app.add_option("--out", out, "output directory")->capture_default_str();
    app.add_option("--format", format, "csv, json or both")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (app.count("--suite") > 0) {
        config.suites.clear();
        for (const auto& name : suites) {
            const auto s = qsu::parse_suite(name);
            if (!s) {
                std::fprintf(stderr, "error: unknown suite '%s'\n", name.c_str());
                return 2;
            }
            config.suites.push_back(*s);
        }
    }
    const auto fmt = qsu::parse_format(format);
    if (!fmt) {
        std::fprintf(stderr, "error: unknown format '%s'\n", format.c_str());
        return 2;
    }
    config.format = *fmt;
    config.out_dir = out;

    for (const auto& w : qsu::config_warnings(config)) std::fprintf(stderr, "warning: %s\n", w.c_str());

    const auto outcome = qsu::run_suite(config);
    for (const auto& m : outcome.messages) std::fprintf(stderr, "error: %s\n", m.c_str());
    for (const auto& r : outcome.reports) {
        std::printf("%-14s rows=%zu pass=%zu fail=%zu info=%zu  %s\n", std::string(qsu::to_string(r.suite)).c_str(),
                    r.rows.size(), r.count(qsu::Verdict::Pass), r.count(qsu::Verdict::Fail),
                    r.count(qsu::Verdict::Info), r.pass() ? "PASS" : "FAIL");
    }
    return outcome.exit_code;
}
