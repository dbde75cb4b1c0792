// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ruinlab/analytics.hpp"
#include "ruinlab/cli/commands.hpp"
#include "ruinlab/exact.hpp"
#include "ruinlab/lundberg.hpp"
#include "ruinlab/numerics.hpp"
#include "ruinlab/simulate.hpp"

using namespace ruinlab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Records a failed check and keeps the first few messages.
class Checker {
public:
    void expect(bool ok, const std::string& what)
    {
        ++checks_;
        if (ok)
            return;
        ++failures_;
        if (failures_ <= 3)
            messages_ += (messages_.empty() ? "" : "; ") + what;
    }

    Outcome outcome(const std::string& summary) const
    {
        if (failures_ == 0)
            return {true, summary + ", " + std::to_string(checks_) + " checks"};
        return {false, std::to_string(failures_) + "/" + std::to_string(checks_) +
                           " checks failed: " + messages_};
    }

private:
    int checks_ = 0;
    int failures_ = 0;
    std::string messages_;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c, d);
    return buf;
}

struct CliResult {
    int code;
    std::string out;
};

CliResult cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "ruinlab");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str() + err.str()};
}

/// Rows of a CSV body with the header row dropped; cells as strings.
std::vector<std::vector<std::string>> csv_body(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');)
            cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

std::vector<DelayDistribution> delay_families()
{
    return {DelayDistribution::zero(),          DelayDistribution::constant(1.0),
            DelayDistribution::uniform(1.0),    DelayDistribution::exponential(1.0),
            DelayDistribution::power_tail(3.0), DelayDistribution::gaussian_tail(1.0)};
}

CheckedModel table2_base(DelayDistribution d)
{
    return validate_model({1.0, 2.0}, ProfitDistribution::exponential(1.0), d);
}

MonteCarloConfig mc(std::uint64_t seed)
{
    MonteCarloConfig cfg;
    cfg.n_paths = 100000;
    cfg.seed = seed;
    return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Compares a `--raw` table against reference values (NaN marks NA).
void compare_table(Checker& c, const std::string& command,
                   const std::vector<std::vector<double>>& reference)
{
    const auto r = cli({command, "--raw", "--digits", "17"});
    c.expect(r.code == 0, command + " exit code " + std::to_string(r.code));
    const auto rows = csv_body(r.out);
    c.expect(rows.size() == reference.size(), command + " row count");
    for (std::size_t i = 0; i < std::min(rows.size(), reference.size()); ++i) {
        c.expect(rows[i].size() == reference[i].size() + 1, command + " column count");
        for (std::size_t j = 0; j < std::min(rows[i].size() - 1, reference[i].size()); ++j) {
            const auto& cell = rows[i][j + 1];
            const double want = reference[i][j];
            if (std::isnan(want)) {
                c.expect(cell == "NA", command + " expected NA at row " + std::to_string(i));
                continue;
            }
            const double got = cell == "NA" ? std::numeric_limits<double>::quiet_NaN()
                                            : std::stod(cell);
            c.expect(std::abs(got - want) <= 5e-4,
                     command + " cell " + rows[i][0] + "/" + std::to_string(j) + ": " + cell);
        }
    }
}

Outcome table1()
{
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    compare_table(c, "table1",
                  {{1.000, 1.000, 0.990, 0.980, 0.970},
                   {1.000, 0.990, 0.980, 0.970, 0.961},
                   {0.995, 0.985, 0.975, 0.966, 0.956},
                   {0.995, 0.985, 0.975, 0.966, 0.956},
                   {0.995, 0.985, 0.975, 0.966, 0.956}});
    const double elapsed = seconds_since(start);
    c.expect(elapsed < 1.0, fmt("runtime %.3f s", elapsed));
    return c.outcome(fmt("%.3f s", elapsed));
}

Outcome table2()
{
    Checker c;
    const double na = std::numeric_limits<double>::quiet_NaN();
    compare_table(c, "table2",
                  {{na, na, na, 0.595, 0.487},
                   {na, na, 0.622, 0.509, 0.417},
                   {na, 0.692, 0.566, 0.464, 0.380},
                   {0.819, 0.670, 0.549, 0.449, 0.368}});
    return c.outcome("14 values, 6 NA");
}

Outcome lundberg_closed_forms()
{
    Checker c;
    double worst_root = 0.0;
    double worst_series = 0.0;
    for (double rho : {0.5, 1.0, 2.0, 3.0, 4.0})
        for (double lambda : {5.0, 8.0})
            for (double nu : {0.5, 1.0}) {
                const ModelParams p{rho, lambda};
                const auto profit = ProfitDistribution::exponential(nu);
                const double alpha = solve_alpha(p, profit).value;
                worst_root = std::max(worst_root, std::abs(alpha - (lambda / rho - nu)));
                for (double theta : {0.3, 2.0}) {
                    // rho b^2 + (rho nu - lambda - theta) b - theta nu = 0, positive root
                    const double b = rho * nu - lambda - theta;
                    const double beta = (-b + std::sqrt(b * b + 4 * rho * theta * nu)) / (2 * rho);
                    worst_root = std::max(worst_root,
                                          std::abs(solve_beta(p, profit, theta).value - beta));
                }
            }
    c.expect(worst_root <= 1e-10, fmt("closed-form error %.3g", worst_root));

    for (const auto& profit : {ProfitDistribution::exponential(1.0), ProfitDistribution::exponential(0.4),
                               ProfitDistribution::erlang(2, 0.8), ProfitDistribution::erlang(3, 2.0)})
        for (double theta : {0.1, 1.0, 4.0}) {
            const ModelParams p{1.0, 2.0};
            const double d =
                std::abs(beta_series(p, profit, theta) - solve_beta(p, profit, theta).value);
            worst_series = std::max(worst_series, d);
            c.expect(d <= 1e-6, "series " + profit.to_string() + fmt(" theta %g: %.3g", theta, d));
        }
    return c.outcome(fmt("max root error %.2g, max series error %.2g", worst_root, worst_series));
}

Outcome sandwich()
{
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    double worst = -std::numeric_limits<double>::infinity();
    std::uint64_t seed = 100;
    for (const auto& d : delay_families()) {
        const auto m = table2_base(d);
        for (double x : {1.0, 2.5, 5.0})
            for (double t : {0.0, 0.5, 2.0}) {
                const auto b = ruin_prob_bounds({x, t}, m);
                const auto est = estimate_ruin_probability({x, t}, m, mc(seed++));
                const double lo = b.lower - 3 * est.std_error;
                const double hi = b.upper + 3 * est.std_error;
                const bool ok = est.lower >= lo && est.upper <= hi;
                worst = std::max({worst, lo - est.lower, est.upper - hi});
                c.expect(ok, d.to_string() + fmt(" x=%g t=%g: mc [%.6g, %.6g]", x, t, est.lower,
                                                 est.upper) +
                                 fmt(" vs [%.6g, %.6g]", lo, hi));
            }
    }
    const double elapsed = seconds_since(start);
    c.expect(elapsed < 300.0, fmt("runtime %.1f s", elapsed));
    return c.outcome(fmt("%.1f s, worst excess %.3g", elapsed, worst));
}

Outcome exact_vs_mc()
{
    Checker c;
    double worst = 0.0;
    std::uint64_t seed = 200;

    const auto m1 = validate_model({1.0, 0.02}, ProfitDistribution::exponential(0.01),
                                   DelayDistribution::constant(2.0));
    for (double x : {1.0, 2.5, 4.5})
        for (double t : {0.5, 1.5, 3.0}) {
            const double want = ruin_prob_constant_delay({x, t}, m1);
            MonteCarloConfig cfg = mc(seed++);
            cfg.horizon = t + 2000.0;
            const auto est = estimate_ruin_probability({x, t}, m1, cfg);
            const double z = est.std_error > 0 ? std::abs(est.point - want) / est.std_error
                                               : (est.point == want ? 0.0 : INFINITY);
            worst = std::max(worst, z);
            c.expect(z <= 3.0, fmt("constant x=%g t=%g: exact %.6g mc %.6g", x, t, want, est.point));
        }

    const auto m2 = table2_base(DelayDistribution::uniform(1.0));
    for (QueryPoint q : {QueryPoint{0.8, 0.25}, QueryPoint{1.0, 0.25}, QueryPoint{0.6, 0.5},
                         QueryPoint{1.0, 0.5}, QueryPoint{0.4, 0.75}, QueryPoint{1.0, 0.75},
                         QueryPoint{0.2, 1.0}, QueryPoint{1.0, 1.0}, QueryPoint{2.0, 1.5}}) {
        const double want = ruin_prob_bounded_delay(q, m2);
        const auto est = estimate_ruin_probability(q, m2, mc(seed++));
        const double z = est.std_error > 0 ? std::abs(est.point - want) / est.std_error
                                           : (est.point == want ? 0.0 : INFINITY);
        worst = std::max(worst, z);
        c.expect(z <= 3.0, fmt("bounded x=%g t=%g: exact %.6g mc %.6g", q.x, q.t, want, est.point));
    }
    return c.outcome(fmt("max |z| %.2f", worst));
}

/// Integral of g(T) f(T) dT over the continuous part, by adaptive quadrature.
double continuous_part(const AtomPlusDensity& law, const std::function<double(double)>& g)
{
    if (!law.has_density())
        return 0.0;
    return numerics::integrate([&](double T) { return g(T) * law.density(T); },
                               law.support_start(), std::numeric_limits<double>::infinity(),
                               1e-12)
        .value;
}

const std::vector<QueryPoint> kLawPoints = {{2.0, 0.25}, {1.0, 0.5}, {3.0, 2.0}};

CheckedModel constant_law_model()
{
    return table2_base(DelayDistribution::constant(1.0));
}

Outcome normalization()
{
    Checker c;
    const auto m = constant_law_model();
    double worst = 0.0;
    for (const auto& q : kLawPoints) {
        const auto law = ruin_density_constant_delay(q, m);
        const double total = law.atom_mass() + continuous_part(law, [](double) { return 1.0; }) +
                             (1.0 - ruin_prob_constant_delay(q, m));
        worst = std::max(worst, std::abs(total - 1.0));
        c.expect(std::abs(total - 1.0) <= 1e-5, fmt("x=%g t=%g: total %.10g", q.x, q.t, total));
    }
    return c.outcome(fmt("max deviation %.2g", worst));
}

Outcome laplace_consistency()
{
    Checker c;
    const auto m = constant_law_model();
    double worst = 0.0;
    for (const auto& q : kLawPoints) {
        const auto law = ruin_density_constant_delay(q, m);
        for (double theta : {0.5, 1.0, 2.0}) {
            const double numeric =
                law.atom_mass() * std::exp(-theta * law.atom_location()) +
                continuous_part(law, [&](double T) { return std::exp(-theta * T); });
            const double closed = ruin_laplace_constant_delay(q, theta, m);
            worst = std::max(worst, std::abs(numeric - closed));
            c.expect(std::abs(numeric - closed) <= 1e-4,
                     fmt("x=%g t=%g theta=%g: %.8g vs %.8g", q.x, q.t, theta, numeric) +
                         fmt(" closed %.8g", closed));
        }
    }
    return c.outcome(fmt("max deviation %.2g", worst));
}

Outcome pide()
{
    Checker c;
    double worst = 0.0;
    const auto m1 = validate_model({1.0, 0.02}, ProfitDistribution::exponential(0.01),
                                   DelayDistribution::constant(2.0));
    const Surface constant = [&](double x, double t) {
        return ruin_prob_constant_delay({x, t}, m1);
    };
    // pre_delay_high and post_delay, away from the kinks at x = rho (ell - t) and t = ell
    for (QueryPoint q : {QueryPoint{3.0, 0.5}, QueryPoint{4.0, 0.5}, QueryPoint{2.5, 1.0},
                         QueryPoint{4.5, 1.5}, QueryPoint{1.0, 1.5}, QueryPoint{0.5, 3.0},
                         QueryPoint{2.5, 3.5}, QueryPoint{4.5, 4.5}, QueryPoint{10.0, 2.5}}) {
        const double r = std::abs(pide_residual(constant, q, m1));
        worst = std::max(worst, r);
        c.expect(r <= 1e-6, fmt("constant x=%g t=%g: %.3g", q.x, q.t, r));
    }

    const auto m2 = table2_base(DelayDistribution::uniform(1.0));
    const Surface bounded = [&](double x, double t) {
        return ruin_prob_bounded_delay({x, t}, m2);
    };
    for (QueryPoint q : {QueryPoint{0.8, 0.25}, QueryPoint{1.0, 0.25}, QueryPoint{2.0, 0.25},
                         QueryPoint{0.6, 0.5}, QueryPoint{1.0, 0.5}, QueryPoint{3.0, 0.5},
                         QueryPoint{0.4, 0.75}, QueryPoint{1.0, 0.75}, QueryPoint{2.5, 0.9}}) {
        const double r = std::abs(pide_residual(bounded, q, m2));
        worst = std::max(worst, r);
        c.expect(r <= 1e-6, fmt("bounded x=%g t=%g: %.3g", q.x, q.t, r));
    }
    return c.outcome(fmt("max |residual| %.2g", worst));
}

Outcome mean_ruin_time()
{
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    const auto constant = validate_model({1.0, 0.5}, ProfitDistribution::exponential(1.0),
                                         DelayDistribution::constant(2.0));
    const auto a = estimate_ruin_time_mean({10.0, 0.0}, constant, mc(300));
    c.expect(a.lower <= 18.0 && 18.0 <= a.upper,
             fmt("constant delay CI [%.5g, %.5g] misses 18", a.lower, a.upper));

    const auto expo = validate_model({1.0, 0.5}, ProfitDistribution::exponential(1.0),
                                     DelayDistribution::exponential(1.0));
    const auto b = estimate_ruin_time_mean({10.0, 0.0}, expo, mc(301));
    c.expect(b.lower <= 19.0 + std::exp(-10.0) && b.upper >= 19.0,
             fmt("exponential delay CI [%.5g, %.5g] misses [19, 19+e^-10]", b.lower, b.upper));
    c.expect(a.unresolved == 0 && b.unresolved == 0, "unresolved paths");

    const double elapsed = seconds_since(start);
    c.expect(elapsed < 120.0, fmt("runtime %.1f s", elapsed));
    return c.outcome(fmt("CIs [%.4f, %.4f]", a.lower, a.upper) +
                     fmt(" and [%.4f, %.4f], %.1f s", b.lower, b.upper, elapsed));
}

Outcome thinning()
{
    Checker c;
    double worst = 0.0;
    std::uint64_t seed = 400;
    for (const auto& d : delay_families()) {
        const auto m = table2_base(d);
        for (double s : {1.0, 5.0, 20.0}) {
            const double want = 2.0 * d.cdf_integral(0.0, s);
            const auto est = estimate_realized_count(m, 0.0, s, mc(seed++));
            const double z = est.std_error > 0 ? std::abs(est.point - want) / est.std_error
                                               : (est.point == want ? 0.0 : INFINITY);
            worst = std::max(worst, z);
            c.expect(z <= 3.0, d.to_string() + fmt(" s=%g: mean %.6g expected %.6g", s, est.point,
                                                   want));
        }
    }
    return c.outcome(fmt("max |z| %.2f", worst));
}

Outcome determinism()
{
    Checker c;
    const unsigned many = std::max(4u, std::thread::hardware_concurrency());
    int runs = 0;
    for (const char* quantity : {"prob", "laplace", "density", "count"}) {
        std::vector<std::string> args = {"simulate", "--quantity", quantity, "--delay", "exp:1",
                                         "--lambda", "2", "--x", "0.5,2", "--t", "0,1",
                                         "--theta", "1", "--T", "4", "--paths", "20000",
                                         "--seed", "2024"};
        auto one = args;
        one.insert(one.end(), {"--threads", "1"});
        auto n = args;
        n.insert(n.end(), {"--threads", std::to_string(many)});
        const auto a = cli(one);
        const auto b = cli(n);
        c.expect(a.code == 0 && b.code == 0, std::string(quantity) + " failed: " + a.out);
        c.expect(a.out == b.out, std::string(quantity) + " differs between 1 and " +
                                     std::to_string(many) + " threads");
        c.expect(a.out == cli(one).out, std::string(quantity) + " not reproducible");
        ++runs;
    }
    return c.outcome(std::to_string(runs) + " quantities, 1 vs " + std::to_string(many) +
                     " threads");
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"table 1 reproduction", table1},
        {"table 2 reproduction", table2},
        {"Lundberg closed forms", lundberg_closed_forms},
        {"bounds sandwich Monte Carlo", sandwich},
        {"exact vs Monte Carlo", exact_vs_mc},
        {"density normalization", normalization},
        {"Laplace-density consistency", laplace_consistency},
        {"PIDE residuals", pide},
        {"mean ruin time", mean_ruin_time},
        {"thinning correctness", thinning},
        {"determinism across threads", determinism},
    };

    int failed = 0;
    int index = 0;
    for (const auto& [name, fn] : criteria) {
        ++index;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", index - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
