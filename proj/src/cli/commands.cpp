// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ruinlab/cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ruinlab/analytics.hpp"
#include "ruinlab/cli/csv.hpp"
#include "ruinlab/errors.hpp"
#include "ruinlab/exact.hpp"
#include "ruinlab/lundberg.hpp"
#include "ruinlab/simulate.hpp"

namespace ruinlab::cli {

namespace {

constexpr double na = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::pair<const char*, const char*>> kCommands = {
    {"alpha", "adjustment coefficient"},
    {"beta", "theta-shifted Lundberg root, by solver and by series"},
    {"bounds", "two-sided large-surplus bounds on the ruin probability"},
    {"laplace", "Laplace transform of the ruin time, large-surplus form"},
    {"density", "ruin-time density and atom"},
    {"mean-ruin", "bounds on the mean ruin time"},
    {"exact", "closed forms for delays with bounded support"},
    {"simulate", "Monte Carlo estimates"},
    {"table1", "ruin probabilities under a constant delay, 5x5 grid"},
    {"table2", "ruin probabilities under a uniform delay, 4x5 grid"},
    {"heatmap", "(x, t, psi) triples for a constant delay"},
};

/// Grid labels in headers, e.g. "x=0.5".
std::string label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::vector<double> or_default(const std::vector<double>& v, std::vector<double> fallback)
{
    return v.empty() ? fallback : v;
}

const std::vector<double>& required(const std::vector<double>& v, const char* key)
{
    if (v.empty())
        throw ModelError(std::string("missing grid '") + key + "'");
    return v;
}

class Emitter {
public:
    explicit Emitter(const RunConfig& cfg) : cfg_(cfg)
    {
        if (cfg.format == "csv")
            sep_ = ',';
        else if (cfg.format == "tsv")
            sep_ = '\t';
        else
            throw ModelError("format must be csv or tsv, got '" + cfg.format + "'");
        if (cfg.digits < 1 || cfg.digits > 17)
            throw ModelError("digits must lie in [1, 17]");
    }

    std::string num(double v) const { return format_number(v, cfg_.digits); }
    void write(const Table& t, std::ostream& os) const { t.write(os, sep_); }

private:
    const RunConfig& cfg_;
    char sep_ = ',';
};

QueryPoint point(double x, double t)
{
    QueryPoint q{x, t};
    check_query(q);
    return q;
}

// -- analytic commands ------------------------------------------------------//

Table cmd_beta(const RunConfig& cfg, const Emitter& e)
{
    const auto model = make_model(cfg);
    Table table({"theta", "beta", "beta_series"});
    for (double theta : required(cfg.thetas, "theta")) {
        const double b = solve_beta(model, theta).value;
        double s = na;
        try {
            s = beta_series(model.params(), model.profit(), theta);
        } catch (const ConvergenceError&) {
        }
        table.add_row({e.num(theta), e.num(b), e.num(s)});
    }
    return table;
}

Table cmd_bounds(const RunConfig& cfg, const Emitter& e)
{
    const auto model = make_model(cfg);
    Table table({"x", "t", "lower", "upper", "asymptotic", "raw_lower", "raw_upper", "eps_lower",
                 "eps_upper"});
    for (double t : or_default(cfg.ts, {0.0}))
        for (double x : required(cfg.xs, "x")) {
            const auto q = point(x, t);
            const auto b = ruin_prob_bounds(q, model);
            double el = na, eu = na;
            try {
                const auto eb = ruin_prob_epsilon_bounds(q, cfg.epsilon, model);
                el = eb.lower;
                eu = eb.upper;
            } catch (const DomainError&) {
            }
            table.add_row({e.num(x), e.num(t), e.num(b.lower), e.num(b.upper), e.num(b.asymptotic),
                           e.num(b.raw_lower), e.num(b.raw_upper), e.num(el), e.num(eu)});
        }
    return table;
}

Table cmd_laplace(const RunConfig& cfg, const Emitter& e)
{
    const auto model = make_model(cfg);
    Table table({"x", "t", "theta", "beta", "asymptotic", "lower", "upper"});
    for (double t : or_default(cfg.ts, {0.0}))
        for (double x : required(cfg.xs, "x"))
            for (double theta : required(cfg.thetas, "theta")) {
                const auto b = ruin_laplace_asymptotic(point(x, t), theta, model);
                table.add_row({e.num(x), e.num(t), e.num(theta), e.num(b.beta),
                               e.num(b.asymptotic), e.num(b.lower), e.num(b.upper)});
            }
    return table;
}

AtomPlusDensity density_law(const QueryPoint& q, const CheckedModel& model, std::string& method)
{
    const auto& delay = model.delay();
    const bool constant = std::holds_alternative<ConstantDelay>(delay.variant());
    if (method == "auto") {
        method = "asymptotic";
        if (constant)
            method = "exact";
        else if (delay.support_bound() && classify_region(q, model) != Region::pre_delay_low)
            method = "exact";
    }
    if (method == "exact")
        return constant ? ruin_density_constant_delay(q, model)
                        : ruin_density_bounded_delay(q, model);
    if (method == "asymptotic")
        return ruin_time_law_asymptotic(q, model);
    throw ModelError("method must be auto, exact or asymptotic, got '" + method + "'");
}

Table cmd_density(const RunConfig& cfg, const Emitter& e)
{
    const auto model = make_model(cfg);
    Table table({"x", "t", "T", "density", "atom_time", "atom_mass", "method"});
    for (double t : or_default(cfg.ts, {0.0}))
        for (double x : required(cfg.xs, "x")) {
            std::string method = cfg.method;
            const auto law = density_law(point(x, t), model, method);
            for (double T : required(cfg.times, "T"))
                table.add_row({e.num(x), e.num(t), e.num(T), e.num(law.density(T)),
                               e.num(law.atom_location()), e.num(law.atom_mass()), method});
        }
    return table;
}

Table cmd_mean_ruin(const RunConfig& cfg, const Emitter& e)
{
    const auto model = make_model(cfg);
    Table table({"x", "t", "lower", "upper", "asymptotic"});
    for (double t : or_default(cfg.ts, {0.0}))
        for (double x : required(cfg.xs, "x")) {
            const auto b = mean_ruin_time_bounds(point(x, t), model);
            table.add_row(
                {e.num(x), e.num(t), e.num(b.lower), e.num(b.upper), e.num(b.asymptotic)});
        }
    return table;
}

Table cmd_exact(const RunConfig& cfg, const Emitter& e)
{
    const auto model = make_model(cfg);
    const bool constant = std::holds_alternative<ConstantDelay>(model.delay().variant());
    std::vector<std::string> header{"x", "t", "region", "psi"};
    if (!cfg.thetas.empty()) {
        header.push_back("theta");
        header.push_back("laplace");
    }
    Table table(header);
    for (double t : or_default(cfg.ts, {0.0}))
        for (double x : required(cfg.xs, "x")) {
            const auto q = point(x, t);
            const Region region = classify_region(q, model);
            const bool open = constant || region != Region::pre_delay_low;
            const double psi = !open      ? na
                               : constant ? ruin_prob_constant_delay(q, model)
                                          : ruin_prob_bounded_delay(q, model);
            std::vector<std::string> row{e.num(x), e.num(t), std::string(to_string(region)),
                                         e.num(psi)};
            if (cfg.thetas.empty()) {
                table.add_row(row);
                continue;
            }
            for (double theta : cfg.thetas) {
                const double lt = !open      ? na
                                  : constant ? ruin_laplace_constant_delay(q, theta, model)
                                             : ruin_laplace_bounded_delay(q, theta, model);
                auto full = row;
                full.push_back(e.num(theta));
                full.push_back(e.num(lt));
                table.add_row(std::move(full));
            }
        }
    return table;
}

// -- reference tables --------------------------------------------------------//

std::string table_cell(const RunConfig& cfg, double v)
{
    return cfg.raw ? format_number(v, cfg.digits) : format_fixed_half_even(v, 3);
}

Table probability_grid(const RunConfig& cfg, const CheckedModel& model, std::vector<double> xs,
                       std::vector<double> ts)
{
    const bool constant = std::holds_alternative<ConstantDelay>(model.delay().variant());
    std::vector<std::string> header{"t"};
    for (double x : xs)
        header.push_back("x=" + label(x));
    Table table(header);
    for (double t : ts) {
        std::vector<std::string> row{label(t)};
        for (double x : xs) {
            const auto q = point(x, t);
            if (constant)
                row.push_back(table_cell(cfg, ruin_prob_constant_delay(q, model)));
            else if (classify_region(q, model) == Region::pre_delay_low)
                row.push_back("NA");
            else
                row.push_back(table_cell(cfg, ruin_prob_bounded_delay(q, model)));
        }
        table.add_row(std::move(row));
    }
    return table;
}

Table cmd_table1(const RunConfig& cfg)
{
    const auto model = validate_model({1.0, 0.02}, ProfitDistribution::exponential(0.01),
                                      DelayDistribution::constant(2.0));
    return probability_grid(cfg, model, or_default(cfg.xs, {0.5, 1.5, 2.5, 3.5, 4.5}),
                            or_default(cfg.ts, {0.5, 1.5, 2.5, 3.5, 4.5}));
}

Table cmd_table2(const RunConfig& cfg)
{
    const auto model = validate_model({1.0, 2.0}, ProfitDistribution::exponential(1.0),
                                      DelayDistribution::uniform(1.0));
    return probability_grid(cfg, model, or_default(cfg.xs, {0.2, 0.4, 0.6, 0.8, 1.0}),
                            or_default(cfg.ts, {0.25, 0.5, 0.75, 1.0}));
}

Table cmd_heatmap(const RunConfig& cfg, const Emitter& e)
{
    const auto model = make_model(cfg);
    if (!std::holds_alternative<ConstantDelay>(model.delay().variant()))
        throw DomainError("heatmap needs a constant delay, got " + model.delay().to_string());
    const std::vector<double> grid{0.5, 1.5, 2.5, 3.5, 4.5};
    Table table({"x", "t", "psi"});
    for (double t : or_default(cfg.ts, grid))
        for (double x : or_default(cfg.xs, grid))
            table.add_row(
                {e.num(x), e.num(t), e.num(ruin_prob_constant_delay(point(x, t), model))});
    return table;
}

// -- Monte Carlo ------------------------------------------------------------//

Table cmd_simulate(const RunConfig& cfg, const Emitter& e)
{
    const auto model = make_model(cfg);
    MonteCarloConfig mc;
    mc.n_paths = cfg.n_paths;
    mc.seed = cfg.seed;
    mc.horizon = cfg.horizon;
    mc.threads = cfg.threads;

    auto interval = [&](std::vector<std::string> row, const IntervalEstimate& r) {
        for (double v : {r.point, r.std_error, r.lower, r.upper, r.horizon})
            row.push_back(e.num(v));
        return row;
    };
    const std::vector<std::string> stats{"point", "std_error", "lower", "upper", "horizon"};
    auto with = [&](std::vector<std::string> head) {
        head.insert(head.end(), stats.begin(), stats.end());
        return head;
    };

    std::optional<Table> table;
    const auto& q = cfg.quantity;
    if (q == "prob") {
        table.emplace(with({"x", "t"}));
        for (double t : or_default(cfg.ts, {0.0}))
            for (double x : required(cfg.xs, "x"))
                table->add_row(interval({e.num(x), e.num(t)},
                                        estimate_ruin_probability(point(x, t), model, mc)));
    } else if (q == "laplace") {
        table.emplace(with({"x", "t", "theta"}));
        for (double t : or_default(cfg.ts, {0.0}))
            for (double x : required(cfg.xs, "x"))
                for (double theta : required(cfg.thetas, "theta"))
                    table->add_row(
                        interval({e.num(x), e.num(t), e.num(theta)},
                                 estimate_ruin_laplace(point(x, t), theta, model, mc)));
    } else if (q == "mean") {
        auto head = with({"x", "t"});
        head.push_back("unresolved");
        table.emplace(head);
        for (double t : or_default(cfg.ts, {0.0}))
            for (double x : required(cfg.xs, "x")) {
                const auto r = estimate_ruin_time_mean(point(x, t), model, mc);
                auto row = interval({e.num(x), e.num(t)}, r);
                row.push_back(std::to_string(r.unresolved));
                table->add_row(std::move(row));
            }
    } else if (q == "density") {
        table.emplace(std::vector<std::string>{"x", "t", "kind", "from", "to", "value", "count"});
        for (double t : or_default(cfg.ts, {0.0}))
            for (double x : required(cfg.xs, "x")) {
                const auto d = estimate_ruin_density(point(x, t), model, mc, cfg.bin_width);
                const double atom = t + x / cfg.rho;
                table->add_row({e.num(x), e.num(t), "atom", e.num(atom), e.num(atom),
                                e.num(d.atom_frequency), std::to_string(d.atom_count)});
                for (std::size_t i = 0; i < d.bin_counts.size(); ++i) {
                    const double from = d.origin + static_cast<double>(i) * d.bin_width;
                    table->add_row({e.num(x), e.num(t), "bin", e.num(from),
                                    e.num(from + d.bin_width), e.num(d.density[i]),
                                    std::to_string(d.bin_counts[i])});
                }
                table->add_row({e.num(x), e.num(t), "survival", e.num(d.horizon),
                                e.num(std::numeric_limits<double>::infinity()),
                                e.num(d.survival_frequency), std::to_string(d.survivor_count)});
            }
    } else if (q == "count") {
        table.emplace(with({"from", "to", "expected"}));
        for (double from : or_default(cfg.ts, {0.0}))
            for (double to : required(cfg.times, "T")) {
                if (to < from)
                    throw ModelError("count window needs T >= t");
                const double expected = cfg.lambda * model.delay().cdf_integral(from, to);
                table->add_row(interval({e.num(from), e.num(to), e.num(expected)},
                                        estimate_realized_count(model, from, to, mc)));
            }
    } else {
        throw ModelError("quantity must be prob, laplace, mean, density or count, got '" + q +
                         "'");
    }

    // Everything needed to rerun, minus settings that cannot change the numbers.
    RunConfig echo = cfg;
    echo.threads = 0;
    echo.out.clear();
    std::istringstream lines(to_config_text(echo));
    for (std::string line; std::getline(lines, line);)
        if (line.rfind("threads", 0) != 0)
            table->add_comment(line);
    return std::move(*table);
}

std::string usage()
{
    std::ostringstream os;
    os << "usage: ruinlab <command> [options]\n\ncommands:\n";
    for (const auto& [name, help] : kCommands) {
        os << "  " << name;
        for (std::size_t pad = std::string(name).size(); pad < 12; ++pad)
            os << ' ';
        os << help << '\n';
    }
    os << "\nrun 'ruinlab --help' for the option list\n";
    return os.str();
}

}  // namespace

void execute(const RunConfig& cfg, std::ostream& out)
{
    const Emitter e(cfg);
    std::ofstream file;
    std::ostream* os = &out;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file)
            throw ModelError("cannot open output file '" + cfg.out + "'");
        os = &file;
    }

    const auto& c = cfg.command;
    if (c == "alpha") {
        *os << e.num(solve_alpha(make_model(cfg)).value) << '\n';
        return;
    }
    std::optional<Table> table;
    if (c == "beta")
        table = cmd_beta(cfg, e);
    else if (c == "bounds")
        table = cmd_bounds(cfg, e);
    else if (c == "laplace")
        table = cmd_laplace(cfg, e);
    else if (c == "density")
        table = cmd_density(cfg, e);
    else if (c == "mean-ruin")
        table = cmd_mean_ruin(cfg, e);
    else if (c == "exact")
        table = cmd_exact(cfg, e);
    else if (c == "simulate")
        table = cmd_simulate(cfg, e);
    else if (c == "table1")
        table = cmd_table1(cfg);
    else if (c == "table2")
        table = cmd_table2(cfg);
    else if (c == "heatmap")
        table = cmd_heatmap(cfg, e);
    else
        throw ModelError("unknown command '" + c + "'");
    e.write(*table, *os);
    if (file && !(file.flush()))
        throw ModelError("failed writing '" + cfg.out + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Ruin probabilities and ruin times for the delayed dual risk model", "ruinlab"};
    app.require_subcommand(0, 1);

    std::string config_path;
    app.add_option("--config", config_path, "key = value settings file");

    // flag name -> config key
    const std::vector<std::pair<std::string, std::string>> flags = {
        {"--rho", "rho"},         {"--lambda", "lambda"},       {"--profit", "profit"},
        {"--delay", "delay"},     {"--x", "x"},                 {"--t", "t"},
        {"--theta", "theta"},     {"--T", "T"},                 {"--paths", "n_paths"},
        {"--seed", "seed"},       {"--horizon", "horizon"},     {"--threads", "threads"},
        {"--epsilon", "epsilon"}, {"--bin-width", "bin_width"}, {"--quantity", "quantity"},
        {"--method", "method"},   {"--digits", "digits"},       {"--format", "format"},
        {"--out", "out"},
    };
    const std::map<std::string, std::string> help = {
        {"profit", "exp:<nu> | erlang:<k>:<nu> | det:<y0>"},
        {"delay", "zero | const:<ell> | unif:<ell> | exp:<g> | power:<g> | gauss:<g>"},
        {"x", "surplus grid: list and/or start:stop:step"},
        {"t", "present-time grid"},
        {"theta", "Laplace arguments"},
        {"T", "ruin times (density) or window ends (count)"},
        {"quantity", "simulate: prob | laplace | mean | density | count"},
        {"method", "density: auto | exact | asymptotic"},
        {"horizon", "absolute simulation end time, or auto"},
        {"threads", "worker threads, 0 for all cores"},
    };
    std::map<std::string, std::string> values;
    std::vector<std::pair<std::string, CLI::Option*>> options;
    for (const auto& [flag, key] : flags) {
        const auto h = help.find(key);
        options.emplace_back(key, app.add_option(flag, values[key],
                                                 h == help.end() ? std::string() : h->second));
    }
    bool raw = false;
    auto* raw_flag = app.add_flag("--raw", raw, "table1/table2: full precision, no rounding");

    for (const auto& [name, text] : kCommands)
        app.add_subcommand(name, text)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "ruinlab: " << e.what() << "\n\n" << usage();
        return exit_config;
    }

    try {
        RunConfig cfg;
        if (const char* env = std::getenv("RUINLAB_SEED"); env && *env)
            apply_setting(cfg, "seed", env);
        if (!config_path.empty())
            cfg = load_config_file(config_path, cfg);
        for (const auto& [key, opt] : options)
            if (opt->count() > 0)
                apply_setting(cfg, key, values[key]);
        if (raw_flag->count() > 0)
            cfg.raw = raw;
        if (const auto subs = app.get_subcommands(); !subs.empty())
            cfg.command = subs.front()->get_name();
        if (cfg.command.empty()) {
            err << usage();
            return exit_config;
        }
        execute(cfg, out);
        return exit_ok;
    } catch (const ModelError& e) {
        err << "ruinlab: " << e.what() << '\n';
        if (std::string_view(e.what()).starts_with("unknown command"))
            err << '\n' << usage();
        return exit_config;
    } catch (const DomainError& e) {
        err << "ruinlab: " << e.what() << '\n';
        return exit_domain;
    } catch (const ConvergenceError& e) {
        err << "ruinlab: " << e.what() << '\n';
        return exit_domain;
    }
}

}  // namespace ruinlab::cli
