// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ruinlab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ruinlab/errors.hpp"
#include "ruinlab/lundberg.hpp"

namespace ruinlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxHorizonExtensions = 40;
constexpr double kZ99 = 2.5758293035489004;

void check_config(const MonteCarloConfig& cfg)
{
    if (cfg.n_paths < 1)
        throw ModelError("n_paths must be at least 1");
}

struct Moments {
    double mean = 0.0;
    double std_error = 0.0;
};

// two-pass mean and standard error, reduced in index order
template <class Get>
Moments moments(long n, Get get)
{
    Moments m;
    if (n <= 0)
        return m;
    double sum = 0.0;
    for (long i = 0; i < n; ++i)
        sum += get(i);
    m.mean = sum / static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (long i = 0; i < n; ++i) {
            const double d = get(i) - m.mean;
            ss += d * d;
        }
        m.std_error = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    }
    return m;
}

struct Closure {
    double lower;
    double upper;
};

double resolve_horizon(const MonteCarloConfig& cfg, double fallback)
{
    return cfg.horizon ? *cfg.horizon : fallback;
}

}  // namespace

namespace detail {

unsigned resolve_threads(unsigned requested)
{
    if (requested > 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace detail

//---------------------------------------------------------------------------//
// SurplusWalker
//---------------------------------------------------------------------------//

SurplusWalker::SurplusWalker(const CheckedModel& model, double x, double t, PathStream& stream,
                             std::vector<Jump>* log)
    : model_(model), stream_(stream), log_(log), time_(t), surplus_(x)
{
    next_candidate_ = time_ + stream_.exponential(model_.lambda());
}

bool SurplusWalker::run_until(double horizon)
{
    if (ruined_)
        return true;
    const double rho = model_.rho();
    const auto& delay = model_.delay();
    const auto& profit = model_.profit();

    while (true) {
        const double ruin_at = surplus_ <= 0.0 ? time_ : time_ + surplus_ / rho;
        if (ruin_at <= next_candidate_ && ruin_at <= horizon) {
            time_ = ruin_at;
            surplus_ = 0.0;
            ruined_ = true;
            return true;
        }
        if (next_candidate_ > horizon) {
            surplus_ -= rho * (horizon - time_);
            time_ = horizon;
            return false;
        }

        surplus_ = std::max(surplus_ - rho * (next_candidate_ - time_), 0.0);
        time_ = next_candidate_;
        const double accept = delay.cdf(time_);
        if (accept >= 1.0 || (accept > 0.0 && stream_.uniform() < accept)) {
            const double y = profit.sample([this] { return stream_.uniform(); });
            surplus_ += y;
            ++jumps_;
            if (log_)
                log_->push_back({time_, y});
        }
        next_candidate_ = time_ + stream_.exponential(model_.lambda());
    }
}

PathRecord sample_path(const QueryPoint& q, const CheckedModel& model, double horizon,
                       std::uint64_t seed, std::uint64_t path_index)
{
    check_query(q);
    if (!(horizon > q.t))
        throw ModelError("horizon must exceed the present time t");

    PathRecord rec;
    rec.horizon = horizon;
    PathStream stream(seed, path_index);
    SurplusWalker walker(model, q.x, q.t, stream, &rec.realized_jumps);
    if (walker.run_until(horizon))
        rec.ruin_time = walker.time();
    else
        rec.surplus_at_horizon = walker.surplus();
    return rec;
}

//---------------------------------------------------------------------------//
// Estimators
//---------------------------------------------------------------------------//

double default_ruin_horizon(const QueryPoint& q, const CheckedModel& model)
{
    model.require_net_condition("default horizon");
    return q.t + std::max(50.0 / model.net_margin(), 2.0 * q.x / model.rho());
}

IntervalEstimate estimate_ruin_probability(const QueryPoint& q, const CheckedModel& model,
                                           const MonteCarloConfig& cfg)
{
    check_query(q);
    check_config(cfg);
    model.require_net_condition("ruin probability estimate");
    const double rho = model.rho();
    const double horizon = resolve_horizon(cfg, default_ruin_horizon(q, model));
    if (horizon < q.t + q.x / rho)
        throw ModelError("horizon must be at least t + x / rho");

    const double alpha = solve_alpha(model).value;
    const auto& delay = model.delay();
    const double pending_at_h = delay.tail_integral(horizon);

    auto closes = detail::map_paths<Closure>(cfg.n_paths, cfg.threads, [&](long i) -> Closure {
        PathStream stream(cfg.seed, static_cast<std::uint64_t>(i));
        SurplusWalker walker(model, q.x, q.t, stream);
        if (walker.run_until(horizon))
            return {1.0, 1.0};
        const double xh = walker.surplus();
        const double log_up = -alpha * xh + alpha * rho * pending_at_h;
        const double up = std::min(1.0, std::exp(log_up));
        const double lo = std::min(
            up, std::exp(log_up - alpha * rho * delay.tail_integral(horizon + xh / rho)));
        return {lo, up};
    });

    IntervalEstimate est;
    est.n_paths = cfg.n_paths;
    est.seed = cfg.seed;
    est.horizon = horizon;
    const auto n = cfg.n_paths;
    est.lower = moments(n, [&](long i) { return closes[i].lower; }).mean;
    est.upper = moments(n, [&](long i) { return closes[i].upper; }).mean;
    const auto mid = moments(n, [&](long i) { return 0.5 * (closes[i].lower + closes[i].upper); });
    est.point = mid.mean;
    est.std_error = mid.std_error;
    return est;
}

IntervalEstimate estimate_ruin_laplace(const QueryPoint& q, double theta,
                                       const CheckedModel& model, const MonteCarloConfig& cfg)
{
    check_query(q);
    check_config(cfg);
    if (!(theta > 0.0))
        throw ModelError("theta must be positive");
    const double rho = model.rho();
    const double fallback =
        q.t + std::max(50.0 / std::max(model.net_margin(), theta), 2.0 * q.x / rho);
    const double horizon = resolve_horizon(cfg, fallback);
    if (horizon < q.t + q.x / rho)
        throw ModelError("horizon must be at least t + x / rho");

    const double beta = solve_beta(model, theta).value;
    const double weight = std::max(beta * rho - theta, 0.0);
    const auto& delay = model.delay();
    const double pending_at_h = delay.tail_integral(horizon);

    auto closes = detail::map_paths<Closure>(cfg.n_paths, cfg.threads, [&](long i) -> Closure {
        PathStream stream(cfg.seed, static_cast<std::uint64_t>(i));
        SurplusWalker walker(model, q.x, q.t, stream);
        if (walker.run_until(horizon)) {
            const double v = std::exp(-theta * walker.time());
            return {v, v};
        }
        const double xh = walker.surplus();
        const double log_up = -theta * horizon - beta * xh + weight * pending_at_h;
        return {std::exp(log_up - weight * delay.tail_integral(horizon + xh / rho)),
                std::exp(log_up)};
    });

    IntervalEstimate est;
    est.n_paths = cfg.n_paths;
    est.seed = cfg.seed;
    est.horizon = horizon;
    const auto n = cfg.n_paths;
    est.lower = moments(n, [&](long i) { return closes[i].lower; }).mean;
    est.upper = moments(n, [&](long i) { return closes[i].upper; }).mean;
    const auto mid = moments(n, [&](long i) { return 0.5 * (closes[i].lower + closes[i].upper); });
    est.point = mid.mean;
    est.std_error = mid.std_error;
    return est;
}

IntervalEstimate estimate_ruin_time_mean(const QueryPoint& q, const CheckedModel& model,
                                         const MonteCarloConfig& cfg)
{
    check_query(q);
    check_config(cfg);
    if (model.net_margin() >= 0.0)
        throw DomainError("ruin time has infinite mean unless lambda*E[Y] < rho");

    const double drift = -model.net_margin();
    const double horizon =
        resolve_horizon(cfg, q.t + 2.0 * (q.x + model.rho()) / drift);
    if (!(horizon > q.t))
        throw ModelError("horizon must exceed the present time t");

    auto times = detail::map_paths<double>(cfg.n_paths, cfg.threads, [&](long i) -> double {
        PathStream stream(cfg.seed, static_cast<std::uint64_t>(i));
        SurplusWalker walker(model, q.x, q.t, stream);
        double h = horizon;
        for (int k = 0; k <= kMaxHorizonExtensions; ++k) {
            if (walker.run_until(h))
                return walker.time();
            h = q.t + 2.0 * (h - q.t);
        }
        return kInf;
    });

    std::vector<double> resolved;
    resolved.reserve(times.size());
    for (double v : times)
        if (std::isfinite(v))
            resolved.push_back(v);

    IntervalEstimate est;
    est.n_paths = cfg.n_paths;
    est.seed = cfg.seed;
    est.horizon = horizon;
    est.unresolved = cfg.n_paths - static_cast<long>(resolved.size());
    const auto m = moments(static_cast<long>(resolved.size()), [&](long i) { return resolved[i]; });
    est.point = m.mean;
    est.std_error = m.std_error;
    est.lower = m.mean - kZ99 * m.std_error;
    est.upper = m.mean + kZ99 * m.std_error;
    return est;
}

DensityEstimate estimate_ruin_density(const QueryPoint& q, const CheckedModel& model,
                                      const MonteCarloConfig& cfg, double bin_width)
{
    check_query(q);
    check_config(cfg);
    if (!(bin_width > 0.0))
        throw ModelError("bin width must be positive");
    double fallback = q.t + 100.0 * (q.x + model.rho()) / model.rho();
    if (model.net_condition())
        fallback = default_ruin_horizon(q, model);
    else if (model.net_margin() < 0.0)
        fallback = q.t + 4.0 * (q.x + model.rho()) / -model.net_margin();
    const double horizon = resolve_horizon(cfg, fallback);
    if (!(horizon > q.t))
        throw ModelError("horizon must exceed the present time t");

    struct Outcome {
        double time;
        long jumps;
        bool ruined;
    };
    auto outcomes = detail::map_paths<Outcome>(cfg.n_paths, cfg.threads, [&](long i) -> Outcome {
        PathStream stream(cfg.seed, static_cast<std::uint64_t>(i));
        SurplusWalker walker(model, q.x, q.t, stream);
        const bool ruined = walker.run_until(horizon);
        return {walker.time(), walker.jumps(), ruined};
    });

    DensityEstimate est;
    est.origin = q.t;
    est.bin_width = bin_width;
    est.n_paths = cfg.n_paths;
    est.seed = cfg.seed;
    est.horizon = horizon;
    const auto n_bins = static_cast<std::size_t>(std::ceil((horizon - q.t) / bin_width));
    est.bin_counts.assign(std::max<std::size_t>(n_bins, 1), 0);
    for (const auto& o : outcomes) {
        if (!o.ruined) {
            ++est.survivor_count;
        } else if (o.jumps == 0) {
            ++est.atom_count;
        } else {
            auto bin = static_cast<std::size_t>((o.time - q.t) / bin_width);
            ++est.bin_counts[std::min(bin, est.bin_counts.size() - 1)];
        }
    }
    const double n = static_cast<double>(cfg.n_paths);
    est.density.reserve(est.bin_counts.size());
    for (long c : est.bin_counts)
        est.density.push_back(static_cast<double>(c) / n / bin_width);
    est.atom_frequency = static_cast<double>(est.atom_count) / n;
    est.atom_std_error = std::sqrt(est.atom_frequency * (1.0 - est.atom_frequency) / n);
    est.survival_frequency = static_cast<double>(est.survivor_count) / n;
    return est;
}

IntervalEstimate estimate_realized_count(const CheckedModel& model, double from, double to,
                                         const MonteCarloConfig& cfg)
{
    check_config(cfg);
    if (!(from >= 0.0) || !(to > from))
        throw ModelError("counting window must satisfy 0 <= from < to");

    auto counts = detail::map_paths<double>(cfg.n_paths, cfg.threads, [&](long i) -> double {
        PathStream stream(cfg.seed, static_cast<std::uint64_t>(i));
        SurplusWalker walker(model, kInf, from, stream);
        walker.run_until(to);
        return static_cast<double>(walker.jumps());
    });

    IntervalEstimate est;
    est.n_paths = cfg.n_paths;
    est.seed = cfg.seed;
    est.horizon = to;
    const auto m = moments(cfg.n_paths, [&](long i) { return counts[i]; });
    est.point = m.mean;
    est.std_error = m.std_error;
    est.lower = m.mean - kZ99 * m.std_error;
    est.upper = m.mean + kZ99 * m.std_error;
    return est;
}

}  // namespace ruinlab
