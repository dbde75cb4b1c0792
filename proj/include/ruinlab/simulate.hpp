// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

//! Seeded Monte Carlo for the delayed dual risk process.
//!
//! Realized profits after the present time t form a non-homogeneous Poisson
//! process with intensity lambda * L(s). It is generated by thinning a
//! homogeneous rate-lambda candidate stream, accepting a candidate at s with
//! probability L(s). The surplus is linear between realized profits, so ruin
//! times are computed exactly without any time stepping.
//!
//! Path i of a run draws from PathStream(seed, i). Per-path results are
//! stored by index and reduced in index order, so estimates are bit-identical
//! for any number of worker threads.

#pragma once

#include <cstdint>
#include <algorithm>
#include <optional>
#include <thread>
#include <vector>

#include "ruinlab/model.hpp"
#include "ruinlab/rng.hpp"

namespace ruinlab {

struct Jump {
    double time = 0.0;
    double amount = 0.0;
};

struct PathRecord {
    std::vector<Jump> realized_jumps;
    std::optional<double> ruin_time;
    std::optional<double> surplus_at_horizon;
    double horizon = 0.0;
};

/// Event-driven surplus path. Can be resumed with a later horizon; the
/// pending candidate arrival is kept, so resuming continues the same path.
class SurplusWalker {
public:
    SurplusWalker(const CheckedModel& model, double x, double t, PathStream& stream,
                  std::vector<Jump>* log = nullptr);

    /// Advances to ruin or to `horizon`, whichever comes first. Returns true on ruin.
    bool run_until(double horizon);

    double time() const { return time_; }
    double surplus() const { return surplus_; }
    bool ruined() const { return ruined_; }
    /// Realized profits so far (before ruin, if ruined).
    long jumps() const { return jumps_; }

private:
    const CheckedModel& model_;
    PathStream& stream_;
    std::vector<Jump>* log_;
    double time_;
    double surplus_;
    double next_candidate_;
    long jumps_ = 0;
    bool ruined_ = false;
};

PathRecord sample_path(const QueryPoint& q, const CheckedModel& model, double horizon,
                       std::uint64_t seed, std::uint64_t path_index = 0);

struct MonteCarloConfig {
    long n_paths = 100000;
    std::uint64_t seed = 1;
    /// Absolute end time of the simulation window; a per-estimator default when unset.
    std::optional<double> horizon;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct IntervalEstimate {
    double point = 0.0;
    double std_error = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    long n_paths = 0;
    std::uint64_t seed = 0;
    double horizon = 0.0;
    /// Paths left without an outcome (mean ruin time after the extension cap).
    long unresolved = 0;
};

/// t + max(50 / net_margin, 2 x / rho).
double default_ruin_horizon(const QueryPoint& q, const CheckedModel& model);

/// psi(x,t). Paths still alive at the horizon H are closed with the
/// large-surplus bounds evaluated at (X_H, H); the averaged bounds give
/// [lower, upper], their midpoint the point estimate.
IntervalEstimate estimate_ruin_probability(const QueryPoint& q, const CheckedModel& model,
                                           const MonteCarloConfig& cfg);

/// E[exp(-theta tau_t)], closed at the horizon like estimate_ruin_probability.
IntervalEstimate estimate_ruin_laplace(const QueryPoint& q, double theta,
                                       const CheckedModel& model, const MonteCarloConfig& cfg);

/// E[tau_t] when lambda E[Y] < rho. Paths alive at the horizon are resumed
/// with the horizon span doubled, up to 40 times; [lower, upper] is a 99% CI.
IntervalEstimate estimate_ruin_time_mean(const QueryPoint& q, const CheckedModel& model,
                                         const MonteCarloConfig& cfg);

struct DensityEstimate {
    double origin = 0.0;
    double bin_width = 0.0;
    /// Ruins that realized at least one profit, per bin starting at origin.
    std::vector<long> bin_counts;
    /// bin_counts / n_paths / bin_width
    std::vector<double> density;
    long atom_count = 0;
    long survivor_count = 0;
    double atom_frequency = 0.0;
    double atom_std_error = 0.0;
    double survival_frequency = 0.0;
    long n_paths = 0;
    std::uint64_t seed = 0;
    double horizon = 0.0;
};

/// Histogram of ruin times. Ruin with no realized profit is counted as the
/// atom; every path is exactly one of atom, binned ruin or survivor.
DensityEstimate estimate_ruin_density(const QueryPoint& q, const CheckedModel& model,
                                      const MonteCarloConfig& cfg, double bin_width);

/// Mean number of realized profits in (from, to].
IntervalEstimate estimate_realized_count(const CheckedModel& model, double from, double to,
                                         const MonteCarloConfig& cfg);

namespace detail {

unsigned resolve_threads(unsigned requested);

/// out[i] = fn(i) for i in [0, n), split in contiguous chunks across threads.
template <class T, class Fn>
std::vector<T> map_paths(long n, unsigned threads, Fn fn)
{
    std::vector<T> out(static_cast<std::size_t>(n));
    threads = std::max(1u, std::min<unsigned>(resolve_threads(threads),
                                              static_cast<unsigned>(std::max(n, 1L))));
    if (threads == 1) {
        for (long i = 0; i < n; ++i)
            out[i] = fn(i);
        return out;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        const long begin = n * w / threads;
        const long end = n * (w + 1) / threads;
        pool.emplace_back([&out, &fn, begin, end] {
            for (long i = begin; i < end; ++i)
                out[i] = fn(i);
        });
    }
    pool.clear();  // join
    return out;
}

}  // namespace detail

}  // namespace ruinlab
