// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

//! Law of a ruin time: Dirac atoms plus an absolutely continuous part.
//!
//! Every closed-form ruin-time law in this library is a time shift of the
//! first-passage law of an undelayed dual process started from an effective
//! surplus u. That law has an atom exp(-lambda u / rho) at u / rho (no profit
//! arrives before the surplus runs out) and, for s > u / rho, the density
//!
//!   (u / s) * sum_{n>=1} e^{-lambda s} (lambda s)^n / n! * p^{*n}(rho s - u).
//!
//! Deterministic profits replace the density by lattice atoms at
//! s_n = (u + n y0) / rho with masses u / (u + n y0) * Poisson(n; lambda s_n).

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ruinlab/model.hpp"

namespace ruinlab {

struct Atom {
    double time = 0.0;
    double mass = 0.0;
};

struct SeriesOptions {
    double rel_tol = 1e-12;
    int max_terms = 500;
};

/// Continuous part of the undelayed first-passage law at elapsed time s,
/// started from surplus u. Zero for s < u / rho and for atomic profits; at
/// s = u / rho it is the right limit. The sum runs outward from its largest
/// term, so `max_terms` bounds the window around the Poisson mode.
double dual_passage_density(double s, double u, const ModelParams& params,
                            const ProfitDistribution& profit, SeriesOptions opts = {},
                            int* terms_used = nullptr);

class AtomPlusDensity {
public:
    /// Ruin happens surely at `time`.
    static AtomPlusDensity point_mass(double time);

    /// time_shift + (first passage of the undelayed process from surplus u).
    static AtomPlusDensity shifted_passage(double u, double time_shift, const CheckedModel& model,
                                           SeriesOptions opts = {});

    /// Principal atom, at the ruin time reached when no profit is realized.
    double atom_location() const { return atoms_.front().time; }
    double atom_mass() const { return atoms_.front().mass; }

    /// Principal atom first, then lattice atoms (deterministic profits only).
    const std::vector<Atom>& atoms() const { return atoms_; }

    double support_start() const { return support_start_; }
    bool has_density() const { return continuous_; }

    double density(double T) const;

    /// E[g(tau); tau < inf]: atoms exactly, continuous part by quadrature.
    double expectation(const std::function<double(double)>& g, double rel_tol = 1e-11) const;
    double total_mass() const;
    double laplace(double theta) const;

private:
    AtomPlusDensity() = default;

    std::vector<Atom> atoms_;
    double support_start_ = 0.0;
    bool continuous_ = false;

    double surplus_ = 0.0;
    double shift_ = 0.0;
    ModelParams params_{};
    std::optional<ProfitDistribution> profit_;
    SeriesOptions opts_{};
};

}  // namespace ruinlab
