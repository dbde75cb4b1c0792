// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ruinlab/model.hpp"

namespace ruinlab::cli {

/// Everything a command needs. Serializes to a flat `key = value` file.
struct RunConfig {
    std::string command;

    double rho = 1.0;
    double lambda = 1.0;
    std::string profit = "exp:1";
    std::string delay = "zero";

    std::vector<double> xs;
    std::vector<double> ts;
    std::vector<double> thetas;
    std::vector<double> times;  // ruin times T for density output

    long n_paths = 100000;
    std::uint64_t seed = 1;
    std::optional<double> horizon;
    unsigned threads = 0;

    double epsilon = 0.1;
    double bin_width = 0.5;
    std::string quantity = "prob";  // simulate: prob | laplace | mean | density | count
    std::string method = "auto";    // density: auto | asymptotic | exact

    int digits = 6;
    std::string format = "csv";  // csv | tsv
    std::string out;
    bool raw = false;

    bool operator==(const RunConfig&) const = default;
};

/// `exp:<nu>`, `erlang:<k>:<nu>`, `det:<y0>`
ProfitDistribution parse_profit(std::string_view text);
/// `zero`, `const:<ell>`, `unif:<ell>`, `exp:<gamma>`, `power:<gamma>`, `gauss:<gamma>`
DelayDistribution parse_delay(std::string_view text);

/// Comma-separated values and/or inclusive ranges `start:stop:step`.
std::vector<double> parse_grid(std::string_view text);
std::string format_grid(const std::vector<double>& values);

/// Applies one `key = value` setting; throws ModelError on unknown keys or bad values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

RunConfig parse_config_text(std::string_view text, RunConfig base = {});
std::string to_config_text(const RunConfig& cfg);
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Validated model described by cfg.
CheckedModel make_model(const RunConfig& cfg);

}  // namespace ruinlab::cli
