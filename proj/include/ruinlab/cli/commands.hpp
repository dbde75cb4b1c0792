// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

#include "ruinlab/cli/config.hpp"

namespace ruinlab::cli {

/// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_domain = 3;

/// Full command-line entry point. Settings are layered as
/// defaults < RUINLAB_SEED < --config file < flags.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Executes an already assembled configuration, writing the table to `out`.
/// Errors propagate as exceptions.
void execute(const RunConfig& cfg, std::ostream& out);

}  // namespace ruinlab::cli
