// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ruinlab::cli {

/// `digits` significant digits, always with a decimal point or exponent;
/// NaN prints as NA.
std::string format_number(double v, int digits = 6);

/// Round half to even at `decimals` places, printed with exactly that many decimals.
std::string format_fixed_half_even(double v, int decimals);

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row);
    std::size_t rows() const { return rows_.size(); }

    /// Comment lines are written first, each prefixed by "# ".
    void add_comment(std::string line) { comments_.push_back(std::move(line)); }

    void write(std::ostream& os, char sep = ',') const;

private:
    std::vector<std::string> comments_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace ruinlab::cli
