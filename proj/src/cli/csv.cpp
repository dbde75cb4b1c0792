// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ruinlab/cli/csv.hpp"

#include <cfenv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ruinlab::cli {

std::string format_number(double v, int digits)
{
    if (std::isnan(v))
        return "NA";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    std::string s(buf);
    if (s.find_first_of(".e") == std::string::npos)
        s += ".0";
    return s;
}

std::string format_fixed_half_even(double v, int decimals)
{
    if (std::isnan(v))
        return "NA";
    const double scale = std::pow(10.0, decimals);
    const int saved = std::fegetround();
    std::fesetround(FE_TONEAREST);
    const double rounded = std::nearbyint(v * scale) / scale;
    std::fesetround(saved);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
    return buf;
}

void Table::add_row(std::vector<std::string> row)
{
    if (row.size() != header_.size())
        throw std::logic_error("table row width does not match the header");
    rows_.push_back(std::move(row));
}

void Table::write(std::ostream& os, char sep) const
{
    for (const auto& c : comments_)
        os << "# " << c << '\n';
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                os << sep;
            os << cells[i];
        }
        os << '\n';
    };
    line(header_);
    for (const auto& r : rows_)
        line(r);
}

}  // namespace ruinlab::cli
