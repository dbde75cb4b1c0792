// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ruinlab/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ruinlab/errors.hpp"

namespace ruinlab::cli {

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

double to_double(std::string_view s)
{
    s = trim(s);
    std::string buf(s);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v))
        throw ModelError("not a finite number: '" + buf + "'");
    return v;
}

template <class Int>
Int to_integer(std::string_view s)
{
    s = trim(s);
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ModelError("not an integer: '" + std::string(s) + "'");
    return v;
}

bool to_bool(std::string_view s)
{
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes")
        return true;
    if (s == "false" || s == "0" || s == "no")
        return false;
    throw ModelError("not a boolean: '" + std::string(s) + "'");
}

/// Shortest text that reads back as the same double.
std::string exact_number(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

ProfitDistribution parse_profit(std::string_view text)
{
    const auto parts = split(trim(text), ':');
    const auto kind = parts[0];
    if (kind == "exp" && parts.size() == 2)
        return ProfitDistribution::exponential(to_double(parts[1]));
    if (kind == "erlang" && parts.size() == 3)
        return ProfitDistribution::erlang(to_integer<int>(parts[1]), to_double(parts[2]));
    if (kind == "det" && parts.size() == 2)
        return ProfitDistribution::deterministic(to_double(parts[1]));
    throw ModelError("unknown profit distribution '" + std::string(text) +
                     "' (expected exp:<nu>, erlang:<k>:<nu> or det:<y0>)");
}

DelayDistribution parse_delay(std::string_view text)
{
    const auto parts = split(trim(text), ':');
    const auto kind = parts[0];
    if (kind == "zero" && parts.size() == 1)
        return DelayDistribution::zero();
    if (parts.size() == 2) {
        const double v = to_double(parts[1]);
        if (kind == "const")
            return DelayDistribution::constant(v);
        if (kind == "unif")
            return DelayDistribution::uniform(v);
        if (kind == "exp")
            return DelayDistribution::exponential(v);
        if (kind == "power")
            return DelayDistribution::power_tail(v);
        if (kind == "gauss")
            return DelayDistribution::gaussian_tail(v);
    }
    throw ModelError("unknown delay distribution '" + std::string(text) +
                     "' (expected zero, const:<ell>, unif:<ell>, exp:<g>, power:<g> or gauss:<g>)");
}

std::vector<double> parse_grid(std::string_view text)
{
    std::vector<double> values;
    text = trim(text);
    if (text.empty())
        return values;
    for (auto item : split(text, ',')) {
        item = trim(item);
        if (item.find(':') == std::string_view::npos) {
            values.push_back(to_double(item));
            continue;
        }
        const auto r = split(item, ':');
        if (r.size() != 3)
            throw ModelError("range must be start:stop:step, got '" + std::string(item) + "'");
        const double start = to_double(r[0]);
        const double stop = to_double(r[1]);
        const double step = to_double(r[2]);
        if (!(step > 0.0) || stop < start)
            throw ModelError("range needs step > 0 and stop >= start");
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        if (count > 1000000)
            throw ModelError("range has too many points");
        for (long k = 0; k <= count; ++k)
            values.push_back(start + static_cast<double>(k) * step);
    }
    return values;
}

std::string format_grid(const std::vector<double>& values)
{
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            s += ',';
        s += exact_number(values[i]);
    }
    return s;
}

namespace {

std::vector<double> nonnegative_grid(std::string_view key, std::string_view value)
{
    auto grid = parse_grid(value);
    for (double v : grid)
        if (v < 0.0)
            throw ModelError("grid '" + std::string(key) + "' has a negative value");
    return grid;
}

}  // namespace

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value)
{
    key = trim(key);
    value = trim(value);
    if (key == "command")
        cfg.command = value;
    else if (key == "rho")
        cfg.rho = to_double(value);
    else if (key == "lambda")
        cfg.lambda = to_double(value);
    else if (key == "profit")
        cfg.profit = parse_profit(value).to_string();
    else if (key == "delay")
        cfg.delay = parse_delay(value).to_string();
    else if (key == "x")
        cfg.xs = nonnegative_grid(key, value);
    else if (key == "t")
        cfg.ts = nonnegative_grid(key, value);
    else if (key == "theta")
        cfg.thetas = nonnegative_grid(key, value);
    else if (key == "T")
        cfg.times = nonnegative_grid(key, value);
    else if (key == "n_paths") {
        cfg.n_paths = to_integer<long>(value);
        if (cfg.n_paths < 1)
            throw ModelError("n_paths must be at least 1");
    }
    else if (key == "seed")
        cfg.seed = to_integer<std::uint64_t>(value);
    else if (key == "horizon")
        cfg.horizon = value.empty() || value == "auto" ? std::nullopt
                                                       : std::optional<double>(to_double(value));
    else if (key == "threads")
        cfg.threads = to_integer<unsigned>(value);
    else if (key == "epsilon")
        cfg.epsilon = to_double(value);
    else if (key == "bin_width")
        cfg.bin_width = to_double(value);
    else if (key == "quantity")
        cfg.quantity = value;
    else if (key == "method")
        cfg.method = value;
    else if (key == "digits")
        cfg.digits = to_integer<int>(value);
    else if (key == "format")
        cfg.format = value;
    else if (key == "out")
        cfg.out = value;
    else if (key == "raw")
        cfg.raw = to_bool(value);
    else
        throw ModelError("unknown configuration key '" + std::string(key) + "'");
}

RunConfig parse_config_text(std::string_view text, RunConfig base)
{
    int line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ModelError("config line " + std::to_string(line_no) + ": expected key = value");
        apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

std::string to_config_text(const RunConfig& cfg)
{
    std::ostringstream os;
    if (!cfg.command.empty())
        os << "command = " << cfg.command << '\n';
    os << "rho = " << exact_number(cfg.rho) << '\n'
       << "lambda = " << exact_number(cfg.lambda) << '\n'
       << "profit = " << cfg.profit << '\n'
       << "delay = " << cfg.delay << '\n'
       << "x = " << format_grid(cfg.xs) << '\n'
       << "t = " << format_grid(cfg.ts) << '\n'
       << "theta = " << format_grid(cfg.thetas) << '\n'
       << "T = " << format_grid(cfg.times) << '\n'
       << "n_paths = " << cfg.n_paths << '\n'
       << "seed = " << cfg.seed << '\n'
       << "horizon = " << (cfg.horizon ? exact_number(*cfg.horizon) : std::string("auto")) << '\n'
       << "threads = " << cfg.threads << '\n'
       << "epsilon = " << exact_number(cfg.epsilon) << '\n'
       << "bin_width = " << exact_number(cfg.bin_width) << '\n'
       << "quantity = " << cfg.quantity << '\n'
       << "method = " << cfg.method << '\n'
       << "digits = " << cfg.digits << '\n'
       << "format = " << cfg.format << '\n';
    if (!cfg.out.empty())
        os << "out = " << cfg.out << '\n';
    os << "raw = " << (cfg.raw ? "true" : "false") << '\n';
    return os.str();
}

RunConfig load_config_file(const std::string& path, RunConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw ModelError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), std::move(base));
}

CheckedModel make_model(const RunConfig& cfg)
{
    return validate_model(ModelParams{cfg.rho, cfg.lambda}, parse_profit(cfg.profit),
                          parse_delay(cfg.delay));
}

}  // namespace ruinlab::cli
