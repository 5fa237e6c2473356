#include "kaccess/scan.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "kaccess/accessibility.hpp"
#include "kaccess/hk.hpp"
#include "kaccess/rng.hpp"

namespace kaccess {

namespace {

constexpr double kE = 2.718281828459045235;

int round_arity(double x, Rounding rounding)
{
    const double r = rounding == Rounding::HalfUp ? std::floor(x + 0.5) : std::floor(x);
    if (!(r >= -1e9 && r <= 1e9))
        throw std::invalid_argument("arity out of range");
    return static_cast<int>(r);
}

double critical_value(int h, int k, double c, double margin, MarginKind kind, double margin_exp)
{
    double x = c * std::pow(static_cast<double>(h) / (kE * k), 1.0 / k);
    if (margin != 0.0)
    {
        const double term =
            kind == MarginKind::Log ? std::pow(std::log(static_cast<double>(h)), 1.0 / k)
                                    : std::pow(static_cast<double>(h), margin_exp);
        x += margin * term;
    }
    return x;
}

} // namespace

int scaling_arity(int h, int k, double c, double margin)
{
    if (h < 1)
        throw std::invalid_argument("height must be >= 1");
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    if (!(c > 0.0))
        throw std::invalid_argument("c must be > 0");
    const int r = round_arity(critical_value(h, k, c, margin, MarginKind::Log, 0.5), Rounding::HalfUp);
    if (r < 1)
        throw std::invalid_argument("arity rounds below 1 (h=" + std::to_string(h) + ", c=" + std::to_string(c) +
                                    ", margin=" + std::to_string(margin) + ")");
    return r;
}

void ScanConfig::validate() const
{
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    if (h_values.empty())
        throw std::invalid_argument("h_values must be non-empty");
    for (int h : h_values)
        if (h < 0)
            throw std::invalid_argument("heights must be >= 0");
    if (trials < 1)
        throw std::invalid_argument("trials must be >= 1");
    if (workers < 1)
        throw std::invalid_argument("workers must be >= 1");
    switch (scaling)
    {
        case ScalingKind::Constant:
            if (n < 1)
                throw std::invalid_argument("n must be >= 1 for constant scaling");
            break;
        case ScalingKind::Linear:
            if (!(alpha > 0.0))
                throw std::invalid_argument("alpha must be > 0 for linear scaling");
            break;
        case ScalingKind::OffsetLog:
        case ScalingKind::OffsetLogLower:
            break;
        case ScalingKind::Critical:
            if (c_values.empty())
                throw std::invalid_argument("c values must be non-empty for critical scaling");
            for (double c : c_values)
                if (!(c > 0.0))
                    throw std::invalid_argument("c must be > 0");
            if (!(margin_exp > 0.0))
                throw std::invalid_argument("margin_exp must be > 0");
            break;
    }
}

int arity_for(const ScanConfig& config, int h, double c)
{
    if (h == 0)
        return 1;
    double x = 0.0;
    switch (config.scaling)
    {
        case ScalingKind::Constant:
            return config.n;
        case ScalingKind::Linear:
            x = config.alpha * h;
            break;
        case ScalingKind::OffsetLog:
            x = h / kE + config.g * std::log(static_cast<double>(h));
            break;
        case ScalingKind::OffsetLogLower:
            x = h / kE + std::log(static_cast<double>(h)) / (2.0 * kE) - config.g;
            break;
        case ScalingKind::Critical:
        {
            x = critical_value(h, config.k, c, config.margin, config.margin_kind, config.margin_exp);
            const int r = round_arity(x, config.rounding);
            if (r < 1)
                throw std::invalid_argument("critical scaling arity rounds below 1 at h=" + std::to_string(h));
            return r;
        }
    }
    return std::max(1, round_arity(x, config.rounding));
}

namespace {

const std::map<std::string, ScalingKind> kScalingNames = {
    {"constant", ScalingKind::Constant},
    {"linear", ScalingKind::Linear},
    {"offset_log", ScalingKind::OffsetLog},
    {"offset_log_lower", ScalingKind::OffsetLogLower},
    {"critical", ScalingKind::Critical},
};

std::string scaling_name(ScalingKind s)
{
    for (const auto& [name, kind] : kScalingNames)
        if (kind == s)
            return name;
    return "?";
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& key, const std::string& value)
{
    std::size_t pos = 0;
    long long v = 0;
    try
    {
        v = std::stoll(value, &pos);
    }
    catch (const std::exception&)
    {
        throw std::invalid_argument("config key '" + key + "': not an integer: '" + value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument("config key '" + key + "': not an integer: '" + value + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value)
{
    const long long v = parse_int(key, value);
    if (v < 0)
        throw std::invalid_argument("config key '" + key + "': must be >= 0");
    return static_cast<std::uint64_t>(v);
}

double parse_double(const std::string& key, const std::string& value)
{
    std::size_t pos = 0;
    double v = 0.0;
    try
    {
        v = std::stod(value, &pos);
    }
    catch (const std::exception&)
    {
        throw std::invalid_argument("config key '" + key + "': not a number: '" + value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument("config key '" + key + "': not a number: '" + value + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& value)
{
    std::vector<std::string> parts;
    std::string item;
    std::stringstream ss(value);
    while (std::getline(ss, item, ','))
        parts.push_back(trim(item));
    return parts;
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

ScanConfig parse_scan_config(const std::string& text)
{
    ScanConfig config;
    std::map<std::string, std::string> seen;

    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line))
    {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        if (!seen.emplace(key, value).second)
            throw std::invalid_argument("duplicate config key '" + key + "'");

        if (key == "k")
            config.k = static_cast<int>(parse_int(key, value));
        else if (key == "h_values")
        {
            for (const auto& part : split_list(value))
                config.h_values.push_back(static_cast<int>(parse_int(key, part)));
        }
        else if (key == "scaling")
        {
            const auto it = kScalingNames.find(value);
            if (it == kScalingNames.end())
                throw std::invalid_argument("unknown scaling '" + value + "'");
            config.scaling = it->second;
        }
        else if (key == "n")
            config.n = static_cast<int>(parse_int(key, value));
        else if (key == "alpha")
            config.alpha = parse_double(key, value);
        else if (key == "g")
            config.g = parse_double(key, value);
        else if (key == "c")
        {
            config.c_values.clear();
            for (const auto& part : split_list(value))
                config.c_values.push_back(parse_double(key, part));
        }
        else if (key == "margin")
            config.margin = parse_double(key, value);
        else if (key == "margin_kind")
        {
            if (value == "log")
                config.margin_kind = MarginKind::Log;
            else if (value == "power")
                config.margin_kind = MarginKind::Power;
            else
                throw std::invalid_argument("unknown margin_kind '" + value + "'");
        }
        else if (key == "margin_exp")
            config.margin_exp = parse_double(key, value);
        else if (key == "rounding")
        {
            if (value == "half_up")
                config.rounding = Rounding::HalfUp;
            else if (value == "floor")
                config.rounding = Rounding::Floor;
            else
                throw std::invalid_argument("unknown rounding '" + value + "'");
        }
        else if (key == "trials")
            config.trials = parse_uint(key, value);
        else if (key == "budget")
            config.budget = parse_uint(key, value);
        else if (key == "master_seed")
            config.master_seed = parse_uint(key, value);
        else if (key == "workers")
            config.workers = static_cast<unsigned>(parse_uint(key, value));
        else if (key == "out")
            config.out = value;
        else
            throw std::invalid_argument("unknown config key '" + key + "'");
    }

    for (const char* required : {"k", "h_values", "scaling", "trials"})
        if (!seen.count(required))
            throw std::invalid_argument(std::string("missing required config key '") + required + "'");
    if (config.scaling == ScalingKind::Constant && !seen.count("n"))
        throw std::invalid_argument("constant scaling requires 'n'");
    if (config.scaling == ScalingKind::Linear && !seen.count("alpha"))
        throw std::invalid_argument("linear scaling requires 'alpha'");

    config.validate();
    return config;
}

ScanConfig load_scan_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("cannot read config file: " + path);
    return parse_scan_config(buf.str());
}

std::string resolved_config_text(const ScanConfig& config)
{
    std::string s;
    s += "k = " + std::to_string(config.k) + "\n";
    s += "h_values = ";
    for (std::size_t i = 0; i < config.h_values.size(); ++i)
        s += (i ? "," : "") + std::to_string(config.h_values[i]);
    s += "\n";
    s += "scaling = " + scaling_name(config.scaling) + "\n";
    s += "n = " + std::to_string(config.n) + "\n";
    s += "alpha = " + format_double(config.alpha) + "\n";
    s += "g = " + format_double(config.g) + "\n";
    s += "c = ";
    for (std::size_t i = 0; i < config.c_values.size(); ++i)
        s += (i ? "," : "") + format_double(config.c_values[i]);
    s += "\n";
    s += "margin = " + format_double(config.margin) + "\n";
    s += std::string("margin_kind = ") + (config.margin_kind == MarginKind::Log ? "log" : "power") + "\n";
    s += "margin_exp = " + format_double(config.margin_exp) + "\n";
    s += std::string("rounding = ") + (config.rounding == Rounding::HalfUp ? "half_up" : "floor") + "\n";
    s += "trials = " + std::to_string(config.trials) + "\n";
    s += "budget = " + std::to_string(config.budget) + "\n";
    s += "master_seed = " + std::to_string(config.master_seed) + "\n";
    s += "workers = " + std::to_string(config.workers) + "\n";
    s += "out = " + config.out + "\n";
    s += "# seed_mixer = splitmix64\n";
    return s;
}

std::vector<ScanRow> scan_rows(const ScanConfig& config)
{
    config.validate();

    std::vector<int> heights = config.h_values;
    std::sort(heights.begin(), heights.end());

    const bool critical = config.scaling == ScalingKind::Critical;
    std::vector<double> cs;
    if (critical)
    {
        cs = config.c_values;
        std::sort(cs.begin(), cs.end());
    }
    else
    {
        switch (config.scaling)
        {
            case ScalingKind::Constant: cs = {static_cast<double>(config.n)}; break;
            case ScalingKind::Linear: cs = {config.alpha}; break;
            case ScalingKind::OffsetLog:
            case ScalingKind::OffsetLogLower: cs = {config.g}; break;
            case ScalingKind::Critical: break;
        }
    }

    const std::uint64_t budget = config.budget == 0 ? kUnboundedBudget : config.budget;

    std::vector<ScanRow> rows;
    rows.reserve(heights.size() * cs.size());
    for (int h : heights)
    {
        for (double c : cs)
        {
            ScanRow row;
            row.h = h;
            row.k = config.k;
            row.n_used = arity_for(config, h, c);
            row.c = c;
            const auto start = std::chrono::steady_clock::now();
            const auto est = monte_carlo_theta(row.n_used, h, config.k, config.trials, config.master_seed,
                                               budget, config.workers);
            const auto stop = std::chrono::steady_clock::now();
            row.trials = est.trials;
            row.accessible = est.accessible;
            row.blocked = est.blocked;
            row.undecided = est.undecided;
            row.theta_lo = est.theta_lo;
            row.theta_hi = est.theta_hi;
            row.wilson_lo = est.wilson_lo;
            row.wilson_hi = est.wilson_hi;
            row.runtime_seconds = std::chrono::duration<double>(stop - start).count();
            rows.push_back(row);
        }
    }
    return rows;
}

std::string rows_to_csv(const std::vector<ScanRow>& rows)
{
    std::string s = "h,k,n_used,c,trials,accessible,blocked,undecided,"
                    "theta_lo,theta_hi,wilson_lo,wilson_hi,runtime_seconds\n";
    char buf[512];
    for (const auto& r : rows)
    {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%g,%llu,%llu,%llu,%llu,%.6f,%.6f,%.6f,%.6f,%.3f\n",
                      r.h, r.k, r.n_used, r.c,
                      static_cast<unsigned long long>(r.trials),
                      static_cast<unsigned long long>(r.accessible),
                      static_cast<unsigned long long>(r.blocked),
                      static_cast<unsigned long long>(r.undecided),
                      r.theta_lo, r.theta_hi, r.wilson_lo, r.wilson_hi, r.runtime_seconds);
        s += buf;
    }
    return s;
}

std::string rows_to_json(const std::vector<ScanRow>& rows)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows)
    {
        nlohmann::ordered_json o;
        o["h"] = r.h;
        o["k"] = r.k;
        o["n_used"] = r.n_used;
        o["c"] = r.c;
        o["trials"] = r.trials;
        o["accessible"] = r.accessible;
        o["blocked"] = r.blocked;
        o["undecided"] = r.undecided;
        o["theta_lo"] = r.theta_lo;
        o["theta_hi"] = r.theta_hi;
        o["wilson_lo"] = r.wilson_lo;
        o["wilson_hi"] = r.wilson_hi;
        o["runtime_seconds"] = r.runtime_seconds;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

namespace {

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out)
        throw IoError("write failed: " + path);
}

} // namespace

std::vector<ScanRow> run_scan(const ScanConfig& config)
{
    config.validate();
    if (config.out.empty())
        throw std::invalid_argument("config key 'out' is required to run a scan");

    const std::filesystem::path out(config.out);
    if (out.has_parent_path())
    {
        std::error_code ec;
        std::filesystem::create_directories(out.parent_path(), ec);
        if (ec)
            throw IoError("cannot create output directory: " + out.parent_path().string());
    }

    auto rows = scan_rows(config);
    write_file(config.out + ".csv", rows_to_csv(rows));
    write_file(config.out + ".json", rows_to_json(rows));
    write_file(config.out + ".resolved.cfg", resolved_config_text(config));
    return rows;
}

UpperBoundReport run_expansion_bound_check(int n, int h, int k, bool exact_mode, std::uint64_t trials, std::uint64_t master_seed)
{
    if (n < 1)
        throw std::invalid_argument("arity must be >= 1");
    if (h < 0)
        throw std::invalid_argument("height must be >= 0");
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");

    UpperBoundReport report;
    report.exact_mode = exact_mode;
    report.n = n;
    report.h = h;
    report.k = k;

    const auto tree = build_nary_tree(n, h);
    const auto expansion = build_hk(n, h, k, kMaxExplicitVertices);

    if (exact_mode)
    {
        report.theta_tree = exact_theta_dag(k_transitive_closure(tree, k));
        report.theta_expansion = exact_theta(expansion.tree, 1);
        report.holds = !report.theta_expansion.less_than(report.theta_tree);
        return report;
    }

    if (trials < 1)
        throw std::invalid_argument("trials must be >= 1");
    report.trials = trials;
    report.master_seed = master_seed;

    detail::SearchScratch scratch;
    std::uint64_t tree_hits = 0;
    std::uint64_t expansion_hits = 0;
    // Independent label streams for the two sides.
    const std::uint64_t expansion_seed = sm64_mix(master_seed ^ kGolden);
    for (std::uint64_t i = 0; i < trials; ++i)
    {
        const auto tree_labels = sample_labeling(tree, trial_seed(master_seed, i));
        if (detail::k_accessible_verdict(tree, tree_labels.ranks, k, scratch))
            ++tree_hits;
        const auto exp_labels = sample_labeling(expansion.tree, trial_seed(expansion_seed, i));
        if (detail::k_accessible_verdict(expansion.tree, exp_labels.ranks, 1, scratch))
            ++expansion_hits;
    }

    const double t = static_cast<double>(trials);
    report.p_tree = static_cast<double>(tree_hits) / t;
    report.p_expansion = static_cast<double>(expansion_hits) / t;
    report.combined_se = std::sqrt(report.p_tree * (1.0 - report.p_tree) / t +
                                   report.p_expansion * (1.0 - report.p_expansion) / t);
    report.holds = report.p_expansion >= report.p_tree - 3.0 * report.combined_se;
    return report;
}

} // namespace kaccess
