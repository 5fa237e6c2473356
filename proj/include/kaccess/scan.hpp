#pragma once

// Experiment driver: arity scalings f(h), threshold scans over height
// grids, and the expansion-tree upper-bound check.
//
// Scan config files are flat key-value text:
//
//   # comment lines and blank lines are ignored
//   key = value
//
// Keys (defaults in parentheses):
//   k            positive int, required
//   h_values     comma-separated heights, required (0 allowed: single-vertex rows)
//   scaling      constant | linear | offset_log | offset_log_lower | critical, required
//   n            arity for scaling=constant
//   alpha        slope for scaling=linear,           f(h) = alpha*h
//   g            coefficient for the offset scalings, f(h) = h/e + g*log h
//                and f(h) = h/e + log(h)/(2e) - g
//   c            comma-separated multipliers for scaling=critical (1.0)
//   margin       additive margin coefficient for scaling=critical (0.0)
//   margin_kind  log | power: margin*log(h)^{1/k} or margin*h^margin_exp (log)
//   margin_exp   exponent for margin_kind=power (0.5)
//   rounding     half_up | floor (half_up; classical linear scans use floor)
//   trials       positive int, required
//   budget       label evaluations per trial, 0 = unbounded (1000000)
//   master_seed  uint64 (1)
//   workers      int, has no effect on results (1)
//   out          output path prefix, required by the CLI
//
// A run writes <out>.csv, <out>.json and a resolved-config echo
// <out>.resolved.cfg listing every key, defaults included. Given the same
// config the CSV is byte-identical across runs except the runtime column.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "theta.hpp"

namespace kaccess {

// n = round(c * (h/(e*k))^{1/k} + margin * (log h)^{1/k}), round half up.
// The bare critical scaling is margin = 0. Throws std::invalid_argument
// when the rounded arity falls below 1.
int scaling_arity(int h, int k, double c, double margin);

enum class ScalingKind
{
    Constant,
    Linear,         // f(h) = alpha * h
    OffsetLog,      // f(h) = h/e + g * log h
    OffsetLogLower, // f(h) = h/e + log(h)/(2e) - g
    Critical        // f(h) = c * (h/(e k))^{1/k} + margin term
};

enum class Rounding
{
    HalfUp,
    Floor
};

enum class MarginKind
{
    Log,  // margin * (log h)^{1/k}
    Power // margin * h^margin_exp
};

struct ScanConfig
{
    int k = 1;
    std::vector<int> h_values;
    ScalingKind scaling = ScalingKind::Constant;
    int n = 1;            // Constant
    double alpha = 0.0;   // Linear
    double g = 1.0;       // OffsetLog / OffsetLogLower
    std::vector<double> c_values = {1.0}; // Critical
    double margin = 0.0;
    MarginKind margin_kind = MarginKind::Log;
    double margin_exp = 0.5;
    Rounding rounding = Rounding::HalfUp;
    std::uint64_t trials = 0;
    std::uint64_t budget = 1'000'000;
    std::uint64_t master_seed = 1;
    unsigned workers = 1;
    std::string out;

    void validate() const; // throws std::invalid_argument
};

// Arity for one grid point. h = 0 always yields 1 (single-vertex tree).
int arity_for(const ScanConfig& config, int h, double c);

// One grid point. `c` echoes the scaling's primary constant (n, alpha, g,
// or the critical multiplier). Serialized column order is field order.
struct ScanRow
{
    int h = 0;
    int k = 1;
    int n_used = 1;
    double c = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t accessible = 0;
    std::uint64_t blocked = 0;
    std::uint64_t undecided = 0;
    double theta_lo = 0.0;
    double theta_hi = 1.0;
    double wilson_lo = 0.0;
    double wilson_hi = 1.0;
    double runtime_seconds = 0.0;
};

ScanConfig parse_scan_config(const std::string& text);
ScanConfig load_scan_config(const std::string& path); // throws IoError
std::string resolved_config_text(const ScanConfig& config);

// Grid evaluation only, rows ordered by (h, c); no file output.
std::vector<ScanRow> scan_rows(const ScanConfig& config);

std::string rows_to_csv(const std::vector<ScanRow>& rows);
std::string rows_to_json(const std::vector<ScanRow>& rows);

// scan_rows + writes <out>.csv / <out>.json / <out>.resolved.cfg.
std::vector<ScanRow> run_scan(const ScanConfig& config);

struct IoError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Compares the expansion tree's 1-accessibility probability against the
// tree's k-accessibility probability; the former can only be larger.
// Exact mode enumerates both sides as rationals; Monte Carlo mode samples
// `trials` labelings of each side.
struct UpperBoundReport
{
    bool exact_mode = true;
    int n = 1;
    int h = 0;
    int k = 1;
    bool holds = false;
    // exact mode
    ExactTheta theta_tree;      // theta_k(T) == theta_1 of the k-closure
    ExactTheta theta_expansion; // theta_1 of the expansion tree
    // Monte Carlo mode
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;
    double p_tree = 0.0;
    double p_expansion = 0.0;
    double combined_se = 0.0; // holds iff p_expansion >= p_tree - 3*se
};

UpperBoundReport run_expansion_bound_check(int n,
                                  int h,
                                  int k,
                                  bool exact_mode,
                                  std::uint64_t trials = 10'000,
                                  std::uint64_t master_seed = 1);

} // namespace kaccess
