#pragma once

// theta_k(T): the probability, over a uniformly random rank labeling, that
// T has a k-accessible root-to-leaf path. Exact values come from full
// permutation enumeration on tiny instances; everything else is bracketed
// by budgeted Monte Carlo.

#include <cstdint>
#include <string>

#include "closure.hpp"
#include "tree.hpp"

namespace kaccess {

// Exact probability as a reduced fraction.
struct ExactTheta
{
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 1;

    friend bool operator==(const ExactTheta&, const ExactTheta&) = default;
    // a < b by cross multiplication (both fit far below 2^32 here).
    bool less_than(const ExactTheta& other) const;
    double value() const;
    std::string str() const; // "num/den"
};

// Enumerates all vertex_count! labelings. The cap keeps the enumeration
// honest: 9! = 362,880 permutations by default.
ExactTheta exact_theta(const RootedTree& tree, int k, int max_vertices = 9);

// Same enumeration, deciding 1-accessibility on a DAG instead.
ExactTheta exact_theta_dag(const MonotoneDag& dag, int max_vertices = 9);

struct WilsonInterval
{
    double lo = 0.0;
    double hi = 1.0;
};

// Wilson score interval for a binomial proportion, clamped to [0, 1].
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

inline constexpr double kDefaultWilsonZ = 2.576; // two-sided 99%

// Monte Carlo estimate of theta_k on the implicit complete n-ary tree.
// Each trial is a pure function of (master_seed, trial_index), so tallies
// are identical for any worker count. Budget-starved trials count as
// undecided and widen the bracket:
//   theta_lo = accessible / trials, theta_hi = (accessible + undecided) / trials
// and theta_lo <= theta <= theta_hi up to sampling error. The Wilson
// interval is computed on the accessible count at confidence multiplier z.
struct ThetaEstimate
{
    std::uint64_t trials = 0;
    std::uint64_t accessible = 0;
    std::uint64_t blocked = 0;
    std::uint64_t undecided = 0;
    double theta_lo = 0.0;
    double theta_hi = 1.0;
    double wilson_lo = 0.0;
    double wilson_hi = 1.0;
    double z = kDefaultWilsonZ;
    std::uint64_t master_seed = 0;
    std::uint64_t budget = 0;
};

ThetaEstimate monte_carlo_theta(int n,
                                int height,
                                int k,
                                std::uint64_t trials,
                                std::uint64_t master_seed,
                                std::uint64_t budget,
                                unsigned workers = 1,
                                double z = kDefaultWilsonZ);

} // namespace kaccess
