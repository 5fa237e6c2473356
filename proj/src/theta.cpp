#include "kaccess/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "kaccess/accessibility.hpp"
#include "kaccess/rng.hpp"

namespace kaccess {

bool ExactTheta::less_than(const ExactTheta& other) const
{
    return static_cast<unsigned __int128>(numerator) * other.denominator <
           static_cast<unsigned __int128>(other.numerator) * denominator;
}

double ExactTheta::value() const
{
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

std::string ExactTheta::str() const
{
    return std::to_string(numerator) + "/" + std::to_string(denominator);
}

namespace {

std::uint64_t factorial_checked(int n, int max_n)
{
    if (n > max_n)
        throw std::invalid_argument("exact enumeration capped at " + std::to_string(max_n) +
                                    " vertices, tree has " + std::to_string(n));
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i)
        f *= static_cast<std::uint64_t>(i);
    return f;
}

ExactTheta reduced(std::uint64_t hits, std::uint64_t total)
{
    const std::uint64_t g = std::gcd(hits == 0 ? total : hits, total);
    return ExactTheta{hits / g, total / g};
}

} // namespace

ExactTheta exact_theta(const RootedTree& tree, int k, int max_vertices)
{
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    const int n = tree.vertex_count();
    const std::uint64_t total = factorial_checked(n, max_vertices);

    std::vector<int> ranks(n);
    std::iota(ranks.begin(), ranks.end(), 0);
    detail::SearchScratch scratch;
    std::uint64_t hits = 0;
    do
    {
        if (detail::k_accessible_verdict(tree, ranks, k, scratch))
            ++hits;
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    return reduced(hits, total);
}

ExactTheta exact_theta_dag(const MonotoneDag& dag, int max_vertices)
{
    const int n = dag.vertex_count();
    const std::uint64_t total = factorial_checked(n, max_vertices);

    auto plan = detail::DagPlan::build(dag);
    std::vector<int> ranks(n);
    std::iota(ranks.begin(), ranks.end(), 0);
    std::uint64_t hits = 0;
    do
    {
        if (detail::dag_accessible_verdict(dag, ranks, plan))
            ++hits;
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    return reduced(hits, total);
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z)
{
    if (trials == 0)
        throw std::invalid_argument("wilson interval needs at least one trial");
    if (successes > trials)
        throw std::invalid_argument("successes exceed trials");
    const double nn = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = (z / denom) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    WilsonInterval w;
    // The score bound is exact at the boundary tallies; don't let rounding
    // pull it off 0 or 1 there.
    w.lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
    w.hi = successes == trials ? 1.0 : std::min(1.0, center + half);
    return w;
}

ThetaEstimate monte_carlo_theta(int n,
                                int height,
                                int k,
                                std::uint64_t trials,
                                std::uint64_t master_seed,
                                std::uint64_t budget,
                                unsigned workers,
                                double z)
{
    if (trials < 1)
        throw std::invalid_argument("trials must be >= 1");
    if (budget < 1)
        throw std::invalid_argument("budget must be >= 1");
    if (workers < 1)
        throw std::invalid_argument("workers must be >= 1");

    struct Tally
    {
        std::uint64_t accessible = 0;
        std::uint64_t blocked = 0;
        std::uint64_t undecided = 0;
    };
    std::vector<Tally> per_worker(workers);

    // Trial i is a pure function of (master_seed, i); workers take strided
    // slices, so tallies are sums of the same per-trial outcomes regardless
    // of the worker count.
    auto run_slice = [&](unsigned w) {
        Tally& t = per_worker[w];
        for (std::uint64_t i = w; i < trials; i += workers)
        {
            LazyLabeler labeler(trial_seed(master_seed, i));
            const auto outcome = lazy_is_k_accessible(n, height, k, labeler, budget);
            switch (outcome.verdict)
            {
                case Verdict::Accessible: ++t.accessible; break;
                case Verdict::Blocked: ++t.blocked; break;
                case Verdict::Undecided: ++t.undecided; break;
            }
        }
    };

    if (workers == 1)
    {
        run_slice(0);
    }
    else
    {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            threads.emplace_back(run_slice, w);
        for (auto& th : threads)
            th.join();
    }

    ThetaEstimate est;
    est.trials = trials;
    est.master_seed = master_seed;
    est.budget = budget;
    est.z = z;
    for (const auto& t : per_worker)
    {
        est.accessible += t.accessible;
        est.blocked += t.blocked;
        est.undecided += t.undecided;
    }
    est.theta_lo = static_cast<double>(est.accessible) / static_cast<double>(trials);
    est.theta_hi = static_cast<double>(est.accessible + est.undecided) / static_cast<double>(trials);
    const auto w = wilson_interval(est.accessible, trials, z);
    est.wilson_lo = w.lo;
    est.wilson_hi = w.hi;
    return est;
}

} // namespace kaccess
