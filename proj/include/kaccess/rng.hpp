#pragma once

// Deterministic randomness. Everything downstream (labelings, Monte Carlo
// trials, lazy labels) is a pure function of a user-supplied 64-bit seed, so
// results are reproducible across runs, platforms and worker counts.

#include <cstdint>
#include <span>

namespace kaccess {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer: bijective 64->64 mixer.
constexpr std::uint64_t sm64_mix(std::uint64_t z)
{
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Per-trial seed = i-th output of the splitmix64 stream started at
// master_seed. O(1) in i, so trials can be assigned to workers in any
// order without changing any trial's labels.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index)
{
    return sm64_mix(master_seed + (trial_index + 1) * kGolden);
}

// Stateless counter-based RNG stream; `state` identifies the draw.
class SplitMix64
{
  public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next()
    {
        state_ += kGolden;
        return sm64_mix(state_);
    }

    // Uniform in [0, bound) without modulo bias (Lemire's method).
    std::uint64_t next_below(std::uint64_t bound)
    {
        __uint128_t m = static_cast<__uint128_t>(next()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound)
        {
            std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold)
            {
                m = static_cast<__uint128_t>(next()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    constexpr double next_unit()
    {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// Deterministic label oracle for implicit complete n-ary trees. A vertex is
// identified by its child-index path from the root; the label is a hash of
// (seed, path) mapped to [0, 1). Querying the same path twice returns the
// same value, and no tree storage is ever allocated.
//
// The DFS hot path carries the running hash state down the tree via
// child_state(), so a label costs O(1) amortized instead of O(depth).
class LazyLabeler
{
  public:
    explicit constexpr LazyLabeler(std::uint64_t master_seed)
        : master_seed_(master_seed), root_state_(sm64_mix(master_seed ^ 0xA0761D6478BD642Full))
    {
    }

    constexpr std::uint64_t master_seed() const { return master_seed_; }
    constexpr std::uint64_t root_state() const { return root_state_; }

    static constexpr std::uint64_t child_state(std::uint64_t state, std::uint32_t child_index)
    {
        return sm64_mix(state + kGolden * (static_cast<std::uint64_t>(child_index) + 1));
    }

    // Label derived through one extra salted mix so a vertex's label is
    // decoupled from the hash states of its subtree.
    static constexpr double label_of_state(std::uint64_t state)
    {
        return static_cast<double>(sm64_mix(state ^ 0xE7037ED1A0B428DBull) >> 11) * 0x1.0p-53;
    }

    constexpr double label(std::span<const std::uint32_t> vertex_path) const
    {
        std::uint64_t s = root_state_;
        for (std::uint32_t c : vertex_path)
            s = child_state(s, c);
        return label_of_state(s);
    }

  private:
    std::uint64_t master_seed_;
    std::uint64_t root_state_;
};

} // namespace kaccess
