#pragma once

#include <cstdint>
#include <random>

#include "lpball/quasinorm.hpp"

namespace lpball {

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed of the stream for one (cell, trial): the base seed is folded with
/// the bit patterns of n, γ, p and the trial index through mix64, so a
/// trial's instance depends only on its own coordinates and not on the
/// order in which cells are enumerated.
std::uint64_t stream_seed(std::uint64_t base, std::uint64_t n, double gamma, double p,
                          std::uint64_t trial);

/// mt19937_64 with a Box–Muller normal sampler. Both pieces are fully
/// specified, so draws are identical on every platform (unlike
/// std::normal_distribution, whose algorithm is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Signal drawn as N(μ, 1) entrywise with μ = γ/n, 2γ/n, ... until the
/// draw lies strictly outside the ball Σ|y_i|^p ≤ γ.
Vector generate_instance(int n, double gamma, double p, Rng& rng);

} // namespace lpball
