#include "lpball/random.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "lpball/errors.hpp"

namespace lpball {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t base, std::uint64_t n, double gamma, double p,
                          std::uint64_t trial) {
    std::uint64_t h = mix64(base);
    h = mix64(h ^ n);
    h = mix64(h ^ std::bit_cast<std::uint64_t>(gamma));
    h = mix64(h ^ std::bit_cast<std::uint64_t>(p));
    return mix64(h ^ trial);
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0)
        u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t n) {
    // Lemire-free rejection keeps the mapping trivially portable.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine_();
    while (v >= limit)
        v = engine_();
    return v % n;
}

Vector generate_instance(int n, double gamma, double p, Rng& rng) {
    if (n < 1)
        throw InvalidInput("generate_instance: n must be at least 1");
    if (!(gamma > 0.0))
        throw InvalidInput("generate_instance: gamma must be positive");
    if (!(p > 0.0 && p < 1.0))
        throw InvalidInput("generate_instance: p must lie in (0, 1)");
    const double step = gamma / n;
    Vector y(n);
    for (double mu = step;; mu += step) {
        for (int i = 0; i < n; ++i)
            y[i] = mu + rng.normal();
        if (lp_norm_p(y, p) > gamma)
            return y;
    }
}

} // namespace lpball
