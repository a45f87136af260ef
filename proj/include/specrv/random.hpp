#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace specrv {

// Deterministic standard-normal stream: mt19937_64 bits mapped to (0, 1]
// uniforms, then Box-Muller. Owning the transform (instead of using
// std::normal_distribution) pins the sample sequence for a given seed
// regardless of the standard library.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : eng_(seed) {}

    // uniform on (0, 1]; never zero, so log() below is safe
    double uniform() { return (double(eng_() >> 11) + 1.0) * 0x1.0p-53; }

    std::array<double, 2> pair() {
        constexpr double two_pi = 6.28318530717958647692528676655900577;
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = two_pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const auto z = pair();
        spare_ = z[1];
        have_spare_ = true;
        return z[0];
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
};

// Sample mean and standard error of g(draw(rng)) over n draws; one-pass
// Welford accumulation, strictly sequential so identical seeds give
// identical bits.
template <class Draw, class G>
McEstimate mc_mean(Draw&& draw, G&& g, std::int64_t n, std::uint64_t seed) {
    if (n < 100) throw std::invalid_argument("mc_mean: requires n >= 100");
    NormalStream rng(seed);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t i = 1; i <= n; ++i) {
        const double v = g(draw(rng));
        const double delta = v - mean;
        mean += delta / double(i);
        m2 += delta * (v - mean);
    }
    const double var = m2 / double(n - 1);
    return {mean, std::sqrt(var / double(n)), n, seed};
}

}  // namespace specrv
