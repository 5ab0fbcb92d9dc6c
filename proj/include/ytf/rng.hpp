#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace ytf {

// xoshiro256++ with splitmix64 seeding. Self-contained so that seeded runs
// are reproducible across standard library implementations.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& word : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    uint64_t next() {
        auto rotl = [](uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    // Uniform direction on the unit hemisphere {omega_n >= 0} of S^{n-1}.
    std::vector<double> hemisphere_direction(int n) {
        std::vector<double> w(n);
        double norm2 = 0;
        do {
            norm2 = 0;
            for (int i = 0; i < n; ++i) {
                w[i] = gaussian();
                norm2 += w[i] * w[i];
            }
        } while (norm2 < 1e-30);
        double inv = 1.0 / std::sqrt(norm2);
        for (double& v : w) v *= inv;
        if (w[n - 1] < 0) w[n - 1] = -w[n - 1];
        return w;
    }

    // Uniform point in the unit ball of R^n (all of it, no hemisphere fold).
    std::vector<double> ball_point(int n) {
        auto w = hemisphere_direction(n);
        if (uniform() < 0.5) w[n - 1] = -w[n - 1];
        double r = std::pow(uniform(), 1.0 / n);
        for (double& v : w) v *= r;
        return w;
    }

  private:
    uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0;
};

// Kahan compensated accumulator; summation order is the call order.
class Kahan {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double sum() const { return s_; }

  private:
    double s_ = 0, c_ = 0;
};

}  // namespace ytf
