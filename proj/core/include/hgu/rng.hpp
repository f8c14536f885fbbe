#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Core>

namespace hgu {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic named sub-stream of a master seed.
/// Gaussian draws use Box-Muller so sequences are identical across toolchains.
class RngStream {
public:
    RngStream(uint64_t master_seed, std::string_view name) {
        uint64_t h = 1469598103934665603ULL;  // FNV-1a over the name
        for (char c : name) h = (h ^ uint64_t(uint8_t(c))) * 1099511628211ULL;
        gen_.seed(splitmix64(master_seed ^ h));
    }
    explicit RngStream(uint64_t seed) { gen_.seed(splitmix64(seed)); }

    // uniform in [0,1)
    double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Eigen::VectorXd normal_vec(int64_t n) {
        Eigen::VectorXd v(n);
        for (int64_t i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    uint64_t next_u64() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace hgu
