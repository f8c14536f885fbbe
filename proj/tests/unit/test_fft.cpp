#include <doctest.h>

#include <cmath>

#include "hgu/fft.hpp"
#include "hgu/rng.hpp"

using namespace hgu;

namespace {

// brute-force DFT oracle
std::vector<cplx> dft_oracle(const std::vector<cplx>& a, bool inverse) {
    const size_t n = a.size();
    std::vector<cplx> out(n, cplx(0, 0));
    const double sign = inverse ? 2.0 : -2.0;
    for (size_t k = 0; k < n; ++k)
        for (size_t m = 0; m < n; ++m) {
            const double ang = sign * M_PI * double(k * m % n) / double(n);
            out[k] += a[m] * cplx(std::cos(ang), std::sin(ang));
        }
    if (inverse)
        for (auto& v : out) v /= double(n);
    return out;
}

}  // namespace

TEST_CASE("fft matches brute-force DFT for mixed sizes") {
    RngStream rng(5);
    for (size_t n : {1u, 2u, 7u, 8u, 12u, 16u, 45u, 64u, 100u}) {
        std::vector<cplx> a(n);
        for (auto& v : a) v = cplx(rng.normal(), rng.normal());
        auto got = a;
        fft(got, false);
        const auto want = dft_oracle(a, false);
        double scale = 0.0, err = 0.0;
        for (size_t i = 0; i < n; ++i) {
            err = std::max(err, std::abs(got[i] - want[i]));
            scale = std::max(scale, std::abs(want[i]));
        }
        CHECK(err <= 1e-10 * (1.0 + scale));

        fft(got, true);  // round trip
        double rerr = 0.0;
        for (size_t i = 0; i < n; ++i) rerr = std::max(rerr, std::abs(got[i] - a[i]));
        CHECK(rerr < 1e-16 + 1e-12);
    }
}

TEST_CASE("fft2 matches direct 2-D DFT") {
    RngStream rng(9);
    const int rows = 6, cols = 9;
    std::vector<double> data(size_t(rows) * cols);
    for (auto& v : data) v = rng.normal();
    const auto got = fft2(data.data(), rows, cols);
    for (int u = 0; u < rows; ++u)
        for (int v = 0; v < cols; ++v) {
            cplx want(0, 0);
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c) {
                    const double ang = -2.0 * M_PI * (double(u * r) / rows + double(v * c) / cols);
                    want += data[size_t(r) * cols + c] * cplx(std::cos(ang), std::sin(ang));
                }
            CHECK(std::abs(got[size_t(u) * cols + v] - want) < 1e-9);
        }

    // Parseval: sum |F|^2 == N * sum |x|^2
    double fsum = 0.0, xsum = 0.0;
    for (const auto& f : got) fsum += std::norm(f);
    for (double v : data) xsum += v * v;
    CHECK(fsum == doctest::Approx(double(rows * cols) * xsum).epsilon(1e-12));

    const auto back = ifft2_real(got, rows, cols);
    for (size_t i = 0; i < data.size(); ++i) CHECK(back[i] == doctest::Approx(data[i]).epsilon(1e-12));
}
