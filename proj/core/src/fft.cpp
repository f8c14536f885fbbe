#include "hgu/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace hgu {

namespace {

bool is_pow2(size_t n) { return n && (n & (n - 1)) == 0; }

size_t next_pow2(size_t n) {
    size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Iterative radix-2 Cooley-Tukey, n a power of two. No scaling.
void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / double(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// Bluestein chirp-z transform for arbitrary n (forward, no scaling).
void fft_bluestein(std::vector<cplx>& a, bool inverse) {
    const size_t n = a.size();
    const size_t m = next_pow2(2 * n + 1);
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<cplx> w(n);  // chirp exp(sign*i*pi*k^2/n)
    for (size_t k = 0; k < n; ++k) {
        // k^2 mod 2n avoids precision loss for large k
        const auto k2 = (unsigned long long)k * k % (2 * n);
        const double ang = sign * M_PI * double(k2) / double(n);
        w[k] = cplx(std::cos(ang), std::sin(ang));
    }
    std::vector<cplx> x(m, cplx(0, 0)), y(m, cplx(0, 0));
    for (size_t k = 0; k < n; ++k) x[k] = a[k] * w[k];
    y[0] = std::conj(w[0]);
    for (size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(w[k]);
    fft_pow2(x, false);
    fft_pow2(y, false);
    for (size_t k = 0; k < m; ++k) x[k] *= y[k];
    fft_pow2(x, true);
    for (size_t k = 0; k < n; ++k) a[k] = x[k] * w[k] / double(m);
}

}  // namespace

void fft(std::vector<cplx>& a, bool inverse) {
    const size_t n = a.size();
    if (n == 0) throw std::invalid_argument("fft: empty input");
    if (n > 1) {
        if (is_pow2(n))
            fft_pow2(a, inverse);
        else
            fft_bluestein(a, inverse);
    }
    if (inverse)
        for (auto& v : a) v /= double(n);
}

std::vector<cplx> fft2(const double* data, int rows, int cols) {
    std::vector<cplx> out(size_t(rows) * cols);
    for (size_t i = 0; i < out.size(); ++i) out[i] = cplx(data[i], 0.0);
    std::vector<cplx> buf;
    for (int r = 0; r < rows; ++r) {
        buf.assign(out.begin() + size_t(r) * cols, out.begin() + size_t(r + 1) * cols);
        fft(buf, false);
        std::copy(buf.begin(), buf.end(), out.begin() + size_t(r) * cols);
    }
    buf.resize(rows);
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) buf[r] = out[size_t(r) * cols + c];
        fft(buf, false);
        for (int r = 0; r < rows; ++r) out[size_t(r) * cols + c] = buf[r];
    }
    return out;
}

std::vector<double> ifft2_real(std::vector<cplx> freq, int rows, int cols) {
    std::vector<cplx> buf(cols);
    for (int r = 0; r < rows; ++r) {
        buf.assign(freq.begin() + size_t(r) * cols, freq.begin() + size_t(r + 1) * cols);
        fft(buf, true);
        std::copy(buf.begin(), buf.end(), freq.begin() + size_t(r) * cols);
    }
    buf.resize(rows);
    std::vector<double> out(size_t(rows) * cols);
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) buf[r] = freq[size_t(r) * cols + c];
        fft(buf, true);
        for (int r = 0; r < rows; ++r) out[size_t(r) * cols + c] = buf[r].real();
    }
    return out;
}

}  // namespace hgu
