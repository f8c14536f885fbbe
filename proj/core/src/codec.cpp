#include "hgu/codec.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hgu {

namespace {

// JPEG-style zigzag over (u,v) frequency pairs, lowest diagonals first.
std::vector<std::pair<int, int>> zigzag(int h, int w) {
    std::vector<std::pair<int, int>> order;
    order.reserve(size_t(h) * w);
    for (int d = 0; d <= h + w - 2; ++d) {
        if (d % 2 == 0) {
            for (int u = std::min(d, h - 1); u >= 0 && d - u < w; --u) order.emplace_back(u, d - u);
        } else {
            for (int v = std::min(d, w - 1); v >= 0 && d - v < h; --v) order.emplace_back(d - v, v);
        }
    }
    return order;
}

}  // namespace

OrthoCodec OrthoCodec::identity(int h, int w) {
    if (h <= 0 || w <= 0) throw std::invalid_argument("OrthoCodec::identity: bad dims");
    OrthoCodec c;
    c.h_ = h;
    c.w_ = w;
    c.k_ = h * w;
    c.identity_ = true;
    return c;
}

OrthoCodec OrthoCodec::fit_dct(int h, int w, int k) {
    if (h <= 0 || w <= 0) throw std::invalid_argument("fit_dct: bad dims");
    if (k < 1 || k > h * w) throw std::invalid_argument("fit_dct: k out of range [1, h*w]");
    OrthoCodec c;
    c.h_ = h;
    c.w_ = w;
    c.k_ = k;
    c.basis_.resize(int64_t(h) * w, k);
    const auto order = zigzag(h, w);
    for (int col = 0; col < k; ++col) {
        const auto [u, v] = order[size_t(col)];
        const double cu = (u == 0) ? std::sqrt(1.0 / h) : std::sqrt(2.0 / h);
        const double cv = (v == 0) ? std::sqrt(1.0 / w) : std::sqrt(2.0 / w);
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j)
                c.basis_(int64_t(i) * w + j, col) = cu * cv *
                                                    std::cos(M_PI * (2 * i + 1) * u / (2.0 * h)) *
                                                    std::cos(M_PI * (2 * j + 1) * v / (2.0 * w));
    }
    return c;
}

Vec OrthoCodec::encode(const Grid& x) const {
    if (x.height != h_ || x.width != w_) throw std::invalid_argument("encode: dim mismatch");
    if (identity_) return x.data;
    return basis_.transpose() * x.data;
}

Grid OrthoCodec::decode(const Vec& z) const {
    if (z.size() != k_) throw std::invalid_argument("decode: dim mismatch");
    if (identity_) return Grid(h_, w_, z);
    return Grid(h_, w_, basis_ * z);
}

Vec OrthoCodec::decode_adjoint(const Grid& g) const {
    if (g.height != h_ || g.width != w_) throw std::invalid_argument("decode_adjoint: dim mismatch");
    if (identity_) return g.data;
    return basis_.transpose() * g.data;
}

}  // namespace hgu
