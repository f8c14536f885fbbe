#include "hgu/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hgu/fft.hpp"
#include "hgu/rng.hpp"

namespace hgu {

namespace {

constexpr double kRayStep = 0.5;  // sample spacing along each ray, pixels

struct RayGeometry {
    double cx;        // image center (pixel units)
    double sc;        // detector center offset
    int n_samples;    // samples per ray
    double tau0;      // first sample position along the ray
};

RayGeometry ray_geometry(const RadonSpec& spec) {
    const double L = std::sqrt(2.0) * spec.image_size;
    const int M = int(std::lround(L / kRayStep));
    return {(spec.image_size - 1) / 2.0, (spec.n_detectors - 1) / 2.0, M + 1, -L / 2.0};
}

void check_spec(const RadonSpec& spec) {
    if (spec.image_size <= 0) throw std::invalid_argument("RadonSpec: image_size must be positive");
    if (spec.angles.empty()) throw std::invalid_argument("RadonSpec: need at least one angle");
    if (spec.n_detectors < spec.image_size)
        throw std::invalid_argument("RadonSpec: n_detectors must be >= image_size");
    for (size_t i = 0; i < spec.angles.size(); ++i) {
        if (spec.angles[i] < 0.0 || spec.angles[i] >= 180.0)
            throw std::invalid_argument("RadonSpec: angles must lie in [0,180)");
        if (i > 0 && spec.angles[i] <= spec.angles[i - 1])
            throw std::invalid_argument("RadonSpec: angles must be strictly increasing");
    }
}

void check_mask(const RadonSpec& spec, const ViewMask* mask) {
    if (!mask) return;
    if (int(mask->kept.size()) != spec.n_angles())
        throw std::invalid_argument("ViewMask: length must equal n_angles");
    if (mask->n_kept() == 0) throw std::invalid_argument("ViewMask: at least one angle must be kept");
}

}  // namespace

RadonSpec make_radon_spec(int image_size, int n_angles) {
    if (n_angles <= 0) throw std::invalid_argument("make_radon_spec: n_angles must be positive");
    RadonSpec spec;
    spec.image_size = image_size;
    spec.angles.resize(n_angles);
    for (int i = 0; i < n_angles; ++i) spec.angles[i] = 180.0 * double(i) / double(n_angles);
    int nd = int(std::ceil(std::sqrt(2.0) * image_size));
    if (nd % 2 != 0) ++nd;
    spec.n_detectors = nd;
    check_spec(spec);
    return spec;
}

int ViewMask::n_kept() const { return int(std::count(kept.begin(), kept.end(), true)); }

ViewMask ViewMask::full_mask(int n_angles) {
    return {std::vector<bool>(size_t(n_angles), true), ViewMaskKind::full};
}

ViewMask make_sparse_view_mask(const RadonSpec& spec, int k) {
    const int n = spec.n_angles();
    if (k <= 0 || k > n) throw std::invalid_argument("make_sparse_view_mask: need 0 < k <= n_angles");
    ViewMask m{std::vector<bool>(size_t(n), false), ViewMaskKind::sparse_view};
    for (int i = 0; i < k; ++i) m.kept[size_t(int64_t(i) * n / k)] = true;
    return m;
}

ViewMask make_limited_angle_mask(const RadonSpec& spec, double max_deg) {
    if (max_deg <= 0.0 || max_deg > 180.0)
        throw std::invalid_argument("make_limited_angle_mask: need 0 < max_deg <= 180");
    ViewMask m{std::vector<bool>(spec.angles.size(), false), ViewMaskKind::limited_angle};
    for (size_t i = 0; i < spec.angles.size(); ++i) m.kept[i] = spec.angles[i] < max_deg;
    if (m.n_kept() == 0) throw std::invalid_argument("make_limited_angle_mask: no angle kept");
    return m;
}

Grid radon_forward(const RadonSpec& spec, const Grid& img, const ViewMask* mask) {
    check_spec(spec);
    check_mask(spec, mask);
    if (img.height != spec.image_size || img.width != spec.image_size)
        throw std::invalid_argument("radon_forward: image size mismatch");
    const auto geo = ray_geometry(spec);
    const int n = spec.image_size;
    Grid sino(spec.n_angles(), spec.n_detectors);
    for (int a = 0; a < spec.n_angles(); ++a) {
        if (mask && !mask->kept[size_t(a)]) continue;
        const double th = spec.angles[size_t(a)] * M_PI / 180.0;
        const double ux = std::cos(th), uy = std::sin(th);   // detector axis
        const double vx = -std::sin(th), vy = std::cos(th);  // ray direction
        for (int d = 0; d < spec.n_detectors; ++d) {
            const double s = double(d) - geo.sc;
            const double bx = geo.cx + s * ux;
            const double by = geo.cx + s * uy;
            double acc = 0.0;
            for (int k = 0; k < geo.n_samples; ++k) {
                const double tau = geo.tau0 + kRayStep * k;
                const double x = bx + tau * vx;
                const double y = by + tau * vy;
                const int ix = int(std::floor(x));
                const int iy = int(std::floor(y));
                const double fx = x - ix, fy = y - iy;
                if (ix >= 0 && ix + 1 < n && iy >= 0 && iy + 1 < n) {
                    acc += (1 - fx) * (1 - fy) * img.at(iy, ix) + fx * (1 - fy) * img.at(iy, ix + 1) +
                           (1 - fx) * fy * img.at(iy + 1, ix) + fx * fy * img.at(iy + 1, ix + 1);
                } else if (ix >= -1 && ix <= n - 1 && iy >= -1 && iy <= n - 1) {
                    // border cells: clip the 4-neighbor stencil
                    if (iy >= 0 && ix >= 0) acc += (1 - fx) * (1 - fy) * img.at(iy, ix);
                    if (iy >= 0 && ix + 1 < n) acc += fx * (1 - fy) * img.at(iy, ix + 1);
                    if (iy + 1 < n && ix >= 0) acc += (1 - fx) * fy * img.at(iy + 1, ix);
                    if (iy + 1 < n && ix + 1 < n) acc += fx * fy * img.at(iy + 1, ix + 1);
                }
            }
            sino.at(a, d) = acc * kRayStep;
        }
    }
    return sino;
}

Grid radon_adjoint(const RadonSpec& spec, const Grid& sino, const ViewMask* mask) {
    check_spec(spec);
    check_mask(spec, mask);
    if (sino.height != spec.n_angles() || sino.width != spec.n_detectors)
        throw std::invalid_argument("radon_adjoint: sinogram size mismatch");
    const auto geo = ray_geometry(spec);
    const int n = spec.image_size;
    Grid img(n, n);
    for (int a = 0; a < spec.n_angles(); ++a) {
        if (mask && !mask->kept[size_t(a)]) continue;
        const double th = spec.angles[size_t(a)] * M_PI / 180.0;
        const double ux = std::cos(th), uy = std::sin(th);
        const double vx = -std::sin(th), vy = std::cos(th);
        for (int d = 0; d < spec.n_detectors; ++d) {
            const double w0 = sino.at(a, d) * kRayStep;
            if (w0 == 0.0) continue;
            const double s = double(d) - geo.sc;
            const double bx = geo.cx + s * ux;
            const double by = geo.cx + s * uy;
            for (int k = 0; k < geo.n_samples; ++k) {
                const double tau = geo.tau0 + kRayStep * k;
                const double x = bx + tau * vx;
                const double y = by + tau * vy;
                const int ix = int(std::floor(x));
                const int iy = int(std::floor(y));
                const double fx = x - ix, fy = y - iy;
                if (ix >= -1 && ix <= n - 1 && iy >= -1 && iy <= n - 1) {
                    if (iy >= 0 && ix >= 0) img.at(iy, ix) += w0 * (1 - fx) * (1 - fy);
                    if (iy >= 0 && ix + 1 < n) img.at(iy, ix + 1) += w0 * fx * (1 - fy);
                    if (iy + 1 < n && ix >= 0) img.at(iy + 1, ix) += w0 * (1 - fx) * fy;
                    if (iy + 1 < n && ix + 1 < n) img.at(iy + 1, ix + 1) += w0 * fx * fy;
                }
            }
        }
    }
    return img;
}

Grid fbp_reconstruct(const RadonSpec& spec, const ViewMask& mask, const Grid& sino, FbpFilter filter) {
    check_spec(spec);
    check_mask(spec, &mask);
    if (sino.height != spec.n_angles() || sino.width != spec.n_detectors)
        throw std::invalid_argument("fbp_reconstruct: sinogram size mismatch");
    const int nd = spec.n_detectors;
    size_t npad = 1;
    while (npad < size_t(2 * nd)) npad <<= 1;

    // ramp |f|/f_nyq in [0,1], optionally Hann-windowed
    std::vector<double> H(npad);
    for (size_t k = 0; k < npad; ++k) {
        const double f = double(std::min(k, npad - k)) / (double(npad) / 2.0);
        H[k] = f;
        if (filter == FbpFilter::hann) H[k] *= 0.5 * (1.0 + std::cos(M_PI * f));
    }

    Grid filtered(sino.height, sino.width);
    std::vector<cplx> row(npad);
    for (int a = 0; a < spec.n_angles(); ++a) {
        if (!mask.kept[size_t(a)]) continue;
        std::fill(row.begin(), row.end(), cplx(0, 0));
        for (int d = 0; d < nd; ++d) row[size_t(d)] = cplx(sino.at(a, d), 0.0);
        fft(row, false);
        for (size_t k = 0; k < npad; ++k) row[k] *= H[k];
        fft(row, true);
        for (int d = 0; d < nd; ++d) filtered.at(a, d) = row[size_t(d)].real();
    }
    Grid rec = radon_adjoint(spec, filtered, &mask);
    rec.data *= M_PI / (2.0 * mask.n_kept());
    return rec;
}

InpaintMask make_inpaint_mask(int64_t n_pixels, double keep_fraction, uint64_t seed) {
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
        throw std::invalid_argument("make_inpaint_mask: keep_fraction must be in (0,1]");
    if (n_pixels <= 0) throw std::invalid_argument("make_inpaint_mask: n_pixels must be positive");
    const auto n_keep = int64_t(std::llround(keep_fraction * double(n_pixels)));
    std::vector<int64_t> perm(static_cast<size_t>(n_pixels));
    std::iota(perm.begin(), perm.end(), 0);
    RngStream rng(seed, "mask");
    // Fisher-Yates with the stream's own uniform draws (toolchain-stable)
    for (int64_t i = n_pixels - 1; i > 0; --i) {
        const auto j = int64_t(rng.next_u64() % uint64_t(i + 1));
        std::swap(perm[size_t(i)], perm[size_t(j)]);
    }
    InpaintMask m;
    m.keep_fraction = keep_fraction;
    m.keep.assign(size_t(n_pixels), false);
    for (int64_t i = 0; i < n_keep; ++i) m.keep[size_t(perm[size_t(i)])] = true;
    return m;
}

Grid apply_inpaint_mask(const InpaintMask& m, const Grid& img) {
    if (int64_t(m.keep.size()) != img.size())
        throw std::invalid_argument("apply_inpaint_mask: mask/image size mismatch");
    Grid out = img;
    for (int64_t i = 0; i < img.size(); ++i)
        if (!m.keep[size_t(i)]) out.data[i] = 0.0;
    return out;
}

Grid downsample_bilinear(const DownsampleSpec& spec, const Grid& img) {
    if (spec.factor <= 0 || spec.in_size != spec.factor * spec.out_size)
        throw std::invalid_argument("downsample: in_size must equal factor*out_size");
    if (img.height != spec.in_size || img.width != spec.in_size)
        throw std::invalid_argument("downsample: image size mismatch");
    const int f = spec.factor;
    Grid out(spec.out_size, spec.out_size);
    for (int r = 0; r < spec.out_size; ++r)
        for (int c = 0; c < spec.out_size; ++c) {
            double acc = 0.0;
            for (int i = 0; i < f; ++i)
                for (int j = 0; j < f; ++j) acc += img.at(r * f + i, c * f + j);
            out.at(r, c) = acc / double(f * f);
        }
    return out;
}

Grid downsample_adjoint(const DownsampleSpec& spec, const Grid& small) {
    if (spec.factor <= 0 || spec.in_size != spec.factor * spec.out_size)
        throw std::invalid_argument("downsample_adjoint: in_size must equal factor*out_size");
    if (small.height != spec.out_size || small.width != spec.out_size)
        throw std::invalid_argument("downsample_adjoint: image size mismatch");
    const int f = spec.factor;
    Grid out(spec.in_size, spec.in_size);
    for (int r = 0; r < spec.out_size; ++r)
        for (int c = 0; c < spec.out_size; ++c) {
            const double v = small.at(r, c) / double(f * f);
            for (int i = 0; i < f; ++i)
                for (int j = 0; j < f; ++j) out.at(r * f + i, c * f + j) = v;
        }
    return out;
}

Grid IdentityOp::forward(const Grid& img) const {
    if (img.height != h_ || img.width != w_) throw std::invalid_argument("IdentityOp: size mismatch");
    return img;
}

Grid IdentityOp::adjoint(const Grid& meas) const {
    if (meas.height != h_ || meas.width != w_) throw std::invalid_argument("IdentityOp: size mismatch");
    return meas;
}

}  // namespace hgu
