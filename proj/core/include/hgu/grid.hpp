#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace hgu {

using Vec = Eigen::VectorXd;

/// Dense 2-D real image/sinogram, row-major flat storage.
struct Grid {
    int height = 0;
    int width = 0;
    Vec data;  // length height*width, row-major
    std::optional<std::pair<double, double>> value_range_hint;

    Grid() = default;
    Grid(int h, int w) : height(h), width(w), data(Vec::Zero(int64_t(h) * w)) {
        if (h <= 0 || w <= 0) throw std::invalid_argument("Grid: dims must be positive");
    }
    Grid(int h, int w, Vec d) : height(h), width(w), data(std::move(d)) {
        if (h <= 0 || w <= 0) throw std::invalid_argument("Grid: dims must be positive");
        if (data.size() != int64_t(h) * w) throw std::invalid_argument("Grid: data length != height*width");
    }

    int64_t size() const { return int64_t(height) * width; }
    double& at(int r, int c) { return data[int64_t(r) * width + c]; }
    double at(int r, int c) const { return data[int64_t(r) * width + c]; }
    bool same_shape(const Grid& o) const { return height == o.height && width == o.width; }
    bool all_finite() const { return data.allFinite(); }
};

/// 10-ellipse Shepp-Logan phantom on [-1,1]^2, values in [0,1].
/// Pixels are area-sampled with a 4x4 subgrid.
Grid generate_shepp_logan(int size);

/// Affine rescale to [0,1]; a constant grid maps to all zeros.
Grid normalize_01(const Grid& g);

enum class GridFormat { pgm16, f64raw };

// pgm16: binary P5, maxval 65535, big-endian samples, values clamped to [0,1]
// and quantized with round-half-away-from-zero (0.5 -> 32768).
// f64raw: two little-endian uint64 dims then little-endian doubles row-major.
void write_grid(const Grid& g, const std::string& path, GridFormat format);
Grid read_grid(const std::string& path, GridFormat format);

}  // namespace hgu
