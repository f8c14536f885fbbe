#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hgu/grid.hpp"

namespace hgu {

/// Parallel-beam geometry. Pixel spacing 1, detector spacing 1, detector
/// array centered on the image center, angles in degrees over [0,180).
struct RadonSpec {
    int image_size = 0;
    std::vector<double> angles;  // strictly increasing, in [0,180)
    int n_detectors = 0;         // >= image_size

    int n_angles() const { return int(angles.size()); }
};

/// Equispaced angles over [0,180) and n_detectors = even(ceil(sqrt(2)*size)).
RadonSpec make_radon_spec(int image_size, int n_angles);

enum class ViewMaskKind { full, sparse_view, limited_angle };

struct ViewMask {
    std::vector<bool> kept;  // length n_angles, at least one true
    ViewMaskKind kind = ViewMaskKind::full;

    int n_kept() const;
    static ViewMask full_mask(int n_angles);
};

ViewMask make_sparse_view_mask(const RadonSpec& spec, int k);
ViewMask make_limited_angle_mask(const RadonSpec& spec, double max_deg);

/// Ray-driven line integrals, bilinear interpolation, sample spacing 0.5 px.
/// Returns an n_angles x n_detectors sinogram; masked-out angles stay zero.
Grid radon_forward(const RadonSpec& spec, const Grid& img, const ViewMask* mask = nullptr);

/// Exact transpose of radon_forward (same interpolation weights).
Grid radon_adjoint(const RadonSpec& spec, const Grid& sino, const ViewMask* mask = nullptr);

enum class FbpFilter { ramlak, hann };

/// Frequency-domain ramp filtering of the kept rows followed by
/// radon_adjoint, scaled by pi / (2 * n_kept).
Grid fbp_reconstruct(const RadonSpec& spec, const ViewMask& mask, const Grid& sino,
                     FbpFilter filter = FbpFilter::ramlak);

struct InpaintMask {
    std::vector<bool> keep;  // length height*width
    double keep_fraction = 1.0;
};

/// Keeps the first round(keep_fraction * N) indices of a seeded uniform permutation.
InpaintMask make_inpaint_mask(int64_t n_pixels, double keep_fraction, uint64_t seed);

Grid apply_inpaint_mask(const InpaintMask& m, const Grid& img);

struct DownsampleSpec {
    int factor = 1;
    int in_size = 0;   // == factor * out_size
    int out_size = 0;
};

/// factor x factor area average; adjoint spreads with weight 1/factor^2.
Grid downsample_bilinear(const DownsampleSpec& spec, const Grid& img);
Grid downsample_adjoint(const DownsampleSpec& spec, const Grid& small);

/// Measurement operator A with exact adjoint, as used by the solvers.
class MeasurementOp {
public:
    virtual ~MeasurementOp() = default;
    virtual Grid forward(const Grid& img) const = 0;
    virtual Grid adjoint(const Grid& meas) const = 0;
    virtual std::pair<int, int> input_shape() const = 0;   // (h, w)
    virtual std::pair<int, int> output_shape() const = 0;  // (h, w)
};

class IdentityOp final : public MeasurementOp {
public:
    IdentityOp(int h, int w) : h_(h), w_(w) {}
    Grid forward(const Grid& img) const override;
    Grid adjoint(const Grid& meas) const override;
    std::pair<int, int> input_shape() const override { return {h_, w_}; }
    std::pair<int, int> output_shape() const override { return {h_, w_}; }

private:
    int h_, w_;
};

class RadonOp final : public MeasurementOp {
public:
    RadonOp(RadonSpec spec, ViewMask mask) : spec_(std::move(spec)), mask_(std::move(mask)) {}
    Grid forward(const Grid& img) const override { return radon_forward(spec_, img, &mask_); }
    Grid adjoint(const Grid& meas) const override { return radon_adjoint(spec_, meas, &mask_); }
    std::pair<int, int> input_shape() const override { return {spec_.image_size, spec_.image_size}; }
    std::pair<int, int> output_shape() const override { return {spec_.n_angles(), spec_.n_detectors}; }
    const RadonSpec& spec() const { return spec_; }
    const ViewMask& mask() const { return mask_; }

private:
    RadonSpec spec_;
    ViewMask mask_;
};

class InpaintOp final : public MeasurementOp {
public:
    InpaintOp(InpaintMask mask, int h, int w) : mask_(std::move(mask)), h_(h), w_(w) {}
    Grid forward(const Grid& img) const override { return apply_inpaint_mask(mask_, img); }
    Grid adjoint(const Grid& meas) const override { return apply_inpaint_mask(mask_, meas); }
    std::pair<int, int> input_shape() const override { return {h_, w_}; }
    std::pair<int, int> output_shape() const override { return {h_, w_}; }

private:
    InpaintMask mask_;
    int h_, w_;
};

class DownsampleOp final : public MeasurementOp {
public:
    explicit DownsampleOp(DownsampleSpec spec) : spec_(spec) {}
    Grid forward(const Grid& img) const override { return downsample_bilinear(spec_, img); }
    Grid adjoint(const Grid& meas) const override { return downsample_adjoint(spec_, meas); }
    std::pair<int, int> input_shape() const override { return {spec_.in_size, spec_.in_size}; }
    std::pair<int, int> output_shape() const override { return {spec_.out_size, spec_.out_size}; }

private:
    DownsampleSpec spec_;
};

}  // namespace hgu
