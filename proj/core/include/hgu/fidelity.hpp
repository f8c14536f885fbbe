#pragma once

#include "hgu/codec.hpp"
#include "hgu/grid.hpp"
#include "hgu/operators.hpp"
#include "hgu/score.hpp"

namespace hgu {

enum class FidelityName { l1, l2, ffl };

struct FidelityKind {
    FidelityName kind = FidelityName::l2;
    double ffl_alpha = 1.0;  // spectrum-weight exponent, >= 0
};

struct FidelityEval {
    double value = 0.0;
    Grid grad_wrt_prediction;  // d value / d pred
};

/// l2: |y-pred|_2^2, grad 2(pred-y).
/// l1: sum |y-pred|, sign subgradient (0 at ties).
/// ffl: mean_k w_k |F(pred)-F(y)|_k^2 over ortho-normalized 2-D DFT bins,
///      w = |F(pred)-F(y)|^alpha held constant during differentiation.
FidelityEval eval_fidelity(const FidelityKind& kind, const Grid& y, const Grid& pred);

struct GuidanceEval {
    double value = 0.0;  // U(y, A D(z0_hat))
    Vec grad;            // d value / d z_t through the posterior mean
};

/// Chain-rule gradient of the data-fidelity term at z_t:
/// JVP^T . D^T . A^T applied to grad_wrt_prediction, with z0_hat = E[z0|z_t].
GuidanceEval guidance_gradient(const FidelityKind& kind, const Grid& y,
                               const MeasurementOp& op, const OrthoCodec& codec,
                               const Prior& prior, const DiffusionSchedule& s, int t,
                               const Vec& z_t, JvpMode jvp_mode);

/// 10*log10(max_val^2 / MSE); 99.0 when MSE == 0.
double psnr(const Grid& x, const Grid& ref, double max_val);

/// Single-scale SSIM, 11x11 Gaussian window sigma 1.5, valid positions only.
double ssim(const Grid& x, const Grid& ref, double max_val = 1.0);

}  // namespace hgu
