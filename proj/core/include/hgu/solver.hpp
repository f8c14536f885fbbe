#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hgu/codec.hpp"
#include "hgu/fidelity.hpp"
#include "hgu/grid.hpp"
#include "hgu/operators.hpp"
#include "hgu/schedule.hpp"
#include "hgu/score.hpp"
#include "hgu/update.hpp"

namespace hgu {

/// Thrown when an iterate goes non-finite (divergent guidance rate).
struct SolveDiverged : std::runtime_error {
    SolveDiverged(int t, int64_t step_index)
        : std::runtime_error("solver diverged (NaN/Inf) at diffusion step t=" + std::to_string(t) +
                             " (update " + std::to_string(step_index) + ")"),
          t(t),
          step_index(step_index) {}
    int t;
    int64_t step_index;
};

struct SolveConfig {
    const DiffusionSchedule* schedule = nullptr;
    const Prior* prior = nullptr;
    const MeasurementOp* op = nullptr;
    const OrthoCodec* codec = nullptr;  // null -> pixel mode (identity codec)
    FidelityKind fidelity;
    HguKind hgu_kind = HguKind::igdm;
    double eta = 0.9;
    double eta1 = 0.9;
    double eta2 = 0.999;
    double epsbar = 1e-8;
    bool bias_correct = true;
    GuidanceRateSchedule rate = GuidanceRateSchedule::constant(0.1);
    JvpMode jvp_mode = JvpMode::exact;
    uint64_t seed = 0;
    bool record_trace = true;
    bool record_iterates = false;       // keep z_t per step (tests)
    const Grid* ground_truth = nullptr;  // enables psnr/ssim in the result
};

struct SolveResult {
    Grid reconstruction;
    std::vector<std::pair<int, double>> trace;  // (t, fidelity value)
    double final_fidelity = 0.0;
    std::optional<std::pair<double, double>> metrics;  // (psnr, ssim)
    std::vector<Vec> iterates;  // z_t per step when record_iterates
};

/// Algorithms 1/2: ancestral DDPM sampling in the codec's latent space with a
/// data-fidelity update (GD / GDM / iGDM) applied after every ancestral step.
SolveResult solve_latent_hgu(const SolveConfig& cfg, const Grid& y);

/// Same loop with the identity codec (guidance directly in pixel space).
SolveResult solve_pixel_hgu(const SolveConfig& cfg, const Grid& y);

/// FISTA on 0.5*|Ax-y|^2 + lambda*TV_iso(x); monotone (objective never
/// increases), TV prox via 20 Chambolle dual iterations, step 1/L with L from
/// 50 power iterations on A^T A.
Grid fista_tv(const Grid& y, const MeasurementOp& op, double lambda_tv, int iters,
              std::vector<double>* objective_out = nullptr);

}  // namespace hgu
