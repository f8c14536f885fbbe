#pragma once

#include <memory>

#include "hgu/config.hpp"
#include "hgu/solver.hpp"

namespace hgu {

/// Separable truncated-kernel Gaussian blur (kernel renormalized at borders).
Grid gaussian_blur(const Grid& img, double sigma);

/// A fully assembled task: phantom ground truth, operator, prior, schedule,
/// codec and the synthesized measurement y = A(truth) + sigma * noise.
struct Experiment {
    RunConfig cfg;
    Grid phantom;
    DiffusionSchedule schedule;
    std::unique_ptr<MeasurementOp> op;
    OrthoCodec codec = OrthoCodec::identity(16, 16);
    Prior prior;
    FidelityKind fidelity;
    Grid measurement;

    bool latent_mode() const { return cfg.latent_k > 0; }

    /// SolveConfig wired to this experiment's members (must outlive the solve).
    SolveConfig solve_config() const;
};

Experiment assemble_experiment(const RunConfig& cfg);

}  // namespace hgu
