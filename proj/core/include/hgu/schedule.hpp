#pragma once

#include <vector>

namespace hgu {

/// DDPM noise schedule: beta_t, alpha_t = 1-beta_t, alpha_bar_t = prod alpha.
struct DiffusionSchedule {
    int T = 0;
    std::vector<double> beta;
    std::vector<double> alpha;
    std::vector<double> alpha_bar;
};

/// Coefficients of one ancestral step:
///   z_{t-1}' = c_xt * z_t + c_x0 * z0_hat + sigma * k
struct AncestralCoeffs {
    double c_xt = 0.0;
    double c_x0 = 1.0;
    double sigma = 0.0;
};

/// beta interpolated linearly from beta_start to beta_end inclusive.
DiffusionSchedule make_linear_schedule(int T, double beta_start, double beta_end);

/// Ancestral coefficients at step t. Convention alpha_bar_{-1} = 1, so t = 0
/// returns (0, 1, 0): the final step is a deterministic identity on z0_hat.
/// sigma is the DDPM posterior std sqrt(beta_t * (1-abar_{t-1}) / (1-abar_t)).
AncestralCoeffs ancestral_coeffs(const DiffusionSchedule& s, int t);

}  // namespace hgu
