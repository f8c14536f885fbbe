#pragma once

#include <variant>
#include <vector>

#include "hgu/grid.hpp"
#include "hgu/schedule.hpp"

namespace hgu {

/// Analytic stand-ins for a trained score network.
struct GaussianPrior {
    Vec mean;
    Vec cov_diag;  // all entries > 0
};

struct GmmComponent {
    double weight = 1.0;  // > 0, weights sum to 1
    Vec mean;
    double var = 1.0;  // isotropic component variance, > 0
};

struct GmmPrior {
    std::vector<GmmComponent> components;
};

using Prior = std::variant<GaussianPrior, GmmPrior>;

struct ScoreEval {
    Vec score;                       // grad log p_t at the queried point
    bool has_exact_jacobian = false;
};

enum class JvpMode { exact, finite_diff, decoupled };

/// sqrt(abar_t) x0 + sqrt(1 - abar_t) noise
Vec forward_diffuse(const Vec& x0, const DiffusionSchedule& s, int t, const Vec& noise);

/// Exact score of the diffused marginal N(sqrt(abar) mean, abar cov + (1-abar) I).
ScoreEval score_gaussian(const GaussianPrior& p, const DiffusionSchedule& s, int t, const Vec& xt);

/// Exact mixture score via log-sum-exp responsibilities.
ScoreEval score_gmm(const GmmPrior& p, const DiffusionSchedule& s, int t, const Vec& xt);

ScoreEval score(const Prior& p, const DiffusionSchedule& s, int t, const Vec& xt);

/// Tweedie posterior mean (xt + (1 - abar_t) * score) / sqrt(abar_t),
/// with score in the true grad-log-density convention.
Vec posterior_mean(const ScoreEval& score, const DiffusionSchedule& s, int t, const Vec& xt);

Vec posterior_mean_at(const Prior& p, const DiffusionSchedule& s, int t, const Vec& xt);

/// J * direction with J = d posterior_mean / d xt.
/// exact: closed-form diagonal Jacobian (Gaussian prior only).
/// finite_diff: central differences, h = 1e-5 * (1 + |xt|_inf).
/// decoupled: the scalar 1/sqrt(abar_t) applied to direction.
Vec posterior_mean_jvp(const Prior& p, const DiffusionSchedule& s, int t, const Vec& xt,
                       const Vec& direction, JvpMode mode);

/// Analytic log density of the diffused marginal (test oracle support).
double log_marginal_density(const Prior& p, const DiffusionSchedule& s, int t, const Vec& xt);

}  // namespace hgu
