#include "hgu/score.hpp"

#include <cmath>
#include <stdexcept>

namespace hgu {

namespace {

void check_step(const DiffusionSchedule& s, int t) {
    if (t < 0 || t >= s.T) throw std::invalid_argument("score: step t out of range");
}

double gmm_dim(const GmmPrior& p) {
    if (p.components.empty()) throw std::invalid_argument("GmmPrior: no components");
    return double(p.components.front().mean.size());
}

}  // namespace

Vec forward_diffuse(const Vec& x0, const DiffusionSchedule& s, int t, const Vec& noise) {
    check_step(s, t);
    if (x0.size() != noise.size()) throw std::invalid_argument("forward_diffuse: dim mismatch");
    const double abar = s.alpha_bar[t];
    return std::sqrt(abar) * x0 + std::sqrt(1.0 - abar) * noise;
}

ScoreEval score_gaussian(const GaussianPrior& p, const DiffusionSchedule& s, int t, const Vec& xt) {
    check_step(s, t);
    if (p.mean.size() != xt.size() || p.cov_diag.size() != xt.size())
        throw std::invalid_argument("score_gaussian: dim mismatch");
    const double abar = s.alpha_bar[t];
    // marginal: N(sqrt(abar) mu, abar*cov + (1-abar) I), diagonal
    const Vec var = abar * p.cov_diag.array() + (1.0 - abar);
    ScoreEval e;
    e.score = -((xt - std::sqrt(abar) * p.mean).array() / var.array()).matrix();
    e.has_exact_jacobian = true;
    return e;
}

ScoreEval score_gmm(const GmmPrior& p, const DiffusionSchedule& s, int t, const Vec& xt) {
    check_step(s, t);
    const int d = int(gmm_dim(p));
    if (xt.size() != d) throw std::invalid_argument("score_gmm: dim mismatch");
    const double abar = s.alpha_bar[t];
    const size_t K = p.components.size();

    // log responsibilities via log-sum-exp
    std::vector<double> logp(K);
    std::vector<Vec> comp_score(K);
    double logmax = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < K; ++k) {
        const auto& c = p.components[k];
        if (c.mean.size() != d) throw std::invalid_argument("score_gmm: component dim mismatch");
        const double var = abar * c.var + (1.0 - abar);
        const Vec diff = xt - std::sqrt(abar) * c.mean;
        logp[k] = std::log(c.weight) - 0.5 * diff.squaredNorm() / var -
                  0.5 * d * std::log(2.0 * M_PI * var);
        comp_score[k] = -diff / var;
        logmax = std::max(logmax, logp[k]);
    }
    double denom = 0.0;
    for (size_t k = 0; k < K; ++k) denom += std::exp(logp[k] - logmax);
    ScoreEval e;
    e.score = Vec::Zero(d);
    for (size_t k = 0; k < K; ++k)
        e.score += (std::exp(logp[k] - logmax) / denom) * comp_score[k];
    e.has_exact_jacobian = false;
    return e;
}

ScoreEval score(const Prior& p, const DiffusionSchedule& s, int t, const Vec& xt) {
    return std::visit(
        [&](const auto& prior) {
            using T = std::decay_t<decltype(prior)>;
            if constexpr (std::is_same_v<T, GaussianPrior>)
                return score_gaussian(prior, s, t, xt);
            else
                return score_gmm(prior, s, t, xt);
        },
        p);
}

Vec posterior_mean(const ScoreEval& score, const DiffusionSchedule& s, int t, const Vec& xt) {
    check_step(s, t);
    if (score.score.size() != xt.size()) throw std::invalid_argument("posterior_mean: dim mismatch");
    const double abar = s.alpha_bar[t];
    return (xt + (1.0 - abar) * score.score) / std::sqrt(abar);
}

Vec posterior_mean_at(const Prior& p, const DiffusionSchedule& s, int t, const Vec& xt) {
    return posterior_mean(score(p, s, t, xt), s, t, xt);
}

Vec posterior_mean_jvp(const Prior& p, const DiffusionSchedule& s, int t, const Vec& xt,
                       const Vec& direction, JvpMode mode) {
    check_step(s, t);
    if (xt.size() != direction.size()) throw std::invalid_argument("jvp: dim mismatch");
    const double abar = s.alpha_bar[t];
    if (mode == JvpMode::decoupled) return direction / std::sqrt(abar);
    if (mode == JvpMode::exact) {
        const auto* g = std::get_if<GaussianPrior>(&p);
        if (!g) throw std::invalid_argument("jvp: exact mode needs an exact Jacobian (Gaussian prior)");
        // d pm / d xt = diag( (1 - (1-abar)/(abar*cov + 1-abar)) / sqrt(abar) )
        const Vec var = abar * g->cov_diag.array() + (1.0 - abar);
        const Vec diag = ((1.0 - (1.0 - abar) / var.array()) / std::sqrt(abar)).matrix();
        return diag.cwiseProduct(direction);
    }
    const double h = 1e-5 * (1.0 + xt.cwiseAbs().maxCoeff());
    const Vec fp = posterior_mean_at(p, s, t, xt + h * direction);
    const Vec fm = posterior_mean_at(p, s, t, xt - h * direction);
    return (fp - fm) / (2.0 * h);
}

double log_marginal_density(const Prior& p, const DiffusionSchedule& s, int t, const Vec& xt) {
    check_step(s, t);
    const double abar = s.alpha_bar[t];
    if (const auto* g = std::get_if<GaussianPrior>(&p)) {
        const Vec var = abar * g->cov_diag.array() + (1.0 - abar);
        const Vec diff = xt - std::sqrt(abar) * g->mean;
        double lp = 0.0;
        for (int i = 0; i < xt.size(); ++i)
            lp += -0.5 * diff[i] * diff[i] / var[i] - 0.5 * std::log(2.0 * M_PI * var[i]);
        return lp;
    }
    const auto& gm = std::get<GmmPrior>(p);
    const int d = int(xt.size());
    double logmax = -std::numeric_limits<double>::infinity();
    std::vector<double> logp(gm.components.size());
    for (size_t k = 0; k < gm.components.size(); ++k) {
        const auto& c = gm.components[k];
        const double var = abar * c.var + (1.0 - abar);
        const Vec diff = xt - std::sqrt(abar) * c.mean;
        logp[k] = std::log(c.weight) - 0.5 * diff.squaredNorm() / var -
                  0.5 * d * std::log(2.0 * M_PI * var);
        logmax = std::max(logmax, logp[k]);
    }
    double acc = 0.0;
    for (double lp : logp) acc += std::exp(lp - logmax);
    return logmax + std::log(acc);
}

}  // namespace hgu
