#include "hgu/solver.hpp"

#include <cmath>

#include "hgu/rng.hpp"

namespace hgu {

namespace {

void check_cfg(const SolveConfig& cfg, const Grid& y, const OrthoCodec& codec) {
    if (!cfg.schedule || !cfg.prior || !cfg.op) throw std::invalid_argument("SolveConfig: missing piece");
    const auto [oh, ow] = cfg.op->output_shape();
    if (y.height != oh || y.width != ow)
        throw std::invalid_argument("solve: measurement does not match operator output dims");
    const auto [ih, iw] = cfg.op->input_shape();
    if (codec.height() != ih || codec.width() != iw)
        throw std::invalid_argument("solve: codec output does not match operator input dims");
}

SolveResult run_loop(const SolveConfig& cfg, const Grid& y, const OrthoCodec& codec) {
    check_cfg(cfg, y, codec);
    const DiffusionSchedule& sched = *cfg.schedule;
    const int T = sched.T;
    const int64_t dim = codec.latent_dim();

    RngStream init_rng(cfg.seed, "init");
    RngStream ancestral_rng(cfg.seed, "ancestral");

    Vec z = init_rng.normal_vec(dim);
    HguState state = HguState::zeros(dim);
    state.eta = cfg.eta;
    state.eta1 = cfg.eta1;
    state.eta2 = cfg.eta2;
    state.epsbar = cfg.epsbar;
    state.bias_correct = cfg.bias_correct;

    SolveResult res;
    if (cfg.record_trace) res.trace.reserve(size_t(T));

    for (int t = T - 1; t >= 0; --t) {
        if (cfg.record_iterates) res.iterates.push_back(z);
        const GuidanceEval ge =
            guidance_gradient(cfg.fidelity, y, *cfg.op, codec, *cfg.prior, sched, t, z, cfg.jvp_mode);
        const Vec z0_hat = posterior_mean_at(*cfg.prior, sched, t, z);
        const AncestralCoeffs ac = ancestral_coeffs(sched, t);
        Vec z_next = ac.c_xt * z + ac.c_x0 * z0_hat;
        if (ac.sigma > 0.0) z_next += ac.sigma * ancestral_rng.normal_vec(dim);

        const int64_t step_index = T - t;  // 1-based count of updates
        const double rate = cfg.rate.at(step_index);
        switch (cfg.hgu_kind) {
            case HguKind::gd:
                z_next = gd_update(z_next, ge.grad, rate);
                break;
            case HguKind::gdm:
                z_next = gdm_update(state, z_next, ge.grad, rate, /*is_first=*/t == T - 1);
                break;
            case HguKind::igdm:
                z_next = igdm_update(state, z_next, ge.grad, rate);
                break;
        }
        if (!z_next.allFinite()) throw SolveDiverged(t, step_index);
        if (cfg.record_trace) res.trace.emplace_back(t, ge.value);
        res.final_fidelity = ge.value;
        z = std::move(z_next);
    }

    res.reconstruction = codec.decode(z);
    if (cfg.ground_truth) {
        res.metrics = {psnr(res.reconstruction, *cfg.ground_truth, 1.0),
                       ssim(res.reconstruction, *cfg.ground_truth, 1.0)};
    }
    return res;
}

// forward differences (Neumann boundary) and their negative adjoint
void grad_xy(const Grid& u, Grid& gx, Grid& gy) {
    const int h = u.height, w = u.width;
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            gx.at(i, j) = (j + 1 < w) ? u.at(i, j + 1) - u.at(i, j) : 0.0;
            gy.at(i, j) = (i + 1 < h) ? u.at(i + 1, j) - u.at(i, j) : 0.0;
        }
}

void divergence(const Grid& p1, const Grid& p2, Grid& out) {
    const int h = p1.height, w = p1.width;
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            double v = 0.0;
            if (j + 1 < w) v += p1.at(i, j);
            if (j > 0) v -= p1.at(i, j - 1);
            if (i + 1 < h) v += p2.at(i, j);
            if (i > 0) v -= p2.at(i - 1, j);
            out.at(i, j) = v;
        }
}

double tv_iso(const Grid& u) {
    Grid gx(u.height, u.width), gy(u.height, u.width);
    grad_xy(u, gx, gy);
    double acc = 0.0;
    for (int64_t i = 0; i < u.size(); ++i)
        acc += std::sqrt(gx.data[i] * gx.data[i] + gy.data[i] * gy.data[i]);
    return acc;
}

// Chambolle dual iterations for prox_{gamma TV}(b); p1/p2 persist across calls.
void tv_prox(const Grid& b, double gamma, int inner_iters, Grid& p1, Grid& p2, Grid& out) {
    const int h = b.height, w = b.width;
    constexpr double tau = 0.249;
    Grid div(h, w), gx(h, w), gy(h, w), arg(h, w);
    for (int it = 0; it < inner_iters; ++it) {
        divergence(p1, p2, div);
        arg.data = div.data - b.data / gamma;
        grad_xy(arg, gx, gy);
        for (int64_t i = 0; i < b.size(); ++i) {
            const double mag = std::sqrt(gx.data[i] * gx.data[i] + gy.data[i] * gy.data[i]);
            const double den = 1.0 + tau * mag;
            p1.data[i] = (p1.data[i] + tau * gx.data[i]) / den;
            p2.data[i] = (p2.data[i] + tau * gy.data[i]) / den;
        }
    }
    divergence(p1, p2, div);
    out.data = b.data - gamma * div.data;
}

}  // namespace

SolveResult solve_latent_hgu(const SolveConfig& cfg, const Grid& y) {
    if (!cfg.codec) throw std::invalid_argument("solve_latent_hgu: latent mode requires a codec");
    return run_loop(cfg, y, *cfg.codec);
}

SolveResult solve_pixel_hgu(const SolveConfig& cfg, const Grid& y) {
    if (!cfg.op) throw std::invalid_argument("SolveConfig: missing operator");
    const auto [h, w] = cfg.op->input_shape();
    const OrthoCodec id = OrthoCodec::identity(h, w);
    return run_loop(cfg, y, id);
}

Grid fista_tv(const Grid& y, const MeasurementOp& op, double lambda_tv, int iters,
              std::vector<double>* objective_out) {
    if (lambda_tv < 0.0) throw std::invalid_argument("fista_tv: lambda_tv must be >= 0");
    if (iters < 1) throw std::invalid_argument("fista_tv: iters must be >= 1");
    const auto [h, w] = op.input_shape();

    // L = lambda_max(A^T A) by 50 power iterations
    Grid v(h, w);
    v.data.setOnes();
    v.data /= v.data.norm();
    double L = 1.0;
    for (int i = 0; i < 50; ++i) {
        Grid av = op.adjoint(op.forward(v));
        const double nrm = av.data.norm();
        if (nrm <= 0.0) break;
        L = nrm;
        v.data = av.data / nrm;
    }
    L = std::max(L, 1e-12);

    auto objective = [&](const Grid& x) {
        const Grid r = op.forward(x);
        return 0.5 * (r.data - y.data).squaredNorm() + lambda_tv * tv_iso(x);
    };

    Grid x(h, w), x_prev(h, w), yk(h, w), z(h, w);
    Grid p1(h, w), p2(h, w);  // warm-started dual fields
    double tk = 1.0;
    double f_x = objective(x);
    for (int it = 0; it < iters; ++it) {
        const Grid res = op.forward(yk);
        Grid grad = op.adjoint(Grid(res.height, res.width, res.data - y.data));
        Grid b(h, w, yk.data - grad.data / L);
        if (lambda_tv > 0.0)
            tv_prox(b, lambda_tv / L, 20, p1, p2, z);
        else
            z = b;
        const double f_z = objective(z);

        x_prev = x;
        // monotone step: keep the previous iterate if the candidate is worse
        if (f_z <= f_x) {
            x = z;
            f_x = f_z;
        }
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
        yk.data = x.data + (tk / t_next) * (z.data - x.data) +
                  ((tk - 1.0) / t_next) * (x.data - x_prev.data);
        tk = t_next;
        if (objective_out) objective_out->push_back(f_x);
    }
    return x;
}

}  // namespace hgu
