#include "hgu/experiment.hpp"

#include <cmath>

#include "hgu/rng.hpp"

namespace hgu {

Grid gaussian_blur(const Grid& img, double sigma) {
    if (sigma <= 0.0) return img;
    const int radius = int(std::ceil(3.0 * sigma));
    std::vector<double> k(size_t(2 * radius + 1));
    for (int i = -radius; i <= radius; ++i) k[size_t(i + radius)] = std::exp(-0.5 * i * i / (sigma * sigma));

    auto pass = [&](const Grid& src, bool horizontal) {
        Grid dst(src.height, src.width);
        for (int r = 0; r < src.height; ++r)
            for (int c = 0; c < src.width; ++c) {
                double acc = 0.0, wsum = 0.0;
                for (int o = -radius; o <= radius; ++o) {
                    const int rr = horizontal ? r : r + o;
                    const int cc = horizontal ? c + o : c;
                    if (rr < 0 || rr >= src.height || cc < 0 || cc >= src.width) continue;
                    acc += k[size_t(o + radius)] * src.at(rr, cc);
                    wsum += k[size_t(o + radius)];
                }
                dst.at(r, c) = acc / wsum;
            }
        return dst;
    };
    return pass(pass(img, true), false);
}

SolveConfig Experiment::solve_config() const {
    SolveConfig sc;
    sc.schedule = &schedule;
    sc.prior = &prior;
    sc.op = op.get();
    sc.codec = latent_mode() ? &codec : nullptr;
    sc.fidelity = fidelity;
    if (cfg.hgu_kind == "gd")
        sc.hgu_kind = HguKind::gd;
    else if (cfg.hgu_kind == "gdm")
        sc.hgu_kind = HguKind::gdm;
    else
        sc.hgu_kind = HguKind::igdm;
    sc.eta = cfg.hgu_eta;
    sc.eta1 = cfg.hgu_eta1;
    sc.eta2 = cfg.hgu_eta2;
    sc.epsbar = cfg.hgu_epsbar;
    sc.bias_correct = cfg.hgu_bias_correct;
    sc.rate = (cfg.hgu_rate_kind == "poly")
                  ? GuidanceRateSchedule::poly(cfg.resolved_rate_C(), cfg.hgu_rate_n)
                  : GuidanceRateSchedule::constant(cfg.resolved_rate_C());
    sc.jvp_mode = std::holds_alternative<GaussianPrior>(prior) ? JvpMode::exact : JvpMode::decoupled;
    sc.seed = cfg.seed;
    sc.ground_truth = &phantom;
    return sc;
}

Experiment assemble_experiment(const RunConfig& cfg) {
    validate_config(cfg);
    Experiment e;
    e.cfg = cfg;
    e.phantom = generate_shepp_logan(cfg.image_size);
    e.schedule = make_linear_schedule(cfg.diffusion_steps, cfg.beta_start, cfg.beta_end);

    const int n = cfg.image_size;
    if (cfg.task == "ct_sparse") {
        RadonSpec spec = make_radon_spec(n, cfg.ct_angles);
        e.op = std::make_unique<RadonOp>(spec, make_sparse_view_mask(spec, cfg.ct_views));
    } else if (cfg.task == "ct_limited") {
        RadonSpec spec = make_radon_spec(n, cfg.ct_angles);
        e.op = std::make_unique<RadonOp>(spec, make_limited_angle_mask(spec, cfg.ct_max_deg));
    } else if (cfg.task == "inpaint") {
        e.op = std::make_unique<InpaintOp>(
            make_inpaint_mask(int64_t(n) * n, cfg.inpaint_keep_fraction, cfg.seed), n, n);
    } else {  // sr
        DownsampleSpec ds{cfg.sr_factor, n, n / cfg.sr_factor};
        e.op = std::make_unique<DownsampleOp>(ds);
    }

    e.codec = cfg.latent_k > 0 ? OrthoCodec::fit_dct(n, n, cfg.latent_k) : OrthoCodec::identity(n, n);

    // priors carry phantom structure: the analytic stand-in for a trained model
    Grid mean_img = (cfg.prior_fit == "blur") ? gaussian_blur(e.phantom, cfg.prior_blur_sigma)
                                              : Grid(n, n, Vec::Constant(int64_t(n) * n, cfg.prior_flat_mean));
    const int64_t dim = e.latent_mode() ? cfg.latent_k : int64_t(n) * n;
    auto to_model_space = [&](const Grid& img) -> Vec {
        return e.latent_mode() ? e.codec.encode(img) : img.data;
    };
    if (cfg.prior_kind == "gaussian") {
        GaussianPrior p;
        p.mean = to_model_space(mean_img);
        p.cov_diag = Vec::Constant(dim, cfg.prior_var);
        e.prior = p;
    } else {
        GmmPrior p;
        const int K = cfg.prior_gmm_components;
        for (int j = 0; j < K; ++j) {
            GmmComponent comp;
            comp.weight = 1.0 / K;
            comp.mean = to_model_space(gaussian_blur(e.phantom, cfg.prior_blur_sigma * (j + 1)));
            comp.var = cfg.prior_var;
            p.components.push_back(std::move(comp));
        }
        e.prior = p;
    }

    e.fidelity.kind = cfg.resolved_fidelity() == "l1"
                          ? FidelityName::l1
                          : (cfg.resolved_fidelity() == "ffl" ? FidelityName::ffl : FidelityName::l2);
    e.fidelity.ffl_alpha = cfg.ffl_alpha;

    e.measurement = e.op->forward(e.phantom);
    const double sigma = cfg.resolved_noise_sigma();
    if (sigma > 0.0) {
        RngStream noise(cfg.seed, "measnoise");
        e.measurement.data += sigma * noise.normal_vec(e.measurement.size());
    }
    return e;
}

}  // namespace hgu
