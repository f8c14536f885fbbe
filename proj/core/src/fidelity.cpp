#include "hgu/fidelity.hpp"

#include <cmath>
#include <stdexcept>

#include "hgu/fft.hpp"

namespace hgu {

namespace {

void check_same_shape(const Grid& a, const Grid& b, const char* who) {
    if (!a.same_shape(b)) throw std::invalid_argument(std::string(who) + ": dim mismatch");
}

FidelityEval eval_ffl(double alpha, const Grid& y, const Grid& pred) {
    const int rows = y.height, cols = y.width;
    const double N = double(rows) * cols;
    Grid resid(rows, cols, pred.data - y.data);
    auto R = fft2(resid.data.data(), rows, cols);

    // w_k = (|F_pred - F_y| / sqrt(N))^alpha with ortho-normalized transforms,
    // held constant during differentiation
    double value = 0.0;
    for (auto& rk : R) {
        const double mag2 = std::norm(rk);
        const double w = (alpha == 0.0) ? 1.0 : std::pow(std::sqrt(mag2 / N), alpha);
        value += w * mag2;
        rk *= w;  // w . (D r), feeds the gradient
    }
    value /= N * N;

    // grad = (2/N) Re[ idft(w . dft(r)) ]
    auto g = ifft2_real(std::move(R), rows, cols);
    FidelityEval e;
    e.value = value;
    e.grad_wrt_prediction = Grid(rows, cols);
    for (int64_t i = 0; i < int64_t(N); ++i)
        e.grad_wrt_prediction.data[i] = 2.0 / N * g[size_t(i)];
    return e;
}

}  // namespace

FidelityEval eval_fidelity(const FidelityKind& kind, const Grid& y, const Grid& pred) {
    check_same_shape(y, pred, "eval_fidelity");
    FidelityEval e;
    switch (kind.kind) {
        case FidelityName::l2: {
            const Vec r = pred.data - y.data;
            e.value = r.squaredNorm();
            e.grad_wrt_prediction = Grid(y.height, y.width, 2.0 * r);
            break;
        }
        case FidelityName::l1: {
            const Vec r = pred.data - y.data;
            e.value = r.cwiseAbs().sum();
            Vec g(r.size());
            for (int64_t i = 0; i < r.size(); ++i) g[i] = r[i] > 0 ? 1.0 : (r[i] < 0 ? -1.0 : 0.0);
            e.grad_wrt_prediction = Grid(y.height, y.width, std::move(g));
            break;
        }
        case FidelityName::ffl:
            if (kind.ffl_alpha < 0.0) throw std::invalid_argument("ffl_alpha must be >= 0");
            e = eval_ffl(kind.ffl_alpha, y, pred);
            break;
    }
    return e;
}

GuidanceEval guidance_gradient(const FidelityKind& kind, const Grid& y, const MeasurementOp& op,
                               const OrthoCodec& codec, const Prior& prior,
                               const DiffusionSchedule& s, int t, const Vec& z_t, JvpMode jvp_mode) {
    const Vec z0_hat = posterior_mean_at(prior, s, t, z_t);
    const Grid x = codec.decode(z0_hat);
    const Grid pred = op.forward(x);
    const FidelityEval fe = eval_fidelity(kind, y, pred);
    const Grid gx = op.adjoint(fe.grad_wrt_prediction);
    const Vec gz0 = codec.decode_adjoint(gx);
    GuidanceEval out;
    out.value = fe.value;
    // the posterior-mean Jacobian is symmetric, so JVP^T == JVP
    out.grad = posterior_mean_jvp(prior, s, t, z_t, gz0, jvp_mode);
    return out;
}

double psnr(const Grid& x, const Grid& ref, double max_val) {
    check_same_shape(x, ref, "psnr");
    if (max_val <= 0.0) throw std::invalid_argument("psnr: max_val must be positive");
    const double mse = (x.data - ref.data).squaredNorm() / double(x.size());
    if (mse == 0.0) return 99.0;
    return 10.0 * std::log10(max_val * max_val / mse);
}

double ssim(const Grid& x, const Grid& ref, double max_val) {
    check_same_shape(x, ref, "ssim");
    constexpr int W = 11;
    constexpr double sigma = 1.5;
    if (x.height < W || x.width < W) throw std::invalid_argument("ssim: image smaller than 11x11 window");
    double w[W];
    double wsum = 0.0;
    for (int i = 0; i < W; ++i) {
        const double d = i - (W - 1) / 2.0;
        w[i] = std::exp(-0.5 * d * d / (sigma * sigma));
        wsum += w[i];
    }
    for (double& wi : w) wi /= wsum;

    const double c1 = (0.01 * max_val) * (0.01 * max_val);
    const double c2 = (0.03 * max_val) * (0.03 * max_val);
    double acc = 0.0;
    int64_t count = 0;
    for (int r = 0; r + W <= x.height; ++r) {
        for (int c = 0; c + W <= x.width; ++c) {
            double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
            for (int i = 0; i < W; ++i)
                for (int j = 0; j < W; ++j) {
                    const double wij = w[i] * w[j];
                    const double a = x.at(r + i, c + j);
                    const double b = ref.at(r + i, c + j);
                    mx += wij * a;
                    my += wij * b;
                    sxx += wij * a * a;
                    syy += wij * b * b;
                    sxy += wij * a * b;
                }
            sxx -= mx * mx;
            syy -= my * my;
            sxy -= mx * my;
            acc += ((2 * mx * my + c1) * (2 * sxy + c2)) /
                   ((mx * mx + my * my + c1) * (sxx + syy + c2));
            ++count;
        }
    }
    return acc / double(count);
}

}  // namespace hgu
