#include "hgu/regret.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hgu/rng.hpp"

namespace hgu {

namespace {

// uniform draw in the d-ball of the given radius
Vec ball_point(RngStream& rng, int dim, double radius) {
    Vec p = rng.normal_vec(dim);
    const double nrm = p.norm();
    if (nrm == 0.0) return Vec::Zero(dim);
    const double r = radius * std::pow(rng.uniform(), 1.0 / dim);
    return p * (r / nrm);
}

void project_ball(Vec& z, double radius) {
    const double nrm = z.norm();
    if (nrm > radius) z *= radius / nrm;
}

}  // namespace

RegretTrace run_online(const OnlineQuadraticProblem& problem, const OnlineRunConfig& cfg, int64_t T) {
    if (T < 1) throw std::invalid_argument("run_online: T must be >= 1");
    const int d = problem.dim;
    RngStream rng(problem.seed, "centers");

    Vec z = cfg.z0.size() ? cfg.z0 : Vec::Zero(d);
    project_ball(z, problem.domain_radius);
    HguState state = HguState::zeros(d);
    state.eta = cfg.eta;
    state.eta2 = cfg.eta2;
    state.epsbar = cfg.epsbar;
    state.bias_correct = true;

    RegretTrace trace;
    trace.loss.resize(size_t(T));
    trace.regret.resize(size_t(T));

    double sum_loss = 0.0;
    double sum_c2 = 0.0;
    Vec sum_c = Vec::Zero(d);
    for (int64_t t = 1; t <= T; ++t) {
        const Vec c = ball_point(rng, d, problem.domain_radius);
        const Vec diff = z - c;
        const double loss = diff.squaredNorm();
        sum_loss += loss;
        sum_c2 += c.squaredNorm();
        sum_c += c;
        // prefix optimum is the running mean; sum_t |zbar - c_s|^2 = sum|c|^2 - t|zbar|^2
        const double best = sum_c2 - sum_c.squaredNorm() / double(t);
        trace.loss[size_t(t - 1)] = loss;
        trace.regret[size_t(t - 1)] = sum_loss - best;

        const Vec g = 2.0 * diff;
        const double rate = cfg.rate.at(t);
        switch (cfg.updater) {
            case OnlineUpdater::gd:
                z = gd_update(z, g, rate);
                break;
            case OnlineUpdater::gdm:
                z = gdm_update(state, z, g, rate, /*is_first=*/t == 1);
                break;
            case OnlineUpdater::igdm:
                state.eta1 = cfg.eta1_0 * std::pow(cfg.eta1_decay, double(t - 1));
                z = igdm_update(state, z, g, rate);
                break;
        }
        project_ball(z, problem.domain_radius);
    }
    return trace;
}

double gd_bound(double D, double G, const GuidanceRateSchedule& rate, int64_t T) {
    if (D <= 0.0 || G <= 0.0) throw std::invalid_argument("gd_bound: bounds must be positive");
    double sum_eps2 = 0.0;
    for (int64_t t = 1; t <= T; ++t) {
        const double e = rate.at(t);
        sum_eps2 += e * e;
    }
    return D * D / (2.0 * rate.at(T)) + G * G / 2.0 * sum_eps2;
}

std::vector<double> gd_bound_prefix(double D, double G, const GuidanceRateSchedule& rate, int64_t T) {
    if (D <= 0.0 || G <= 0.0) throw std::invalid_argument("gd_bound: bounds must be positive");
    std::vector<double> out(static_cast<size_t>(T));
    double sum_eps2 = 0.0;
    for (int64_t t = 1; t <= T; ++t) {
        const double e = rate.at(t);
        sum_eps2 += e * e;
        out[size_t(t - 1)] = D * D / (2.0 * e) + G * G / 2.0 * sum_eps2;
    }
    return out;
}

double gd_bound_poly_closed(double D, double G, double C, double n, int64_t T) {
    if (D <= 0.0 || G <= 0.0 || C <= 0.0) throw std::invalid_argument("gd_bound: bounds must be positive");
    if (n == 1.0) throw std::invalid_argument("gd_bound_poly_closed: n == 1 unsupported, use the summation form");
    const double Td = double(T);
    return D * D * std::pow(Td, n) / (2.0 * C) +
           G * G * C / 2.0 * (std::pow(Td, 1.0 - n) / (1.0 - n) - n / (1.0 - n));
}

namespace {

void check_igdm_hypers(const std::vector<double>& D_i, const std::vector<double>& G_i,
                       const std::function<double(int64_t)>& eta1, double eta2, double c, int64_t T) {
    if (D_i.empty() || D_i.size() != G_i.size())
        throw std::invalid_argument("igdm_bound: D_i/G_i must be nonempty and equal length");
    if (!(eta2 > 0.0 && eta2 < 1.0)) throw std::invalid_argument("igdm_bound: eta2 must be in (0,1)");
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("igdm_bound: need c < 1");
    const double sqrt_c_eta2 = std::sqrt(c * eta2);
    double prev = 1.0;
    for (int64_t t = 1; t <= T; ++t) {
        const double e1 = eta1(t);
        if (!(e1 > 0.0 && e1 < 1.0)) throw std::invalid_argument("igdm_bound: eta1_t must be in (0,1)");
        if (e1 > prev + 1e-15) throw std::invalid_argument("igdm_bound: eta1_t must be non-increasing");
        if (e1 > sqrt_c_eta2 + 1e-15)
            throw std::invalid_argument("igdm_bound: condition eta1_t/sqrt(eta2) <= sqrt(c) violated");
        prev = e1;
    }
}

}  // namespace

std::vector<double> igdm_bound_prefix(const std::vector<double>& D_i, const std::vector<double>& G_i,
                                      const std::function<double(int64_t)>& eta1_schedule, double eta2,
                                      double c, const GuidanceRateSchedule& rate, int64_t T) {
    check_igdm_hypers(D_i, G_i, eta1_schedule, eta2, c, T);
    double sum_D2G = 0.0, sum_DG = 0.0, sum_G = 0.0;
    for (size_t i = 0; i < D_i.size(); ++i) {
        sum_D2G += D_i[i] * D_i[i] * G_i[i];
        sum_DG += D_i[i] * G_i[i];
        sum_G += G_i[i];
    }
    const double eta1_1 = eta1_schedule(1);
    std::vector<double> out(static_cast<size_t>(T));
    double sum_eta1 = 0.0, sum_eps = 0.0;
    for (int64_t t = 1; t <= T; ++t) {
        sum_eta1 += eta1_schedule(t);
        sum_eps += rate.at(t);
        out[size_t(t - 1)] = sum_D2G / (2.0 * rate.at(t) * (1.0 - eta1_1)) + sum_DG * sum_eta1 +
                             sum_G * sum_eps /
                                 (2.0 * (1.0 - eta1_1) * (1.0 - eta1_1) * (1.0 - eta2) * (1.0 - c));
    }
    return out;
}

double igdm_bound(const std::vector<double>& D_i, const std::vector<double>& G_i,
                  const std::function<double(int64_t)>& eta1_schedule, double eta2, double c,
                  const GuidanceRateSchedule& rate, int64_t T) {
    return igdm_bound_prefix(D_i, G_i, eta1_schedule, eta2, c, rate, T).back();
}

ExponentFit fit_growth_exponent(const std::vector<double>& regret, int64_t T_lo, int64_t T_hi) {
    if (!(T_hi > T_lo && T_lo >= 1)) throw std::invalid_argument("fit_growth_exponent: bad window");
    if (T_hi > int64_t(regret.size())) throw std::invalid_argument("fit_growth_exponent: window beyond trace");
    ExponentFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int64_t n = 0;
    for (int64_t t = T_lo; t <= T_hi; ++t) {
        double r = regret[size_t(t - 1)];
        if (r <= 0.0) {
            r = 1e-12;
            fit.clamped = true;
        }
        const double x = std::log(double(t));
        const double y = std::log(r);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    fit.slope = (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
    return fit;
}

int worker_count() {
    if (const char* env = std::getenv("HGU_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

void parallel_for_index(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(size_t(workers));
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace hgu
