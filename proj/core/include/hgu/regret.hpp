#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hgu/grid.hpp"
#include "hgu/update.hpp"

namespace hgu {

/// Online stream of quadratic losses U_t(z) = |z - c_t|^2 with centers drawn
/// uniformly in the ball of radius domain_radius (so the domain diameter is
/// D = 2 * domain_radius and the prefix optimum is the running center mean).
struct OnlineQuadraticProblem {
    int dim = 8;
    double domain_radius = 1.0;
    uint64_t seed = 0;

    double D() const { return 2.0 * domain_radius; }
    double G() const { return 2.0 * D(); }  // |g| = 2|z - c| <= 2D
    double D_i() const { return 2.0 * domain_radius; }
    double G_i() const { return 2.0 * D_i(); }
};

enum class OnlineUpdater { gd, gdm, igdm };

struct OnlineRunConfig {
    OnlineUpdater updater = OnlineUpdater::gd;
    GuidanceRateSchedule rate = GuidanceRateSchedule::poly(1.0, 0.5);
    double eta = 0.9;          // gdm momentum
    double eta1_0 = 0.9;       // igdm: eta1_t = eta1_0 * eta1_decay^(t-1)
    double eta1_decay = 0.99;
    double eta2 = 0.999;
    double epsbar = 1e-8;
    Vec z0;  // empty -> start at the origin
};

struct RegretTrace {
    std::vector<double> loss;    // U_t(z^(t)), t = 1..T
    std::vector<double> regret;  // R(t) against the closed-form prefix optimum
};

/// Runs the updater on the quadratic stream; iterates are projected onto the
/// domain ball after every update. igdm uses bias-corrected moments.
RegretTrace run_online(const OnlineQuadraticProblem& problem, const OnlineRunConfig& cfg, int64_t T);

/// Theorem-2 bound D^2/(2 eps_T) + (G^2/2) sum eps_t^2, evaluated at T.
double gd_bound(double D, double G, const GuidanceRateSchedule& rate, int64_t T);

/// Same bound at every prefix 1..T.
std::vector<double> gd_bound_prefix(double D, double G, const GuidanceRateSchedule& rate, int64_t T);

/// Closed form for eps_t = C/t^n:
/// D^2 T^n/(2C) + (G^2 C/2) (T^(1-n)/(1-n) - n/(1-n)); n == 1 unsupported.
double gd_bound_poly_closed(double D, double G, double C, double n, int64_t T);

/// Simplified Theorem-3 bound under eta1_t non-increasing and
/// eta1_t/sqrt(eta2) <= sqrt(c) < 1 (checked; throws invalid_argument).
double igdm_bound(const std::vector<double>& D_i, const std::vector<double>& G_i,
                  const std::function<double(int64_t)>& eta1_schedule, double eta2, double c,
                  const GuidanceRateSchedule& rate, int64_t T);

std::vector<double> igdm_bound_prefix(const std::vector<double>& D_i, const std::vector<double>& G_i,
                                      const std::function<double(int64_t)>& eta1_schedule, double eta2,
                                      double c, const GuidanceRateSchedule& rate, int64_t T);

struct ExponentFit {
    double slope = 0.0;
    bool clamped = false;  // some window values were <= 0 and got floored
};

/// Least-squares slope of log R(t) vs log t over t in [T_lo, T_hi].
ExponentFit fit_growth_exponent(const std::vector<double>& regret, int64_t T_lo, int64_t T_hi);

/// Worker cap: HGU_THREADS env var if set, else hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads; results are
/// merged by index so the output order is deterministic.
void parallel_for_index(int n, const std::function<void(int)>& fn);

}  // namespace hgu
