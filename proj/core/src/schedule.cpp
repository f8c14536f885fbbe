#include "hgu/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace hgu {

DiffusionSchedule make_linear_schedule(int T, double beta_start, double beta_end) {
    if (T < 1) throw std::invalid_argument("make_linear_schedule: T must be >= 1");
    if (!(beta_start > 0.0 && beta_start <= beta_end && beta_end < 1.0))
        throw std::invalid_argument("make_linear_schedule: need 0 < beta_start <= beta_end < 1");
    DiffusionSchedule s;
    s.T = T;
    s.beta.resize(T);
    s.alpha.resize(T);
    s.alpha_bar.resize(T);
    double prod = 1.0;
    for (int t = 0; t < T; ++t) {
        s.beta[t] = (T == 1) ? beta_start
                             : beta_start + (beta_end - beta_start) * double(t) / double(T - 1);
        s.alpha[t] = 1.0 - s.beta[t];
        prod *= s.alpha[t];
        s.alpha_bar[t] = prod;
    }
    return s;
}

AncestralCoeffs ancestral_coeffs(const DiffusionSchedule& s, int t) {
    if (t < 0 || t >= s.T) throw std::invalid_argument("ancestral_coeffs: t out of range");
    if (t == 0) return {0.0, 1.0, 0.0};
    const double abar = s.alpha_bar[t];
    const double abar_prev = s.alpha_bar[t - 1];
    const double beta = s.beta[t];
    AncestralCoeffs c;
    c.c_xt = std::sqrt(s.alpha[t]) * (1.0 - abar_prev) / (1.0 - abar);
    c.c_x0 = std::sqrt(abar_prev) * beta / (1.0 - abar);
    c.sigma = std::sqrt(beta * (1.0 - abar_prev) / (1.0 - abar));
    return c;
}

}  // namespace hgu
