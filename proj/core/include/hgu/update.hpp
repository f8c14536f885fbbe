#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "hgu/grid.hpp"

namespace hgu {

/// Guidance rate epsilon_t, t >= 1: constant or C / t^n.
struct GuidanceRateSchedule {
    enum class Kind { constant, poly_decay } kind = Kind::constant;
    double value = 0.1;  // constant rate
    double C = 1.0;
    double n = 0.5;  // >= 0

    double at(int64_t t) const {
        if (kind == Kind::constant) return value;
        return C / std::pow(double(t), n);
    }
    static GuidanceRateSchedule constant(double eps) {
        return {Kind::constant, eps, 0.0, 0.0};
    }
    static GuidanceRateSchedule poly(double C, double n) {
        if (n < 0) throw std::invalid_argument("poly_decay: n must be >= 0");
        return {Kind::poly_decay, 0.0, C, n};
    }
};

enum class HguKind { gd, gdm, igdm };

/// Optimizer state for the history-gradient updates.
/// With bias_correct the stored m, v are the bias-corrected moments (a
/// constant gradient stream is a fixed point: m == g, v == g^2 exactly);
/// without it they are the raw Alg.-2 accumulators.
struct HguState {
    Vec m;
    Vec v;  // component-wise >= 0
    int64_t step_count = 0;
    double eta = 0.9;     // GDM momentum
    double eta1 = 0.9;    // iGDM first-moment coefficient (may vary per step)
    double eta2 = 0.999;  // iGDM second-moment coefficient
    double epsbar = 1e-8;
    bool bias_correct = true;
    double eta1_prod = 1.0;  // running prod of eta1 values used so far
    double eta2_prod = 1.0;

    static HguState zeros(int64_t dim) {
        HguState st;
        st.m = Vec::Zero(dim);
        st.v = Vec::Zero(dim);
        return st;
    }
};

/// z - rate * g
Vec gd_update(const Vec& z, const Vec& g, double rate);

/// Momentum variant: m <- g on the first call, else eta*m + (1-eta)*g;
/// returns z - rate*m.
Vec gdm_update(HguState& state, const Vec& z, const Vec& g, double rate, bool is_first);

/// Improved-momentum variant (first and second moments).
/// bias_correct=true uses m_hat = m/(1-prod eta1), v_hat = v/(1-prod eta2);
/// returns z - rate * m_hat / (sqrt(v_hat) + epsbar).
Vec igdm_update(HguState& state, const Vec& z, const Vec& g, double rate);

}  // namespace hgu
