#include "hgu/update.hpp"

namespace hgu {

namespace {

void check_dims(const HguState& st, const Vec& z, const Vec& g) {
    if (z.size() != g.size() || st.m.size() != z.size() || st.v.size() != z.size())
        throw std::invalid_argument("hgu update: dim mismatch");
}

}  // namespace

Vec gd_update(const Vec& z, const Vec& g, double rate) {
    if (z.size() != g.size()) throw std::invalid_argument("gd_update: dim mismatch");
    if (rate <= 0.0) throw std::invalid_argument("gd_update: rate must be positive");
    return z - rate * g;
}

Vec gdm_update(HguState& state, const Vec& z, const Vec& g, double rate, bool is_first) {
    check_dims(state, z, g);
    if (is_first)
        state.m = g;  // Alg.-1 warm start: first momentum is the raw gradient
    else
        state.m = state.eta * state.m + (1.0 - state.eta) * g;
    ++state.step_count;
    return z - rate * state.m;
}

Vec igdm_update(HguState& state, const Vec& z, const Vec& g, double rate) {
    check_dims(state, z, g);
    if (state.bias_correct) {
        // m, v hold the bias-corrected moments m/(1-prod eta1), v/(1-prod eta2),
        // updated in fixed-point form: a constant gradient stream keeps
        // m == g and v == g^2 exactly.
        state.eta1_prod *= state.eta1;
        state.eta2_prod *= state.eta2;
        const double b1 = (1.0 - state.eta1) / (1.0 - state.eta1_prod);
        const double b2 = (1.0 - state.eta2) / (1.0 - state.eta2_prod);
        state.m += b1 * (g - state.m);
        state.v += b2 * (g.cwiseProduct(g) - state.v);
    } else {
        state.m = state.eta1 * state.m + (1.0 - state.eta1) * g;
        state.v = state.eta2 * state.v + (1.0 - state.eta2) * g.cwiseProduct(g);
    }
    ++state.step_count;
    const Vec denom = state.v.cwiseSqrt().array() + state.epsbar;
    return z - rate * state.m.cwiseQuotient(denom);
}

}  // namespace hgu
