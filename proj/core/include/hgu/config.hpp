#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace hgu {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Flat key=value run configuration (see parse_config for the grammar).
/// Every field has a default; task-dependent defaults (fidelity kind, guidance
/// rate, noise sigma) are applied for keys the user did not set.
struct RunConfig {
    std::string task = "ct_sparse";  // ct_sparse | ct_limited | inpaint | sr
    int image_size = 32;
    uint64_t seed = 0;

    std::string solver = "hgu";  // hgu | fista

    // diffusion.*
    int diffusion_steps = 200;
    double beta_start = 1e-4;
    double beta_end = 0.02;

    // ct.*
    int ct_angles = 180;  // total angles over [0,180)
    int ct_views = 18;    // kept views for ct_sparse
    double ct_max_deg = 90.0;

    // inpaint.* / sr.* / noise.*
    double inpaint_keep_fraction = 0.01;
    int sr_factor = 8;
    double noise_sigma = -1.0;  // task default when < 0: 0 for CT, 0.05 otherwise

    // prior.*
    std::string prior_kind = "gaussian";  // gaussian | gmm
    std::string prior_fit = "blur";       // blur | flat
    double prior_blur_sigma = 2.0;
    double prior_var = 0.0025;
    double prior_flat_mean = 0.5;
    int prior_gmm_components = 3;

    // fidelity.*
    std::string fidelity_kind = "";  // l1 | l2 | ffl; task default when empty
    double ffl_alpha = 1.0;

    // latent.*
    int latent_k = 64;  // 0 -> pixel mode
    std::string latent_kind = "dct";

    // hgu.*
    std::string hgu_kind = "igdm";  // gd | gdm | igdm
    double hgu_eta = 0.9;
    double hgu_eta1 = 0.9;
    double hgu_eta2 = 0.999;
    double hgu_epsbar = 1e-8;
    bool hgu_bias_correct = true;
    std::string hgu_rate_kind = "constant";  // constant | poly
    double hgu_rate_C = -1.0;                // constant rate or poly C; task default when < 0
    double hgu_rate_n = 0.5;

    // fista.*
    double fista_lambda_tv = 0.001;
    int fista_iters = 100;

    /// Resolved fidelity kind / guidance rate / noise sigma after defaults.
    std::string resolved_fidelity() const;
    double resolved_rate_C() const;
    double resolved_noise_sigma() const;

    /// Full resolved key=value map, for the report echo.
    std::map<std::string, std::string> resolved_keys() const;
};

/// Parses `key = value` lines ('#' comments, blank lines allowed).
/// Unknown keys and malformed lines raise ConfigError naming the offender;
/// cross-field validation runs before returning.
RunConfig parse_config(const std::string& text);

RunConfig parse_config_file(const std::string& path);

/// Cross-field validation (bounds, divisibility, dim consistency).
void validate_config(const RunConfig& cfg);

}  // namespace hgu
