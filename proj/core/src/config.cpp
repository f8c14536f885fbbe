#include "hgu/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace hgu {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Setter {
    std::function<void(RunConfig&, const std::string&, const std::string&)> apply;
};

[[noreturn]] void bad_value(const std::string& key, const std::string& val, const std::string& want) {
    throw ConfigError("config: invalid value '" + val + "' for " + key + " (want " + want + ")");
}

double parse_double(const std::string& key, const std::string& val) {
    try {
        size_t pos = 0;
        const double v = std::stod(val, &pos);
        if (pos != val.size()) bad_value(key, val, "number");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        bad_value(key, val, "number");
    }
}

int64_t parse_int(const std::string& key, const std::string& val) {
    int64_t v = 0;
    const auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || p != val.data() + val.size()) bad_value(key, val, "integer");
    return v;
}

bool parse_bool(const std::string& key, const std::string& val) {
    if (val == "true" || val == "1") return true;
    if (val == "false" || val == "0") return false;
    bad_value(key, val, "true|false");
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"task", {[](RunConfig& c, const std::string& k, const std::string& v) {
             if (v != "ct_sparse" && v != "ct_limited" && v != "inpaint" && v != "sr")
                 bad_value(k, v, "ct_sparse|ct_limited|inpaint|sr");
             c.task = v;
         }}},
        {"image.size", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.image_size = int(parse_int(k, v));
         }}},
        {"seed", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.seed = uint64_t(parse_int(k, v));
         }}},
        {"solver", {[](RunConfig& c, const std::string& k, const std::string& v) {
             if (v != "hgu" && v != "fista") bad_value(k, v, "hgu|fista");
             c.solver = v;
         }}},
        {"diffusion.steps", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.diffusion_steps = int(parse_int(k, v));
         }}},
        {"diffusion.beta_start", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.beta_start = parse_double(k, v);
         }}},
        {"diffusion.beta_end", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.beta_end = parse_double(k, v);
         }}},
        {"ct.angles", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.ct_angles = int(parse_int(k, v));
         }}},
        {"ct.views", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.ct_views = int(parse_int(k, v));
         }}},
        {"ct.max_deg", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.ct_max_deg = parse_double(k, v);
         }}},
        {"inpaint.keep_fraction", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.inpaint_keep_fraction = parse_double(k, v);
         }}},
        {"sr.factor", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.sr_factor = int(parse_int(k, v));
         }}},
        {"noise.sigma", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.noise_sigma = parse_double(k, v);
         }}},
        {"prior.kind", {[](RunConfig& c, const std::string& k, const std::string& v) {
             if (v != "gaussian" && v != "gmm") bad_value(k, v, "gaussian|gmm");
             c.prior_kind = v;
         }}},
        {"prior.fit", {[](RunConfig& c, const std::string& k, const std::string& v) {
             if (v != "blur" && v != "flat") bad_value(k, v, "blur|flat");
             c.prior_fit = v;
         }}},
        {"prior.blur_sigma", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.prior_blur_sigma = parse_double(k, v);
         }}},
        {"prior.var", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.prior_var = parse_double(k, v);
         }}},
        {"prior.flat_mean", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.prior_flat_mean = parse_double(k, v);
         }}},
        {"prior.gmm_components", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.prior_gmm_components = int(parse_int(k, v));
         }}},
        {"fidelity.kind", {[](RunConfig& c, const std::string& k, const std::string& v) {
             if (v != "l1" && v != "l2" && v != "ffl") bad_value(k, v, "l1|l2|ffl");
             c.fidelity_kind = v;
         }}},
        {"fidelity.ffl_alpha", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.ffl_alpha = parse_double(k, v);
         }}},
        {"latent.k", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.latent_k = int(parse_int(k, v));
         }}},
        {"latent.kind", {[](RunConfig& c, const std::string& k, const std::string& v) {
             if (v != "dct") bad_value(k, v, "dct");
             c.latent_kind = v;
         }}},
        {"hgu.kind", {[](RunConfig& c, const std::string& k, const std::string& v) {
             if (v != "gd" && v != "gdm" && v != "igdm") bad_value(k, v, "gd|gdm|igdm");
             c.hgu_kind = v;
         }}},
        {"hgu.eta", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.hgu_eta = parse_double(k, v);
         }}},
        {"hgu.eta1", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.hgu_eta1 = parse_double(k, v);
         }}},
        {"hgu.eta2", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.hgu_eta2 = parse_double(k, v);
         }}},
        {"hgu.epsbar", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.hgu_epsbar = parse_double(k, v);
         }}},
        {"hgu.bias_correct", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.hgu_bias_correct = parse_bool(k, v);
         }}},
        {"hgu.rate.kind", {[](RunConfig& c, const std::string& k, const std::string& v) {
             if (v != "constant" && v != "poly") bad_value(k, v, "constant|poly");
             c.hgu_rate_kind = v;
         }}},
        {"hgu.rate.C", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.hgu_rate_C = parse_double(k, v);
         }}},
        {"hgu.rate.n", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.hgu_rate_n = parse_double(k, v);
         }}},
        {"fista.lambda_tv", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.fista_lambda_tv = parse_double(k, v);
         }}},
        {"fista.iters", {[](RunConfig& c, const std::string& k, const std::string& v) {
             c.fista_iters = int(parse_int(k, v));
         }}},
    };
    return table;
}

void require(bool ok, const std::string& field, const std::string& why) {
    if (!ok) throw ConfigError("config: " + field + " " + why);
}

}  // namespace

std::string RunConfig::resolved_fidelity() const {
    if (!fidelity_kind.empty()) return fidelity_kind;
    return task == "ct_sparse" ? "l1" : "l2";
}

double RunConfig::resolved_rate_C() const {
    if (hgu_rate_C >= 0.0) return hgu_rate_C;
    if (task == "ct_sparse") return 0.5;
    if (task == "ct_limited") return 0.1;
    if (task == "inpaint") return 0.05;
    return 0.001;  // sr
}

double RunConfig::resolved_noise_sigma() const {
    if (noise_sigma >= 0.0) return noise_sigma;
    return (task == "ct_sparse" || task == "ct_limited") ? 0.0 : 0.05;
}

std::map<std::string, std::string> RunConfig::resolved_keys() const {
    auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    return {
        {"task", task},
        {"image.size", std::to_string(image_size)},
        {"seed", std::to_string(seed)},
        {"solver", solver},
        {"diffusion.steps", std::to_string(diffusion_steps)},
        {"diffusion.beta_start", fmt(beta_start)},
        {"diffusion.beta_end", fmt(beta_end)},
        {"ct.angles", std::to_string(ct_angles)},
        {"ct.views", std::to_string(ct_views)},
        {"ct.max_deg", fmt(ct_max_deg)},
        {"inpaint.keep_fraction", fmt(inpaint_keep_fraction)},
        {"sr.factor", std::to_string(sr_factor)},
        {"noise.sigma", fmt(resolved_noise_sigma())},
        {"prior.kind", prior_kind},
        {"prior.fit", prior_fit},
        {"prior.blur_sigma", fmt(prior_blur_sigma)},
        {"prior.var", fmt(prior_var)},
        {"prior.flat_mean", fmt(prior_flat_mean)},
        {"prior.gmm_components", std::to_string(prior_gmm_components)},
        {"fidelity.kind", resolved_fidelity()},
        {"fidelity.ffl_alpha", fmt(ffl_alpha)},
        {"latent.k", std::to_string(latent_k)},
        {"latent.kind", latent_kind},
        {"hgu.kind", hgu_kind},
        {"hgu.eta", fmt(hgu_eta)},
        {"hgu.eta1", fmt(hgu_eta1)},
        {"hgu.eta2", fmt(hgu_eta2)},
        {"hgu.epsbar", fmt(hgu_epsbar)},
        {"hgu.bias_correct", hgu_bias_correct ? "true" : "false"},
        {"hgu.rate.kind", hgu_rate_kind},
        {"hgu.rate.C", fmt(resolved_rate_C())},
        {"hgu.rate.n", fmt(hgu_rate_n)},
        {"fista.lambda_tv", fmt(fista_lambda_tv)},
        {"fista.iters", std::to_string(fista_iters)},
    };
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigError("config: line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (val.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + ": empty value for '" + key + "'");
        it->second.apply(cfg, key, val);
    }
    validate_config(cfg);
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return parse_config(os.str());
}

void validate_config(const RunConfig& cfg) {
    require(cfg.image_size >= 16, "image.size", "must be >= 16");
    require(cfg.diffusion_steps >= 1, "diffusion.steps", "must be >= 1");
    require(cfg.beta_start > 0.0 && cfg.beta_start <= cfg.beta_end && cfg.beta_end < 1.0,
            "diffusion.beta_start/beta_end", "must satisfy 0 < beta_start <= beta_end < 1");
    require(cfg.ct_angles >= 1, "ct.angles", "must be >= 1");
    require(cfg.ct_views >= 1 && cfg.ct_views <= cfg.ct_angles, "ct.views",
            "must be in [1, ct.angles]");
    require(cfg.ct_max_deg > 0.0 && cfg.ct_max_deg <= 180.0, "ct.max_deg", "must be in (0, 180]");
    require(cfg.inpaint_keep_fraction > 0.0 && cfg.inpaint_keep_fraction <= 1.0,
            "inpaint.keep_fraction", "must be in (0, 1]");
    require(cfg.sr_factor >= 1, "sr.factor", "must be >= 1");
    if (cfg.task == "sr")
        require(cfg.image_size % cfg.sr_factor == 0, "sr.factor", "must divide image.size");
    if (cfg.noise_sigma >= 0.0)
        require(cfg.noise_sigma <= 10.0, "noise.sigma", "implausibly large");
    require(cfg.prior_var > 0.0, "prior.var", "must be > 0");
    require(cfg.prior_blur_sigma >= 0.0, "prior.blur_sigma", "must be >= 0");
    require(cfg.prior_gmm_components >= 1, "prior.gmm_components", "must be >= 1");
    require(cfg.ffl_alpha >= 0.0, "fidelity.ffl_alpha", "must be >= 0");
    require(cfg.latent_k >= 0 && cfg.latent_k <= cfg.image_size * cfg.image_size, "latent.k",
            "must be in [0, image.size^2] (0 selects pixel mode)");
    require(cfg.hgu_eta >= 0.0 && cfg.hgu_eta < 1.0, "hgu.eta", "must be in [0, 1)");
    require(cfg.hgu_eta1 >= 0.0 && cfg.hgu_eta1 < 1.0, "hgu.eta1", "must be in [0, 1)");
    require(cfg.hgu_eta2 >= 0.0 && cfg.hgu_eta2 < 1.0, "hgu.eta2", "must be in [0, 1)");
    require(cfg.hgu_epsbar > 0.0, "hgu.epsbar", "must be > 0");
    require(cfg.hgu_rate_n >= 0.0, "hgu.rate.n", "must be >= 0");
    if (cfg.hgu_rate_C >= 0.0) require(cfg.hgu_rate_C > 0.0, "hgu.rate.C", "must be > 0");
    require(cfg.fista_lambda_tv >= 0.0, "fista.lambda_tv", "must be >= 0");
    require(cfg.fista_iters >= 1, "fista.iters", "must be >= 1");
}

}  // namespace hgu
