#pragma once

#include <map>
#include <string>
#include <vector>

namespace fracns::cli {

/// Flat key-value configuration text: one `key = value` per line, dotted
/// section prefixes, `#` comments. Round-trips exactly (parse-serialize-parse
/// is the identity on the map).
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_config_text(const std::string& text);
KeyValues load_config(const std::string& path);
std::string serialize_config(const KeyValues& kv);

/// Typed view of a solve configuration. Unknown keys are rejected except the
/// `run.` namespace, which manifests use for results (so a manifest is a
/// valid config).
struct RunConfig {
    double alpha = 0.5;
    int dim = 2;        // 0 = synthetic diagonal mode
    int n_modes = 32;
    double nu = 1.0;
    std::vector<double> synthetic_eigenvalues;
    double delay_r = 0.5;
    double t_end = 1.0;
    int n_steps = 100;
    double mesh_gamma = 1.0;
    double picard_tol = 1e-12;
    int picard_max_iters = 50;
    double blowup_threshold = 1e6;
    double half_norm_beta = 0.5;
    double monitor_radius = 1.0;
    bool monitor_strict = false;
    bool nonlinear = true;

    std::string force_kind = "none"; // none|point_delay|distributed_delay|modulated_point_delay
    double force_kappa = 0.0;
    double force_lf = -1.0;          // <0: use the factory default
    int force_kernel_points = 17;    // uniform averaging kernel for distributed delay
    std::string omega_kind = "constant"; // constant|cosine
    double omega_amplitude = 1.0;
    double omega_frequency = 1.0;
    double omega_p = 1e300;

    std::string ic_kind = "taylor_green"; // taylor_green|random|single_mode|zero|value
    double ic_amplitude = 1.0;
    double ic_gamma = 2.0;
    int ic_kx = 1, ic_ky = 1;
    double ic_value = 1.0; // synthetic datum

    unsigned long long seed = 12345;
    int threads = 1;
    std::string output_dir = "out";
    int checkpoints = 1;

    static RunConfig from_keyvalues(const KeyValues& kv);
    KeyValues to_keyvalues() const;
    void validate() const; // throws std::invalid_argument naming the violation
};

} // namespace fracns::cli
