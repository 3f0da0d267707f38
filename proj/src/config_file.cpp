#include "fracns/config_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracns::cli {

namespace {
std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const KeyValues& kv, const std::string& key, double dflt) {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: " + it->second);
    }
}

long long to_int(const KeyValues& kv, const std::string& key, long long dflt) {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not an integer: " + it->second);
    }
}

std::string to_str(const KeyValues& kv, const std::string& key, const std::string& dflt) {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
}

bool to_bool(const KeyValues& kv, const std::string& key, bool dflt) {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    if (it->second == "1" || it->second == "true") return true;
    if (it->second == "0" || it->second == "false") return false;
    throw std::invalid_argument("config key '" + key + "': expected 0/1/true/false");
}

std::vector<double> to_list(const KeyValues& kv, const std::string& key) {
    std::vector<double> out;
    auto it = kv.find(key);
    if (it == kv.end()) return out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(std::stod(trim(item)));
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}
} // namespace

KeyValues parse_config_text(const std::string& text) {
    KeyValues kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        }
        kv[key] = value;
    }
    return kv;
}

KeyValues load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const KeyValues& kv) {
    std::ostringstream os;
    for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
    return os.str();
}

RunConfig RunConfig::from_keyvalues(const KeyValues& kv) {
    static const char* known[] = {
        "alpha", "dim", "n_modes", "nu", "synthetic.eigenvalues", "delay_r", "t_end",
        "n_steps", "mesh.gamma", "picard.tol", "picard.max_iters", "blowup.threshold",
        "half_norm_beta", "monitor.radius", "monitor.strict", "nonlinear", "force.kind",
        "force.kappa", "force.lf", "force.kernel_points", "force.omega.kind",
        "force.omega.amplitude", "force.omega.frequency", "force.omega_p", "ic.kind",
        "ic.amplitude", "ic.gamma", "ic.kx", "ic.ky", "ic.value", "seed", "threads",
        "output.dir", "output.checkpoints"};
    for (const auto& [k, v] : kv) {
        if (k.rfind("run.", 0) == 0) continue; // manifest result namespace
        bool ok = false;
        for (const char* name : known) {
            if (k == name) { ok = true; break; }
        }
        if (!ok) throw std::invalid_argument("unknown config key: " + k);
    }

    RunConfig c;
    c.alpha = to_double(kv, "alpha", c.alpha);
    c.dim = static_cast<int>(to_int(kv, "dim", c.dim));
    c.n_modes = static_cast<int>(to_int(kv, "n_modes", c.n_modes));
    c.nu = to_double(kv, "nu", c.nu);
    c.synthetic_eigenvalues = to_list(kv, "synthetic.eigenvalues");
    c.delay_r = to_double(kv, "delay_r", c.delay_r);
    c.t_end = to_double(kv, "t_end", c.t_end);
    c.n_steps = static_cast<int>(to_int(kv, "n_steps", c.n_steps));
    c.mesh_gamma = to_double(kv, "mesh.gamma", c.mesh_gamma);
    c.picard_tol = to_double(kv, "picard.tol", c.picard_tol);
    c.picard_max_iters = static_cast<int>(to_int(kv, "picard.max_iters", c.picard_max_iters));
    c.blowup_threshold = to_double(kv, "blowup.threshold", c.blowup_threshold);
    c.half_norm_beta = to_double(kv, "half_norm_beta", c.half_norm_beta);
    c.monitor_radius = to_double(kv, "monitor.radius", c.monitor_radius);
    c.monitor_strict = to_bool(kv, "monitor.strict", c.monitor_strict);
    c.nonlinear = to_bool(kv, "nonlinear", c.nonlinear);
    c.force_kind = to_str(kv, "force.kind", c.force_kind);
    c.force_kappa = to_double(kv, "force.kappa", c.force_kappa);
    c.force_lf = to_double(kv, "force.lf", c.force_lf);
    c.force_kernel_points = static_cast<int>(to_int(kv, "force.kernel_points",
                                                    c.force_kernel_points));
    c.omega_kind = to_str(kv, "force.omega.kind", c.omega_kind);
    c.omega_amplitude = to_double(kv, "force.omega.amplitude", c.omega_amplitude);
    c.omega_frequency = to_double(kv, "force.omega.frequency", c.omega_frequency);
    c.omega_p = to_double(kv, "force.omega_p", c.omega_p);
    c.ic_kind = to_str(kv, "ic.kind", c.ic_kind);
    c.ic_amplitude = to_double(kv, "ic.amplitude", c.ic_amplitude);
    c.ic_gamma = to_double(kv, "ic.gamma", c.ic_gamma);
    c.ic_kx = static_cast<int>(to_int(kv, "ic.kx", c.ic_kx));
    c.ic_ky = static_cast<int>(to_int(kv, "ic.ky", c.ic_ky));
    c.ic_value = to_double(kv, "ic.value", c.ic_value);
    c.seed = static_cast<unsigned long long>(to_int(kv, "seed", static_cast<long long>(c.seed)));
    c.threads = static_cast<int>(to_int(kv, "threads", c.threads));
    c.output_dir = to_str(kv, "output.dir", c.output_dir);
    c.checkpoints = static_cast<int>(to_int(kv, "output.checkpoints", c.checkpoints));
    c.validate();
    return c;
}

KeyValues RunConfig::to_keyvalues() const {
    KeyValues kv;
    kv["alpha"] = fmt(alpha);
    kv["dim"] = std::to_string(dim);
    if (dim != 0) {
        kv["n_modes"] = std::to_string(n_modes);
        kv["nu"] = fmt(nu);
    } else {
        std::string eig;
        for (std::size_t i = 0; i < synthetic_eigenvalues.size(); ++i) {
            eig += (i ? "," : "") + fmt(synthetic_eigenvalues[i]);
        }
        kv["synthetic.eigenvalues"] = eig;
    }
    kv["delay_r"] = fmt(delay_r);
    kv["t_end"] = fmt(t_end);
    kv["n_steps"] = std::to_string(n_steps);
    kv["mesh.gamma"] = fmt(mesh_gamma);
    kv["picard.tol"] = fmt(picard_tol);
    kv["picard.max_iters"] = std::to_string(picard_max_iters);
    kv["blowup.threshold"] = fmt(blowup_threshold);
    kv["half_norm_beta"] = fmt(half_norm_beta);
    kv["monitor.radius"] = fmt(monitor_radius);
    kv["monitor.strict"] = monitor_strict ? "1" : "0";
    kv["nonlinear"] = nonlinear ? "1" : "0";
    kv["force.kind"] = force_kind;
    kv["force.kappa"] = fmt(force_kappa);
    kv["force.lf"] = fmt(force_lf);
    kv["force.kernel_points"] = std::to_string(force_kernel_points);
    kv["force.omega.kind"] = omega_kind;
    kv["force.omega.amplitude"] = fmt(omega_amplitude);
    kv["force.omega.frequency"] = fmt(omega_frequency);
    kv["force.omega_p"] = fmt(omega_p);
    kv["ic.kind"] = ic_kind;
    kv["ic.amplitude"] = fmt(ic_amplitude);
    kv["ic.gamma"] = fmt(ic_gamma);
    kv["ic.kx"] = std::to_string(ic_kx);
    kv["ic.ky"] = std::to_string(ic_ky);
    kv["ic.value"] = fmt(ic_value);
    kv["seed"] = std::to_string(seed);
    kv["threads"] = std::to_string(threads);
    kv["output.dir"] = output_dir;
    kv["output.checkpoints"] = std::to_string(checkpoints);
    return kv;
}

void RunConfig::validate() const {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::invalid_argument("config: alpha must lie in (0,1] (got " + fmt(alpha) + ")");
    }
    if (dim != 0 && dim != 2 && dim != 3) {
        throw std::invalid_argument("config: dim must be 0 (synthetic), 2 or 3");
    }
    if (dim != 0 && (n_modes < 4 || n_modes % 2 != 0)) {
        throw std::invalid_argument("config: n_modes must be even and >= 4");
    }
    if (dim != 0 && !(nu > 0.0)) throw std::invalid_argument("config: nu must be positive");
    if (dim == 0 && synthetic_eigenvalues.empty()) {
        throw std::invalid_argument("config: synthetic mode needs synthetic.eigenvalues");
    }
    for (double l : synthetic_eigenvalues) {
        if (!(l > 0.0)) throw std::invalid_argument("config: synthetic eigenvalues must be > 0");
    }
    if (!(delay_r > 0.0)) throw std::invalid_argument("config: delay_r must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("config: t_end must be positive");
    if (n_steps < 2) throw std::invalid_argument("config: n_steps must be >= 2");
    if (!(mesh_gamma >= 1.0)) throw std::invalid_argument("config: mesh.gamma must be >= 1");
    if (half_norm_beta != 0.5 && half_norm_beta != 0.75) {
        throw std::invalid_argument("config: half_norm_beta must be 0.5 or 0.75");
    }
    if (force_kind != "none" && force_kind != "point_delay" &&
        force_kind != "distributed_delay" && force_kind != "modulated_point_delay") {
        throw std::invalid_argument("config: unknown force.kind: " + force_kind);
    }
    if (omega_kind != "constant" && omega_kind != "cosine") {
        throw std::invalid_argument("config: force.omega.kind must be constant or cosine");
    }
    if (ic_kind != "taylor_green" && ic_kind != "random" && ic_kind != "single_mode" &&
        ic_kind != "zero" && ic_kind != "value") {
        throw std::invalid_argument("config: unknown ic.kind: " + ic_kind);
    }
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    if (checkpoints < 0) throw std::invalid_argument("config: output.checkpoints must be >= 0");
}

} // namespace fracns::cli
