#include "kho/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kho/errors.hpp"

extern char** environ;

namespace kho {

namespace {
std::string trim(std::string_view s) {
    const auto* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}
}

const std::set<std::string>& known_config_keys() {
    static const std::set<std::string> keys = {
        // model
        "r", "q", "eta", "kappa1", "kappa2", "fock_dim", "n_kicks",
        // physical-unit inputs
        "physical.rabi", "physical.detuning", "physical.pulse_width",
        "physical.mass", "physical.trap_freq", "physical.laser_wavenumber",
        "physical.max_rabi_detuning_ratio", "physical.min_sigma_detuning",
        // initial conditions
        "alpha_re", "alpha_im", "x0", "p0",
        // phase-space grid
        "grid_x_min", "grid_x_max", "grid_nx",
        "grid_p_min", "grid_p_max", "grid_np",
        // web seeding
        "seed_count", "seed_spread", "rng_seed",
        // evolution / protocol knobs
        "stride", "singular_threshold", "leak_warn", "leak_error",
        "ring_radius", "tolerance", "dump_operator",
        // run plumbing
        "out_dir", "jobs",
    };
    return keys;
}

Config Config::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    Config cfg;
    cfg.load_string(text.str(), path.string());
    return cfg;
}

void Config::load_string(std::string_view text, const std::string& origin) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        const auto hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;

        const auto eq = line.find('=');
        const std::string where = origin + ":" + std::to_string(line_no);
        if (eq == std::string_view::npos)
            throw config_error(where + ": expected `key = value`");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw config_error(where + ": empty key");
        check_known(key, where);
        entries_[key] = {value, where};
    }
}

void Config::merge_env(const std::string& prefix) {
    for (char** e = environ; e && *e; ++e) {
        const std::string_view kv(*e);
        if (kv.substr(0, prefix.size()) != prefix) continue;
        const auto eq = kv.find('=');
        if (eq == std::string_view::npos) continue;
        const std::string name(kv.substr(0, eq));
        std::string key = lower(name.substr(prefix.size()));
        if (key.rfind("physical_", 0) == 0)
            key = "physical." + key.substr(std::string("physical_").size());
        check_known(key, "env " + name);
        entries_[key] = {std::string(kv.substr(eq + 1)), "env " + name};
    }
}

void Config::set(const std::string& key, std::string value,
                 std::string source) {
    entries_[key] = {std::move(value), std::move(source)};
}

bool Config::has(const std::string& key) const {
    return entries_.count(key) != 0;
}

void Config::check_known(const std::string& key,
                         const std::string& source) const {
    if (!known_config_keys().count(key))
        throw config_error(source + ": unknown configuration key `" + key + "`");
}

const Config::Entry* Config::find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

double Config::require_double(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw config_error(key + ": missing required key");
    const std::string& s = e->value;
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw config_error(key + ": `" + s + "` is not a number");
    resolved_[key] = *e;
    return value;
}

int Config::require_int(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw config_error(key + ": missing required key");
    const std::string& s = e->value;
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw config_error(key + ": `" + s + "` is not an integer");
    resolved_[key] = *e;
    return value;
}

double Config::get_double(const std::string& key, double fallback) const {
    if (!has(key)) {
        std::ostringstream oss;
        oss << fallback;
        resolved_[key] = {oss.str(), "default"};
        return fallback;
    }
    return require_double(key);
}

int Config::get_int(const std::string& key, int fallback) const {
    if (!has(key)) {
        resolved_[key] = {std::to_string(fallback), "default"};
        return fallback;
    }
    return require_int(key);
}

std::string Config::get_string(const std::string& key,
                               std::string fallback) const {
    const Entry* e = find(key);
    if (!e) {
        resolved_[key] = {fallback, "default"};
        return fallback;
    }
    resolved_[key] = *e;
    return e->value;
}

ModelParams Config::model_params() const {
    ModelParams p;
    p.r = require_int("r");
    p.q = require_int("q");
    p.eta = require_double("eta");
    p.kappa1 = require_double("kappa1");
    p.kappa2 = get_double("kappa2", p.kappa1);
    p.fock_dim = get_int("fock_dim", 400);
    p.n_kicks = require_int("n_kicks");
    p.validate();
    return p;
}

PhysicalParams Config::physical_params() const {
    PhysicalParams p;
    p.rabi = require_double("physical.rabi");
    p.detuning = require_double("physical.detuning");
    p.pulse_width = require_double("physical.pulse_width");
    p.mass = require_double("physical.mass");
    p.trap_freq = require_double("physical.trap_freq");
    p.laser_wavenumber = require_double("physical.laser_wavenumber");
    p.max_rabi_detuning_ratio =
        get_double("physical.max_rabi_detuning_ratio", p.max_rabi_detuning_ratio);
    p.min_sigma_detuning =
        get_double("physical.min_sigma_detuning", p.min_sigma_detuning);
    p.validate();
    return p;
}

}  // namespace kho
