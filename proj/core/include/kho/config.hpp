#ifndef KHO_CONFIG_HPP
#define KHO_CONFIG_HPP

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "kho/params.hpp"

namespace kho {

// Flat key-value settings: `key = value` lines with '#' comments, merged
// with KHO_-prefixed environment variables and explicit set() calls from
// command-line flags. Later sources win: file < env < flag. Every key
// that gets consulted -- including ones resolved from defaults -- is
// recorded with its value and source so a manifest can reproduce the run.
class Config {
public:
    struct Entry {
        std::string value;
        std::string source;  // "file:line", "env NAME", "flag --name", "default"
    };

    static Config from_file(const std::filesystem::path& path);

    // Parses config text; origin labels error messages and sources.
    void load_string(std::string_view text, const std::string& origin);

    // Overlays KHO_<KEY> environment variables (KHO_PHYSICAL_RABI ->
    // physical.rabi). Unknown names are rejected like unknown file keys.
    void merge_env(const std::string& prefix = "KHO_");

    void set(const std::string& key, std::string value, std::string source);

    bool has(const std::string& key) const;

    // Typed getters. require_* throw config_error naming the key when it
    // is absent or unparsable; get_* fall back to the given default.
    double require_double(const std::string& key) const;
    int require_int(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::string get_string(const std::string& key, std::string fallback) const;

    // Binds the model keys; r, q, eta, kappa1 and n_kicks must be
    // present, kappa2 defaults to kappa1 and fock_dim to 400. The result
    // is validated.
    ModelParams model_params() const;

    // Binds physical.* keys (all six required) plus optional thresholds.
    PhysicalParams physical_params() const;

    // Everything consulted so far, defaults included.
    const std::map<std::string, Entry>& resolved() const { return resolved_; }

private:
    void check_known(const std::string& key, const std::string& source) const;
    const Entry* find(const std::string& key) const;

    std::map<std::string, Entry> entries_;
    mutable std::map<std::string, Entry> resolved_;
};

// Keys accepted in config files and the environment; used by the parser
// to reject typos early.
const std::set<std::string>& known_config_keys();

}  // namespace kho

#endif
