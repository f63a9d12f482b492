#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "kho/config.hpp"
#include "kho/errors.hpp"

using namespace kho;
using doctest::Approx;

namespace {
// setenv that always restores on scope exit, throw or not
struct EnvVar {
    std::string name;
    EnvVar(const std::string& n, const std::string& value) : name(n) {
        ::setenv(name.c_str(), value.c_str(), 1);
    }
    ~EnvVar() { ::unsetenv(name.c_str()); }
};
}

TEST_CASE("config text parsing") {
    SUBCASE("values, comments, case and whitespace") {
        Config cfg;
        cfg.load_string(
            "# full-line comment\n"
            "\n"
            "eta = 0.5\n"
            "  KAPPA1=0.2   # inline comment\n"
            "n_kicks = 1000\n"
            "out_dir = runs/fig3\n",
            "test");
        CHECK(cfg.require_double("eta") == 0.5);
        CHECK(cfg.require_double("kappa1") == 0.2);
        CHECK(cfg.require_int("n_kicks") == 1000);
        CHECK(cfg.get_string("out_dir", "") == "runs/fig3");
        CHECK(cfg.resolved().at("kappa1").source == "test:4");
    }

    SUBCASE("scientific notation and signs") {
        Config cfg;
        cfg.load_string("leak_warn = 1e-6\nphysical.detuning = -2.0e7\n", "t");
        CHECK(cfg.require_double("leak_warn") == 1e-6);
        CHECK(cfg.require_double("physical.detuning") == -2.0e7);
    }

    SUBCASE("a line without `=` reports its origin and line number") {
        Config cfg;
        CHECK_THROWS_WITH_AS(
            cfg.load_string("eta = 0.5\nwhoops\n", "settings.cfg"),
            doctest::Contains("settings.cfg:2"), config_error);
    }

    SUBCASE("unknown keys are named") {
        Config cfg;
        CHECK_THROWS_WITH_AS(cfg.load_string("kapa1 = 0.2\n", "t"),
                             doctest::Contains("kapa1"), config_error);
    }

    SUBCASE("unparsable numbers name the key") {
        Config cfg;
        cfg.load_string("eta = fast\nfock_dim = 4.5 apples\n", "t");
        CHECK_THROWS_WITH_AS(cfg.require_double("eta"),
                             doctest::Contains("eta"), config_error);
        CHECK_THROWS_WITH_AS(cfg.require_int("fock_dim"),
                             doctest::Contains("fock_dim"), config_error);
    }

    SUBCASE("missing required keys name the key") {
        Config cfg;
        CHECK_THROWS_WITH_AS(cfg.require_double("eta"),
                             doctest::Contains("eta"), config_error);
    }

    SUBCASE("from_file") {
        const auto path =
            std::filesystem::temp_directory_path() / "kho_cfg_test.cfg";
        {
            std::ofstream out(path);
            out << "eta = 0.25\nr = 1\n";
        }
        const Config cfg = Config::from_file(path);
        CHECK(cfg.require_double("eta") == 0.25);
        CHECK(cfg.require_int("r") == 1);
        CHECK(cfg.resolved().at("r").source ==
              path.string() + ":2");
        std::filesystem::remove(path);
        CHECK_THROWS_WITH_AS(Config::from_file(path),
                             doctest::Contains("cannot open"), config_error);
    }
}

TEST_CASE("environment overlay") {
    SUBCASE("KHO_ variables override the file layer") {
        Config cfg;
        cfg.load_string("eta = 0.5\nkappa1 = 0.2\n", "t");
        EnvVar e1("KHO_ETA", "0.25");
        cfg.merge_env();
        CHECK(cfg.require_double("eta") == 0.25);
        CHECK(cfg.require_double("kappa1") == 0.2);
        CHECK(cfg.resolved().at("eta").source == "env KHO_ETA");
    }

    SUBCASE("underscored physical names map onto the dotted keys") {
        Config cfg;
        EnvVar e1("KHO_PHYSICAL_RABI", "1e6");
        cfg.merge_env();
        CHECK(cfg.require_double("physical.rabi") == 1e6);
    }

    SUBCASE("unknown KHO_ variables are rejected by name") {
        Config cfg;
        EnvVar e1("KHO_KAPA1", "0.2");
        CHECK_THROWS_WITH_AS(cfg.merge_env(), doctest::Contains("KHO_KAPA1"),
                             config_error);
    }

    SUBCASE("flags set last win over the environment") {
        Config cfg;
        cfg.load_string("eta = 0.5\n", "t");
        EnvVar e1("KHO_ETA", "0.25");
        cfg.merge_env();
        cfg.set("eta", "0.1", "flag --eta");
        CHECK(cfg.require_double("eta") == 0.1);
        CHECK(cfg.resolved().at("eta").source == "flag --eta");
    }
}

TEST_CASE("model binding") {
    SUBCASE("required keys, defaults for the rest") {
        Config cfg;
        cfg.load_string(
            "r = 1\nq = 6\neta = 0.5\nkappa1 = 0.2\nn_kicks = 100\n", "t");
        const ModelParams mp = cfg.model_params();
        CHECK(mp.r == 1);
        CHECK(mp.q == 6);
        CHECK(mp.eta == 0.5);
        CHECK(mp.kappa1 == 0.2);
        CHECK(mp.kappa2 == 0.2);    // defaults to kappa1
        CHECK(mp.fock_dim == 400);  // stock truncation
        CHECK(mp.n_kicks == 100);
        CHECK(cfg.resolved().at("fock_dim").source == "default");
        CHECK(cfg.resolved().at("kappa2").source == "default");
    }

    SUBCASE("explicit kappa2 and fock_dim are honored") {
        Config cfg;
        cfg.load_string("r = 1\nq = 6\neta = 0.5\nkappa1 = 0.2\n"
                        "kappa2 = 0.225\nfock_dim = 800\nn_kicks = 10\n",
                        "t");
        const ModelParams mp = cfg.model_params();
        CHECK(mp.kappa2 == 0.225);
        CHECK(mp.fock_dim == 800);
    }

    SUBCASE("a missing resonance denominator is named") {
        Config cfg;
        cfg.load_string("r = 1\neta = 0.5\nkappa1 = 0.2\nn_kicks = 10\n", "t");
        CHECK_THROWS_WITH_AS(cfg.model_params(), doctest::Contains("q"),
                             config_error);
    }

    SUBCASE("binding validates") {
        Config cfg;
        cfg.load_string(
            "r = 1\nq = 6\neta = -0.5\nkappa1 = 0.2\nn_kicks = 10\n", "t");
        CHECK_THROWS_WITH_AS(cfg.model_params(), doctest::Contains("eta"),
                             config_error);
    }
}

TEST_CASE("physical binding") {
    Config cfg;
    cfg.load_string(
        "physical.rabi = 1e6\n"
        "physical.detuning = 2e7\n"
        "physical.pulse_width = 1e-6\n"
        "physical.mass = 2.2e-25\n"
        "physical.trap_freq = 6.3e6\n"
        "physical.laser_wavenumber = 1.1e7\n",
        "t");

    SUBCASE("all six quantities bind, thresholds default") {
        const PhysicalParams ph = cfg.physical_params();
        CHECK(ph.rabi == 1e6);
        CHECK(ph.detuning == 2e7);
        CHECK(ph.pulse_width == 1e-6);
        CHECK(ph.mass == 2.2e-25);
        CHECK(ph.trap_freq == 6.3e6);
        CHECK(ph.laser_wavenumber == 1.1e7);
        CHECK(ph.max_rabi_detuning_ratio == 0.1);
        CHECK(ph.min_sigma_detuning == 10.0);
    }

    SUBCASE("thresholds are configurable") {
        cfg.set("physical.max_rabi_detuning_ratio", "0.08", "flag");
        const PhysicalParams ph = cfg.physical_params();
        CHECK(ph.max_rabi_detuning_ratio == 0.08);
        // tightening past the actual ratio turns the same inputs invalid
        cfg.set("physical.max_rabi_detuning_ratio", "0.02", "flag");
        CHECK_THROWS_AS(cfg.physical_params(), validity_error);
    }

    SUBCASE("a missing quantity is named") {
        Config partial;
        partial.load_string("physical.rabi = 1e6\n", "t");
        CHECK_THROWS_WITH_AS(partial.physical_params(),
                             doctest::Contains("physical.detuning"),
                             config_error);
    }
}

TEST_CASE("resolution log captures fallbacks") {
    Config cfg;
    cfg.load_string("eta = 0.5\n", "t");
    CHECK(cfg.get_double("stride", 1.0) == 1.0);
    CHECK(cfg.get_int("grid_nx", 128) == 128);
    CHECK(cfg.get_string("out_dir", "out") == "out");
    CHECK(cfg.resolved().at("stride").source == "default");
    CHECK(cfg.resolved().at("stride").value == "1");
    CHECK(cfg.resolved().at("grid_nx").source == "default");
    CHECK(cfg.resolved().at("out_dir").value == "out");
    CHECK(cfg.resolved().count("eta") == 0);  // never consulted
    cfg.require_double("eta");
    CHECK(cfg.resolved().at("eta").source == "t:1");
}
