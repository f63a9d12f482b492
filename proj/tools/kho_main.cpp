// Command-line front end: binds config keys, environment overrides and
// flags into reproducible runs, one manifest per command.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <deque>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kho/classical.hpp"
#include "kho/config.hpp"
#include "kho/errors.hpp"
#include "kho/fockspace.hpp"
#include "kho/io.hpp"
#include "kho/params.hpp"
#include "kho/protocol.hpp"
#include "kho/version.hpp"

namespace {

using namespace kho;

// Flags that shadow config keys; applied last so flags win over file
// and environment.
class KeyedFlags {
  public:
    void add(CLI::App& cmd, const std::string& flag, const std::string& key,
             const std::string& desc) {
        Slot& slot = slots_.emplace_back();
        slot.key = key;
        slot.flag = flag;
        slot.opt = cmd.add_option(flag, slot.value, desc);
    }

    void apply(Config& cfg) const {
        for (const Slot& s : slots_)
            if (s.opt->count()) cfg.set(s.key, s.value, "flag " + s.flag);
    }

  private:
    struct Slot {
        std::string key;
        std::string flag;
        std::string value;
        CLI::Option* opt = nullptr;
    };
    std::deque<Slot> slots_;  // stable addresses for CLI11 bindings
};

struct Command {
    CLI::App* app = nullptr;
    KeyedFlags flags;
    std::string config_path;
};

Command& make_command(CLI::App& app, std::deque<Command>& commands,
                      const std::string& name, const std::string& desc) {
    Command& cmd = commands.emplace_back();
    cmd.app = app.add_subcommand(name, desc);
    cmd.app->add_option("--config", cmd.config_path,
                        "key=value config file (flags override it)");
    return cmd;
}

void add_model_flags(Command& cmd) {
    cmd.flags.add(*cmd.app, "--r", "r", "resonance numerator");
    cmd.flags.add(*cmd.app, "--q", "q", "resonance denominator (> 2)");
    cmd.flags.add(*cmd.app, "--eta", "eta", "Lamb-Dicke parameter");
    cmd.flags.add(*cmd.app, "--kappa1", "kappa1", "kick strength 1");
    cmd.flags.add(*cmd.app, "--kappa2", "kappa2",
                  "kick strength 2 (defaults to kappa1)");
    cmd.flags.add(*cmd.app, "--fock-dim", "fock_dim", "Fock truncation");
    cmd.flags.add(*cmd.app, "--n-kicks", "n_kicks", "number of kick periods");
}

void add_ic_flags(Command& cmd) {
    cmd.flags.add(*cmd.app, "--alpha-re", "alpha_re", "Re of coherent alpha");
    cmd.flags.add(*cmd.app, "--alpha-im", "alpha_im", "Im of coherent alpha");
    cmd.flags.add(*cmd.app, "--x0", "x0", "initial X (used unless alpha given)");
    cmd.flags.add(*cmd.app, "--p0", "p0", "initial P (used unless alpha given)");
}

void add_run_flags(Command& cmd) {
    cmd.flags.add(*cmd.app, "--out-dir", "out_dir", "output directory");
    cmd.flags.add(*cmd.app, "--jobs", "jobs", "worker threads (0 = all cores)");
}

Config build_config(const Command& cmd) {
    Config cfg;
    if (!cmd.config_path.empty()) cfg = Config::from_file(cmd.config_path);
    cfg.merge_env();
    cmd.flags.apply(cfg);
    return cfg;
}

// Collects outputs and writes <command>_manifest.json at the end.
struct Run {
    explicit Run(const Config& cfg, std::string command)
        : cfg(cfg),
          command(std::move(command)),
          out_dir(this->cfg.get_string("out_dir", "out")),
          jobs(this->cfg.get_int("jobs", 0)),
          start(std::chrono::steady_clock::now()) {}

    std::filesystem::path out(const std::string& name) {
        outputs.push_back(name);
        return out_dir / name;
    }

    void finish() {
        RunManifest m;
        m.command = command;
        m.version = std::string(version_string);
        m.parameters = cfg.resolved();
        m.outputs = outputs;
        m.duration_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        const auto path = out_dir / (command + "_manifest.json");
        write_manifest(path, m);
        std::cout << "manifest: " << path.string() << "\n";
    }

    Config cfg;
    std::string command;
    std::filesystem::path out_dir;
    int jobs = 0;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start;
};

GridSpec grid_from(const Config& cfg, double half_range, int resolution) {
    GridSpec g;
    g.x_min = cfg.get_double("grid_x_min", -half_range);
    g.x_max = cfg.get_double("grid_x_max", half_range);
    g.nx = cfg.get_int("grid_nx", resolution);
    g.p_min = cfg.get_double("grid_p_min", -half_range);
    g.p_max = cfg.get_double("grid_p_max", half_range);
    g.np = cfg.get_int("grid_np", resolution);
    g.validate();
    return g;
}

std::complex<double> alpha_from(const Config& cfg, double eta,
                                PhasePoint fallback) {
    if (cfg.has("alpha_re") || cfg.has("alpha_im"))
        return {cfg.get_double("alpha_re", 0.0), cfg.get_double("alpha_im", 0.0)};
    const PhasePoint pp{cfg.get_double("x0", fallback.x),
                        cfg.get_double("p0", fallback.p)};
    return alpha_from_phasepoint(pp, eta);
}

EvolveOptions evolve_opts(const Config& cfg) {
    EvolveOptions opts;
    opts.leak_warn = cfg.get_double("leak_warn", opts.leak_warn);
    opts.leak_error = cfg.get_double("leak_error", opts.leak_error);
    return opts;
}

void check_leak(double leak, int kick, const EvolveOptions& opts, int dim) {
    if (leak > opts.leak_error) {
        std::ostringstream oss;
        oss << "truncation leakage " << leak << " after " << kick
            << " kicks exceeds " << opts.leak_error
            << "; increase fock_dim (try >= " << 2 * dim << ")";
        throw truncation_error(oss.str());
    }
}

int cmd_web(const Config& cfg) {
    Run run(cfg, "web");
    ModelParams mp = run.cfg.model_params();
    const ClassicalMap map = ClassicalMap::from_model(mp, mp.kappa1);
    const GridSpec spec = grid_from(run.cfg, 4.0, 400);

    const double x0 = run.cfg.get_double("x0", 1.0);
    const double p0 = run.cfg.get_double("p0", 0.0);
    const int seed_count = run.cfg.get_int("seed_count", 48);
    const double spread = run.cfg.get_double("seed_spread", 1e-3);
    const unsigned rng_seed =
        static_cast<unsigned>(run.cfg.get_int("rng_seed", 12345));
    if (seed_count < 1) throw config_error("seed_count: must be >= 1");

    std::vector<PhasePoint> ics;
    ics.push_back({x0, p0});
    std::mt19937 rng(rng_seed);
    std::uniform_real_distribution<double> jitter(-spread, spread);
    for (int i = 1; i < seed_count; ++i)
        ics.push_back({x0 + jitter(rng), p0 + jitter(rng)});

    const WebHistogram hist = web_scan(ics, map, mp.n_kicks, spec, run.jobs);
    write_web_csv(run.out("web.csv"), hist);
    write_web_pgm(run.out("web.pgm"), hist);

    std::cout << "binned points: " << hist.total << "\n";
    const double angle = nu_tau(mp);
    std::cout << "rotational symmetry correlation at 2*pi*r/q: "
              << format_double(web_symmetry_score(hist, angle)) << "\n";
    run.finish();
    return 0;
}

int cmd_evolve(const Config& cfg) {
    Run run(cfg, "evolve");
    ModelParams mp = run.cfg.model_params();
    const int stride = run.cfg.get_int("stride", 1);
    if (stride < 1) throw config_error("stride: must be >= 1");
    const bool dump_op = run.cfg.get_int("dump_operator", 0) != 0;
    const EvolveOptions opts = evolve_opts(run.cfg);

    const std::complex<double> alpha = alpha_from(run.cfg, mp.eta, {1.0, 0.0});
    const FloquetOperator op =
        floquet(mp.kappa1, mp.eta, nu_tau(mp), mp.fock_dim);
    FockVector psi = coherent_state(alpha, mp.fock_dim).amplitudes;
    psi.normalize();

    std::vector<TrajectoryRow> rows;
    double max_leak = 0.0;
    for (int n = 0; n <= mp.n_kicks; ++n) {
        if (n > 0) psi = op.matrix * psi;
        const double leak = leakage_fraction(psi, opts.top_fraction);
        max_leak = std::max(max_leak, leak);
        check_leak(leak, n, opts, mp.fock_dim);
        if (n % stride == 0) {
            const PhasePoint pp = expectation_xp(psi, mp.eta);
            rows.push_back({n, pp.x, pp.p, mean_phonon(psi)});
        }
    }
    write_trajectory_csv(run.out("trajectory.csv"), rows);
    write_state_csv(run.out("state_final.csv"), psi);
    if (dump_op) write_floquet_binary(run.out("operator.bin"), op);

    std::cout << "kicks: " << mp.n_kicks << "\n";
    std::cout << "max truncation leakage: " << format_double(max_leak) << "\n";
    run.finish();
    return 0;
}

int cmd_overlap(const Config& cfg) {
    Run run(cfg, "overlap");
    ModelParams mp = run.cfg.model_params();
    const EvolveOptions opts = evolve_opts(run.cfg);
    const double singular_threshold =
        run.cfg.get_double("singular_threshold", 1e-3);
    const std::complex<double> alpha = alpha_from(run.cfg, mp.eta, {1.0, 0.0});

    const QuadratureEigensystem eig =
        QuadratureEigensystem::compute(mp.fock_dim);
    const double theta = nu_tau(mp);
    const FloquetOperator f1 = floquet(eig, mp.kappa1, mp.eta, theta);
    const FloquetOperator f2 = floquet(eig, mp.kappa2, mp.eta, theta);

    const OverlapSeries series =
        overlap_series(f1, f2, alpha, mp.n_kicks, opts);
    write_overlap_csv(run.out("overlap.csv"), series);

    const double delta_kappa = mp.kappa2 - mp.kappa1;
    const auto rows = reconstruction_rows(series, delta_kappa, mp.eta,
                                          singular_threshold);
    write_reconstruction_csv(run.out("reconstruction.csv"), rows);

    int singular = 0;
    for (const auto& r : rows) singular += r.singular ? 1 : 0;
    std::cout << "rows: " << series.records.size() << "\n";
    std::cout << "final O: "
              << format_double(series.records.back().overlap) << "\n";
    std::cout << "max truncation leakage: "
              << format_double(series.max_leakage) << "\n";
    std::cout << "singular reconstruction indices: " << singular << "\n";
    if (series.truncation_warning)
        std::cout << "warning: truncation leakage passed "
                  << format_double(opts.leak_warn) << "\n";
    run.finish();
    return 0;
}

int cmd_qavg(const Config& cfg) {
    Run run(cfg, "qavg");
    ModelParams mp = run.cfg.model_params();
    const int stride = run.cfg.get_int("stride", 1);
    const double ring_radius = run.cfg.get_double("ring_radius", 1.5);
    const EvolveOptions opts = evolve_opts(run.cfg);
    const GridSpec spec = grid_from(run.cfg, 4.0, 128);
    const std::complex<double> alpha = alpha_from(run.cfg, mp.eta, {1.0, 0.0});

    const FloquetOperator op =
        floquet(mp.kappa1, mp.eta, nu_tau(mp), mp.fock_dim);
    const QGrid grid = time_averaged_q(op, alpha, mp.n_kicks, stride, spec,
                                       opts, 1e-6, run.jobs);
    write_qgrid_csv(run.out("qavg.csv"), grid);
    write_qgrid_pgm(run.out("qavg.pgm"), grid);

    std::cout << "masked cells: " << grid.masked_cells << " of "
              << grid.spec.cells() << "\n";
    std::cout << "Q mass total: "
              << format_double(q_mass_outside(grid, mp.eta, 0.0)) << "\n";
    std::cout << "Q mass outside radius " << format_double(ring_radius) << ": "
              << format_double(q_mass_outside(grid, mp.eta, ring_radius))
              << "\n";
    run.finish();
    return 0;
}

int cmd_correspondence(const Config& cfg) {
    Run run(cfg, "correspondence");
    ModelParams mp = run.cfg.model_params();
    const double bound = run.cfg.get_double("tolerance", 0.01);
    const EvolveOptions opts = evolve_opts(run.cfg);
    const PhasePoint pp0{run.cfg.get_double("x0", 0.25),
                         run.cfg.get_double("p0", 0.0)};

    const ClassicalMap map = ClassicalMap::from_model(mp, mp.kappa1);
    const std::vector<PhasePoint> classical = orbit(pp0, map, mp.n_kicks);

    const FloquetOperator op =
        floquet(mp.kappa1, mp.eta, nu_tau(mp), mp.fock_dim);
    FockVector psi =
        coherent_state(alpha_from_phasepoint(pp0, mp.eta), mp.fock_dim)
            .amplitudes;
    psi.normalize();

    double scale = 0.0;
    for (const PhasePoint& pp : classical) scale = std::max(scale, pp.radius());
    scale = std::max(scale, 1e-12);

    std::vector<CorrespondenceRow> rows;
    double worst = 0.0;
    for (int n = 0; n <= mp.n_kicks; ++n) {
        if (n > 0) psi = op.matrix * psi;
        check_leak(leakage_fraction(psi, opts.top_fraction), n, opts,
                   mp.fock_dim);
        const PhasePoint q = expectation_xp(psi, mp.eta);
        const PhasePoint& c = classical[static_cast<std::size_t>(n)];
        CorrespondenceRow row;
        row.n = n;
        row.x_quantum = q.x;
        row.p_quantum = q.p;
        row.x_classical = c.x;
        row.p_classical = c.p;
        row.deviation = std::hypot(q.x - c.x, q.p - c.p) / scale;
        worst = std::max(worst, row.deviation);
        rows.push_back(row);
    }
    write_correspondence_csv(run.out("correspondence.csv"), rows);

    std::cout << "max relative deviation: " << format_double(worst) << "\n";
    // The centroid tracks the classical orbit only while wave-packet
    // spreading is negligible, i.e. deep in the small-eta regime.
    if (mp.eta <= 0.1)
        std::cout << "bound " << format_double(bound) << ": "
                  << (worst < bound ? "PASS" : "FAIL") << "\n";
    else
        std::cout << "outside semiclassical regime (eta > 0.1): "
                     "deviations reported, bound not asserted\n";
    run.finish();
    return 0;
}

int cmd_convert(const Config& cfg) {
    const PhysicalParams phys = cfg.physical_params();
    const KickStrength ks = kappa_from_physical(phys);
    const double identity =
        std::sqrt(2.0) * ks.eta * ks.eta * ks.kick_energy / hbar;

    std::cout << "eta: " << format_double(ks.eta) << "\n";
    std::cout << "kappa: " << format_double(ks.kappa) << "\n";
    std::cout << "kick energy K [J]: " << format_double(ks.kick_energy) << "\n";
    std::cout << "consistency sqrt(2) eta^2 K / hbar: "
              << format_double(identity) << "\n";
    std::cout << "consistency residual: "
              << format_double(std::abs(identity - ks.kappa)) << "\n";
    std::cout << "rabi/detuning: "
              << format_double(std::abs(phys.rabi / phys.detuning))
              << " (bound " << format_double(phys.max_rabi_detuning_ratio)
              << ")\n";
    std::cout << "sigma*|detuning|: "
              << format_double(phys.pulse_width * std::abs(phys.detuning))
              << " (bound " << format_double(phys.min_sigma_detuning) << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"delta-kicked harmonic oscillator toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kho::version_string));

    std::deque<Command> commands;

    Command& web = make_command(app, commands, "web",
                                "classical stochastic-web histogram");
    add_model_flags(web);
    add_run_flags(web);
    web.flags.add(*web.app, "--x0", "x0", "seed center X");
    web.flags.add(*web.app, "--p0", "p0", "seed center P");
    web.flags.add(*web.app, "--seed-count", "seed_count", "number of orbits");
    web.flags.add(*web.app, "--seed-spread", "seed_spread",
                  "seed jitter half-width");

    Command& evolve = make_command(app, commands, "evolve",
                                   "single-operator state evolution");
    add_model_flags(evolve);
    add_ic_flags(evolve);
    add_run_flags(evolve);
    evolve.flags.add(*evolve.app, "--stride", "stride", "sampling stride");
    evolve.flags.add(*evolve.app, "--dump-operator", "dump_operator",
                     "1 = write operator.bin");

    Command& overlap = make_command(
        app, commands, "overlap", "two-branch overlap decay and Ramsey record");
    add_model_flags(overlap);
    add_ic_flags(overlap);
    add_run_flags(overlap);

    Command& qavg = make_command(app, commands, "qavg",
                                 "time-averaged Husimi Q on a grid");
    add_model_flags(qavg);
    add_ic_flags(qavg);
    add_run_flags(qavg);
    qavg.flags.add(*qavg.app, "--stride", "stride", "sampling stride");

    Command& corr =
        make_command(app, commands, "correspondence",
                     "quantum centroid vs classical orbit deviation table");
    add_model_flags(corr);
    add_run_flags(corr);
    corr.flags.add(*corr.app, "--x0", "x0", "initial X");
    corr.flags.add(*corr.app, "--p0", "p0", "initial P");

    Command& convert = make_command(
        app, commands, "convert",
        "physical ion-trap parameters to dimensionless (eta, kappa)");
    for (const char* key :
         {"rabi", "detuning", "pulse_width", "mass", "trap_freq",
          "laser_wavenumber", "max_rabi_detuning_ratio",
          "min_sigma_detuning"}) {
        std::string flag = std::string("--") + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        convert.flags.add(*convert.app, flag, std::string("physical.") + key,
                          key);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // parse problems are config errors
    }

    try {
        if (web.app->parsed()) return cmd_web(build_config(web));
        if (evolve.app->parsed()) return cmd_evolve(build_config(evolve));
        if (overlap.app->parsed()) return cmd_overlap(build_config(overlap));
        if (qavg.app->parsed()) return cmd_qavg(build_config(qavg));
        if (corr.app->parsed()) return cmd_correspondence(build_config(corr));
        if (convert.app->parsed()) return cmd_convert(build_config(convert));
    } catch (const kho::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const kho::validity_error& e) {
        std::cerr << "validity error: " << e.what() << "\n";
        return 2;
    } catch (const kho::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
