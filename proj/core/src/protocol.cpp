#include "kho/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kho/errors.hpp"
#include "kho/parallel.hpp"

namespace kho {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double range_slack = 1e-9; // tolerated roundoff outside [0,1]

double check_probability(double value, const char* label) {
    if (value < -range_slack || value > 1.0 + range_slack) {
        std::ostringstream oss;
        oss << label << " = " << value
            << " outside [0,1]: inconsistent overlap input";
        throw internal_error(oss.str());
    }
    return std::clamp(value, 0.0, 1.0);
}

// Coherent projection matrix: row per grid cell holding conj(<n|beta>),
// so (B * psi)(cell) = <beta_cell|psi>. Rows whose coherent state is
// truncated beyond mask_tol are zeroed and flagged in the mask.
struct ProjectionMatrix {
    Eigen::MatrixXcd rows;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask;
    int masked_cells = 0;
};

ProjectionMatrix coherent_projections(const GridSpec& spec, double eta,
                                      int fock_dim, double mask_tol,
                                      int jobs) {
    ProjectionMatrix proj;
    proj.rows.resize(spec.cells(), fock_dim);
    proj.mask.setConstant(spec.nx, spec.np, false);

    parallel_for(static_cast<std::size_t>(spec.cells()), jobs, [&](std::size_t cell) {
        const int ix = static_cast<int>(cell) % spec.nx;
        const int ip = static_cast<int>(cell) / spec.nx;
        const std::complex<double> beta = alpha_from_phasepoint(
            {spec.x_center(ix), spec.p_center(ip)}, eta);
        std::complex<double> c = std::exp(-0.5 * std::norm(beta));
        double norm_sq = 0.0;
        for (int n = 0; n < fock_dim; ++n) {
            proj.rows(cell, n) = std::conj(c);
            norm_sq += std::norm(c);
            c *= beta / std::sqrt(static_cast<double>(n + 1));
        }
        if (1.0 - norm_sq > mask_tol) {
            proj.rows.row(cell).setZero();
            proj.mask(ix, ip) = true;
        }
    });
    proj.masked_cells = static_cast<int>(
        proj.mask.cast<int>().sum());
    return proj;
}

QGrid qgrid_from_projection(const GridSpec& spec, const ProjectionMatrix& proj,
                            const Eigen::VectorXd& accum, int samples) {
    QGrid grid;
    grid.spec = spec;
    grid.mask = proj.mask;
    grid.masked_cells = proj.masked_cells;
    grid.values.resize(spec.nx, spec.np);
    for (int ip = 0; ip < spec.np; ++ip)
        for (int ix = 0; ix < spec.nx; ++ix)
            grid.values(ix, ip) = accum(ip * spec.nx + ix) / (pi * samples);
    return grid;
}
}

double ramsey_phase(double delta_kappa, double eta, int n) {
    if (!(eta > 0.0)) throw config_error("eta: must be > 0");
    return delta_kappa * n / (std::sqrt(2.0) * eta * eta);
}

RamseyProbabilities ramsey_probabilities(std::complex<double> cross, int n,
                                         double delta_kappa, double eta) {
    const double phi = ramsey_phase(delta_kappa, eta, n);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    RamseyProbabilities out;
    out.p_g = check_probability(
        0.5 * (1.0 - c * cross.real() - s * cross.imag()), "P_g");
    out.p_g_prime = check_probability(
        0.5 * (1.0 - s * cross.real() - c * cross.imag()), "P_g'");
    return out;
}

double reconstruct_overlap(double p_g, double p_g_prime, double delta_kappa,
                           double eta, int n, double singular_threshold) {
    const double phi = ramsey_phase(delta_kappa, eta, n);
    const double det = std::cos(2.0 * phi);
    if (std::abs(det) <= singular_threshold) {
        std::ostringstream oss;
        oss << "kick index " << n << " is near-singular (|cos 2phi| = "
            << std::abs(det) << " <= " << singular_threshold
            << "); skip or interpolate this index";
        throw singular_index_error(oss.str());
    }
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double rg = 1.0 - 2.0 * p_g;
    const double rp = 1.0 - 2.0 * p_g_prime;
    const double re = (c * rg - s * rp) / det;
    const double im = (-s * rg + c * rp) / det;
    return re * re + im * im;
}

OverlapSeries overlap_series(const FloquetOperator& f1,
                             const FloquetOperator& f2,
                             std::complex<double> alpha, int n_max,
                             const EvolveOptions& opts) {
    if (f1.dim() != f2.dim())
        throw config_error("floquet pair: dimensions differ");
    if (f1.eta != f2.eta)
        throw config_error("floquet pair: eta differs");
    if (f1.theta != f2.theta)
        throw config_error("floquet pair: theta differs");
    if (n_max < 0) throw config_error("n_max: must be >= 0");

    const double delta_kappa = f2.kappa - f1.kappa;
    FockVector psi0 = coherent_state(alpha, f1.dim()).amplitudes;
    psi0.normalize();

    OverlapSeries out;
    out.records.reserve(static_cast<std::size_t>(n_max) + 1);

    FockVector psi1 = psi0;
    FockVector psi2 = psi0;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) {
            psi1 = f1.matrix * psi1;
            psi2 = f2.matrix * psi2;
        }
        const double leak = std::max(leakage_fraction(psi1, opts.top_fraction),
                                     leakage_fraction(psi2, opts.top_fraction));
        out.max_leakage = std::max(out.max_leakage, leak);
        if (leak > opts.leak_error) {
            std::ostringstream oss;
            oss << "truncation leakage " << leak << " after " << n
                << " kicks exceeds " << opts.leak_error
                << "; increase fock_dim (try >= " << 2 * f1.dim() << ")";
            throw truncation_error(oss.str());
        }
        if (leak > opts.leak_warn) out.truncation_warning = true;
        const double drift = std::max(std::abs(psi1.norm() - 1.0),
                                      std::abs(psi2.norm() - 1.0));
        if (drift > opts.norm_tol) {
            std::ostringstream oss;
            oss << "state norm drifted by " << drift << " after " << n << " kicks";
            throw numerics_error(oss.str());
        }

        OverlapRecord rec;
        rec.n = n;
        rec.cross = psi2.dot(psi1); // Eigen dot conjugates the left factor
        rec.overlap = std::norm(rec.cross);
        const RamseyProbabilities probs =
            ramsey_probabilities(rec.cross, n, delta_kappa, f1.eta);
        rec.p_g = probs.p_g;
        rec.p_g_prime = probs.p_g_prime;
        rec.det = std::abs(std::cos(2.0 * ramsey_phase(delta_kappa, f1.eta, n)));
        rec.leak = leak;
        out.records.push_back(rec);
    }
    return out;
}

double QGrid::cell_weight(double eta) const {
    const double scale = pi / (2.0 * eta);
    return scale * scale * spec.dx() * spec.dp();
}

QGrid q_function(const FockVector& psi, const GridSpec& spec, double eta,
                 double mask_tol, int jobs) {
    spec.validate();
    if (std::abs(psi.norm() - 1.0) > 1e-8)
        throw config_error("psi: state must be normalized");

    const ProjectionMatrix proj = coherent_projections(
        spec, eta, static_cast<int>(psi.size()), mask_tol, jobs);
    Eigen::VectorXd accum = (proj.rows * psi).cwiseAbs2();
    return qgrid_from_projection(spec, proj, accum, 1);
}

QGrid time_averaged_q(const FloquetOperator& op, std::complex<double> alpha0,
                      int n_kicks, int stride, const GridSpec& spec,
                      const EvolveOptions& opts, double mask_tol, int jobs) {
    spec.validate();
    if (stride < 1) throw config_error("stride: must be >= 1");
    if (n_kicks < 0) throw config_error("n_kicks: must be >= 0");

    FockVector psi = coherent_state(alpha0, op.dim()).amplitudes;
    psi.normalize();

    const ProjectionMatrix proj =
        coherent_projections(spec, op.eta, op.dim(), mask_tol, jobs);

    // Sampled states are buffered and projected in batches so the grid
    // pass runs as a matrix-matrix product.
    constexpr int batch = 48;
    Eigen::MatrixXcd buffer(op.dim(), batch);
    Eigen::VectorXd accum = Eigen::VectorXd::Zero(spec.cells());
    int buffered = 0;
    int samples = 0;

    auto flush = [&] {
        if (buffered == 0) return;
        accum += (proj.rows * buffer.leftCols(buffered))
                     .cwiseAbs2()
                     .rowwise()
                     .sum();
        samples += buffered;
        buffered = 0;
    };

    for (int k = 0; k <= n_kicks; ++k) {
        if (k > 0) psi = op.matrix * psi;
        const double leak = leakage_fraction(psi, opts.top_fraction);
        if (leak > opts.leak_error) {
            std::ostringstream oss;
            oss << "truncation leakage " << leak << " after " << k
                << " kicks exceeds " << opts.leak_error
                << "; increase fock_dim (try >= " << 2 * op.dim() << ")";
            throw truncation_error(oss.str());
        }
        if (k % stride == 0) {
            buffer.col(buffered++) = psi;
            if (buffered == batch) flush();
        }
    }
    flush();
    return qgrid_from_projection(spec, proj, accum, samples);
}

double q_mass_outside(const QGrid& grid, double eta, double r_min) {
    const double w = grid.cell_weight(eta);
    double mass = 0.0;
    for (int ip = 0; ip < grid.spec.np; ++ip) {
        for (int ix = 0; ix < grid.spec.nx; ++ix) {
            if (grid.mask(ix, ip)) continue;
            const double x = grid.spec.x_center(ix);
            const double p = grid.spec.p_center(ip);
            if (std::hypot(x, p) > r_min) mass += grid.values(ix, ip) * w;
        }
    }
    return mass;
}

}  // namespace kho
