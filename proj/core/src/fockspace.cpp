#include "kho/fockspace.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kho/errors.hpp"

namespace kho {

namespace {
constexpr double pi = std::numbers::pi;
const std::complex<double> imag_unit{0.0, 1.0};

// kappa / (sqrt(2) eta^2), the scale of both the kick phase and the
// Ramsey phase per kick.
double kick_phase_scale(double kappa, double eta) {
    return kappa / (std::sqrt(2.0) * eta * eta);
}
}

Eigen::MatrixXd ladder_matrix(int fock_dim) {
    if (fock_dim < 2) throw config_error("fock_dim: must be >= 2");
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(fock_dim, fock_dim);
    for (int n = 1; n < fock_dim; ++n) {
        const double v = std::sqrt(static_cast<double>(n));
        q(n - 1, n) = v;
        q(n, n - 1) = v;
    }
    return q;
}

QuadratureEigensystem QuadratureEigensystem::compute(int fock_dim) {
    if (fock_dim < 2) throw config_error("fock_dim: must be >= 2");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(fock_dim);
    Eigen::VectorXd subdiag(fock_dim - 1);
    for (int n = 1; n < fock_dim; ++n)
        subdiag(n - 1) = std::sqrt(static_cast<double>(n));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw numerics_error("quadrature eigendecomposition failed");

    QuadratureEigensystem out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    return out;
}

int required_fock_dim(std::complex<double> alpha, double tol) {
    // Photon statistics are Poisson with mean |alpha|^2; walk the pmf in
    // log space until the captured mass reaches 1 - tol.
    const double mean = std::norm(alpha);
    if (mean == 0.0) return 2;
    const double log_mean = std::log(mean);
    double cumulative = 0.0;
    // generous cap: mean + 12 sigma + slack always reaches 1 - tol for
    // any tol >= 1e-30 of interest
    const int cap = static_cast<int>(mean + 12.0 * std::sqrt(mean) + 64.0);
    for (int n = 0; n <= cap; ++n) {
        cumulative += std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
        if (1.0 - cumulative <= tol) return std::max(n + 1, 2);
    }
    return cap + 1;
}

CoherentState coherent_state(std::complex<double> alpha, int fock_dim,
                             double tol) {
    if (fock_dim < 2) throw config_error("fock_dim: must be >= 2");
    CoherentState out;
    out.amplitudes.resize(fock_dim);
    std::complex<double> c = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < fock_dim; ++n) {
        out.amplitudes(n) = c;
        c *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    out.deficiency = std::max(0.0, 1.0 - out.amplitudes.squaredNorm());
    if (out.deficiency > tol) {
        std::ostringstream oss;
        oss << "coherent state |alpha| = " << std::abs(alpha)
            << " loses probability " << out.deficiency << " at fock_dim "
            << fock_dim << "; need fock_dim >= " << required_fock_dim(alpha, tol);
        throw truncation_error(oss.str());
    }
    return out;
}

Eigen::MatrixXcd kick_unitary(const QuadratureEigensystem& eig, double kappa,
                              double eta) {
    if (!(eta > 0.0)) throw config_error("eta: must be > 0");
    const int n = eig.dim();
    const double c = kick_phase_scale(kappa, eta);
    Eigen::VectorXcd phases(n);
    for (int k = 0; k < n; ++k)
        phases(k) = std::exp(-imag_unit * c * std::cos(2.0 * eta * eig.eigenvalues(k)));
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.transpose();
}

Eigen::MatrixXcd kick_unitary(double kappa, double eta, int fock_dim) {
    return kick_unitary(QuadratureEigensystem::compute(fock_dim), kappa, eta);
}

FloquetOperator floquet(const QuadratureEigensystem& eig, double kappa,
                        double eta, double theta) {
    FloquetOperator op;
    op.kappa = kappa;
    op.eta = eta;
    op.theta = theta;
    op.matrix = kick_unitary(eig, kappa, eta);
    // harmonic phases exp(-i n theta) row-wise
    for (int n = 0; n < op.matrix.rows(); ++n)
        op.matrix.row(n) *= std::exp(-imag_unit * (theta * n));
    return op;
}

FloquetOperator floquet(double kappa, double eta, double theta, int fock_dim) {
    return floquet(QuadratureEigensystem::compute(fock_dim), kappa, eta, theta);
}

double leakage_fraction(const FockVector& psi, double top_fraction) {
    const int n = static_cast<int>(psi.size());
    int window = static_cast<int>(std::ceil(top_fraction * n));
    window = std::min(std::max(window, 1), n);
    return psi.tail(window).squaredNorm();
}

EvolveResult evolve_series(const FloquetOperator& op, const FockVector& psi0,
                           int n_kicks, const EvolveOptions& opts) {
    if (psi0.size() != op.dim())
        throw config_error("psi0: dimension does not match operator");
    if (n_kicks < 0) throw config_error("n_kicks: must be >= 0");

    EvolveResult out;
    out.states.reserve(static_cast<std::size_t>(n_kicks) + 1);
    out.leakage.resize(n_kicks + 1);
    out.states.push_back(psi0);

    FockVector psi = psi0;
    for (int k = 0; k <= n_kicks; ++k) {
        if (k > 0) {
            psi = op.matrix * psi;
            out.states.push_back(psi);
        }
        const double leak = leakage_fraction(psi, opts.top_fraction);
        out.leakage(k) = leak;
        out.max_leakage = std::max(out.max_leakage, leak);
        if (leak > opts.leak_error) {
            std::ostringstream oss;
            oss << "truncation leakage " << leak << " after " << k
                << " kicks exceeds " << opts.leak_error
                << "; increase fock_dim (try >= " << 2 * op.dim() << ")";
            throw truncation_error(oss.str());
        }
        if (leak > opts.leak_warn) out.truncation_warning = true;
        const double norm_drift = std::abs(psi.norm() - 1.0);
        if (norm_drift > opts.norm_tol) {
            std::ostringstream oss;
            oss << "state norm drifted by " << norm_drift << " after " << k
                << " kicks (tolerance " << opts.norm_tol << ")";
            throw numerics_error(oss.str());
        }
    }
    return out;
}

std::complex<double> annihilation_expectation(const FockVector& psi) {
    std::complex<double> a{0.0, 0.0};
    for (int n = 0; n + 1 < psi.size(); ++n)
        a += std::conj(psi(n)) * psi(n + 1) * std::sqrt(static_cast<double>(n + 1));
    return a;
}

PhasePoint expectation_xp(const FockVector& psi, double eta) {
    const std::complex<double> a = annihilation_expectation(psi);
    return phasepoint_from_alpha(a, eta);
}

double mean_phonon(const FockVector& psi) {
    double m = 0.0;
    for (int n = 0; n < psi.size(); ++n) m += n * std::norm(psi(n));
    return m;
}

}  // namespace kho
