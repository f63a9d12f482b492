#ifndef KHO_FOCKSPACE_HPP
#define KHO_FOCKSPACE_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kho/params.hpp"

namespace kho {

using FockVector = Eigen::VectorXcd;

// Matrix of the position quadrature a^dag + a in the truncated Fock
// basis: symmetric tridiagonal with off-diagonal sqrt(n), n = 1..N-1.
Eigen::MatrixXd ladder_matrix(int fock_dim);

// Eigendecomposition of the truncated quadrature, reused for every kick
// unitary of the same dimension (the eigensystem does not depend on
// kappa or eta).
struct QuadratureEigensystem {
    Eigen::VectorXd eigenvalues;  // ascending, symmetric about 0
    Eigen::MatrixXd eigenvectors; // orthonormal columns

    int dim() const { return static_cast<int>(eigenvalues.size()); }
    static QuadratureEigensystem compute(int fock_dim);
};

// Coherent-state amplitudes c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!)
// via the recurrence c_{n+1} = c_n alpha / sqrt(n+1). deficiency is the
// probability weight lost to truncation, 1 - ||c||^2.
struct CoherentState {
    FockVector amplitudes;
    double deficiency = 0.0;
};

// Throws truncation_error naming the dimension actually required if the
// deficiency exceeds tol.
CoherentState coherent_state(std::complex<double> alpha, int fock_dim,
                             double tol = 1e-8);

// Smallest dimension keeping coherent-state truncation loss <= tol.
int required_fock_dim(std::complex<double> alpha, double tol = 1e-8);

// Kick unitary exp(-i kappa cos(2 eta (a^dag + a)) / (sqrt(2) eta^2)),
// built as V diag(exp(-i c cos(2 eta x_k))) V^T on the quadrature
// eigensystem. Unitary to eigensolver roundoff.
Eigen::MatrixXcd kick_unitary(const QuadratureEigensystem& eig, double kappa,
                              double eta);
Eigen::MatrixXcd kick_unitary(double kappa, double eta, int fock_dim);

// One-period propagator: harmonic phases exp(-i n theta) after the kick.
// The constant phase exp(-i n_kicks kappa / (sqrt(2) eta^2)) coming from
// the cos+1 form of the kick potential is NOT folded in here; the
// Ramsey layer applies it analytically.
struct FloquetOperator {
    Eigen::MatrixXcd matrix;
    double kappa = 0.0;
    double eta = 0.0;
    double theta = 0.0;

    int dim() const { return static_cast<int>(matrix.rows()); }
    FockVector apply(const FockVector& psi) const { return matrix * psi; }
};

FloquetOperator floquet(const QuadratureEigensystem& eig, double kappa,
                        double eta, double theta);
FloquetOperator floquet(double kappa, double eta, double theta, int fock_dim);

struct EvolveOptions {
    double norm_tol = 1e-9;     // ||psi|| must stay within this of 1
    double leak_warn = 1e-6;    // leakage above this flags a warning
    double leak_error = 1e-3;   // leakage above this aborts
    double top_fraction = 0.1;  // monitored window at the top of the basis
};

struct EvolveResult {
    std::vector<FockVector> states; // after 0..n kicks
    Eigen::VectorXd leakage;        // per recorded state
    double max_leakage = 0.0;
    bool truncation_warning = false;
};

// Population in the top `top_fraction` of basis states.
double leakage_fraction(const FockVector& psi, double top_fraction = 0.1);

// Repeated application of F, one matvec per kick. Checks norm
// preservation and monitors truncation leakage per kick; throws
// truncation_error when leakage passes leak_error, numerics_error when
// the norm drifts.
EvolveResult evolve_series(const FloquetOperator& op, const FockVector& psi0,
                           int n_kicks, const EvolveOptions& opts = {});

// Phase-space centroid of a state: X = 2 eta Re<a> / pi and likewise P,
// consistent with phasepoint_from_alpha on coherent states.
PhasePoint expectation_xp(const FockVector& psi, double eta);

std::complex<double> annihilation_expectation(const FockVector& psi);
double mean_phonon(const FockVector& psi);

}  // namespace kho

#endif
