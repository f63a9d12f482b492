#ifndef KHO_PROTOCOL_HPP
#define KHO_PROTOCOL_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kho/fockspace.hpp"
#include "kho/grid.hpp"

namespace kho {

// One kick of the two-branch interference record: the cross overlap
// <alpha| F2^dag^n F1^n |alpha>, its squared magnitude O, the Ramsey
// populations, and the inversion determinant |cos 2 phi_n| at this kick.
struct OverlapRecord {
    int n = 0;
    std::complex<double> cross{1.0, 0.0};
    double overlap = 1.0;
    double p_g = 0.0;
    double p_g_prime = 0.5;
    double det = 1.0;
    double leak = 0.0;  // worse branch's truncation leakage at this kick
};

struct OverlapSeries {
    std::vector<OverlapRecord> records;
    double max_leakage = 0.0;
    bool truncation_warning = false;
};

// Internal-state phase accumulated per kick from the constant part of
// the kick potential: phi_n = delta_kappa * n / (sqrt(2) eta^2).
double ramsey_phase(double delta_kappa, double eta, int n);

struct RamseyProbabilities {
    double p_g = 0.0;
    double p_g_prime = 0.0;
};

// Measurable populations for the two cat preparations:
//   P_g  = (1 - cos(phi) Re - sin(phi) Im) / 2
//   P_g' = (1 - sin(phi) Re - cos(phi) Im) / 2
// Throws internal_error if either lands outside [0,1] by more than 1e-9
// (possible only for |cross| > 1); otherwise clamps the roundoff edge.
RamseyProbabilities ramsey_probabilities(std::complex<double> cross, int n,
                                         double delta_kappa, double eta);

// Inverts the Ramsey pair back to the overlap O = Re^2 + Im^2. The 2x2
// system has determinant cos(2 phi_n); below singular_threshold the
// index is rejected with singular_index_error (skip or interpolate it).
double reconstruct_overlap(double p_g, double p_g_prime, double delta_kappa,
                           double eta, int n,
                           double singular_threshold = 1e-3);

// Parallel two-branch evolution from a common coherent state: one
// matvec per branch per kick, cross(n) = <psi2(n)|psi1(n)>. Requires F1
// and F2 to share dimension, eta and theta. The initial state is
// normalized after the truncation check so cross(0) = 1 exactly.
OverlapSeries overlap_series(const FloquetOperator& f1,
                             const FloquetOperator& f2,
                             std::complex<double> alpha, int n_max,
                             const EvolveOptions& opts = {});

// Husimi Q on a phase-space grid. values(ix, ip) = |<beta|psi>|^2 / pi
// with beta = alpha_from_phasepoint(cell center). Cells whose coherent
// projector is itself truncated beyond mask_tol are masked (value 0).
struct QGrid {
    GridSpec spec;
    Eigen::MatrixXd values;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask;
    int masked_cells = 0;

    // Area element per cell in the d^2(alpha) measure.
    double cell_weight(double eta) const;
};

QGrid q_function(const FockVector& psi, const GridSpec& spec, double eta,
                 double mask_tol = 1e-6, int jobs = 0);

// Mean of Q over kicks 0, stride, 2*stride, ... <= n_kicks under F.
QGrid time_averaged_q(const FloquetOperator& op, std::complex<double> alpha0,
                      int n_kicks, int stride, const GridSpec& spec,
                      const EvolveOptions& opts = {}, double mask_tol = 1e-6,
                      int jobs = 0);

// Q-mass (d^2 alpha measure) summed over unmasked cells at phase-space
// radius > r_min; pass r_min = 0 for the whole grid.
double q_mass_outside(const QGrid& grid, double eta, double r_min);

}  // namespace kho

#endif
