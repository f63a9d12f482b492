// Independent reference implementations used only by tests. Everything
// here is deliberately built by a different route than the library code
// it checks (Taylor scaling-and-squaring instead of eigendecomposition,
// finite differences instead of analytic Jacobians, direct tail sums
// instead of recurrences).
#ifndef KHO_TEST_ORACLES_HPP
#define KHO_TEST_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "kho/params.hpp"

namespace oracle {

// Matrix exponential: scale until the infinity norm is <= 0.25, run the
// Taylor series to machine precision, square back up.
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
    const Eigen::MatrixXcd x = a / std::pow(2.0, squarings);

    const auto n = a.rows();
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd sum = term;
    for (int k = 1; k <= 40; ++k) {
        term = (term * x) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

// Matrix cosine via exp(+iA), exp(-iA).
inline Eigen::MatrixXcd cosm(const Eigen::MatrixXd& a) {
    const std::complex<double> i(0.0, 1.0);
    const Eigen::MatrixXcd ac = a.cast<std::complex<double>>();
    return 0.5 * (expm(i * ac) + expm(-i * ac));
}

// Kick unitary exp(-i kappa cos(2 eta (a^dag + a)) / (sqrt(2) eta^2))
// assembled without any eigendecomposition. The tridiagonal is rebuilt
// here on purpose.
inline Eigen::MatrixXcd kick_unitary(double kappa, double eta, int dim) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n)
        q(n - 1, n) = q(n, n - 1) = std::sqrt(static_cast<double>(n));
    const double c = kappa / (std::sqrt(2.0) * eta * eta);
    const std::complex<double> i(0.0, 1.0);
    return expm(-i * c * cosm(2.0 * eta * q));
}

// Central-difference Jacobian of a phase-space map.
inline Eigen::Matrix2d jacobian(
    const std::function<kho::PhasePoint(kho::PhasePoint)>& f,
    kho::PhasePoint at, double h = 1e-6) {
    const auto fxp = f({at.x + h, at.p});
    const auto fxm = f({at.x - h, at.p});
    const auto fpp = f({at.x, at.p + h});
    const auto fpm = f({at.x, at.p - h});
    Eigen::Matrix2d j;
    j << (fxp.x - fxm.x) / (2 * h), (fpp.x - fpm.x) / (2 * h),
         (fxp.p - fxm.p) / (2 * h), (fpp.p - fpm.p) / (2 * h);
    return j;
}

// Poisson upper tail P[X >= k_min] for mean mu, summed in log space.
inline double poisson_tail(double mu, int k_min) {
    if (mu <= 0.0) return k_min <= 0 ? 1.0 : 0.0;
    double total = 0.0;
    for (int k = k_min;; ++k) {
        const double logp = -mu + k * std::log(mu) - std::lgamma(k + 1.0);
        const double p = std::exp(logp);
        total += p;
        if (k > mu && (p < total * 1e-18 || p < 1e-320)) break;
    }
    return total;
}

}  // namespace oracle

#endif
