#ifndef KHO_PARAMS_HPP
#define KHO_PARAMS_HPP

#include <complex>

namespace kho {

// Classical dimensionless phase-space point. X is position in units of
// the kick-potential wavelength, P is momentum in units of (mass *
// trap frequency * kick wavelength), so the kick phase has spatial
// period 1 in X.
struct PhasePoint {
    double x = 0.0;
    double p = 0.0;

    double radius() const;
    bool finite() const;
};

// Dimensionless definition of one simulation: resonance rational r/q
// (so the rotation per kick period is 2*pi*r/q), Lamb-Dicke parameter
// eta, the two kick strengths, Fock truncation dimension and kick count.
struct ModelParams {
    int r = 1;
    int q = 6;
    double eta = 0.5;
    double kappa1 = 0.2;
    double kappa2 = 0.225;
    int fock_dim = 400;
    int n_kicks = 1000;

    // Reduces r/q by their gcd. q > 2 is required afterwards.
    ModelParams normalized() const;
    // Throws config_error naming the offending field.
    void validate() const;
};

// Ion-trap quantities the dimensionless model is derived from. Angular
// frequencies throughout; detuning is signed and must be nonzero.
struct PhysicalParams {
    double rabi = 0.0;             // peak Rabi frequency [rad/s]
    double detuning = 0.0;         // laser-atom detuning [rad/s], signed
    double pulse_width = 0.0;      // Gaussian pulse width sigma [s]
    double mass = 0.0;             // ion mass [kg]
    double trap_freq = 0.0;        // trap angular frequency [rad/s]
    double laser_wavenumber = 0.0; // [1/m]

    // Adiabatic-validity thresholds, configurable with these defaults.
    double max_rabi_detuning_ratio = 0.1; // require |rabi/detuning| below this
    double min_sigma_detuning = 10.0;     // require sigma*|detuning| above this

    // Throws validity_error naming the first violated bound.
    void validate() const;
};

// Result of converting physical parameters to the dimensionless model.
// kick_energy is the impulse prefactor K [J]; the identity
// kappa = sqrt(2) * eta^2 * kick_energy / hbar holds by construction.
struct KickStrength {
    double eta = 0.0;
    double kappa = 0.0;
    double kick_energy = 0.0;
};

inline constexpr double hbar = 1.054571817e-34; // [J s]

// Rotation angle per kick period, 2*pi*r/q. Throws config_error if the
// reduced q is not > 2 (no resonance web below q = 3).
double nu_tau(const ModelParams& params);

// Coherent-state amplitude matching a classical phase-space point:
// alpha = pi * (X + iP) / (2 eta). Inverse of phasepoint_from_alpha.
std::complex<double> alpha_from_phasepoint(const PhasePoint& pp, double eta);
PhasePoint phasepoint_from_alpha(std::complex<double> alpha, double eta);

// Dimensionless kick strength kappa = rabi^2 eta^2 sigma sqrt(2 pi) / (8 detuning),
// with eta computed from (wavenumber, mass, trap_freq). Validates the
// adiabatic bounds first.
KickStrength kappa_from_physical(const PhysicalParams& phys);

// Lamb-Dicke parameter k * sqrt(hbar / (2 m nu)).
double lamb_dicke(double laser_wavenumber, double mass, double trap_freq);

}  // namespace kho

#endif
