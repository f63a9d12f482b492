#include "kho/params.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "kho/errors.hpp"

namespace kho {

namespace {
constexpr double pi = std::numbers::pi;
}

double PhasePoint::radius() const { return std::hypot(x, p); }

bool PhasePoint::finite() const { return std::isfinite(x) && std::isfinite(p); }

ModelParams ModelParams::normalized() const {
    ModelParams out = *this;
    if (r > 0 && q > 0) {
        const int g = std::gcd(r, q);
        out.r = r / g;
        out.q = q / g;
    }
    return out;
}

void ModelParams::validate() const {
    const ModelParams n = normalized();
    if (r <= 0) throw config_error("r: must be a positive integer");
    if (q <= 0) throw config_error("q: must be a positive integer");
    if (n.q <= 2) {
        std::ostringstream oss;
        oss << "q: resonance r/q = " << r << "/" << q << " reduces to " << n.r
            << "/" << n.q << "; q > 2 required";
        throw config_error(oss.str());
    }
    if (!(eta > 0.0) || !std::isfinite(eta))
        throw config_error("eta: must be > 0");
    if (!std::isfinite(kappa1)) throw config_error("kappa1: must be finite");
    if (!std::isfinite(kappa2)) throw config_error("kappa2: must be finite");
    if (fock_dim < 2) throw config_error("fock_dim: must be >= 2");
    if (n_kicks < 0) throw config_error("n_kicks: must be >= 0");
}

void PhysicalParams::validate() const {
    std::ostringstream oss;
    if (detuning == 0.0 || !std::isfinite(detuning))
        throw validity_error("detuning: must be nonzero and finite");
    if (mass <= 0.0) throw validity_error("mass: must be > 0");
    if (trap_freq <= 0.0) throw validity_error("trap_freq: must be > 0");
    if (laser_wavenumber <= 0.0)
        throw validity_error("laser_wavenumber: must be > 0");
    if (pulse_width <= 0.0) throw validity_error("pulse_width: must be > 0");
    if (rabi < 0.0) throw validity_error("rabi: must be >= 0");

    const double ratio = std::abs(rabi / detuning);
    if (ratio >= max_rabi_detuning_ratio) {
        oss << "adiabatic validity failed: |rabi/detuning| = " << ratio
            << " >= " << max_rabi_detuning_ratio
            << " (excited states cannot be eliminated)";
        throw validity_error(oss.str());
    }
    const double sd = pulse_width * std::abs(detuning);
    if (sd <= min_sigma_detuning) {
        oss << "adiabatic validity failed: pulse_width*|detuning| = " << sd
            << " <= " << min_sigma_detuning << " (pulse spectrally too broad)";
        throw validity_error(oss.str());
    }
}

double nu_tau(const ModelParams& params) {
    const ModelParams n = params.normalized();
    if (n.q <= 2 || n.r <= 0) {
        std::ostringstream oss;
        oss << "invalid resonance r/q = " << params.r << "/" << params.q
            << ": reduced q must be > 2";
        throw config_error(oss.str());
    }
    return 2.0 * pi * static_cast<double>(n.r) / static_cast<double>(n.q);
}

std::complex<double> alpha_from_phasepoint(const PhasePoint& pp, double eta) {
    if (!(eta > 0.0)) throw config_error("eta: must be > 0");
    return pi * std::complex<double>(pp.x, pp.p) / (2.0 * eta);
}

PhasePoint phasepoint_from_alpha(std::complex<double> alpha, double eta) {
    if (!(eta > 0.0)) throw config_error("eta: must be > 0");
    return {2.0 * eta * alpha.real() / pi, 2.0 * eta * alpha.imag() / pi};
}

double lamb_dicke(double laser_wavenumber, double mass, double trap_freq) {
    return laser_wavenumber * std::sqrt(hbar / (2.0 * mass * trap_freq));
}

KickStrength kappa_from_physical(const PhysicalParams& phys) {
    phys.validate();
    KickStrength out;
    out.eta = lamb_dicke(phys.laser_wavenumber, phys.mass, phys.trap_freq);
    const double rabi_sq = phys.rabi * phys.rabi;
    out.kick_energy =
        hbar * phys.pulse_width * std::sqrt(pi) * rabi_sq / (8.0 * phys.detuning);
    out.kappa = rabi_sq * out.eta * out.eta * phys.pulse_width *
                std::sqrt(2.0 * pi) / (8.0 * phys.detuning);
    return out;
}

}  // namespace kho
