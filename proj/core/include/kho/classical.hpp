#ifndef KHO_CLASSICAL_HPP
#define KHO_CLASSICAL_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "kho/grid.hpp"
#include "kho/params.hpp"

namespace kho {

// Stroboscopic kicked-oscillator map: an impulsive momentum kick
// P -> P + A sin(w X) followed by a clockwise harmonic rotation by
// theta. The clockwise sense matches the quantum centroid, which picks
// up exp(-i theta) per period.
struct ClassicalMap {
    double theta = 0.0;        // rotation per kick period (= nu*tau)
    double amplitude = 0.0;    // dimensionless kick impulse A
    double spatial_freq = 0.0; // kick phase gradient w [rad per unit X]

    // Map matched to the quantum model: theta = 2 pi r/q and
    // A = 2 sqrt(2) kappa / pi, the Ehrenfest limit of the kick unitary.
    static ClassicalMap from_model(const ModelParams& params, double kappa);

    void validate() const;
};

// Kick amplitude A = 2 sqrt(2) kappa / pi.
double kick_amplitude(double kappa);

PhasePoint kick(const PhasePoint& pp, const ClassicalMap& map);
PhasePoint rotate(const PhasePoint& pp, double theta);
PhasePoint step(const PhasePoint& pp, const ClassicalMap& map);

// n+1 stroboscopic points starting with (and including) pp0.
std::vector<PhasePoint> orbit(const PhasePoint& pp0, const ClassicalMap& map,
                              int n);

// Jacobian of one step at the pre-kick point.
Eigen::Matrix2d step_jacobian(const PhasePoint& pre_kick,
                              const ClassicalMap& map);

enum class StabilityClass { elliptic, hyperbolic, parabolic };

struct OrbitStability {
    double trace = 0.0;
    StabilityClass classification = StabilityClass::elliptic;
};

struct StabilityOptions {
    double closure_tol = 1e-6;   // orbit must return to pp0 within this
    double parabolic_tol = 1e-9; // |trace| within this of 2 is parabolic
};

// Linear stability of a periodic orbit: trace of the product of per-step
// Jacobians over one period. Throws not_periodic_error if the orbit does
// not close within closure_tol.
OrbitStability orbit_stability(const PhasePoint& pp0, const ClassicalMap& map,
                               int period, const StabilityOptions& opts = {});

// Occupancy histogram of stroboscopic visits. counts(ix, ip) is the
// number of orbit points landing in cell (ix, ip); points outside the
// grid are dropped (total counts only the binned ones).
struct WebHistogram {
    GridSpec spec;
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
    std::int64_t total = 0;
};

// Runs every initial condition for n kicks and accumulates all n+1
// points per orbit. Deterministic regardless of jobs (per-orbit
// histograms merge in input order). Throws config_error on empty ics.
WebHistogram web_scan(const std::vector<PhasePoint>& ics,
                      const ClassicalMap& map, int n, const GridSpec& spec,
                      int jobs = 0);

// Pearson correlation of the histogram with itself rotated by `angle`
// about the phase-space origin (bilinear resampling, outside cells 0).
// Near 1 for a pattern with that rotational symmetry.
double web_symmetry_score(const WebHistogram& hist, double angle);

double pearson_correlation(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace kho

#endif
