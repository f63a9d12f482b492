#ifndef KHO_ACCEPTANCE_FROZEN_VALUES_HPP
#define KHO_ACCEPTANCE_FROZEN_VALUES_HPP

// Regression anchors for the acceptance suite. Produced by running
// `kho_acceptance --record` once on a validated build and pasting its
// output here; asserted to +/- 1e-8 afterwards. Do not edit by hand.

namespace frozen {

inline constexpr bool recorded = true;

// criterion 4: late-time contrast, eta = 0.5, N = 400, kicks 500..1000
inline constexpr double mean_o_hyperbolic_eta05 = 0.094242256106791683;
inline constexpr double mean_o_elliptic_eta05 = 0.63961925557609656;
inline constexpr double contrast_factor_eta05 = 6.7869688396604673;

// criterion 5: eta = 0.25, N = 800
inline constexpr int first_below_half_eta05 = 147;
inline constexpr int first_below_half_eta025 = 100;
inline constexpr double drop_o_elliptic_eta05 = 0.3486697760849079;
inline constexpr double drop_o_elliptic_eta025 = -0.0075456147467451995;

// criterion 6: time-averaged Q mass beyond radius 1.5, elliptic IC
inline constexpr double q_mass_outside_eta05 = 0.10919681219324795;
inline constexpr double q_mass_outside_eta025 = 0.0084694804037035634;

// criterion 7: classical web ensemble
inline constexpr double web_max_radius_hyperbolic = 1.7679542293245085;
inline constexpr double web_max_radius_elliptic = 1.1624936313151604;
inline constexpr double web_symmetry_score = 0.8153287562067062;
inline constexpr double web_offangle_score = 0.0062385376824853961;

// criterion 8: Ehrenfest correspondence, eta = 0.05, kappa = 0.01
inline constexpr double ehrenfest_max_deviation = 0.0010910559925185216;

// criterion 9: N = 400 vs N = 800 overlap series
inline constexpr int quiet_window_hyperbolic = 103;
inline constexpr int quiet_window_elliptic = 122;
inline constexpr double max_do_full_hyperbolic = 0.0042057314289898479;
inline constexpr double max_do_full_elliptic = 0.00091800588008350559;

}  // namespace frozen

#endif
