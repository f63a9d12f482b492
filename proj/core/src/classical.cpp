#include "kho/classical.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kho/errors.hpp"
#include "kho/parallel.hpp"

namespace kho {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;
}

int GridSpec::x_index(double x) const {
    if (x < x_min || x >= x_max) return -1;
    const int ix = static_cast<int>((x - x_min) / dx());
    return ix < nx ? ix : nx - 1;
}

int GridSpec::p_index(double p) const {
    if (p < p_min || p >= p_max) return -1;
    const int ip = static_cast<int>((p - p_min) / dp());
    return ip < np ? ip : np - 1;
}

void GridSpec::validate() const {
    if (nx < 2) throw config_error("nx: grid resolution must be >= 2");
    if (np < 2) throw config_error("np: grid resolution must be >= 2");
    if (!(x_max > x_min)) throw config_error("x_max: must exceed x_min");
    if (!(p_max > p_min)) throw config_error("p_max: must exceed p_min");
}

double kick_amplitude(double kappa) { return 2.0 * std::sqrt(2.0) * kappa / pi; }

ClassicalMap ClassicalMap::from_model(const ModelParams& params, double kappa) {
    return {nu_tau(params), kick_amplitude(kappa), two_pi};
}

void ClassicalMap::validate() const {
    if (!(spatial_freq > 0.0))
        throw config_error("spatial_freq: must be > 0");
    if (!std::isfinite(amplitude))
        throw config_error("amplitude: must be finite");
    if (!std::isfinite(theta)) throw config_error("theta: must be finite");
}

PhasePoint kick(const PhasePoint& pp, const ClassicalMap& map) {
    return {pp.x, pp.p + map.amplitude * std::sin(map.spatial_freq * pp.x)};
}

PhasePoint rotate(const PhasePoint& pp, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {pp.x * c + pp.p * s, -pp.x * s + pp.p * c};
}

PhasePoint step(const PhasePoint& pp, const ClassicalMap& map) {
    return rotate(kick(pp, map), map.theta);
}

std::vector<PhasePoint> orbit(const PhasePoint& pp0, const ClassicalMap& map,
                              int n) {
    if (n < 0) throw config_error("n: kick count must be >= 0");
    std::vector<PhasePoint> pts;
    pts.reserve(static_cast<std::size_t>(n) + 1);
    pts.push_back(pp0);
    PhasePoint pp = pp0;
    for (int i = 0; i < n; ++i) {
        pp = step(pp, map);
        pts.push_back(pp);
    }
    return pts;
}

Eigen::Matrix2d step_jacobian(const PhasePoint& pre_kick,
                              const ClassicalMap& map) {
    const double shear =
        map.amplitude * map.spatial_freq * std::cos(map.spatial_freq * pre_kick.x);
    Eigen::Matrix2d kick_jac;
    kick_jac << 1.0, 0.0, shear, 1.0;
    const double c = std::cos(map.theta);
    const double s = std::sin(map.theta);
    Eigen::Matrix2d rot;
    rot << c, s, -s, c;
    return rot * kick_jac;
}

OrbitStability orbit_stability(const PhasePoint& pp0, const ClassicalMap& map,
                               int period, const StabilityOptions& opts) {
    if (period < 1) throw config_error("period: must be >= 1");
    Eigen::Matrix2d jac = Eigen::Matrix2d::Identity();
    PhasePoint pp = pp0;
    for (int i = 0; i < period; ++i) {
        jac = step_jacobian(pp, map) * jac;
        pp = step(pp, map);
    }
    const double miss = std::hypot(pp.x - pp0.x, pp.p - pp0.p);
    if (miss > opts.closure_tol) {
        std::ostringstream oss;
        oss << "orbit from (" << pp0.x << ", " << pp0.p
            << ") does not close after " << period << " steps (miss " << miss
            << " > " << opts.closure_tol << ")";
        throw not_periodic_error(oss.str());
    }
    OrbitStability out;
    out.trace = jac.trace();
    const double excess = std::abs(out.trace) - 2.0;
    if (std::abs(excess) <= opts.parabolic_tol)
        out.classification = StabilityClass::parabolic;
    else if (excess > 0.0)
        out.classification = StabilityClass::hyperbolic;
    else
        out.classification = StabilityClass::elliptic;
    return out;
}

WebHistogram web_scan(const std::vector<PhasePoint>& ics,
                      const ClassicalMap& map, int n, const GridSpec& spec,
                      int jobs) {
    if (ics.empty()) throw config_error("ics: at least one initial condition required");
    spec.validate();
    map.validate();

    using Counts = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
    std::vector<Counts> partial(ics.size());

    parallel_for(ics.size(), jobs, [&](std::size_t i) {
        Counts c = Counts::Zero(spec.nx, spec.np);
        PhasePoint pp = ics[i];
        for (int k = 0; k <= n; ++k) {
            const int ix = spec.x_index(pp.x);
            const int ip = spec.p_index(pp.p);
            if (ix >= 0 && ip >= 0) c(ix, ip) += 1;
            if (k < n) pp = step(pp, map);
        }
        partial[i] = std::move(c);
    });

    WebHistogram hist;
    hist.spec = spec;
    hist.counts = Counts::Zero(spec.nx, spec.np);
    for (const Counts& c : partial) hist.counts += c;
    hist.total = hist.counts.sum();
    return hist;
}

double pearson_correlation(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const double n = static_cast<double>(a.size());
    const double ma = a.mean();
    const double mb = b.mean();
    const Eigen::ArrayXXd da = a.array() - ma;
    const Eigen::ArrayXXd db = b.array() - mb;
    const double cov = (da * db).sum() / n;
    const double va = (da * da).sum() / n;
    const double vb = (db * db).sum() / n;
    if (va <= 0.0 || vb <= 0.0)
        throw numerics_error("pearson correlation undefined for constant field");
    return cov / std::sqrt(va * vb);
}

double web_symmetry_score(const WebHistogram& hist, double angle) {
    const GridSpec& spec = hist.spec;
    const Eigen::MatrixXd field = hist.counts.cast<double>();

    // Sample the histogram rotated by `angle`: the value at cell center
    // (X, P) comes from the original field at R(-angle)(X, P).
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Eigen::MatrixXd rotated = Eigen::MatrixXd::Zero(spec.nx, spec.np);
    for (int ix = 0; ix < spec.nx; ++ix) {
        for (int ip = 0; ip < spec.np; ++ip) {
            const double x = spec.x_center(ix);
            const double p = spec.p_center(ip);
            const double xs = c * x - s * p;
            const double ps = s * x + c * p;
            // fractional cell coordinates of the source point
            const double fx = (xs - spec.x_min) / spec.dx() - 0.5;
            const double fp = (ps - spec.p_min) / spec.dp() - 0.5;
            const int ix0 = static_cast<int>(std::floor(fx));
            const int ip0 = static_cast<int>(std::floor(fp));
            const double tx = fx - ix0;
            const double tp = fp - ip0;
            auto at = [&](int i, int j) -> double {
                if (i < 0 || i >= spec.nx || j < 0 || j >= spec.np) return 0.0;
                return field(i, j);
            };
            rotated(ix, ip) = (1 - tx) * (1 - tp) * at(ix0, ip0) +
                              tx * (1 - tp) * at(ix0 + 1, ip0) +
                              (1 - tx) * tp * at(ix0, ip0 + 1) +
                              tx * tp * at(ix0 + 1, ip0 + 1);
        }
    }
    return pearson_correlation(field, rotated);
}

}  // namespace kho
