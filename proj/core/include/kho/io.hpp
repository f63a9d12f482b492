#ifndef KHO_IO_HPP
#define KHO_IO_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "kho/classical.hpp"
#include "kho/config.hpp"
#include "kho/fockspace.hpp"
#include "kho/protocol.hpp"

namespace kho {

// Shortest decimal string that round-trips the double ("nan"/"inf" pass
// through). All CSV output funnels through this, so files are byte-stable
// across runs of one build and never locale-dependent.
std::string format_double(double value);

// --- CSV writers (header row, comma separator, '.' decimal) ---

// Columns: X_index,P_index,count -- nonzero cells only, row-major
// (P outer, X inner).
void write_web_csv(const std::filesystem::path& path, const WebHistogram& hist);

// Columns: X,P,Q over all cells (cell centers; masked cells carry 0).
void write_qgrid_csv(const std::filesystem::path& path, const QGrid& grid);

// Columns: n,re,im -- amplitudes of a state vector.
void write_state_csv(const std::filesystem::path& path, const FockVector& psi);

// Columns: n,re_cross,im_cross,O,P_g,P_g_prime,det.
void write_overlap_csv(const std::filesystem::path& path,
                       const OverlapSeries& series);

// Round-trip of the measurement arithmetic: overlap recomputed from the
// Ramsey pair next to the directly evolved value. Singular indices keep
// nan in the reconstructed columns.
struct ReconstructionRow {
    int n = 0;
    double o_direct = 1.0;
    double o_reconstructed = 1.0;
    double abs_err = 0.0;
    double det = 1.0;
    bool singular = false;
};

std::vector<ReconstructionRow> reconstruction_rows(
    const OverlapSeries& series, double delta_kappa, double eta,
    double singular_threshold = 1e-3);

// Columns: n,O,O_reconstructed,abs_err,det,singular.
void write_reconstruction_csv(const std::filesystem::path& path,
                              const std::vector<ReconstructionRow>& rows);

struct TrajectoryRow {
    int n = 0;
    double x = 0.0;
    double p = 0.0;
    double nbar = 0.0;
};

// Columns: n,X,P,nbar -- quantum centroid and mean phonon number.
void write_trajectory_csv(const std::filesystem::path& path,
                          const std::vector<TrajectoryRow>& rows);

struct CorrespondenceRow {
    int n = 0;
    double x_quantum = 0.0;
    double p_quantum = 0.0;
    double x_classical = 0.0;
    double p_classical = 0.0;
    double deviation = 0.0;  // Euclidean, relative to the orbit radius
};

// Columns: n,X_quantum,P_quantum,X_classical,P_classical,rel_deviation.
void write_correspondence_csv(const std::filesystem::path& path,
                              const std::vector<CorrespondenceRow>& rows);

// --- PGM heatmaps (binary P5, 8-bit) ---

// Web counts, log-scaled: 255 * log1p(count)/log1p(max).
void write_web_pgm(const std::filesystem::path& path, const WebHistogram& hist);

// Q values, linear, max-normalized.
void write_qgrid_pgm(const std::filesystem::path& path, const QGrid& grid);

// --- Operator dump ---
// Layout: "KHOF" magic, u32 version (1), u32 N, f64 kappa, eta, theta,
// then N*N complex entries (re,im f64 pairs) row-major. Little-endian.
void write_floquet_binary(const std::filesystem::path& path,
                          const FloquetOperator& op);
FloquetOperator read_floquet_binary(const std::filesystem::path& path);

// --- Run manifest ---

struct RunManifest {
    std::string command;
    std::string version;
    std::map<std::string, Config::Entry> parameters;
    std::vector<std::string> outputs;
    double duration_seconds = 0.0;
};

// JSON with stable key order.
void write_manifest(const std::filesystem::path& path, const RunManifest& m);

}  // namespace kho

#endif
