#include "kho/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>

#include <json.hpp>

#include "kho/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "operator dumps are defined little-endian; add byte swapping "
              "before building on a big-endian host");

namespace kho {

namespace {
std::ofstream open_out(const std::filesystem::path& path, bool binary) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw error("cannot open for writing: " + path.string());
    return out;
}

void write_pgm(const std::filesystem::path& path, const Eigen::MatrixXd& img) {
    // img(ix, ip) in [0,1]; rows of the file scan P from top (max) down.
    const auto nx = img.rows();
    const auto np = img.cols();
    std::ofstream out = open_out(path, true);
    out << "P5\n" << nx << " " << np << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(nx));
    for (auto ip = np - 1; ip >= 0; --ip) {
        for (auto ix = 0; ix < nx; ++ix)
            row[static_cast<std::size_t>(ix)] = static_cast<unsigned char>(
                std::lround(255.0 * std::clamp(img(ix, ip), 0.0, 1.0)));
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw error("write failed: " + path.string());
}

template <typename T>
void put(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(std::ifstream& in, const std::string& what) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw error("operator dump truncated while reading " + what);
    return v;
}
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw internal_error("format_double failed");
    return std::string(buf, ptr);
}

void write_web_csv(const std::filesystem::path& path,
                   const WebHistogram& hist) {
    std::ofstream out = open_out(path, false);
    out << "X_index,P_index,count\n";
    for (int ip = 0; ip < hist.spec.np; ++ip)
        for (int ix = 0; ix < hist.spec.nx; ++ix)
            if (const auto c = hist.counts(ix, ip); c != 0)
                out << ix << "," << ip << "," << c << "\n";
    if (!out) throw error("write failed: " + path.string());
}

void write_qgrid_csv(const std::filesystem::path& path, const QGrid& grid) {
    std::ofstream out = open_out(path, false);
    out << "X,P,Q\n";
    for (int ip = 0; ip < grid.spec.np; ++ip)
        for (int ix = 0; ix < grid.spec.nx; ++ix)
            out << format_double(grid.spec.x_center(ix)) << ","
                << format_double(grid.spec.p_center(ip)) << ","
                << format_double(grid.values(ix, ip)) << "\n";
    if (!out) throw error("write failed: " + path.string());
}

void write_state_csv(const std::filesystem::path& path, const FockVector& psi) {
    std::ofstream out = open_out(path, false);
    out << "n,re,im\n";
    for (Eigen::Index n = 0; n < psi.size(); ++n)
        out << n << "," << format_double(psi[n].real()) << ","
            << format_double(psi[n].imag()) << "\n";
    if (!out) throw error("write failed: " + path.string());
}

void write_overlap_csv(const std::filesystem::path& path,
                       const OverlapSeries& series) {
    std::ofstream out = open_out(path, false);
    out << "n,re_cross,im_cross,O,P_g,P_g_prime,det\n";
    for (const OverlapRecord& r : series.records)
        out << r.n << "," << format_double(r.cross.real()) << ","
            << format_double(r.cross.imag()) << "," << format_double(r.overlap)
            << "," << format_double(r.p_g) << "," << format_double(r.p_g_prime)
            << "," << format_double(r.det) << "\n";
    if (!out) throw error("write failed: " + path.string());
}

std::vector<ReconstructionRow> reconstruction_rows(const OverlapSeries& series,
                                                   double delta_kappa,
                                                   double eta,
                                                   double singular_threshold) {
    std::vector<ReconstructionRow> rows;
    rows.reserve(series.records.size());
    for (const OverlapRecord& r : series.records) {
        ReconstructionRow row;
        row.n = r.n;
        row.o_direct = r.overlap;
        row.det = r.det;
        if (r.det <= singular_threshold) {
            row.singular = true;
            row.o_reconstructed = std::nan("");
            row.abs_err = std::nan("");
        } else {
            row.o_reconstructed = reconstruct_overlap(
                r.p_g, r.p_g_prime, delta_kappa, eta, r.n, singular_threshold);
            row.abs_err = std::abs(row.o_reconstructed - row.o_direct);
        }
        rows.push_back(row);
    }
    return rows;
}

void write_reconstruction_csv(const std::filesystem::path& path,
                              const std::vector<ReconstructionRow>& rows) {
    std::ofstream out = open_out(path, false);
    out << "n,O,O_reconstructed,abs_err,det,singular\n";
    for (const ReconstructionRow& r : rows)
        out << r.n << "," << format_double(r.o_direct) << ","
            << format_double(r.o_reconstructed) << ","
            << format_double(r.abs_err) << "," << format_double(r.det) << ","
            << (r.singular ? 1 : 0) << "\n";
    if (!out) throw error("write failed: " + path.string());
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const std::vector<TrajectoryRow>& rows) {
    std::ofstream out = open_out(path, false);
    out << "n,X,P,nbar\n";
    for (const TrajectoryRow& r : rows)
        out << r.n << "," << format_double(r.x) << "," << format_double(r.p)
            << "," << format_double(r.nbar) << "\n";
    if (!out) throw error("write failed: " + path.string());
}

void write_correspondence_csv(const std::filesystem::path& path,
                              const std::vector<CorrespondenceRow>& rows) {
    std::ofstream out = open_out(path, false);
    out << "n,X_quantum,P_quantum,X_classical,P_classical,rel_deviation\n";
    for (const CorrespondenceRow& r : rows)
        out << r.n << "," << format_double(r.x_quantum) << ","
            << format_double(r.p_quantum) << "," << format_double(r.x_classical)
            << "," << format_double(r.p_classical) << ","
            << format_double(r.deviation) << "\n";
    if (!out) throw error("write failed: " + path.string());
}

void write_web_pgm(const std::filesystem::path& path,
                   const WebHistogram& hist) {
    const double max_count = static_cast<double>(hist.counts.maxCoeff());
    Eigen::MatrixXd img =
        Eigen::MatrixXd::Zero(hist.spec.nx, hist.spec.np);
    if (max_count > 0) {
        const double scale = 1.0 / std::log1p(max_count);
        for (int ip = 0; ip < hist.spec.np; ++ip)
            for (int ix = 0; ix < hist.spec.nx; ++ix)
                img(ix, ip) =
                    std::log1p(static_cast<double>(hist.counts(ix, ip))) * scale;
    }
    write_pgm(path, img);
}

void write_qgrid_pgm(const std::filesystem::path& path, const QGrid& grid) {
    const double max_q = grid.values.maxCoeff();
    Eigen::MatrixXd img = max_q > 0 ? (grid.values / max_q).eval()
                                    : Eigen::MatrixXd::Zero(grid.spec.nx,
                                                            grid.spec.np);
    write_pgm(path, img);
}

void write_floquet_binary(const std::filesystem::path& path,
                          const FloquetOperator& op) {
    std::ofstream out = open_out(path, true);
    out.write("KHOF", 4);
    put(out, std::uint32_t{1});
    put(out, static_cast<std::uint32_t>(op.dim()));
    put(out, op.kappa);
    put(out, op.eta);
    put(out, op.theta);
    // Eigen default storage is column-major; emit rows explicitly.
    for (int i = 0; i < op.dim(); ++i)
        for (int j = 0; j < op.dim(); ++j) {
            put(out, op.matrix(i, j).real());
            put(out, op.matrix(i, j).imag());
        }
    if (!out) throw error("write failed: " + path.string());
}

FloquetOperator read_floquet_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open operator dump: " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string_view(magic, 4) != "KHOF")
        throw error("not an operator dump: " + path.string());
    if (take<std::uint32_t>(in, "version") != 1)
        throw error("unsupported operator dump version: " + path.string());
    const auto n = take<std::uint32_t>(in, "dimension");
    FloquetOperator op;
    op.kappa = take<double>(in, "kappa");
    op.eta = take<double>(in, "eta");
    op.theta = take<double>(in, "theta");
    op.matrix.resize(n, n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            const double re = take<double>(in, "matrix entry");
            const double im = take<double>(in, "matrix entry");
            op.matrix(i, j) = {re, im};
        }
    return op;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
    nlohmann::ordered_json j;
    j["command"] = m.command;
    j["version"] = m.version;
    nlohmann::ordered_json params;
    for (const auto& [key, entry] : m.parameters)
        params[key] = {{"value", entry.value}, {"source", entry.source}};
    j["parameters"] = std::move(params);
    j["outputs"] = m.outputs;
    j["duration_seconds"] = m.duration_seconds;
    std::ofstream out = open_out(path, false);
    out << j.dump(2) << "\n";
    if (!out) throw error("write failed: " + path.string());
}

}  // namespace kho
