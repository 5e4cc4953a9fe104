#include "jsfkit/io.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "jsfkit/units.hpp"
#include "json.hpp"

namespace jsfkit::io {

namespace {

struct File {
  std::FILE* f;
  explicit File(const std::filesystem::path& p, const char* mode) : f(std::fopen(p.c_str(), mode)) {
    if (!f) throw std::runtime_error("cannot open " + p.string());
  }
  ~File() {
    if (f) std::fclose(f);
  }
  File(const File&) = delete;
  File& operator=(const File&) = delete;
};

void fmt_double(std::FILE* f, double v) { std::fprintf(f, "%.17g", v); }

}  // namespace

void write_grid_csv(const std::filesystem::path& p, const SpectralGrid& g, const CMat& values) {
  File out(p, "w");
  std::fprintf(out.f, "lambda_s_nm,lambda_i_nm,re,im,abs2\n");
  for (std::size_t s = 0; s < g.n_s(); ++s) {
    const double ls = units::lambda_from_omega(g.omega_s[s]) * 1e9;
    for (std::size_t i = 0; i < g.n_i(); ++i) {
      const double li = units::lambda_from_omega(g.omega_i[i]) * 1e9;
      const cplx v = values(s, i);
      std::fprintf(out.f, "%.12g,%.12g,", ls, li);
      fmt_double(out.f, v.real());
      std::fputc(',', out.f);
      fmt_double(out.f, v.imag());
      std::fputc(',', out.f);
      fmt_double(out.f, std::norm(v));
      std::fputc('\n', out.f);
    }
  }
}

void write_grid_bin(const std::filesystem::path& p, const SpectralGrid& g, const CMat& values) {
  File out(p, "wb");
  char header[32] = {};
  std::memcpy(header, "JSFB", 4);
  header[4] = 1;
  const std::uint32_t ns = static_cast<std::uint32_t>(g.n_s());
  const std::uint32_t ni = static_cast<std::uint32_t>(g.n_i());
  std::memcpy(header + 8, &ns, 4);
  std::memcpy(header + 12, &ni, 4);
  const double ws_lo = g.omega_s.front(), wi_lo = g.omega_i.front();
  std::memcpy(header + 16, &ws_lo, 8);
  std::memcpy(header + 24, &wi_lo, 8);
  std::fwrite(header, 1, 32, out.f);
  std::fwrite(&g.d_omega_s, 8, 1, out.f);
  std::fwrite(&g.d_omega_i, 8, 1, out.f);
  std::fwrite(values.data(), sizeof(cplx), values.size(), out.f);
}

BinGrid read_grid_bin(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  char header[32];
  in.read(header, 32);
  if (std::memcmp(header, "JSFB", 4) != 0 || header[4] != 1)
    throw std::runtime_error("bad grid file header: " + p.string());
  std::uint32_t ns, ni;
  std::memcpy(&ns, header + 8, 4);
  std::memcpy(&ni, header + 12, 4);
  double ws_lo, wi_lo, dws, dwi;
  std::memcpy(&ws_lo, header + 16, 8);
  std::memcpy(&wi_lo, header + 24, 8);
  in.read(reinterpret_cast<char*>(&dws), 8);
  in.read(reinterpret_cast<char*>(&dwi), 8);
  BinGrid bg;
  bg.grid = SpectralGrid::uniform(ws_lo, ws_lo + dws * (ns - 1), ns,
                                  wi_lo, wi_lo + dwi * (ni - 1), ni);
  bg.values = CMat(ns, ni);
  in.read(reinterpret_cast<char*>(bg.values.data()),
          static_cast<std::streamsize>(sizeof(cplx) * bg.values.size()));
  if (!in) throw std::runtime_error("truncated grid file: " + p.string());
  return bg;
}

void write_marginal_csv(const std::filesystem::path& p, const Marginal& m) {
  File out(p, "w");
  std::fprintf(out.f, "lambda_nm,omega_rad_s,density\n");
  for (std::size_t k = 0; k < m.omega.size(); ++k) {
    std::fprintf(out.f, "%.12g,", units::lambda_from_omega(m.omega[k]) * 1e9);
    fmt_double(out.f, m.omega[k]);
    std::fputc(',', out.f);
    fmt_double(out.f, m.density[k]);
    std::fputc('\n', out.f);
  }
}

std::vector<std::filesystem::path> write_mode_dumps(const std::filesystem::path& dir,
                                                    const std::string& stem,
                                                    const SchmidtDecomposition& dec,
                                                    std::size_t max_modes) {
  std::vector<std::filesystem::path> written;
  const std::size_t n = std::min(max_modes, dec.truncation_rank);
  for (std::size_t k = 0; k < n; ++k) {
    for (auto axis : {0, 1}) {
      const auto& modes = axis == 0 ? dec.signal_modes : dec.idler_modes;
      const auto& omega = axis == 0 ? dec.omega_s : dec.omega_i;
      auto p = dir / (stem + (axis == 0 ? "_signal_mode_" : "_idler_mode_") +
                      std::to_string(k + 1) + ".csv");
      File out(p, "w");
      std::fprintf(out.f, "omega_rad_s,re,im\n");
      for (std::size_t x = 0; x < omega.size(); ++x) {
        fmt_double(out.f, omega[x]);
        std::fputc(',', out.f);
        fmt_double(out.f, modes(x, k).real());
        std::fputc(',', out.f);
        fmt_double(out.f, modes(x, k).imag());
        std::fputc('\n', out.f);
      }
      written.push_back(p);
    }
  }
  return written;
}

void write_schmidt_json(const std::filesystem::path& p, const SchmidtDecomposition& dec) {
  nlohmann::json j;
  j["r_k"] = dec.coefficients;
  j["K"] = dec.K;
  j["g2"] = 1.0 + dec.sum_r4();
  j["purity"] = dec.sum_r4();
  j["truncation_rank"] = dec.truncation_rank;
  std::ofstream(p) << j.dump(2) << "\n";
}

namespace {
nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}
}  // namespace

void write_metrics_json(const std::filesystem::path& p, const MetricsReport& r) {
  nlohmann::json j;
  j["gain_G"] = r.gain_G;
  j["P_s"] = r.P_s;
  j["P_i"] = r.P_i;
  j["P_c"] = r.P_c;
  j["xi_s"] = opt_json(r.xi_s);
  j["xi_i"] = opt_json(r.xi_i);
  j["h_s"] = opt_json(r.h_s);
  j["h_i"] = opt_json(r.h_i);
  j["T"] = opt_json(r.T);
  j["R"] = opt_json(r.R);
  j["purity_filtered"] = opt_json(r.purity_filtered);
  j["g2_bar_s"] = opt_json(r.g2_bar_s);
  j["g2_bar_i"] = opt_json(r.g2_bar_i);
  j["heralded_g2"] = opt_json(r.heralded_g2);
  auto warn = nlohmann::json::array();
  for (const auto& d : r.diagnostics) warn.push_back({{"code", d.code}, {"message", d.message}});
  j["warnings"] = warn;
  std::ofstream(p) << j.dump(2) << "\n";
}

void write_scan_csv(const std::filesystem::path& p, const std::vector<ScanRow>& rows) {
  File out(p, "w");
  std::fprintf(out.f, "dlambda_f_nm,g2s,g2i,xi_s,xi_i\n");
  auto cell = [&](const std::optional<double>& v) {
    if (v)
      fmt_double(out.f, *v);
    else
      std::fprintf(out.f, "nan");
  };
  for (const auto& r : rows) {
    std::fprintf(out.f, "%.12g,", r.dlambda_f_nm);
    cell(r.g2s);
    std::fputc(',', out.f);
    cell(r.g2i);
    std::fputc(',', out.f);
    cell(r.xi_s);
    std::fputc(',', out.f);
    cell(r.xi_i);
    std::fputc('\n', out.f);
  }
}

void write_mode_index_csv(const std::filesystem::path& p,
                          const std::vector<ModeIndexRow>& rows) {
  File out(p, "w");
  std::fprintf(out.f, "k,coefficient,G\n");
  for (const auto& r : rows) {
    std::fprintf(out.f, "%zu,", r.k);
    fmt_double(out.f, r.coefficient);
    std::fprintf(out.f, ",%.12g\n", r.G);
  }
}

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t checksum_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  char buf[65536];
  std::uint64_t h = 0xcbf29ce484222325ull;
  while (in) {
    in.read(buf, sizeof(buf));
    h = fnv1a(buf, static_cast<std::size_t>(in.gcount()), h);
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, v);
  return buf;
}

void write_manifest_json(const std::filesystem::path& p, const RunManifest& m) {
  nlohmann::json j;
  j["config_digest"] = m.config_digest;
  j["tool_version"] = m.tool_version;
  j["started_utc"] = m.started_utc;
  j["finished_utc"] = m.finished_utc;
  auto files = nlohmann::json::array();
  for (const auto& [name, sum] : m.files) files.push_back({{"file", name}, {"checksum", sum}});
  j["files"] = files;
  auto warn = nlohmann::json::array();
  for (const auto& d : m.warnings) warn.push_back({{"code", d.code}, {"message", d.message}});
  j["warnings"] = warn;
  std::ofstream(p) << j.dump(2) << "\n";
}

}  // namespace jsfkit::io
