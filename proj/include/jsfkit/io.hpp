#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "jsfkit/grid.hpp"
#include "jsfkit/highgain.hpp"
#include "jsfkit/jsf.hpp"
#include "jsfkit/metrics.hpp"
#include "jsfkit/schmidt.hpp"

namespace jsfkit::io {

inline constexpr const char* kToolVersion = "0.1.0";

// Grid CSV: header lambda_s_nm,lambda_i_nm,re,im,abs2; row-major over (s, i).
void write_grid_csv(const std::filesystem::path& p, const SpectralGrid& g, const CMat& values);

// Binary grid, little-endian:
//   bytes 0..7   magic "JSFB" , u8 version = 1, 3 reserved bytes
//   bytes 8..15  u32 n_s, u32 n_i
//   bytes 16..31 f64 omega_s_lo, f64 omega_i_lo        (32-byte header)
//   bytes 32..47 f64 d_omega_s, f64 d_omega_i
//   then n_s * n_i cells of (f64 re, f64 im), row-major
void write_grid_bin(const std::filesystem::path& p, const SpectralGrid& g, const CMat& values);
struct BinGrid {
  SpectralGrid grid;
  CMat values;
};
BinGrid read_grid_bin(const std::filesystem::path& p);

void write_marginal_csv(const std::filesystem::path& p, const Marginal& m);

// one file per retained mode (up to max_modes): omega_rad_s,re,im
std::vector<std::filesystem::path> write_mode_dumps(const std::filesystem::path& dir,
                                                    const std::string& stem,
                                                    const SchmidtDecomposition& dec,
                                                    std::size_t max_modes);

void write_schmidt_json(const std::filesystem::path& p, const SchmidtDecomposition& dec);
void write_metrics_json(const std::filesystem::path& p, const MetricsReport& r);
void write_scan_csv(const std::filesystem::path& p, const std::vector<ScanRow>& rows);

struct ModeIndexRow {
  std::size_t k;
  double coefficient;
  double G;
};
void write_mode_index_csv(const std::filesystem::path& p, const std::vector<ModeIndexRow>& rows);

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 0xcbf29ce484222325ull);
std::uint64_t checksum_file(const std::filesystem::path& p);
std::string hex64(std::uint64_t v);

struct RunManifest {
  std::string config_digest;
  std::string tool_version = kToolVersion;
  std::string started_utc, finished_utc;
  std::vector<std::pair<std::string, std::string>> files;  // name, checksum
  std::vector<Diagnostic> warnings;
};
void write_manifest_json(const std::filesystem::path& p, const RunManifest& m);

}  // namespace jsfkit::io
