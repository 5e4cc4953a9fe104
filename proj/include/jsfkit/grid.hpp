#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "jsfkit/kernels.hpp"

namespace jsfkit {

using cplx = std::complex<double>;

// Row-major complex matrix; the workhorse container for grids and kernels.
struct CMat {
  std::size_t rows = 0, cols = 0;
  std::vector<cplx> a;

  CMat() = default;
  CMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  cplx& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  cplx* row(std::size_t i) { return a.data() + i * cols; }
  const cplx* row(std::size_t i) const { return a.data() + i * cols; }
  cplx* data() { return a.data(); }
  const cplx* data() const { return a.data(); }
  std::size_t size() const { return a.size(); }

  double frobenius_sq() const { return kern::sum_abs2(a.data(), a.size()); }
  CMat adjoint() const;
  CMat transpose() const;
  CMat conj() const;
};

// C = A * B
CMat matmul(const CMat& A, const CMat& B);
// C = A * B^H
CMat matmul_adjB(const CMat& A, const CMat& B);

struct Diagnostic {
  std::string code;
  std::string message;
};

// Uniform rectangular sampling of the (omega_s, omega_i) plane.
struct SpectralGrid {
  std::vector<double> omega_s, omega_i;  // strictly increasing, uniform
  double d_omega_s = 0, d_omega_i = 0;

  std::size_t n_s() const { return omega_s.size(); }
  std::size_t n_i() const { return omega_i.size(); }
  double cell() const { return d_omega_s * d_omega_i; }

  static SpectralGrid uniform(double ws_lo, double ws_hi, std::size_t ns,
                              double wi_lo, double wi_hi, std::size_t ni);
  // both axes spanning one wavelength window [lam_lo, lam_hi]
  static SpectralGrid wavelength_window(double lam_lo_m, double lam_hi_m, std::size_t n);
  // detuning window +/- span around a center frequency, both axes
  static SpectralGrid detuning_window(double omega_center, double span, std::size_t n);
  void validate() const;
};

struct JsfGrid {
  SpectralGrid grid;
  CMat values;  // F(omega_s, omega_i), indexed (s, i)
  bool normalized = false;
  std::vector<Diagnostic> diagnostics;

  // quadrature-weighted array W = F sqrt(dws dwi); Frobenius norm 1 when normalized
  CMat weighted() const;
  double total_mass() const;  // sum |F|^2 dws dwi
  void normalize();           // rescale so total_mass() == 1
};

struct Marginal {
  std::vector<double> omega;    // rad/s
  std::vector<double> density;  // 1/(rad/s), integrates to 1
};

}  // namespace jsfkit
