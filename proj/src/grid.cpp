#include "jsfkit/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "jsfkit/units.hpp"

namespace jsfkit {

CMat CMat::adjoint() const {
  CMat r(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMat CMat::transpose() const {
  CMat r(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMat CMat::conj() const {
  CMat r(rows, cols);
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = std::conj(a[i]);
  return r;
}

CMat matmul(const CMat& A, const CMat& B) {
  if (A.cols != B.rows) throw std::invalid_argument("matmul: shape mismatch");
  CMat C(A.rows, B.cols);
  kern::matmul_nn(C.data(), A.data(), B.data(), A.rows, A.cols, B.cols);
  return C;
}

CMat matmul_adjB(const CMat& A, const CMat& B) {
  if (A.cols != B.cols) throw std::invalid_argument("matmul_adjB: shape mismatch");
  CMat C(A.rows, B.rows);
  kern::matmul_nh(C.data(), A.data(), B.data(), A.rows, A.cols, B.rows);
  return C;
}

SpectralGrid SpectralGrid::uniform(double ws_lo, double ws_hi, std::size_t ns,
                                   double wi_lo, double wi_hi, std::size_t ni) {
  if (ns < 16 || ni < 16) throw std::invalid_argument("grid: need at least 16 samples per axis");
  if (!(ws_hi > ws_lo) || !(wi_hi > wi_lo))
    throw std::invalid_argument("grid: axis bounds must be increasing");
  SpectralGrid g;
  g.omega_s.resize(ns);
  g.omega_i.resize(ni);
  g.d_omega_s = (ws_hi - ws_lo) / static_cast<double>(ns - 1);
  g.d_omega_i = (wi_hi - wi_lo) / static_cast<double>(ni - 1);
  for (std::size_t k = 0; k < ns; ++k) g.omega_s[k] = ws_lo + g.d_omega_s * static_cast<double>(k);
  for (std::size_t k = 0; k < ni; ++k) g.omega_i[k] = wi_lo + g.d_omega_i * static_cast<double>(k);
  return g;
}

SpectralGrid SpectralGrid::wavelength_window(double lam_lo_m, double lam_hi_m, std::size_t n) {
  const double w_lo = units::omega_from_lambda(lam_hi_m);
  const double w_hi = units::omega_from_lambda(lam_lo_m);
  return uniform(w_lo, w_hi, n, w_lo, w_hi, n);
}

SpectralGrid SpectralGrid::detuning_window(double omega_center, double span, std::size_t n) {
  return uniform(omega_center - span, omega_center + span, n,
                 omega_center - span, omega_center + span, n);
}

void SpectralGrid::validate() const {
  if (n_s() < 16 || n_i() < 16) throw std::invalid_argument("grid: too few samples");
  auto check = [](const std::vector<double>& ax, double d) {
    for (std::size_t k = 1; k < ax.size(); ++k) {
      double step = ax[k] - ax[k - 1];
      if (!(step > 0) || std::abs(step - d) > 1e-6 * d)
        throw std::invalid_argument("grid: axis not uniform and increasing");
    }
  };
  check(omega_s, d_omega_s);
  check(omega_i, d_omega_i);
}

CMat JsfGrid::weighted() const {
  CMat w = values;
  kern::vscale(w.data(), std::sqrt(grid.cell()), w.size());
  return w;
}

double JsfGrid::total_mass() const {
  return kern::sum_abs2(values.data(), values.size()) * grid.cell();
}

void JsfGrid::normalize() {
  double m = total_mass();
  if (!(m > 0)) throw std::domain_error("normalize: zero-mass grid");
  kern::vscale(values.data(), 1.0 / std::sqrt(m), values.size());
  normalized = true;
}

}  // namespace jsfkit
