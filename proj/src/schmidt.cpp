#include "jsfkit/schmidt.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace jsfkit {

namespace {
using EMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using EMapRM =
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
}  // namespace

double SchmidtDecomposition::sum_r4() const {
  double s = 0.0;
  for (double r : coefficients) s += r * r * r * r;
  return s;
}

SchmidtDecomposition schmidt_decompose(const JsfGrid& jsf, std::optional<std::size_t> rank) {
  if (!jsf.normalized) throw std::invalid_argument("schmidt: JSF must be normalized");
  CMat w = jsf.weighted();
  if (!(kern::sum_abs2(w.data(), w.size()) > 0))
    throw std::domain_error("schmidt: degenerate all-zero grid");

  EMapRM map(w.data(), static_cast<Eigen::Index>(w.rows), static_cast<Eigen::Index>(w.cols));
  Eigen::BDCSVD<EMat> svd(map, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const auto& U = svd.matrixU();
  const auto& V = svd.matrixV();

  SchmidtDecomposition dec;
  dec.omega_s = jsf.grid.omega_s;
  dec.omega_i = jsf.grid.omega_i;
  dec.d_omega_s = jsf.grid.d_omega_s;
  dec.d_omega_i = jsf.grid.d_omega_i;

  const std::size_t nsv = static_cast<std::size_t>(sv.size());
  double sum2 = 0.0;
  for (std::size_t k = 0; k < nsv; ++k) sum2 += sv[static_cast<Eigen::Index>(k)] *
                                                sv[static_cast<Eigen::Index>(k)];
  const double scale = 1.0 / std::sqrt(sum2);
  dec.coefficients.resize(nsv);
  for (std::size_t k = 0; k < nsv; ++k)
    dec.coefficients[k] = sv[static_cast<Eigen::Index>(k)] * scale;

  dec.K = 1.0 / dec.sum_r4();

  std::size_t keep;
  if (rank) {
    keep = std::min(*rank, nsv);
  } else {
    double acc = 0.0;
    keep = nsv;
    for (std::size_t k = 0; k < nsv; ++k) {
      acc += dec.coefficients[k] * dec.coefficients[k];
      if (acc >= 1.0 - 1e-6) {
        keep = k + 1;
        break;
      }
    }
  }
  dec.truncation_rank = keep;

  const double inv_ws = 1.0 / std::sqrt(jsf.grid.d_omega_s);
  const double inv_wi = 1.0 / std::sqrt(jsf.grid.d_omega_i);
  dec.signal_modes = CMat(w.rows, keep);
  dec.idler_modes = CMat(w.cols, keep);
  for (std::size_t k = 0; k < keep; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    // phase gauge: largest-|.| signal sample real positive
    Eigen::Index peak = 0;
    double best = -1.0;
    for (Eigen::Index s = 0; s < U.rows(); ++s) {
      double v = std::abs(U(s, kk));
      if (v > best) {
        best = v;
        peak = s;
      }
    }
    cplx g = U(peak, kk);
    cplx rot = std::abs(g) > 0 ? std::conj(g) / std::abs(g) : cplx(1, 0);
    for (Eigen::Index s = 0; s < U.rows(); ++s)
      dec.signal_modes(static_cast<std::size_t>(s), k) = U(s, kk) * rot * inv_ws;
    // phi_k = conj(V column) so that F = sum r_k psi_k phi_k
    for (Eigen::Index i = 0; i < V.rows(); ++i)
      dec.idler_modes(static_cast<std::size_t>(i), k) = std::conj(V(i, kk) * rot) * inv_wi;
  }
  return dec;
}

double g2_from_modes(const SchmidtDecomposition& dec) { return 1.0 + dec.sum_r4(); }

double heralded_purity_unfiltered(const SchmidtDecomposition& dec) { return dec.sum_r4(); }

double sum_r4_gram(const CMat& weighted) {
  // ||W W^H||_F^2 equals the sum of fourth powers of W's singular values
  const CMat* w = &weighted;
  CMat t;
  if (weighted.rows > weighted.cols) {
    t = weighted.adjoint();
    w = &t;
  }
  CMat gram = matmul_adjB(*w, *w);
  return gram.frobenius_sq();
}

CMat schmidt_reconstruct(const SchmidtDecomposition& dec) {
  const std::size_t ns = dec.signal_modes.rows;
  const std::size_t ni = dec.idler_modes.rows;
  const std::size_t R = dec.truncation_rank;
  CMat scaled(ns, R);
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t k = 0; k < R; ++k)
      scaled(s, k) = dec.signal_modes(s, k) * dec.coefficients[k];
  CMat rec(ns, ni);
  // rec = scaled * idler_modes^T
  CMat idlerT = dec.idler_modes.transpose();
  kern::matmul_nn(rec.data(), scaled.data(), idlerT.data(), ns, R, ni);
  return rec;
}

}  // namespace jsfkit
