#include "jsfkit/highgain.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace jsfkit {

namespace {

struct SeriesAcc {
  CMat sum, comp;
  explicit SeriesAcc(std::size_t r, std::size_t c) : sum(r, c), comp(r, c) {}
  void add(const CMat& term) {
    kern::vadd_compensated(sum.data(), comp.data(), term.data(), term.size());
  }
};

// odd series: sum_{n>=0} G^{2n+1}/(2n+1)! P^n T0, highest power <= order
CMat odd_series(const CMat& P, const CMat& T0, double G, int order, double* next_rel) {
  CMat term = T0;
  kern::vscale(term.data(), G, term.size());
  SeriesAcc acc(T0.rows, T0.cols);
  acc.add(term);
  int n = 0;
  while (2 * (n + 1) + 1 <= order) {
    CMat next = matmul(P, term);
    kern::vscale(next.data(), G * G / ((2.0 * n + 2.0) * (2.0 * n + 3.0)), next.size());
    term = std::move(next);
    acc.add(term);
    ++n;
  }
  if (next_rel) {
    CMat next = matmul(P, term);
    kern::vscale(next.data(), G * G / ((2.0 * n + 2.0) * (2.0 * n + 3.0)), next.size());
    const double num = std::sqrt(next.frobenius_sq());
    const double den = std::sqrt(acc.sum.frobenius_sq());
    *next_rel = den > 0 ? num / den : 0.0;
  }
  return std::move(acc.sum);
}

// even series: sum_{n>=1} G^{2n}/(2n)! P^n, highest power <= order
CMat even_series(const CMat& P, double G, int order) {
  CMat term = P;
  kern::vscale(term.data(), G * G / 2.0, term.size());
  SeriesAcc acc(P.rows, P.cols);
  acc.add(term);
  int n = 1;
  while (2 * (n + 1) <= order) {
    CMat next = matmul(P, term);
    kern::vscale(next.data(), G * G / ((2.0 * n + 1.0) * (2.0 * n + 2.0)), next.size());
    term = std::move(next);
    acc.add(term);
    ++n;
  }
  return std::move(acc.sum);
}

}  // namespace

GreenFunctions green_series(const JsfGrid& jsf, double G, int order) {
  if (!jsf.normalized) throw std::invalid_argument("green_series: JSF must be normalized");
  if (order < 1) throw std::invalid_argument("green_series: order must be >= 1");
  if (G < 0) throw std::invalid_argument("green_series: G must be >= 0");

  GreenFunctions gf;
  gf.gain_G = G;
  gf.truncation_order = order;
  gf.grid = jsf.grid;

  const CMat W = jsf.weighted();
  const std::size_t ns = W.rows, ni = W.cols;

  if (G == 0.0) {
    gf.h2s = CMat(ns, ni);
    gf.h2i = CMat(ni, ns);
    gf.h1s_smooth = CMat(ns, ns);
    gf.h1i_smooth = CMat(ni, ni);
    return gf;
  }

  // signal side: P = W W^H
  const CMat P = matmul_adjB(W, W);
  double next_rel = 0.0;
  gf.h2s = odd_series(P, W, G, order, &next_rel);
  gf.h1s_smooth = even_series(P, G, order);

  // idler side: P_i = W^T conj(W) = conj(W^H W)
  const CMat Wt = W.transpose();
  const CMat Pi_ = matmul_adjB(Wt, Wt);
  gf.h2i = odd_series(Pi_, Wt, G, order, nullptr);
  gf.h1i_smooth = even_series(Pi_, G, order);

  if (next_rel > 1e-9)
    gf.diagnostics.push_back(
        {"series-convergence",
         "next omitted term is " + std::to_string(next_rel) +
             " of the partial sum; raise the truncation order"});
  return gf;
}

GreenFunctions green_closed_form(const SchmidtDecomposition& dec, double G) {
  const std::size_t ns = dec.signal_modes.rows;
  const std::size_t ni = dec.idler_modes.rows;
  const std::size_t R = dec.truncation_rank;
  GreenFunctions gf;
  gf.gain_G = G;
  gf.truncation_order = -1;  // closed form
  gf.grid.omega_s = dec.omega_s;
  gf.grid.omega_i = dec.omega_i;
  gf.grid.d_omega_s = dec.d_omega_s;
  gf.grid.d_omega_i = dec.d_omega_i;

  const double wq = std::sqrt(dec.d_omega_s * dec.d_omega_i);

  // h2s = sum_k sinh(G r_k) psi_k phi_k sqrt(dws dwi)
  CMat A(ns, R);
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t k = 0; k < R; ++k)
      A(s, k) = dec.signal_modes(s, k) * (std::sinh(G * dec.coefficients[k]) * wq);
  CMat Bt = dec.idler_modes.transpose();
  gf.h2s = CMat(ns, ni);
  kern::matmul_nn(gf.h2s.data(), A.data(), Bt.data(), ns, R, ni);
  gf.h2i = gf.h2s.transpose();

  // h1s_smooth = dws sum_k (cosh(G r_k)-1) psi_k psi_k^H (idler analogue with phi)
  auto h1_from = [&](const CMat& modes, double dw) {
    CMat C(modes.rows, R);
    for (std::size_t x = 0; x < modes.rows; ++x)
      for (std::size_t k = 0; k < R; ++k)
        C(x, k) = modes(x, k) * std::sqrt((std::cosh(G * dec.coefficients[k]) - 1.0) * dw);
    return matmul_adjB(C, C);
  };
  gf.h1s_smooth = h1_from(dec.signal_modes, dec.d_omega_s);
  gf.h1i_smooth = h1_from(dec.idler_modes, dec.d_omega_i);
  return gf;
}

std::vector<double> highgain_mode_indices(const GreenFunctions& gf, const FilterSpec& filt) {
  const auto& g = gf.grid;
  std::vector<std::size_t> rows, cols;
  for (std::size_t s = 0; s < g.n_s(); ++s)
    if (filt.f_s(g.omega_s[s]) > 0) rows.push_back(s);
  for (std::size_t i = 0; i < g.n_i(); ++i)
    if (filt.f_i(g.omega_i[i]) > 0) cols.push_back(i);
  if (rows.empty() || cols.empty())
    throw std::domain_error("highgain_mode_indices: filter transmits nothing on the grid");

  Eigen::MatrixXcd sub(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          gf.h2s(rows[a], cols[b]) * filt.f_s(g.omega_s[rows[a]]) *
          filt.f_i(g.omega_i[cols[b]]);
  const double nrm = sub.norm();
  if (!(nrm > 0)) throw std::domain_error("highgain_mode_indices: filtered kernel is zero");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(sub);
  std::vector<double> out(static_cast<std::size_t>(svd.singularValues().size()));
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = svd.singularValues()[static_cast<Eigen::Index>(k)] / nrm;
  return out;
}

double commutator_residual(const GreenFunctions& gf) {
  const CMat& S = gf.h1s_smooth;
  CMat res = matmul_adjB(S, S);  // S S^H
  const CMat h2h2 = matmul_adjB(gf.h2s, gf.h2s);
  for (std::size_t i = 0; i < res.rows; ++i)
    for (std::size_t j = 0; j < res.cols; ++j) {
      res(i, j) += S(i, j) + std::conj(S(j, i)) - h2h2(i, j);
    }
  return std::sqrt(res.frobenius_sq());
}

}  // namespace jsfkit
