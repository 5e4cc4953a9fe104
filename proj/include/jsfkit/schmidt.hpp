#pragma once

#include <optional>

#include "jsfkit/grid.hpp"

namespace jsfkit {

struct SchmidtDecomposition {
  // full descending coefficient sequence, sum of squares == 1
  std::vector<double> coefficients;
  // columns k = psi_k(omega_s) / phi_k(omega_i), orthonormal under the grid
  // quadrature, stored up to truncation_rank
  CMat signal_modes;
  CMat idler_modes;
  double K = 0;                    // 1 / sum r_k^4
  std::size_t truncation_rank = 0;
  std::vector<double> omega_s, omega_i;
  double d_omega_s = 0, d_omega_i = 0;

  double sum_r4() const;
};

// SVD of the quadrature-weighted JSF array. Modes are rescaled to be
// orthonormal under the continuum inner product and gauge-fixed so each
// signal mode's largest-magnitude sample is real positive. With no rank
// given, modes are retained until the cumulative sum r_k^2 reaches 1 - 1e-6.
SchmidtDecomposition schmidt_decompose(const JsfGrid& jsf,
                                       std::optional<std::size_t> rank = {});

// g2 = 1 + sum r_k^4 = 1 + 1/K
double g2_from_modes(const SchmidtDecomposition& dec);
// heralded-state purity without filtering: sum r_k^4 = 1/K
double heralded_purity_unfiltered(const SchmidtDecomposition& dec);

// sum of fourth powers of singular values of a weighted array, computed as
// ||W W^H||_F^2 without an SVD (Gram route; the smaller side is used).
double sum_r4_gram(const CMat& weighted);

// reconstruction sum_k r_k psi_k(w_s) phi_k(w_i) from the retained modes
CMat schmidt_reconstruct(const SchmidtDecomposition& dec);

}  // namespace jsfkit
