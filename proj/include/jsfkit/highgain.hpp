#pragma once

#include "jsfkit/filters.hpp"
#include "jsfkit/jsf.hpp"
#include "jsfkit/schmidt.hpp"

namespace jsfkit {

// Input-output kernels of the parametric amplifier at gain G, stored as
// quadrature-weighted arrays (composition = plain matrix product). The
// delta part of h1 is kept symbolic: h1 = identity + h1*_smooth.
struct GreenFunctions {
  double gain_G = 0;
  int truncation_order = 0;
  CMat h2s;         // (n_s x n_i)
  CMat h2i;         // (n_i x n_s)
  CMat h1s_smooth;  // (n_s x n_s)
  CMat h1i_smooth;  // (n_i x n_i)
  bool identity_in_h1 = true;
  SpectralGrid grid;
  std::vector<Diagnostic> diagnostics;
};

// Truncated series evaluated by per-term recurrence
//   h2s = sum_{n>=0} G^{2n+1}/(2n+1)! (W W^H)^n W,
//   h1s_smooth = sum_{n>=1} G^{2n}/(2n)! (W W^H)^n,
// idler side with (W^T conj(W))^n, Kahan-compensated accumulation. `order` is
// the highest power of G retained; a convergence diagnostic is attached when
// the next omitted term exceeds 1e-9 of the partial sum.
GreenFunctions green_series(const JsfGrid& jsf, double G, int order = 40);

// Closed form through the Schmidt modes: sinh(G r_k) for h2, cosh(G r_k) - 1
// for the smooth h1 parts. Serves as the independent oracle for the series.
GreenFunctions green_closed_form(const SchmidtDecomposition& dec, double G);

// Normalized singular values (sum of squares = 1) of the filtered h2s.
std::vector<double> highgain_mode_indices(const GreenFunctions& gf, const FilterSpec& filt);

// Frobenius norm of h1s h1s^H - h2s h2s^H - identity, with the delta part
// expanded: S + S^H + S S^H - h2s h2s^H for S = h1s_smooth.
double commutator_residual(const GreenFunctions& gf);

}  // namespace jsfkit
