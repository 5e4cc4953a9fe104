#include <random>
#include <vector>

#include "doctest.h"
#include "jsfkit/kernels.hpp"

using namespace jsfkit;
using kern::cplx;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {nd(rng), nd(rng)};
  return v;
}

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

struct BackendGuard {
  ~BackendGuard() { kern::set_backend(kern::Backend::Auto); }
};

bool avx2_present() {
#ifdef __x86_64__
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace

TEST_CASE("scalar and simd kernel variants agree") {
  if (!avx2_present()) return;  // scalar-only machine: nothing to compare
  BackendGuard guard;
  // odd lengths exercise the vector tails
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{7}, std::size_t{255},
                        std::size_t{256}, std::size_t{1001}}) {
    auto a = random_vec(n, 1 + n), b = random_vec(n, 2 + n);
    const cplx alpha{0.37, -1.21};

    kern::set_backend(kern::Backend::Scalar);
    std::vector<cplx> mul_s(n), axpy_s = a;
    std::vector<double> abs2_s(n);
    kern::vmul(mul_s.data(), a.data(), b.data(), n);
    kern::vaxpy(axpy_s.data(), alpha, b.data(), n);
    kern::vabs2(abs2_s.data(), a.data(), n);
    const double sum_s = kern::sum_abs2(a.data(), n);
    const cplx dot_s = kern::dotc(a.data(), b.data(), n);

    kern::set_backend(kern::Backend::Avx2);
    std::vector<cplx> mul_v(n), axpy_v = a;
    std::vector<double> abs2_v(n);
    kern::vmul(mul_v.data(), a.data(), b.data(), n);
    kern::vaxpy(axpy_v.data(), alpha, b.data(), n);
    kern::vabs2(abs2_v.data(), a.data(), n);
    const double sum_v = kern::sum_abs2(a.data(), n);
    const cplx dot_v = kern::dotc(a.data(), b.data(), n);

    for (std::size_t i = 0; i < n; ++i) {
      CHECK(close(mul_s[i], mul_v[i], 1e-14));
      CHECK(close(axpy_s[i], axpy_v[i], 1e-14));
      CHECK(abs2_s[i] == doctest::Approx(abs2_v[i]).epsilon(1e-14));
    }
    CHECK(sum_s == doctest::Approx(sum_v).epsilon(1e-13));
    CHECK(close(dot_s, dot_v, 1e-13));
  }
}

TEST_CASE("matmul against a naive triple loop") {
  const std::size_t m = 13, k = 17, n = 11;
  auto A = random_vec(m * k, 5), B = random_vec(k * n, 6);
  std::vector<cplx> ref(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0;
      for (std::size_t kk = 0; kk < k; ++kk) s += A[i * k + kk] * B[kk * n + j];
      ref[i * n + j] = s;
    }
  std::vector<cplx> C(m * n);
  kern::matmul_nn(C.data(), A.data(), B.data(), m, k, n);
  for (std::size_t i = 0; i < m * n; ++i) CHECK(close(C[i], ref[i], 1e-12));

  // A * B^H with B stored [n x k]
  auto B2 = random_vec(n * k, 7);
  std::vector<cplx> ref2(m * n), C2(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0;
      for (std::size_t kk = 0; kk < k; ++kk) s += A[i * k + kk] * std::conj(B2[j * k + kk]);
      ref2[i * n + j] = s;
    }
  kern::matmul_nh(C2.data(), A.data(), B2.data(), m, k, n);
  for (std::size_t i = 0; i < m * n; ++i) CHECK(close(C2[i], ref2[i], 1e-12));
}

TEST_CASE("sum_abs2 matches naive accumulation and is repeatable") {
  auto v = random_vec(4097, 9);
  double naive = 0;
  for (auto z : v) naive += std::norm(z);
  const double s1 = kern::sum_abs2(v.data(), v.size());
  const double s2 = kern::sum_abs2(v.data(), v.size());
  CHECK(s1 == doctest::Approx(naive).epsilon(1e-12));
  CHECK(s1 == s2);  // bitwise repeatable
}

TEST_CASE("compensated accumulation keeps tiny terms") {
  std::vector<cplx> acc(1, cplx(1e16, 0)), comp(1, cplx(0, 0));
  const std::vector<cplx> tiny(1, cplx(1.0, 0));
  for (int i = 0; i < 1000; ++i) kern::vadd_compensated(acc.data(), comp.data(), tiny.data(), 1);
  // plain double addition would drop all 1000 increments (1e16 + 1 == 1e16)
  CHECK(acc[0].real() - comp[0].real() == doctest::Approx(1e16 + 1000.0).epsilon(1e-15));
}

TEST_CASE("backend selection reports and restores") {
  BackendGuard guard;
  kern::set_backend(kern::Backend::Scalar);
  CHECK(std::string(kern::backend_name()) == "scalar");
  kern::set_backend(kern::Backend::Auto);
  if (avx2_present()) CHECK(std::string(kern::backend_name()) == "avx2");
}
