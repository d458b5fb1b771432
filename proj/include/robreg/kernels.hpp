#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

// Dense double-precision primitives behind the coordinate-descent and
// soft-thresholding inner loops. A scalar reference implementation is always
// available; on x86-64 an AVX2+FMA variant is selected at runtime when the
// CPU supports it. All variants are pure functions of their inputs, so a
// given binary on a given machine is deterministic regardless of thread
// count.
namespace robreg::kernels {

struct Ops {
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // sum_i x[i]^2
  double (*sum_sq)(const double* x, std::size_t n);
  // sum_i |x[i]|
  double (*sum_abs)(const double* x, std::size_t n);
  // max_i |x[i]|, 0 for n == 0
  double (*max_abs)(const double* x, std::size_t n);
  // out[i] = sign(x[i]) * max(|x[i]| - tau, 0); out may alias x
  void (*soft_threshold)(const double* x, double tau, double* out,
                         std::size_t n);
  const char* name;
};

// Implementation chosen at first use (best available for this CPU).
const Ops& active();

// All implementations usable on this CPU, best first.
std::vector<const Ops*> available();

// Named lookup ("scalar", "avx2"); nullptr if unknown or unusable here.
const Ops* lookup(std::string_view name);

inline double dot(const double* x, const double* y, std::size_t n) {
  return active().dot(x, y, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
  active().axpy(a, x, y, n);
}
inline double sum_sq(const double* x, std::size_t n) {
  return active().sum_sq(x, n);
}
inline double sum_abs(const double* x, std::size_t n) {
  return active().sum_abs(x, n);
}
inline double max_abs(const double* x, std::size_t n) {
  return active().max_abs(x, n);
}
inline void soft_threshold_vec(const double* x, double tau, double* out,
                               std::size_t n) {
  active().soft_threshold(x, tau, out, n);
}

}  // namespace robreg::kernels
