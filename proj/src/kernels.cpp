#include "robreg/kernels.hpp"

#include <cmath>
#include <cstdlib>

namespace robreg::kernels {

// Defined in kernels_avx2.cpp; nullptr when the CPU or build lacks AVX2.
const Ops* detail_avx2_ops();

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double sum_sq_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double sum_abs_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::abs(x[i]);
  return acc;
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

void soft_threshold_scalar(const double* x, double tau, double* out,
                           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(x[i]) - tau;
    out[i] = a > 0.0 ? std::copysign(a, x[i]) : 0.0;
  }
}

constexpr Ops kScalarOps = {
    dot_scalar,     axpy_scalar,           sum_sq_scalar,
    sum_abs_scalar, max_abs_scalar,        soft_threshold_scalar,
    "scalar",
};

const Ops* pick_best() {
  if (const Ops* avx2 = detail_avx2_ops()) return avx2;
  return &kScalarOps;
}

}  // namespace

const Ops& active() {
  static const Ops* chosen = pick_best();
  return *chosen;
}

std::vector<const Ops*> available() {
  std::vector<const Ops*> out;
  if (const Ops* avx2 = detail_avx2_ops()) out.push_back(avx2);
  out.push_back(&kScalarOps);
  return out;
}

const Ops* lookup(std::string_view name) {
  if (name == "scalar") return &kScalarOps;
  if (name == "avx2") return detail_avx2_ops();
  return nullptr;
}

}  // namespace robreg::kernels
