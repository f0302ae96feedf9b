#include <cassert>

#include "slipt/kernels.hpp"

namespace slipt::kernels::detail {
namespace {

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

void scale(std::span<const double> a, double k, std::span<double> out) {
  assert(a.size() == out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = k * a[i];
}

std::size_t count_below(std::span<const double> a, double threshold) {
  std::size_t n = 0;
  for (double x : a) n += x < threshold ? 1 : 0;
  return n;
}

double sum(std::span<const double> a) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4)
    for (int j = 0; j < 4; ++j) lane[j] += a[i + j];
  double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < a.size(); ++i) total += a[i];
  return total;
}

double sum_sq_dev(std::span<const double> a, double mean) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4) {
    for (int j = 0; j < 4; ++j) {
      const double d = a[i + j] - mean;
      lane[j] += d * d;
    }
  }
  double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < a.size(); ++i) {
    const double d = a[i] - mean;
    total += d * d;
  }
  return total;
}

}  // namespace

const Table scalar_table{multiply, scale, count_below, sum, sum_sq_dev};

}  // namespace slipt::kernels::detail
