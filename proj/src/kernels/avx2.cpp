// Built with -mavx2 (and without -mfma, so products are never fused).
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cassert>

#include "slipt/kernels.hpp"

namespace slipt::kernels::detail {
namespace {

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4) {
    const __m256d x = _mm256_loadu_pd(a.data() + i);
    const __m256d y = _mm256_loadu_pd(b.data() + i);
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(x, y));
  }
  for (; i < a.size(); ++i) out[i] = a[i] * b[i];
}

void scale(std::span<const double> a, double k, std::span<double> out) {
  assert(a.size() == out.size());
  const __m256d kv = _mm256_set1_pd(k);
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4)
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(kv, _mm256_loadu_pd(a.data() + i)));
  for (; i < a.size(); ++i) out[i] = k * a[i];
}

std::size_t count_below(std::span<const double> a, double threshold) {
  const __m256d t = _mm256_set1_pd(threshold);
  std::size_t n = 0;
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4) {
    const __m256d lt = _mm256_cmp_pd(_mm256_loadu_pd(a.data() + i), t, _CMP_LT_OQ);
    n += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(lt))));
  }
  for (; i < a.size(); ++i) n += a[i] < threshold ? 1 : 0;
  return n;
}

double horizontal(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sum(std::span<const double> a) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a.data() + i));
  double total = horizontal(acc);
  for (; i < a.size(); ++i) total += a[i];
  return total;
}

double sum_sq_dev(std::span<const double> a, double mean) {
  const __m256d m = _mm256_set1_pd(mean);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), m);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double total = horizontal(acc);
  for (; i < a.size(); ++i) {
    const double d = a[i] - mean;
    total += d * d;
  }
  return total;
}

}  // namespace

const Table avx2_table{multiply, scale, count_below, sum, sum_sq_dev};

}  // namespace slipt::kernels::detail

#endif
