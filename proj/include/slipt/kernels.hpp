#pragma once

// Vector kernels behind the Monte Carlo reductions. Each operation has a
// portable scalar reference and an AVX2 variant; the variant is chosen
// once at first use from the CPU features, overridable through
// SLIPT_SIMD=scalar|avx2|auto. Both variants use the same 4-lane blocked
// summation order, so results are bit-identical across variants.

#include <cstddef>
#include <span>
#include <string_view>

namespace slipt::kernels {

enum class Isa { scalar, avx2 };

/// Sum and sum of squared deviations from the mean.
struct Moments {
  double sum = 0.0;
  double sum_sq_dev = 0.0;
  std::size_t count = 0;
};

struct Table {
  void (*multiply)(std::span<const double>, std::span<const double>, std::span<double>);
  void (*scale)(std::span<const double>, double, std::span<double>);
  std::size_t (*count_below)(std::span<const double>, double);
  double (*sum)(std::span<const double>);
  double (*sum_sq_dev)(std::span<const double>, double);
};

bool avx2_supported();
/// Throws DomainError for an unsupported or unknown request.
const Table& table(Isa isa);
/// Variant selected for this process.
Isa active_isa();
std::string_view isa_name(Isa isa);

/// out[i] = a[i] * b[i]; all three spans of equal length (out may alias a or b).
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
/// out[i] = k * a[i].
void scale(std::span<const double> a, double k, std::span<double> out);
/// Number of elements strictly below the threshold.
std::size_t count_below(std::span<const double> a, double threshold);
double sum(std::span<const double> a);
/// Two-pass: mean first, then squared deviations.
Moments moments(std::span<const double> a);

namespace detail {
extern const Table scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const Table avx2_table;
#endif
}  // namespace detail

}  // namespace slipt::kernels
