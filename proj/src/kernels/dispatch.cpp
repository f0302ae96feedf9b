#include <cstdlib>
#include <string>

#include "slipt/errors.hpp"
#include "slipt/kernels.hpp"

namespace slipt::kernels {
namespace {

Isa select() {
  const char* env = std::getenv("SLIPT_SIMD");
  const std::string request = env ? env : "auto";
  if (request == "scalar") return Isa::scalar;
  if (request == "avx2") {
    if (!avx2_supported()) throw DomainError("SLIPT_SIMD=avx2 requested but the CPU lacks AVX2");
    return Isa::avx2;
  }
  if (request != "auto" && !request.empty())
    throw DomainError("SLIPT_SIMD must be scalar, avx2 or auto (got '" + request + "')");
  return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

const Table& active() {
  static const Table& t = table(active_isa());
  return t;
}

}  // namespace

bool avx2_supported() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Table& table(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return detail::scalar_table;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      if (avx2_supported()) return detail::avx2_table;
#endif
      throw DomainError("AVX2 kernels are not available on this CPU");
  }
  throw DomainError("unknown kernel variant");
}

Isa active_isa() {
  static const Isa isa = select();
  return isa;
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  active().multiply(a, b, out);
}

void scale(std::span<const double> a, double k, std::span<double> out) { active().scale(a, k, out); }

std::size_t count_below(std::span<const double> a, double threshold) {
  return active().count_below(a, threshold);
}

double sum(std::span<const double> a) { return active().sum(a); }

Moments moments(std::span<const double> a) {
  Moments m;
  m.count = a.size();
  if (a.empty()) return m;
  m.sum = active().sum(a);
  m.sum_sq_dev = active().sum_sq_dev(a, m.sum / static_cast<double>(a.size()));
  return m;
}

}  // namespace slipt::kernels
