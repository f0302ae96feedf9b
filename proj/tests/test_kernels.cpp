#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "slipt/kernels.hpp"

using namespace slipt::kernels;

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> dist(0.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Reference semantics with the four-lane accumulation order the kernels promise.
double blocked_sum(const std::vector<double>& a) {
  double lane[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4)
    for (int l = 0; l < 4; ++l) lane[l] += a[i + l];
  double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < a.size(); ++i) total += a[i];
  return total;
}

}  // namespace

TEST_CASE("scalar kernels follow the reference semantics") {
  const Table& s = table(Isa::scalar);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
    CAPTURE(n);
    const auto a = random_values(n, 1 + n);
    const auto b = random_values(n, 2 + n);
    std::vector<double> out(n);
    s.multiply(a, b, out);
    for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == a[i] * b[i]);
    s.scale(a, 2.5, out);
    for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == a[i] * 2.5);
    std::size_t below = 0;
    for (double x : a) below += x < 1.0;
    CHECK(s.count_below(a, 1.0) == below);
    CHECK(s.sum(a) == blocked_sum(a));
  }
}

TEST_CASE("AVX2 kernels are bit-identical to the scalar kernels") {
  if (!avx2_supported()) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  const Table& s = table(Isa::scalar);
  const Table& v = table(Isa::avx2);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 8u, 13u, 1024u, 65537u}) {
    CAPTURE(n);
    const auto a = random_values(n, 11 * n + 1);
    const auto b = random_values(n, 13 * n + 2);
    std::vector<double> o1(n), o2(n);
    s.multiply(a, b, o1);
    v.multiply(a, b, o2);
    CHECK(same_bits(o1, o2));
    s.scale(a, 0.37, o1);
    v.scale(a, 0.37, o2);
    CHECK(same_bits(o1, o2));
    for (double t : {0.0, 0.5, 1.0, 7.0, double(INFINITY)}) CHECK(s.count_below(a, t) == v.count_below(a, t));
    CHECK(std::bit_cast<std::uint64_t>(s.sum(a)) == std::bit_cast<std::uint64_t>(v.sum(a)));
    const double mean = n ? s.sum(a) / static_cast<double>(n) : 0.0;
    CHECK(std::bit_cast<std::uint64_t>(s.sum_sq_dev(a, mean)) == std::bit_cast<std::uint64_t>(v.sum_sq_dev(a, mean)));
  }
}

TEST_CASE("in-place scaling is allowed") {
  auto a = random_values(37, 5);
  const auto copy = a;
  scale(a, 3.0, a);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == copy[i] * 3.0);
}

TEST_CASE("moments use a two-pass variance") {
  std::vector<double> a(1000);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = 1e9 + static_cast<double>(i % 2);
  const auto m = moments(a);
  CHECK(m.count == 1000);
  CHECK(m.sum / 1000.0 == doctest::Approx(1e9 + 0.5));
  CHECK(m.sum_sq_dev == doctest::Approx(250.0).epsilon(1e-9));
  CHECK(moments({}).count == 0);
}

TEST_CASE("variant names") {
  CHECK(isa_name(Isa::scalar) == "scalar");
  CHECK(isa_name(Isa::avx2) == "avx2");
  CHECK((active_isa() == Isa::scalar || avx2_supported()));
}
