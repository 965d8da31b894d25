#include "stclust/simd.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace stclust::simd {

namespace scalar {

void weighted_average(double* dst, const double* a, const double* b, std::size_t n, double wa,
                      double wb) {
  const double total = wa + wb;
  for (std::size_t k = 0; k < n; ++k) dst[k] = (wa * a[k] + wb * b[k]) / total;
}

ArgMax argmax(const double* row, std::size_t n) {
  ArgMax best{n, -std::numeric_limits<double>::infinity()};
  for (std::size_t k = 0; k < n; ++k) {
    if (row[k] > best.value || best.index == n) best = {k, row[k]};
  }
  return best;
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < n; ++k) total += static_cast<std::uint64_t>(std::popcount(a[k] & b[k]));
  return total;
}

}  // namespace scalar

#ifndef STCLUST_HAVE_AVX2
namespace avx2 {
void weighted_average(double*, const double*, const double*, std::size_t, double, double) {
  throw std::logic_error("AVX2 kernels not compiled in");
}
ArgMax argmax(const double*, std::size_t) { throw std::logic_error("AVX2 kernels not compiled in"); }
std::uint64_t and_popcount(const std::uint64_t*, const std::uint64_t*, std::size_t) {
  throw std::logic_error("AVX2 kernels not compiled in");
}
}  // namespace avx2
#endif

namespace {

Isa detect() {
  if (const char* env = std::getenv("STCLUST_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Isa::kScalar;
    if (v == "avx2" && isa_supported(Isa::kAvx2)) return Isa::kAvx2;
  }
  return isa_supported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(STCLUST_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_supported(isa))
    throw std::invalid_argument("SIMD variant not supported: " + std::string(isa_name(isa)));
  current().store(isa, std::memory_order_relaxed);
}

void weighted_average(std::span<double> dst, std::span<const double> a,
                      std::span<const double> b, double wa, double wb) {
  if (a.size() != dst.size() || b.size() != dst.size())
    throw std::invalid_argument("weighted_average: size mismatch");
  if (active_isa() == Isa::kAvx2)
    avx2::weighted_average(dst.data(), a.data(), b.data(), dst.size(), wa, wb);
  else
    scalar::weighted_average(dst.data(), a.data(), b.data(), dst.size(), wa, wb);
}

ArgMax argmax(std::span<const double> row) {
  return active_isa() == Isa::kAvx2 ? avx2::argmax(row.data(), row.size())
                                    : scalar::argmax(row.data(), row.size());
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("and_popcount: size mismatch");
  return active_isa() == Isa::kAvx2 ? avx2::and_popcount(a.data(), b.data(), a.size())
                                    : scalar::and_popcount(a.data(), b.data(), a.size());
}

}  // namespace stclust::simd
