#pragma once

// Data-parallel inner loops with a scalar reference and vector variants.
// The active variant is picked once at startup from the CPU features
// (override with STCLUST_SIMD=scalar|avx2, or set_isa in tests). Every variant
// must return bit-identical results to the scalar reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace stclust::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
Isa active_isa();
// Throws std::invalid_argument when the ISA is not supported on this CPU.
void set_isa(Isa isa);

struct ArgMax {
  std::size_t index;
  double value;
};

// dst[k] = (wa * a[k] + wb * b[k]) / (wa + wb). dst may alias a or b.
void weighted_average(std::span<double> dst, std::span<const double> a,
                      std::span<const double> b, double wa, double wb);

// First index of the maximum; {size, -inf} for an empty row.
ArgMax argmax(std::span<const double> row);

// Number of set bits in a & b.
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

namespace scalar {
void weighted_average(double* dst, const double* a, const double* b, std::size_t n, double wa,
                      double wb);
ArgMax argmax(const double* row, std::size_t n);
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
void weighted_average(double* dst, const double* a, const double* b, std::size_t n, double wa,
                      double wb);
ArgMax argmax(const double* row, std::size_t n);
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
}  // namespace avx2

}  // namespace stclust::simd
