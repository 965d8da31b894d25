// Compiled with -mavx2. Keep this translation unit free of inline library
// code: any out-of-line copy emitted here could be picked by the linker for
// callers on CPUs without AVX2.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "stclust/simd.hpp"

namespace stclust::simd::avx2 {

void weighted_average(double* dst, const double* a, const double* b, std::size_t n, double wa,
                      double wb) {
  const double total = wa + wb;
  const __m256d vwa = _mm256_set1_pd(wa);
  const __m256d vwb = _mm256_set1_pd(wb);
  const __m256d vt = _mm256_set1_pd(total);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x = _mm256_mul_pd(vwa, _mm256_loadu_pd(a + k));
    const __m256d y = _mm256_mul_pd(vwb, _mm256_loadu_pd(b + k));
    _mm256_storeu_pd(dst + k, _mm256_div_pd(_mm256_add_pd(x, y), vt));
  }
  for (; k < n; ++k) dst[k] = (wa * a[k] + wb * b[k]) / total;
}

ArgMax argmax(const double* row, std::size_t n) {
  constexpr double kNegInf = -__builtin_inf();
  ArgMax best{n, kNegInf};
  std::size_t k = 0;
  if (n >= 4) {
    // Per-lane running max; strict > keeps the first index within each lane.
    __m256d vmax = _mm256_loadu_pd(row);
    __m256d vidx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    __m256d cur = vidx;
    const __m256d step = _mm256_set1_pd(4.0);
    for (k = 4; k + 4 <= n; k += 4) {
      cur = _mm256_add_pd(cur, step);
      const __m256d v = _mm256_loadu_pd(row + k);
      const __m256d gt = _mm256_cmp_pd(v, vmax, _CMP_GT_OQ);
      vmax = _mm256_blendv_pd(vmax, v, gt);
      vidx = _mm256_blendv_pd(vidx, cur, gt);
    }
    alignas(32) double m[4];
    alignas(32) double ix[4];
    _mm256_store_pd(m, vmax);
    _mm256_store_pd(ix, vidx);
    best = {static_cast<std::size_t>(ix[0]), m[0]};
    for (int l = 1; l < 4; ++l) {
      const auto li = static_cast<std::size_t>(ix[l]);
      if (m[l] > best.value || (m[l] == best.value && li < best.index)) best = {li, m[l]};
    }
  }
  for (; k < n; ++k) {
    if (row[k] > best.value || best.index == n) best = {k, row[k]};
  }
  return best;
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  // Nibble lookup popcount summed with SAD.
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256i x = _mm256_and_si256(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k)),
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + k)));
    const __m256i lo = _mm256_shuffle_epi8(lut, _mm256_and_si256(x, low));
    const __m256i hi = _mm256_shuffle_epi8(lut, _mm256_and_si256(_mm256_srli_epi16(x, 4), low));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_add_epi8(lo, hi), _mm256_setzero_si256()));
  }
  std::uint64_t total = static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)) +
                        static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)) +
                        static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)) +
                        static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3));
  for (; k < n; ++k) total += static_cast<std::uint64_t>(_mm_popcnt_u64(a[k] & b[k]));
  return total;
}

}  // namespace stclust::simd::avx2
