#include "treeincl/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__BMI2__)
#include <immintrin.h>

namespace treeincl::kernels {

namespace {

std::uint64_t extract_bmi2(std::uint64_t src, std::uint64_t mask) { return _pext_u64(src, mask); }
std::uint64_t deposit_bmi2(std::uint64_t src, std::uint64_t mask) { return _pdep_u64(src, mask); }

std::size_t next_nonzero_avx2(const std::uint64_t* a, std::size_t n, std::size_t from) {
  // short scalar lead-in: most calls find a non-empty entry within a few words
  for (std::size_t stop = from + 4 < n ? from + 4 : n; from < stop; ++from)
    if (a[from]) return from;
  for (; from + 4 <= n; from += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + from));
    if (!_mm256_testz_si256(v, v)) {
      __m256i z = _mm256_cmpeq_epi64(v, _mm256_setzero_si256());
      unsigned nz = ~static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(z))) & 0xFu;
      return from + static_cast<std::size_t>(__builtin_ctz(nz));
    }
  }
  while (from < n && a[from] == 0) ++from;
  return from;
}

std::size_t popcount_avx2(const std::uint64_t* a, std::size_t n) {
  std::size_t c0 = 0, c1 = 0, c2 = 0, c3 = 0, i = 0;
  for (; i + 4 <= n; i += 4) {
    c0 += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
    c1 += static_cast<std::size_t>(_mm_popcnt_u64(a[i + 1]));
    c2 += static_cast<std::size_t>(_mm_popcnt_u64(a[i + 2]));
    c3 += static_cast<std::size_t>(_mm_popcnt_u64(a[i + 3]));
  }
  for (; i < n; ++i) c0 += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
  return c0 + c1 + c2 + c3;
}

void or_into_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(d, s));
  }
  for (; i < n; ++i) dst[i] |= src[i];
}

const KernelSet kAvx2{"avx2", extract_bmi2, deposit_bmi2, next_nonzero_avx2, popcount_avx2, or_into_avx2};

}  // namespace

const KernelSet* avx2_impl() { return &kAvx2; }

}  // namespace treeincl::kernels

#else

namespace treeincl::kernels {
const KernelSet* avx2_impl() { return nullptr; }
}  // namespace treeincl::kernels

#endif
