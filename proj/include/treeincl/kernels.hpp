#pragma once

#include <cstddef>
#include <cstdint>

// Word-level kernels used by the node-array procedures. Every kernel has a portable
// scalar version; an AVX2/BMI2 version is picked at startup when the CPU has it.
namespace treeincl::kernels {

struct KernelSet {
  const char* name;
  // gather the bits of src selected by mask into the low bits (BMI2 pext)
  std::uint64_t (*extract)(std::uint64_t src, std::uint64_t mask);
  // scatter the low bits of src to the positions set in mask (BMI2 pdep)
  std::uint64_t (*deposit)(std::uint64_t src, std::uint64_t mask);
  // first index >= from with a[i] != 0, or n
  std::size_t (*next_nonzero)(const std::uint64_t* a, std::size_t n, std::size_t from);
  // total number of set bits in a[0..n)
  std::size_t (*popcount)(const std::uint64_t* a, std::size_t n);
  // dst[i] |= src[i]
  void (*or_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
};

const KernelSet& scalar();
// nullptr when the binary or the CPU lacks AVX2+BMI2
const KernelSet* avx2();

// The set chosen at startup. TREEINCL_KERNELS=scalar in the environment forces the
// portable version.
const KernelSet& active();
// Override the active set (tests and benchmarks); returns false if unavailable.
bool select(const char* name);

inline std::uint64_t low_mask(unsigned k) { return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1; }

// left(k, X): the k lowest set bits of x
inline std::uint64_t keep_lowest(std::uint64_t x, unsigned k) {
  return active().deposit(low_mask(k), x);
}

// right(k, X): the k highest set bits of x
inline std::uint64_t keep_highest(std::uint64_t x, unsigned k) {
  unsigned pop = static_cast<unsigned>(__builtin_popcountll(x));
  if (k >= pop) return x;
  return active().deposit(~low_mask(pop - k), x);
}

}  // namespace treeincl::kernels
