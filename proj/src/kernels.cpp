#include "treeincl/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace treeincl::kernels {

const KernelSet* avx2_impl();  // kernels_avx2.cpp

namespace {

std::uint64_t extract_scalar(std::uint64_t src, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t bit = 1; mask; bit <<= 1) {
    if (src & mask & -mask) out |= bit;
    mask &= mask - 1;
  }
  return out;
}

std::uint64_t deposit_scalar(std::uint64_t src, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t bit = 1; mask; bit <<= 1) {
    if (src & bit) out |= mask & -mask;
    mask &= mask - 1;
  }
  return out;
}

std::size_t next_nonzero_scalar(const std::uint64_t* a, std::size_t n, std::size_t from) {
  while (from < n && a[from] == 0) ++from;
  return from;
}

std::size_t popcount_scalar(const std::uint64_t* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(__builtin_popcountll(a[i]));
  return c;
}

void or_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] |= src[i];
}

const KernelSet kScalar{"scalar", extract_scalar, deposit_scalar, next_nonzero_scalar, popcount_scalar,
                        or_into_scalar};

const KernelSet* pick() {
  const char* env = std::getenv("TREEINCL_KERNELS");
  if (env && std::strcmp(env, "scalar") == 0) return &kScalar;
  if (const KernelSet* k = avx2()) return k;
  return &kScalar;
}

const KernelSet* g_active = nullptr;

}  // namespace

const KernelSet& scalar() { return kScalar; }

const KernelSet* avx2() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("bmi2");
  return ok ? avx2_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() {
  if (!g_active) g_active = pick();
  return *g_active;
}

bool select(const char* name) {
  if (std::strcmp(name, "scalar") == 0) {
    g_active = &kScalar;
    return true;
  }
  if (std::strcmp(name, "avx2") == 0 && avx2()) {
    g_active = avx2();
    return true;
  }
  return false;
}

}  // namespace treeincl::kernels
