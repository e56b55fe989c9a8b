#pragma once

#include <cstddef>
#include <cstdint>

#include "bfr/gf.hpp"

namespace bfr::gf {

// Byte-region kernels for GF(2^8): dst[i] ^= c * src[i].
// The vector variants use the split low/high nibble table trick and are
// selected at runtime; the scalar kernel is the reference.
enum class RegionKernel { scalar, avx2, neon };

const char* kernel_name(RegionKernel k);
bool region_kernel_supported(RegionKernel k);
RegionKernel active_region_kernel();
// Pin a kernel (tests, benchmarks). Throws ConfigError when unsupported.
void force_region_kernel(RegionKernel k);
void reset_region_kernel();

void region_mul_add(const Field& f, std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c,
                    std::size_t len);

namespace detail {
void mul_add_scalar(const std::uint8_t* row, std::uint8_t* dst, const std::uint8_t* src, std::size_t len);
void mul_add_with(RegionKernel k, const Field& f, std::uint8_t* dst, const std::uint8_t* src,
                  std::uint8_t c, std::size_t len);
}  // namespace detail

}  // namespace bfr::gf
