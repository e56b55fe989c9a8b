#include "bfr/gf_region.hpp"

#include <atomic>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define BFR_X86 1
#endif
#if defined(__aarch64__)
#include <arm_neon.h>
#define BFR_NEON 1
#endif

namespace bfr::gf {

namespace {

void split_tables(const std::uint8_t* row, std::uint8_t lo[16], std::uint8_t hi[16]) {
    for (int i = 0; i < 16; ++i) {
        lo[i] = row[i];
        hi[i] = row[i << 4];
    }
}

#ifdef BFR_X86
__attribute__((target("avx2"))) void mul_add_avx2(const std::uint8_t* row, std::uint8_t* dst,
                                                  const std::uint8_t* src, std::size_t len) {
    alignas(16) std::uint8_t lo[16], hi[16];
    split_tables(row, lo, hi);
    const __m256i tlo = _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(lo)));
    const __m256i thi = _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(hi)));
    const __m256i mask = _mm256_set1_epi8(0x0f);
    std::size_t i = 0;
    for (; i + 32 <= len; i += 32) {
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i l = _mm256_shuffle_epi8(tlo, _mm256_and_si256(s, mask));
        __m256i h = _mm256_shuffle_epi8(thi, _mm256_and_si256(_mm256_srli_epi64(s, 4), mask));
        d = _mm256_xor_si256(d, _mm256_xor_si256(l, h));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), d);
    }
    detail::mul_add_scalar(row, dst + i, src + i, len - i);
}
#endif

#ifdef BFR_NEON
void mul_add_neon(const std::uint8_t* row, std::uint8_t* dst, const std::uint8_t* src, std::size_t len) {
    std::uint8_t lo[16], hi[16];
    split_tables(row, lo, hi);
    const uint8x16_t tlo = vld1q_u8(lo), thi = vld1q_u8(hi);
    const uint8x16_t mask = vdupq_n_u8(0x0f);
    std::size_t i = 0;
    for (; i + 16 <= len; i += 16) {
        uint8x16_t s = vld1q_u8(src + i);
        uint8x16_t l = vqtbl1q_u8(tlo, vandq_u8(s, mask));
        uint8x16_t h = vqtbl1q_u8(thi, vshrq_n_u8(s, 4));
        vst1q_u8(dst + i, veorq_u8(vld1q_u8(dst + i), veorq_u8(l, h)));
    }
    detail::mul_add_scalar(row, dst + i, src + i, len - i);
}
#endif

RegionKernel detect() {
#ifdef BFR_X86
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) return RegionKernel::avx2;
#endif
#ifdef BFR_NEON
    return RegionKernel::neon;
#endif
    return RegionKernel::scalar;
}

std::atomic<int> g_forced{-1};

}  // namespace

const char* kernel_name(RegionKernel k) {
    switch (k) {
    case RegionKernel::scalar: return "scalar";
    case RegionKernel::avx2: return "avx2";
    case RegionKernel::neon: return "neon";
    }
    return "?";
}

bool region_kernel_supported(RegionKernel k) {
    switch (k) {
    case RegionKernel::scalar: return true;
    case RegionKernel::avx2:
#ifdef BFR_X86
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case RegionKernel::neon:
#ifdef BFR_NEON
        return true;
#else
        return false;
#endif
    }
    return false;
}

RegionKernel active_region_kernel() {
    int f = g_forced.load(std::memory_order_relaxed);
    if (f >= 0) return static_cast<RegionKernel>(f);
    static const RegionKernel k = detect();
    return k;
}

void force_region_kernel(RegionKernel k) {
    if (!region_kernel_supported(k)) throw ConfigError(std::string("kernel not supported: ") + kernel_name(k));
    g_forced.store(static_cast<int>(k));
}

void reset_region_kernel() { g_forced.store(-1); }

namespace detail {

void mul_add_scalar(const std::uint8_t* row, std::uint8_t* dst, const std::uint8_t* src, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) dst[i] ^= row[src[i]];
}

void mul_add_with(RegionKernel k, const Field& f, std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c,
                  std::size_t len) {
    if (c == 0 || len == 0) return;
    const std::uint8_t* row = f.mul_row(c);
    if (!row) throw ConfigError("region kernels need GF(2^8)");
    switch (k) {
#ifdef BFR_X86
    case RegionKernel::avx2: mul_add_avx2(row, dst, src, len); return;
#endif
#ifdef BFR_NEON
    case RegionKernel::neon: mul_add_neon(row, dst, src, len); return;
#endif
    default: mul_add_scalar(row, dst, src, len); return;
    }
}

}  // namespace detail

void region_mul_add(const Field& f, std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t len) {
    if (c == 1) {
        for (std::size_t i = 0; i < len; ++i) dst[i] ^= src[i];
        return;
    }
    detail::mul_add_with(active_region_kernel(), f, dst, src, c, len);
}

}  // namespace bfr::gf
