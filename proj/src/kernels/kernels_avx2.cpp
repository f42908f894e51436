#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstring>

#include "markhash/kernels.hpp"

namespace markhash::kernels {

namespace {

// Limb accumulation bound: with chunks of at most 2^31 values, each 32-bit
// limb sum stays below 2^63 and the recombination below never overflows.
constexpr std::size_t kChunk = std::size_t(1) << 31;

HashValue fold_limb_sums(const std::uint64_t a[4]) {
    uint128 low = uint128(a[0]) + (uint128(a[1]) << 32);  // < 2^96
    uint128 s = low + (uint128(a[2]) << 64);              // < 2^128
    std::uint64_t high = a[3] >> 32;
    uint128 top = uint128(a[3] & 0xffffffffu) << 96;
    uint128 t = s + top;
    if (t < s) ++high;
    // value = high * 2^128 + t and 2^128 == 159 (mod N); high*159 < N.
    HashValue r = HashValue::from_wide(t);
    return reduce(r, HashValue::from_reduced(uint128(high) * 159));
}

std::uint32_t load_le32(const std::uint8_t* p) {
    std::uint32_t v;
    std::memcpy(&v, p, 4);
    return v;
}

void store_le32(std::uint8_t* p, std::uint32_t v) { std::memcpy(p, &v, 4); }

constexpr std::uint32_t kMd5K[64] = {
    0xd76aa478u, 0xe8c7b756u, 0x242070dbu, 0xc1bdceeeu,
    0xf57c0fafu, 0x4787c62au, 0xa8304613u, 0xfd469501u,
    0x698098d8u, 0x8b44f7afu, 0xffff5bb1u, 0x895cd7beu,
    0x6b901122u, 0xfd987193u, 0xa679438eu, 0x49b40821u,
    0xf61e2562u, 0xc040b340u, 0x265e5a51u, 0xe9b6c7aau,
    0xd62f105du, 0x02441453u, 0xd8a1e681u, 0xe7d3fbc8u,
    0x21e1cde6u, 0xc33707d6u, 0xf4d50d87u, 0x455a14edu,
    0xa9e3e905u, 0xfcefa3f8u, 0x676f02d9u, 0x8d2a4c8au,
    0xfffa3942u, 0x8771f681u, 0x6d9d6122u, 0xfde5380cu,
    0xa4beea44u, 0x4bdecfa9u, 0xf6bb4b60u, 0xbebfbc70u,
    0x289b7ec6u, 0xeaa127fau, 0xd4ef3085u, 0x04881d05u,
    0xd9d4d039u, 0xe6db99e5u, 0x1fa27cf8u, 0xc4ac5665u,
    0xf4292244u, 0x432aff97u, 0xab9423a7u, 0xfc93a039u,
    0x655b59c3u, 0x8f0ccc92u, 0xffeff47du, 0x85845dd1u,
    0x6fa87e4fu, 0xfe2ce6e0u, 0xa3014314u, 0x4e0811a1u,
    0xf7537e82u, 0xbd3af235u, 0x2ad7d2bbu, 0xeb86d391u,
};

constexpr int kMd5S[64] = {
    7, 12, 17, 22, 7, 12, 17, 22, 7, 12, 17, 22, 7, 12, 17, 22,
    5, 9, 14, 20, 5, 9, 14, 20, 5, 9, 14, 20, 5, 9, 14, 20,
    4, 11, 16, 23, 4, 11, 16, 23, 4, 11, 16, 23, 4, 11, 16, 23,
    6, 10, 15, 21, 6, 10, 15, 21, 6, 10, 15, 21, 6, 10, 15, 21,
};

inline __m256i rotl32(__m256i x, int s) {
    return _mm256_or_si256(_mm256_slli_epi32(x, s), _mm256_srli_epi32(x, 32 - s));
}

// Eight single-block MD5s in parallel, one 16-byte message per lane.  Only
// schedule words 0..3 vary; word 4 is the 0x80 pad, word 14 the bit length.
void md5x8(const std::uint8_t* in, std::uint8_t* out) {
    __m256i w[16];
    for (int j = 0; j < 4; ++j) {
        w[j] = _mm256_setr_epi32(
            static_cast<int>(load_le32(in + 0 * 16 + j * 4)),
            static_cast<int>(load_le32(in + 1 * 16 + j * 4)),
            static_cast<int>(load_le32(in + 2 * 16 + j * 4)),
            static_cast<int>(load_le32(in + 3 * 16 + j * 4)),
            static_cast<int>(load_le32(in + 4 * 16 + j * 4)),
            static_cast<int>(load_le32(in + 5 * 16 + j * 4)),
            static_cast<int>(load_le32(in + 6 * 16 + j * 4)),
            static_cast<int>(load_le32(in + 7 * 16 + j * 4)));
    }
    const __m256i zero = _mm256_setzero_si256();
    for (int j = 5; j < 16; ++j) w[j] = zero;
    w[4] = _mm256_set1_epi32(0x80);
    w[14] = _mm256_set1_epi32(128);

    const __m256i ones = _mm256_set1_epi32(-1);
    __m256i a = _mm256_set1_epi32(static_cast<int>(0x67452301u));
    __m256i b = _mm256_set1_epi32(static_cast<int>(0xefcdab89u));
    __m256i c = _mm256_set1_epi32(static_cast<int>(0x98badcfeu));
    __m256i d = _mm256_set1_epi32(static_cast<int>(0x10325476u));
    const __m256i a0 = a, b0 = b, c0 = c, d0 = d;

    for (int i = 0; i < 64; ++i) {
        __m256i f;
        int g;
        if (i < 16) {
            f = _mm256_or_si256(_mm256_and_si256(b, c), _mm256_andnot_si256(b, d));
            g = i;
        } else if (i < 32) {
            f = _mm256_or_si256(_mm256_and_si256(d, b), _mm256_andnot_si256(d, c));
            g = (5 * i + 1) & 15;
        } else if (i < 48) {
            f = _mm256_xor_si256(b, _mm256_xor_si256(c, d));
            g = (3 * i + 5) & 15;
        } else {
            f = _mm256_xor_si256(c, _mm256_or_si256(b, _mm256_xor_si256(d, ones)));
            g = (7 * i) & 15;
        }
        __m256i t = _mm256_add_epi32(a, f);
        t = _mm256_add_epi32(t, _mm256_set1_epi32(static_cast<int>(kMd5K[i])));
        t = _mm256_add_epi32(t, w[g]);
        __m256i nb = _mm256_add_epi32(b, rotl32(t, kMd5S[i]));
        a = d;
        d = c;
        c = b;
        b = nb;
    }

    a = _mm256_add_epi32(a, a0);
    b = _mm256_add_epi32(b, b0);
    c = _mm256_add_epi32(c, c0);
    d = _mm256_add_epi32(d, d0);

    alignas(32) std::uint32_t la[8], lb[8], lc[8], ld[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(la), a);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lb), b);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lc), c);
    _mm256_store_si256(reinterpret_cast<__m256i*>(ld), d);
    for (int l = 0; l < 8; ++l) {
        store_le32(out + l * 16 + 0, la[l]);
        store_le32(out + l * 16 + 4, lb[l]);
        store_le32(out + l * 16 + 8, lc[l]);
        store_le32(out + l * 16 + 12, ld[l]);
    }
}

}  // namespace

HashValue sum_mod_avx2(const HashValue* values, std::size_t n) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(values);
    HashValue total;
    while (n > 0) {
        const std::size_t chunk = n < kChunk ? n : kChunk;
        __m256i acc0 = _mm256_setzero_si256();
        __m256i acc1 = _mm256_setzero_si256();
        std::size_t i = 0;
        for (; i + 2 <= chunk; i += 2) {
            __m256i two = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i * 16));
            acc0 = _mm256_add_epi64(acc0, _mm256_cvtepu32_epi64(_mm256_castsi256_si128(two)));
            acc1 = _mm256_add_epi64(acc1, _mm256_cvtepu32_epi64(_mm256_extracti128_si256(two, 1)));
        }
        if (i < chunk) {
            __m128i one = _mm_loadu_si128(reinterpret_cast<const __m128i*>(p + i * 16));
            acc0 = _mm256_add_epi64(acc0, _mm256_cvtepu32_epi64(one));
        }
        acc0 = _mm256_add_epi64(acc0, acc1);
        alignas(32) std::uint64_t limbs[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(limbs), acc0);
        total = reduce(total, fold_limb_sums(limbs));
        p += chunk * 16;
        n -= chunk;
    }
    return total;
}

void md5_fixed16_avx2(const std::uint8_t* in, std::size_t n, std::uint8_t* out) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) md5x8(in + i * 16, out + i * 16);
    if (i < n) md5_fixed16_scalar(in + i * 16, n - i, out + i * 16);
}

}  // namespace markhash::kernels

#endif  // x86-64
