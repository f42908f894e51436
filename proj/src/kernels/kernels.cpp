#include "markhash/kernels.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <stdexcept>

namespace markhash::kernels {

namespace {

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend best_backend() { return avx2_supported() ? Backend::avx2 : Backend::scalar; }

std::atomic<Backend> g_backend{best_backend()};

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "?";
}

bool set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_supported()) return false;
    g_backend.store(b, std::memory_order_relaxed);
    return true;
}

void reset_backend() { g_backend.store(best_backend(), std::memory_order_relaxed); }

HashValue sum_mod_scalar(const HashValue* values, std::size_t n) {
    HashValue acc;
    for (std::size_t i = 0; i < n; ++i) acc = reduce(acc, values[i]);
    return acc;
}

HashValue sum_mod(const HashValue* values, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
    if (n >= 8 && active_backend() == Backend::avx2) return sum_mod_avx2(values, n);
#endif
    return sum_mod_scalar(values, n);
}

void md5_fixed16_scalar(const std::uint8_t* in, std::size_t n, std::uint8_t* out) {
    for (std::size_t i = 0; i < n; ++i) {
        unsigned len = 0;
        if (EVP_Digest(in + i * 16, 16, out + i * 16, &len, EVP_md5(), nullptr) != 1 || len != 16)
            throw std::runtime_error("MD5 digest failed");
    }
}

void md5_fixed16(const std::uint8_t* in, std::size_t n, std::uint8_t* out) {
#if defined(__x86_64__) || defined(_M_X64)
    if (n >= 8 && active_backend() == Backend::avx2) {
        md5_fixed16_avx2(in, n, out);
        return;
    }
#endif
    md5_fixed16_scalar(in, n, out);
}

}  // namespace markhash::kernels
