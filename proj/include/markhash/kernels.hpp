#pragma once

#include <cstddef>
#include <cstdint>

#include "markhash/hash_value.hpp"

// Batch kernels behind the two hot loops: folding many field elements into
// one (sum mod N) and digesting many fixed 16-byte messages (the rehash
// preimage).  A scalar reference implementation always exists; on x86-64 an
// AVX2 variant is selected at runtime when the CPU supports it.  Both routes
// produce bit-identical results.
namespace markhash::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name(Backend b);

// Overrides dispatch (used by equivalence tests).  Returns false and leaves
// the selection unchanged if the requested backend is unsupported here.
bool set_backend(Backend b);
void reset_backend();  // back to best supported

// Sum of n field elements mod N, canonical result.
HashValue sum_mod(const HashValue* values, std::size_t n);
HashValue sum_mod_scalar(const HashValue* values, std::size_t n);

// MD5 of n independent 16-byte messages; out receives n 16-byte digests.
void md5_fixed16(const std::uint8_t* in, std::size_t n, std::uint8_t* out);
void md5_fixed16_scalar(const std::uint8_t* in, std::size_t n, std::uint8_t* out);

#if defined(__x86_64__) || defined(_M_X64)
HashValue sum_mod_avx2(const HashValue* values, std::size_t n);
void md5_fixed16_avx2(const std::uint8_t* in, std::size_t n, std::uint8_t* out);
#endif

}  // namespace markhash::kernels
