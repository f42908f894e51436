#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>

#include "markhash/hash_value.hpp"

namespace markhash {

// Raw 16-byte MD5 digest.
std::array<std::uint8_t, 16> md5_digest(const void* data, std::size_t len);

// Maps raw bytes into the field: MD5 digest read as a big-endian 128-bit
// integer, reduced mod N.
HashValue hash_bytes(const void* data, std::size_t len);
HashValue hash_bytes(std::span<const std::uint8_t> data);
HashValue hash_string(std::string_view s);

// Injective multi-field hashing: each part is prefixed with its 8-byte
// big-endian length before digesting, so ("ab","c") and ("a","bc") differ.
HashValue hash_fields(std::initializer_list<std::string_view> parts);

// Second-preimage map used when hashed values are themselves set members.
// rehash(h) = reduce(hash(serialize(h)), negate(hash(serialize(null)))),
// which keeps rehash(null) == null while breaking reduce-linearity.
HashValue rehash(HashValue h);

// Batched rehash (SIMD-dispatched); in/out may alias element-wise.
void rehash_many(std::span<const HashValue> in, std::span<HashValue> out);

}  // namespace markhash
