#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "markhash/hash_value.hpp"

namespace markhash {

// Golden vector files: one `hex_input<TAB>hex_hash` record per line, hash
// values as 32 lowercase hex digits, big-endian, already reduced.  For the
// rehash file the input is itself a 32-digit hash value.

struct HashVector {
    std::vector<std::uint8_t> input;
    HashValue expected;
};

struct RehashVector {
    HashValue input;
    HashValue expected;
};

// Both throw std::runtime_error naming the file and line on any malformed
// record.
std::vector<HashVector> load_hash_vectors(const std::string& path);
std::vector<RehashVector> load_rehash_vectors(const std::string& path);

}  // namespace markhash
