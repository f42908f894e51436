#include "markhash/hashing.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>
#include <vector>

#include "markhash/kernels.hpp"

namespace markhash {

namespace {

HashValue digest_to_hash(const std::uint8_t digest[16]) {
    return HashValue::from_bytes(std::span<const std::uint8_t, 16>(digest, 16));
}

// negate(hash(serialize(null))): the correction that pins rehash(null) to
// null.  serialize(null) is 16 zero bytes.
HashValue rehash_offset() {
    static const HashValue offset = [] {
        std::uint8_t zeros[16] = {};
        return negate(hash_bytes(zeros, sizeof zeros));
    }();
    return offset;
}

}  // namespace

std::array<std::uint8_t, 16> md5_digest(const void* data, std::size_t len) {
    std::uint8_t digest[EVP_MAX_MD_SIZE];
    unsigned digest_len = 0;
    if (EVP_Digest(data, len, digest, &digest_len, EVP_md5(), nullptr) != 1 || digest_len != 16)
        throw std::runtime_error("MD5 digest failed");
    std::array<std::uint8_t, 16> out;
    std::memcpy(out.data(), digest, 16);
    return out;
}

HashValue hash_bytes(const void* data, std::size_t len) {
    const auto digest = md5_digest(data, len);
    return digest_to_hash(digest.data());
}

HashValue hash_bytes(std::span<const std::uint8_t> data) {
    return hash_bytes(data.data(), data.size());
}

HashValue hash_string(std::string_view s) { return hash_bytes(s.data(), s.size()); }

HashValue hash_fields(std::initializer_list<std::string_view> parts) {
    std::vector<std::uint8_t> buf;
    for (std::string_view p : parts) {
        std::uint64_t n = p.size();
        for (int i = 7; i >= 0; --i) buf.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
        buf.insert(buf.end(), p.begin(), p.end());
    }
    return hash_bytes(buf.data(), buf.size());
}

HashValue rehash(HashValue h) {
    auto bytes = h.to_bytes();
    return reduce(hash_bytes(bytes.data(), bytes.size()), rehash_offset());
}

void rehash_many(std::span<const HashValue> in, std::span<HashValue> out) {
    if (out.size() < in.size()) throw std::invalid_argument("rehash_many: output too small");
    const std::size_t n = in.size();
    if (n == 0) return;
    std::vector<std::uint8_t> msgs(n * 16);
    for (std::size_t i = 0; i < n; ++i) {
        auto b = in[i].to_bytes();
        std::memcpy(&msgs[i * 16], b.data(), 16);
    }
    std::vector<std::uint8_t> digests(n * 16);
    kernels::md5_fixed16(msgs.data(), n, digests.data());
    const HashValue offset = rehash_offset();
    for (std::size_t i = 0; i < n; ++i)
        out[i] = reduce(digest_to_hash(&digests[i * 16]), offset);
}

}  // namespace markhash
