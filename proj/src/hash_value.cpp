#include "markhash/hash_value.hpp"

#include <cstring>
#include <ostream>

#include "markhash/kernels.hpp"

namespace markhash {

std::array<std::uint8_t, 16> HashValue::to_bytes() const {
    std::array<std::uint8_t, 16> out;
    for (int i = 0; i < 16; ++i)
        out[i] = static_cast<std::uint8_t>(v_ >> (8 * (15 - i)));
    return out;
}

HashValue HashValue::from_bytes(std::span<const std::uint8_t, 16> be) {
    uint128 v = 0;
    for (std::uint8_t b : be) v = (v << 8) | b;
    return from_wide(v);
}

std::string HashValue::to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(32, '0');
    for (int i = 0; i < 32; ++i)
        s[i] = digits[static_cast<unsigned>(v_ >> (4 * (31 - i))) & 0xf];
    return s;
}

std::optional<HashValue> HashValue::parse_hex(std::string_view s) {
    if (s.size() != 32) return std::nullopt;
    uint128 v = 0;
    for (char c : s) {
        unsigned d;
        if (c >= '0' && c <= '9') d = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') d = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') d = static_cast<unsigned>(c - 'A' + 10);
        else return std::nullopt;
        v = (v << 4) | d;
    }
    if (v >= kHashModulus) return std::nullopt;
    return from_reduced(v);
}

HashValue reduce(std::span<const HashValue> values) {
    return kernels::sum_mod(values.data(), values.size());
}

HashValue reduce(std::initializer_list<HashValue> values) {
    return reduce(std::span<const HashValue>(values.begin(), values.size()));
}

std::ostream& operator<<(std::ostream& os, HashValue h) { return os << h.to_hex(); }

}  // namespace markhash
