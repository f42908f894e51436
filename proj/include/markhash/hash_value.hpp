#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>

namespace markhash {

using uint128 = unsigned __int128;

constexpr uint128 make_uint128(std::uint64_t hi, std::uint64_t lo) {
    return (uint128(hi) << 64) | lo;
}

// All hash values live in Z_N with N the largest prime below 2^128.
// N = 2^128 - 159.
inline constexpr uint128 kHashModulus = ~uint128(0) - 158;

// An element of Z_N.  The default-constructed value is the null hash; it is
// the identity of reduce() and the image of structurally empty content.
class HashValue {
public:
    constexpr HashValue() = default;

    // For values already known to be canonical (< N).
    static constexpr HashValue from_reduced(uint128 v) {
        HashValue h;
        h.v_ = v;
        return h;
    }

    // Reduces an arbitrary 128-bit value into the field.
    static constexpr HashValue from_wide(uint128 v) {
        return from_reduced(v >= kHashModulus ? v - kHashModulus : v);
    }

    constexpr uint128 value() const { return v_; }
    constexpr bool is_null() const { return v_ == 0; }

    friend constexpr bool operator==(HashValue, HashValue) = default;
    friend constexpr bool operator<(HashValue a, HashValue b) { return a.v_ < b.v_; }
    friend constexpr bool operator>(HashValue a, HashValue b) { return b < a; }
    friend constexpr bool operator<=(HashValue a, HashValue b) { return !(b < a); }
    friend constexpr bool operator>=(HashValue a, HashValue b) { return !(a < b); }

    // Canonical 16-byte big-endian form; the preimage fed to rehash().
    std::array<std::uint8_t, 16> to_bytes() const;
    static HashValue from_bytes(std::span<const std::uint8_t, 16> be);

    std::string to_hex() const;  // 32 lowercase hex digits
    static std::optional<HashValue> parse_hex(std::string_view s);

private:
    uint128 v_ = 0;
};

inline constexpr HashValue kNullHash{};

// Batch kernels read arrays of HashValue as raw 16-byte machine words.
static_assert(sizeof(HashValue) == 16);
static_assert(std::is_trivially_copyable_v<HashValue>);

// Group operation: addition mod N.  Associative, commutative, invertible.
constexpr HashValue reduce(HashValue a, HashValue b) {
    uint128 s = a.value() + b.value();
    if (s < a.value()) return HashValue::from_reduced(s + 159);  // wrapped past 2^128
    if (s >= kHashModulus) return HashValue::from_reduced(s - kHashModulus);
    return HashValue::from_reduced(s);
}

constexpr HashValue negate(HashValue h) {
    return h.is_null() ? h : HashValue::from_reduced(kHashModulus - h.value());
}

constexpr HashValue reduce_negated(HashValue a, HashValue b) { return reduce(a, negate(b)); }

// r copies of h folded together: (r * h) mod N.
constexpr HashValue scalar_mul(std::uint64_t r, HashValue h) {
    HashValue acc;
    HashValue base = h;
    while (r != 0) {
        if (r & 1) acc = reduce(acc, base);
        base = reduce(base, base);
        r >>= 1;
    }
    return acc;
}

// Order-invariant fold of a whole sequence; empty input yields the null hash.
// Batched, SIMD-dispatched (see kernels.hpp).
HashValue reduce(std::span<const HashValue> values);
HashValue reduce(std::initializer_list<HashValue> values);

std::ostream& operator<<(std::ostream& os, HashValue h);  // 32 hex digits

}  // namespace markhash

template <>
struct std::hash<markhash::HashValue> {
    std::size_t operator()(const markhash::HashValue& h) const noexcept {
        auto v = h.value();
        auto lo = static_cast<std::uint64_t>(v);
        auto hi = static_cast<std::uint64_t>(v >> 64);
        std::uint64_t x = lo ^ (hi * 0x9e3779b97f4a7c15ull);
        x ^= x >> 32;
        return static_cast<std::size_t>(x * 0xff51afd7ed558ccdull);
    }
};
