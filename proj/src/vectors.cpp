#include "markhash/vectors.hpp"

#include <fstream>
#include <stdexcept>

namespace markhash {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line_no, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

std::vector<std::uint8_t> parse_bytes(const std::string& path, std::size_t line_no,
                                      std::string_view hex) {
    if (hex.size() % 2 != 0) fail(path, line_no, "odd-length hex input");
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = hex_digit(hex[2 * i]), lo = hex_digit(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) fail(path, line_no, "bad hex input");
        out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return out;
}

HashValue parse_hash(const std::string& path, std::size_t line_no, std::string_view hex) {
    auto h = HashValue::parse_hex(hex);
    if (!h) fail(path, line_no, "bad hash value (want 32 reduced hex digits)");
    return *h;
}

template <typename Fn>
void for_each_record(const std::string& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vector file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) fail(path, line_no, "missing tab separator");
        fn(line_no, std::string_view(line).substr(0, tab),
           std::string_view(line).substr(tab + 1));
    }
}

}  // namespace

std::vector<HashVector> load_hash_vectors(const std::string& path) {
    std::vector<HashVector> out;
    for_each_record(path, [&](std::size_t line_no, std::string_view in, std::string_view hash) {
        out.push_back({parse_bytes(path, line_no, in), parse_hash(path, line_no, hash)});
    });
    if (out.empty()) throw std::runtime_error("empty vector file: " + path);
    return out;
}

std::vector<RehashVector> load_rehash_vectors(const std::string& path) {
    std::vector<RehashVector> out;
    for_each_record(path, [&](std::size_t line_no, std::string_view in, std::string_view hash) {
        out.push_back({parse_hash(path, line_no, in), parse_hash(path, line_no, hash)});
    });
    if (out.empty()) throw std::runtime_error("empty vector file: " + path);
    return out;
}

}  // namespace markhash
