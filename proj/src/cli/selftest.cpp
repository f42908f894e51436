#include <cstring>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "markhash/cli.hpp"
#include "markhash/hashing.hpp"
#include "markhash/kernels.hpp"
#include "markhash/mset.hpp"
#include "markhash/vectors.hpp"

namespace markhash::cli {

namespace {

struct Reporter {
    std::ostream& out;
    bool all_ok = true;
    void ok(const char* name) { out << "ok " << name << '\n'; }
    void fail(const char* name, const std::string& detail) {
        out << "FAIL " << name << ": " << detail << '\n';
        all_ok = false;
    }
    bool check(const char* name, bool cond, const std::string& detail) {
        cond ? ok(name) : fail(name, detail);
        return cond;
    }
};

HashValue random_hash(std::mt19937_64& rng) {
    return HashValue::from_wide(make_uint128(rng(), rng()));
}

void check_hash_vectors(Reporter& r, const std::string& data_dir) {
    const std::string path = data_dir + "/hash_vectors.tsv";
    try {
        for (const HashVector& v : load_hash_vectors(path)) {
            const HashValue got = hash_bytes(v.input.data(), v.input.size());
            if (got != v.expected) {
                std::ostringstream what;
                what << path << ": input of " << v.input.size() << " bytes hashed to "
                     << got.to_hex() << ", want " << v.expected.to_hex();
                r.fail("hash-vectors", what.str());
                return;
            }
        }
        r.ok("hash-vectors");
    } catch (const std::exception& e) {
        r.fail("hash-vectors", e.what());
    }
}

void check_rehash_vectors(Reporter& r, const std::string& data_dir) {
    const std::string path = data_dir + "/rehash_vectors.tsv";
    try {
        const auto vecs = load_rehash_vectors(path);
        std::vector<HashValue> in(vecs.size()), got(vecs.size());
        for (std::size_t i = 0; i < vecs.size(); ++i) in[i] = vecs[i].input;
        rehash_many(in, got);
        for (std::size_t i = 0; i < vecs.size(); ++i) {
            if (rehash(vecs[i].input) != vecs[i].expected || got[i] != vecs[i].expected) {
                r.fail("rehash-vectors",
                       path + ": mismatch for input " + vecs[i].input.to_hex());
                return;
            }
        }
        r.ok("rehash-vectors");
    } catch (const std::exception& e) {
        r.fail("rehash-vectors", e.what());
    }
}

void check_field_laws(Reporter& r) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        const HashValue a = random_hash(rng), b = random_hash(rng), c = random_hash(rng);
        if (reduce(reduce(a, b), c) != reduce(a, reduce(b, c)))
            return r.fail("field-laws", "associativity violated");
        if (reduce(a, b) != reduce(b, a)) return r.fail("field-laws", "commutativity violated");
        if (reduce(a, kNullHash) != a) return r.fail("field-laws", "identity violated");
        if (!reduce(a, negate(a)).is_null()) return r.fail("field-laws", "inverse violated");
    }
    r.ok("field-laws");
}

void check_kernel_equivalence(Reporter& r) {
    std::mt19937_64 rng(2);
    for (std::size_t n : {0u, 1u, 7u, 8u, 64u, 1000u}) {
        std::vector<HashValue> vals(n);
        for (auto& v : vals) v = random_hash(rng);
        if (kernels::sum_mod(vals.data(), n) != kernels::sum_mod_scalar(vals.data(), n))
            return r.fail("kernel-equivalence", "sum_mod backends disagree");
        std::vector<std::uint8_t> msgs(n * 16), d1(n * 16), d2(n * 16);
        for (auto& byte : msgs) byte = static_cast<std::uint8_t>(rng());
        kernels::md5_fixed16(msgs.data(), n, d1.data());
        kernels::md5_fixed16_scalar(msgs.data(), n, d2.data());
        if (d1 != d2) return r.fail("kernel-equivalence", "md5 backends disagree");
    }
    r.ok("kernel-equivalence");
}

void check_mset_against_scan(Reporter& r) {
    std::mt19937_64 rng(3);
    MSet t;
    std::vector<MarkedKey> inserted;
    for (int k = 0; k < 40; ++k) {
        MarkedKey key{random_hash(rng), {}};
        for (int iv = 0, n = 1 + static_cast<int>(rng() % 3); iv < n; ++iv) {
            const Marker lo = static_cast<Marker>(rng() % 200);
            key.vset.add(lo, lo + 1 + static_cast<Marker>(rng() % 40));
        }
        t.insert(key);
        inserted.push_back(std::move(key));
    }
    for (Marker bp : t.breakpoints()) {
        for (Marker m : {bp - 1, bp, bp + 1}) {
            HashValue direct;
            for (const MarkedKey& k : inserted)
                if (k.vset.contains(m)) direct = reduce(direct, k.hash);
            if (t.hash_at_marker(m) != direct)
                return r.fail("marker-query-scan",
                              "mismatch at marker " + marker_to_string(m));
        }
    }
    r.ok("marker-query-scan");
}

void check_structure_audit(Reporter& r) {
    std::mt19937_64 rng(4);
    MSet t;
    std::vector<HashValue> live;
    try {
        for (int op = 0; op < 2000; ++op) {
            const auto kind = rng() % 3;
            if (kind == 0 || live.empty()) {
                const HashValue h = random_hash(rng);
                const Marker lo = static_cast<Marker>(rng() % 500);
                t.add_valid_region(h, lo, lo + 1 + static_cast<Marker>(rng() % 50));
                live.push_back(h);
            } else if (kind == 1) {
                const std::size_t i = rng() % live.size();
                const Marker lo = static_cast<Marker>(rng() % 500);
                t.add_valid_region(live[i], lo, lo + 1 + static_cast<Marker>(rng() % 50));
            } else {
                const std::size_t i = rng() % live.size();
                t.pop(live[i]);
                live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
        t.check_consistency();
        r.ok("structure-audit");
    } catch (const std::exception& e) {
        r.fail("structure-audit", e.what());
    }
}

void check_summary_semantics(Reporter& r) {
    MSet a, b;
    a.add_valid_region(hash_string("x"), 0, 10);
    a.add_valid_region(hash_string("y"), 5, 20);
    b.add_valid_region(hash_string("x"), 0, 10);
    const MSet sets[] = {/* copies are deep */ a, b};
    const MSet s = summarize(sets);
    for (Marker m : {-1, 0, 4, 5, 9, 10, 19, 20}) {
        const HashValue want =
            reduce(rehash(a.hash_at_marker(m)), rehash(b.hash_at_marker(m)));
        if (s.hash_at_marker(m) != want)
            return r.fail("summary-semantics", "mismatch at marker " + marker_to_string(m));
    }
    r.ok("summary-semantics");
}

}  // namespace

int cmd_selftest(const std::string& data_dir, std::ostream& out) {
    Reporter r{out};
    check_hash_vectors(r, data_dir);
    check_rehash_vectors(r, data_dir);
    check_field_laws(r);
    check_kernel_equivalence(r);
    check_mset_against_scan(r);
    check_structure_audit(r);
    check_summary_semantics(r);
    out << (r.all_ok ? "selftest passed" : "selftest FAILED") << '\n';
    return r.all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace markhash::cli
