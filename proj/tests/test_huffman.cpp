#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "gcrs/corpus.hpp"
#include "gcrs/huffman.hpp"

using namespace gcrs;

namespace {

// every code must be decodable unambiguously: no code is a prefix of another
void check_prefix_free(const CodeTable& t) {
    for (size_t a = 0; a < t.codes.size(); ++a) {
        if (t.codes[a].empty()) continue;
        for (size_t b = 0; b < t.codes.size(); ++b) {
            if (a == b || t.codes[b].empty()) continue;
            const auto &ca = t.codes[a], &cb = t.codes[b];
            if (ca.size() > cb.size()) continue;
            CHECK(!std::equal(ca.begin(), ca.end(), cb.begin()));
        }
    }
}

double avg_length(const CodeTable& t, const std::vector<uint64_t>& freqs) {
    double bits = 0, n = 0;
    for (size_t i = 0; i < freqs.size(); ++i) {
        bits += double(freqs[i]) * t.lengths[i];
        n += double(freqs[i]);
    }
    return bits / n;
}

}  // namespace

TEST_CASE("binary codes are optimal and prefix-free") {
    std::vector<uint64_t> freqs{45, 13, 12, 16, 9, 5};  // classic: lengths 1,3,3,3,4,4
    CodeTable t = build_binary(freqs);
    CHECK(t.lengths == std::vector<unsigned>{1, 3, 3, 3, 4, 4});
    check_prefix_free(t);
    // entropy bound: H <= avg < H + 1
    double h = 0, n = 100;
    for (uint64_t f : freqs) h += double(f) / n * std::log2(n / double(f));
    double avg = avg_length(t, freqs);
    CHECK(avg >= h);
    CHECK(avg < h + 1);
}

TEST_CASE("canonical assignment is deterministic in (length, symbol)") {
    std::vector<uint64_t> freqs{10, 10, 10, 10};
    CodeTable t = build_binary(freqs);
    // equal lengths -> codes assigned in symbol order as consecutive values
    for (unsigned l : t.lengths) CHECK(l == 2);
    for (uint32_t a = 1; a <= 4; ++a) {
        uint64_t v = 0;
        for (uint8_t d : t.code(a)) v = v * 2 + d;
        CHECK(v == a - 1);
    }
}

TEST_CASE("assign_canonical reproduces codes from lengths alone") {
    SplitMix64 rng(3);
    std::vector<uint64_t> freqs(40);
    for (auto& f : freqs) f = rng.below(1000);  // some may be zero
    freqs[0] = 1;
    for (unsigned arity : {2u, 4u, 8u}) {
        CodeTable t = build_kary(freqs, arity);
        CodeTable u = assign_canonical(t.lengths, arity);
        CHECK(t.codes == u.codes);
        check_prefix_free(t);
    }
}

TEST_CASE("k-ary codes") {
    std::vector<uint64_t> freqs{50, 20, 10, 8, 6, 4, 2};
    for (unsigned arity : {4u, 16u}) {
        CodeTable t = build_kary(freqs, arity);
        check_prefix_free(t);
        for (size_t i = 0; i < freqs.size(); ++i) {
            CHECK(t.lengths[i] >= 1);
            for (uint8_t d : t.codes[i]) CHECK(d < arity);
        }
        // higher-frequency symbols never get longer codes
        for (size_t i = 1; i < freqs.size(); ++i) CHECK(t.lengths[i - 1] <= t.lengths[i]);
    }
}

TEST_CASE("single used symbol still gets a code") {
    std::vector<uint64_t> freqs{0, 7, 0};
    CodeTable t = build_binary(freqs);
    CHECK(t.lengths[1] == 1);
    CHECK(t.lengths[0] == 0);
    CHECK(t.codes[0].empty());
}

TEST_CASE("fixed-width digit codes") {
    for (unsigned arity : {2u, 4u, 16u}) {
        for (uint32_t sigma : {1u, 2u, 5u, 17u, 256u}) {
            CodeTable t = build_fixed(sigma, arity);
            check_prefix_free(t);
            unsigned maxlen = 0;
            for (uint32_t a = 1; a <= sigma; ++a) {
                CHECK(t.length(a) >= 1);
                uint64_t v = 0;
                for (uint8_t d : t.code(a)) {
                    CHECK(d < arity);
                    v = v * arity + d;
                }
                maxlen = std::max(maxlen, t.length(a));
            }
            // balanced: all lengths within one digit of each other
            for (uint32_t a = 1; a <= sigma; ++a) CHECK(t.length(a) + 1 >= maxlen);
        }
    }
}
