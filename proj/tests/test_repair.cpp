#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "gcrs/corpus.hpp"
#include "gcrs/repair.hpp"

using namespace gcrs;

TEST_CASE("unary run of four") {
    Grammar g = repair_compress({1, 1, 1, 1}, 1);
    CHECK(g.rules.size() == 1);
    CHECK(g.rules[0] == std::pair<uint32_t, uint32_t>{1, 1});
    CHECK(g.seq == std::vector<uint32_t>{2, 2});
    CHECK(parse_height(g) == 1);
    CHECK(repair_decompress(g) == std::vector<uint32_t>{1, 1, 1, 1});
}

TEST_CASE("no pair repeats") {
    std::vector<uint32_t> s{1, 2, 3, 4};
    Grammar g = repair_compress(s, 4);
    CHECK(g.rules.empty());
    CHECK(g.seq == s);
    CHECK(parse_height(g) == 0);
}

TEST_CASE("overlapping pairs are not double counted") {
    // aaa holds two occurrences of (a,a) but only one is replaceable
    Grammar g = repair_compress({1, 1, 1}, 1);
    CHECK(g.rules.empty());
    CHECK(g.seq == std::vector<uint32_t>{1, 1, 1});
}

TEST_CASE("decompression inverts compression") {
    SplitMix64 rng(17);
    for (int it = 0; it < 120; ++it) {
        uint32_t sigma = 1 + static_cast<uint32_t>(rng.below(6));
        size_t n = 1 + rng.below(400);
        std::vector<uint32_t> s(n);
        for (auto& x : s) x = 1 + static_cast<uint32_t>(rng.below(sigma));
        for (bool balanced : {true, false}) {
            Grammar g = repair_compress(s, sigma, balanced);
            CHECK(repair_decompress(g) == s);
            for (uint32_t x = sigma + 1; x <= g.num_symbols(); ++x) {
                auto [l, r] = g.rules[x - sigma - 1];
                CHECK(l < x);  // rules only reference earlier symbols
                CHECK(r < x);
            }
        }
    }
}

TEST_CASE("balanced tie-break keeps the parse shallow on repetitive input") {
    std::vector<uint32_t> base{1, 2, 3, 4, 2, 1, 3, 1, 2, 4};
    std::vector<uint32_t> s;
    for (int i = 0; i < 200; ++i) s.insert(s.end(), base.begin(), base.end());
    Grammar gb = repair_compress(s, 4, true);
    Grammar gu = repair_compress(s, 4, false);
    CHECK(repair_decompress(gb) == s);
    CHECK(repair_decompress(gu) == s);
    CHECK(parse_height(gb) <= parse_height(gu));
}

TEST_CASE("partial expansion") {
    std::vector<uint32_t> s{1, 2, 1, 2, 1, 2, 1, 2};
    Grammar g = repair_compress(s, 2);
    uint32_t top = g.num_symbols();
    std::vector<uint32_t> pre = expand_prefix(g, top, 3);
    CHECK(pre == std::vector<uint32_t>{1, 2, 1});
}

TEST_CASE("serialization") {
    SplitMix64 rng(23);
    std::vector<uint32_t> s(900);
    for (auto& x : s) x = 1 + static_cast<uint32_t>(rng.below(3));
    Grammar g = repair_compress(s, 3);
    std::stringstream ss;
    g.save(ss);
    Grammar h = Grammar::load(ss);
    CHECK(h.sigma == g.sigma);
    CHECK(h.rules == g.rules);
    CHECK(h.seq == g.seq);
    CHECK(repair_decompress(h) == s);
}

TEST_CASE("stats report the packed size") {
    std::vector<uint32_t> s{1, 1, 1, 1};
    GrammarStats st = grammar_stats(repair_compress(s, 1));
    CHECK(st.r == 2);  // one terminal, one rule
    CHECK(st.c == 2);
    CHECK(st.bits_plain == (2 * 1 + 2) * 2);  // 2 bits per field for r = 2 symbols
    CHECK(st.height == 1);
}
