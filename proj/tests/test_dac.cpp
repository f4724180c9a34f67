#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "gcrs/corpus.hpp"
#include "gcrs/dac.hpp"

using namespace gcrs;

TEST_CASE("fixed-width chunking") {
    // with b=2 chunks: 5 = 01|01 (two layers), 1 = 01 (one layer)
    std::vector<uint64_t> v{5, 1, 0, 13, 3};
    DacArray d(v, 2);
    CHECK(d.size() == v.size());
    for (size_t i = 0; i < v.size(); ++i) CHECK(d.access(i + 1) == v[i]);
    CHECK(d.layers() == 2);
    // layer 0 holds 5 entries, layer 1 holds those needing a second chunk (5, 13)
    CHECK(d.payload_bits() == 5 * 3 + 2 * 3);
    CHECK_THROWS_AS(d.access(0), std::out_of_range);
    CHECK_THROWS_AS(d.access(6), std::out_of_range);
}

TEST_CASE("per-layer widths") {
    std::vector<uint64_t> v{0, 1, 2, 300, 70000, 9};
    std::vector<unsigned> widths{3, 8, 16};
    DacArray d(v, widths);
    for (size_t i = 0; i < v.size(); ++i) CHECK(d.access(i + 1) == v[i]);
}

TEST_CASE("random values roundtrip and serialization") {
    SplitMix64 rng(5);
    std::vector<uint64_t> v(4000);
    for (auto& x : v) x = rng.next() >> (rng.next() % 62);
    for (unsigned b : {1u, 4u, 7u, 16u}) {
        DacArray d(v, b);
        std::stringstream ss;
        d.save(ss);
        DacArray e = DacArray::load(ss);
        CHECK(e.size() == v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            CHECK(d.access(i + 1) == v[i]);
            CHECK(e.access(i + 1) == v[i]);
        }
    }
}

TEST_CASE("width optimization never loses to fixed layout") {
    SplitMix64 rng(9);
    std::vector<uint64_t> v(3000);
    for (auto& x : v) x = rng.real() < 0.9 ? rng.below(8) : rng.below(1 << 20);
    auto widths = DacArray::optimize_widths(v, 8);
    DacArray opt(v, widths);
    for (size_t i = 0; i < v.size(); ++i) CHECK(opt.access(i + 1) == v[i]);
    for (unsigned b : {2u, 4u, 8u}) {
        DacArray fixed(v, b);
        CHECK(opt.payload_bits() <= fixed.payload_bits());
    }
}

TEST_CASE("empty array") {
    DacArray d(std::vector<uint64_t>{}, 4);
    CHECK(d.size() == 0);
    CHECK_THROWS_AS(d.access(1), std::out_of_range);
}
