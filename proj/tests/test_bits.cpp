#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "gcrs/bits.hpp"
#include "gcrs/corpus.hpp"

using namespace gcrs;

TEST_CASE("bit buffer append/read/write") {
    BitBuffer b;
    b.append_bits(0b1011, 4);
    b.append_bit(true);
    b.append_bits(0, 3);
    CHECK(b.size() == 8);
    CHECK(b.read(0, 4) == 0b1011);
    CHECK(b.get(4));
    CHECK(b.read(5, 3) == 0);
    b.write(5, 0b101, 3);
    CHECK(b.read(5, 3) == 0b101);
    CHECK_THROWS_AS(b.read(6, 3), std::out_of_range);

    std::stringstream ss;
    b.save(ss);
    BitBuffer c = BitBuffer::load(ss);
    CHECK(c.size() == 8);
    CHECK(c.read(0, 8) == b.read(0, 8));
}

TEST_CASE("bit_length") {
    CHECK(bit_length(0) == 0);
    CHECK(bit_length(1) == 1);
    CHECK(bit_length(2) == 2);
    CHECK(bit_length(3) == 2);
    CHECK(bit_length(4) == 3);
    CHECK(bit_length(uint64_t(-1)) == 64);
}

TEST_CASE("gamma code") {
    BitBuffer b;
    CHECK_THROWS_AS(encode_gamma(b, 0), std::invalid_argument);
    // 1 -> "1", 2 -> "010", 5 -> "00101"
    encode_gamma(b, 1);
    CHECK(b.size() == 1);
    encode_gamma(b, 2);
    CHECK(b.size() == 4);
    encode_gamma(b, 5);
    CHECK(b.size() == 9);
    CHECK(b.read(4, 5) == 0b00101);
    size_t pos = 0;
    CHECK(decode_gamma(b, pos) == 1);
    CHECK(decode_gamma(b, pos) == 2);
    CHECK(decode_gamma(b, pos) == 5);
    CHECK(pos == b.size());
}

TEST_CASE("gamma/delta/vbyte roundtrip") {
    std::vector<uint64_t> vals;
    for (uint64_t x = 1; x <= 300; ++x) vals.push_back(x);
    SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) vals.push_back(1 + (rng.next() >> (rng.next() % 60)));

    BitBuffer g, d;
    std::vector<uint8_t> v;
    for (uint64_t x : vals) {
        encode_gamma(g, x);
        encode_delta(d, x);
        encode_vbyte(v, x);
    }
    size_t pg = 0, pd = 0, pv = 0;
    for (uint64_t x : vals) {
        CHECK(decode_gamma(g, pg) == x);
        CHECK(decode_delta(d, pd) == x);
        CHECK(decode_vbyte(v, pv) == x);
    }
    CHECK(pv == v.size());
    // delta beats gamma asymptotically
    BitBuffer g1, d1;
    encode_gamma(g1, uint64_t(1) << 40);
    encode_delta(d1, uint64_t(1) << 40);
    CHECK(d1.size() < g1.size());
}

TEST_CASE("delta code truncation detected") {
    BitBuffer b;
    encode_delta(b, 1000);
    BitBuffer cut;
    for (size_t i = 0; i + 3 < b.size(); ++i) cut.append_bit(b.get(i));
    size_t pos = 0;
    CHECK_THROWS(decode_delta(cut, pos));
}
