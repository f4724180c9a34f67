#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "gcrs/bitvector.hpp"
#include "gcrs/corpus.hpp"

using namespace gcrs;

namespace {

std::vector<bool> random_bits(size_t n, double density, uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<bool> b(n);
    for (size_t i = 0; i < n; ++i) b[i] = rng.real() < density;
    return b;
}

template <class BM>
void check_against_naive(const BM& bm, const std::vector<bool>& bits) {
    size_t n = bits.size();
    REQUIRE(bm.size() == n);
    size_t r1 = 0, last1 = 0, last0 = 0;
    CHECK(bm.rank1(0) == 0);
    CHECK(bm.select1(0) == 0);
    CHECK(bm.select0(0) == 0);
    for (size_t i = 1; i <= n; ++i) {
        CHECK(bm.access(i) == bits[i - 1]);
        r1 += bits[i - 1];
        CHECK(bm.rank1(i) == r1);
        CHECK(bm.rank0(i) == i - r1);
        if (bits[i - 1]) {
            CHECK(bm.select1(r1) == i);
            last1 = r1;
        } else {
            CHECK(bm.select0(i - r1) == i);
            last0 = i - r1;
        }
    }
    CHECK_THROWS_AS(bm.select1(last1 + 1), std::out_of_range);
    CHECK_THROWS_AS(bm.select0(last0 + 1), std::out_of_range);
    CHECK_THROWS_AS(bm.access(0), std::out_of_range);
    CHECK_THROWS_AS(bm.access(n + 1), std::out_of_range);
    CHECK_THROWS_AS(bm.rank1(n + 1), std::out_of_range);
}

template <class BM>
BM roundtrip(const BM& bm) {
    std::stringstream ss;
    bm.save(ss);
    return BM::load(ss);
}

}  // namespace

TEST_CASE("plain bitmap") {
    // 4096/8192 land exactly on counter-superblock boundaries
    for (size_t n : {1, 5, 63, 64, 65, 600, 2100, 4096, 8192}) {
        for (double d : {0.02, 0.5, 0.97}) {
            auto bits = random_bits(n, d, n * 10 + size_t(d * 100));
            PlainBitmap bm(bits);
            check_against_naive(bm, bits);
            check_against_naive(roundtrip(bm), bits);
        }
    }
}

TEST_CASE("rrr bitmap") {
    for (size_t n : {1, 15, 16, 17, 500, 3000}) {
        for (double d : {0.03, 0.5, 0.9}) {
            auto bits = random_bits(n, d, n * 7 + size_t(d * 100));
            RrrBitmap bm(bits);
            check_against_naive(bm, bits);
            check_against_naive(roundtrip(bm), bits);
        }
    }
}

TEST_CASE("rrr compresses skewed bitmaps") {
    auto sparse = random_bits(20000, 0.01, 3);
    RrrBitmap r(sparse);
    PlainBitmap p(sparse);
    CHECK(r.size_in_bits() < p.size_in_bits());
}

TEST_CASE("sparse delta bitmap") {
    for (size_t n : {1, 40, 700, 5000}) {
        for (double d : {0.005, 0.1, 0.6}) {
            auto bits = random_bits(n, d, n * 3 + size_t(d * 1000));
            SparseDeltaBitmap bm(bits);
            check_against_naive(bm, bits);
            check_against_naive(roundtrip(bm), bits);
        }
    }
    // very sparse: far below one bit per position
    auto bits = random_bits(100000, 0.001, 11);
    SparseDeltaBitmap bm(bits);
    CHECK(bm.size_in_bits() < bits.size() / 4);
}

TEST_CASE("all-zero and all-one bitmaps") {
    std::vector<bool> z(130, false), o(130, true);
    check_against_naive(PlainBitmap(z), z);
    check_against_naive(PlainBitmap(o), o);
    check_against_naive(RrrBitmap(z), z);
    check_against_naive(RrrBitmap(o), o);
    check_against_naive(SparseDeltaBitmap(z), z);
    check_against_naive(SparseDeltaBitmap(o), o);
}
