#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "gcrs/gcrs.hpp"
#include "oracle.hpp"

using namespace gcrs;

namespace {

void check_rsa(const Sequence& ix, const std::vector<uint32_t>& s, uint32_t sigma) {
    size_t n = s.size();
    REQUIRE(ix.size() == n);
    for (size_t i = 1; i <= n; ++i) CHECK(ix.access(i) == s[i - 1]);
    for (uint32_t a = 1; a <= sigma; ++a) {
        CHECK(ix.rank(a, 0) == 0);
        CHECK(ix.select(a, 0) == 0);
        uint64_t total = oracle::rank(s, a, n);
        for (size_t i = 1; i <= n; ++i) CHECK(ix.rank(a, i) == oracle::rank(s, a, i));
        for (uint64_t j = 1; j <= total; ++j) CHECK(ix.select(a, j) == oracle::select(s, a, j));
        CHECK_THROWS_AS(ix.select(a, total + 1), std::out_of_range);
    }
    CHECK_THROWS_AS(ix.access(0), std::out_of_range);
    CHECK_THROWS_AS(ix.access(n + 1), std::out_of_range);
    CHECK_THROWS_AS(ix.rank(sigma, n + 1), std::out_of_range);
}

std::vector<uint32_t> random_seq(size_t n, uint32_t sigma, uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<uint32_t> s(n);
    for (auto& x : s) x = 1 + static_cast<uint32_t>(rng.below(sigma));
    return s;
}

}  // namespace

TEST_CASE("small worked example") {
    std::vector<uint32_t> s{1, 2, 1, 1, 2, 1, 2, 1};
    for (GccMode m : {GccMode::N, GccMode::C}) {
        GccIndex ix(s, 2, GccConfig{m, 2, 2, 0, true});
        CHECK(ix.access(4) == 1);
        CHECK(ix.rank(2, 5) == 2);
        CHECK(ix.select(1, 3) == 4);
        check_rsa(ix, s, 2);
    }
}

TEST_CASE("oracle sweep over sampling and expansion parameters") {
    int seed = 0;
    for (GccMode m : {GccMode::N, GccMode::C}) {
        for (uint64_t s_period : {1, 4, 64}) {
            for (unsigned delta : {0u, 1u, 4u}) {
                for (auto [n, sigma] : std::vector<std::pair<size_t, uint32_t>>{
                         {1, 1}, {7, 2}, {100, 3}, {257, 8}, {400, 40}}) {
                    auto s = random_seq(n, sigma, 1000 + seed++);
                    GccIndex ix(s, sigma, GccConfig{m, s_period, 3, delta, true});
                    check_rsa(ix, s, sigma);
                }
            }
        }
    }
}

TEST_CASE("repetitive input compresses below packed size") {
    auto base = random_seq(500, 4, 77);
    auto s = gen_dna(base, 4, 100, 0.001, 78);
    GccIndex ix(s, 4, GccConfig{GccMode::N, 1024, 8, 1, true});
    CHECK(double(ix.size_in_bits()) / double(s.size()) < 2.0);  // vs 2-bit packed
    GccSpace sp = ix.space();
    CHECK(sp.total() + 256 == ix.size_in_bits());  // breakdown plus fixed header
    // spot checks against the oracle
    SplitMix64 rng(79);
    for (int k = 0; k < 300; ++k) {
        uint64_t i = 1 + rng.below(s.size());
        uint32_t a = 1 + static_cast<uint32_t>(rng.below(4));
        CHECK(ix.access(i) == s[i - 1]);
        CHECK(ix.rank(a, i) == oracle::rank(s, a, i));
        uint64_t t = oracle::rank(s, a, s.size());
        uint64_t j = 1 + rng.below(t);
        CHECK(ix.select(a, j) == oracle::select(s, a, j));
    }
}

TEST_CASE("expansion budget trades counter space for resolve work") {
    auto s = gen_dna(random_seq(300, 4, 5), 4, 50, 0.01, 6);
    GccIndex d0(s, 4, GccConfig{GccMode::N, 256, 8, 0, true});
    GccIndex d4(s, 4, GccConfig{GccMode::N, 256, 8, 4, true});
    CHECK(d4.space().counters <= d0.space().counters);
    for (uint32_t a = 1; a <= 4; ++a)
        for (uint64_t i : {size_t(1), s.size() / 2, s.size()}) CHECK(d4.rank(a, i) == d0.rank(a, i));
}

TEST_CASE("serialization roundtrip") {
    auto s = random_seq(700, 5, 91);
    for (GccMode m : {GccMode::N, GccMode::C}) {
        GccIndex ix(s, 5, GccConfig{m, 16, 4, 2, true});
        std::stringstream ss;
        save_sequence(ss, ix);
        SequencePtr back = load_sequence(ss);
        REQUIRE(back->size() == s.size());
        check_rsa(*back, s, 5);
        CHECK(back->size_in_bits() == ix.size_in_bits());
    }
}

TEST_CASE("grammar-compressed bitmap wrapper") {
    SplitMix64 rng(13);
    std::vector<bool> bits(2000);
    for (size_t i = 0; i < bits.size(); ++i) bits[i] = (i / 64) % 3 == 0 || rng.real() < 0.01;
    GccBitVec bv(bits);
    size_t r1 = 0;
    CHECK(bv.rank1(0) == 0);
    for (size_t i = 1; i <= bits.size(); ++i) {
        CHECK(bv.access(i) == bits[i - 1]);
        r1 += bits[i - 1];
        CHECK(bv.rank1(i) == r1);
        if (bits[i - 1]) CHECK(bv.select1(r1) == i);
    }
    std::stringstream ss;
    save_bitvec(ss, bv);
    BitVecPtr back = load_bitvec(ss);
    CHECK(back->rank1(bits.size()) == r1);
}

TEST_CASE("backend factory picks the smallest structure") {
    std::vector<bool> sparse(5000, false);
    for (size_t i = 0; i < sparse.size(); i += 97) sparse[i] = true;
    BitVecPtr least = make_bitvec(Backend::LeastSpace, sparse);
    for (Backend be : {Backend::Plain, Backend::Rrr, Backend::Gcc, Backend::Delta}) {
        BitVecPtr bv = make_bitvec(be, sparse);
        for (size_t i = 1; i <= sparse.size(); i += 37) CHECK(bv->access(i) == sparse[i - 1]);
        if (be != Backend::Delta) CHECK(least->size_in_bits() <= bv->size_in_bits());
    }
}
