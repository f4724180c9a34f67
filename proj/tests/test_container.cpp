#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "gcrs/gcrs.hpp"

using namespace gcrs;

TEST_CASE("crc32 reference value") {
    // standard check value for the reflected 0xEDB88320 polynomial
    const char* s = "123456789";
    CHECK(crc32(s, 9) == 0xCBF43926u);
    CHECK(crc32("", 0) == 0u);
}

TEST_CASE("roundtrip") {
    std::string payload("hello\0world\x7f payload", 20);
    std::stringstream ss;
    write_container(ss, StructureTag::WT, payload);
    auto [tag, back] = read_container(ss);
    CHECK(tag == StructureTag::WT);
    CHECK(back == payload);
}

TEST_CASE("corruption is detected") {
    std::stringstream ss;
    write_container(ss, StructureTag::GCC_N, "abcdefgh");
    std::string raw = ss.str();

    std::string flipped = raw;
    flipped[raw.size() - 6] ^= 1;  // payload byte
    std::stringstream f1(flipped);
    CHECK_THROWS_WITH_AS(read_container(f1), "container: checksum mismatch", std::runtime_error);

    std::string badmagic = raw;
    badmagic[0] = 'X';
    std::stringstream f2(badmagic);
    CHECK_THROWS_WITH_AS(read_container(f2), "container: bad magic", std::runtime_error);

    std::stringstream f3(raw.substr(0, raw.size() - 8));
    CHECK_THROWS(read_container(f3));
}

TEST_CASE("structure names") {
    CHECK(std::string(structure_name(StructureTag::GCC_N)) == "gcc-n");
    CHECK(std::string(structure_name(StructureTag::AP_RP)) == "ap-rp");
    CHECK(std::string(structure_name(StructureTag::MWTH)) == "mwth");
    CHECK(std::string(structure_name(StructureTag::FMI)) == "fmi");
}

TEST_CASE("an index survives the container format") {
    SplitMix64 rng(3);
    std::vector<uint32_t> s(600);
    for (auto& x : s) x = 1 + static_cast<uint32_t>(rng.below(5));
    GccIndex ix(s, 5, GccConfig{GccMode::N, 64, 8, 1, true});
    std::ostringstream pay;
    save_sequence(pay, ix);
    std::stringstream ss;
    write_container(ss, StructureTag::GCC_N, pay.str());
    auto [tag, payload] = read_container(ss);
    CHECK(tag == StructureTag::GCC_N);
    std::istringstream ps(payload);
    SequencePtr back = load_sequence(ps);
    for (size_t i = 1; i <= s.size(); ++i) CHECK(back->access(i) == s[i - 1]);
}
