#pragma once

// Brute-force reference implementations used to cross-check the indexed
// structures in tests.
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

inline uint32_t access(const std::vector<uint32_t>& s, uint64_t i) {
    if (i < 1 || i > s.size()) throw std::out_of_range("oracle access");
    return s[i - 1];
}

inline uint64_t rank(const std::vector<uint32_t>& s, uint32_t a, uint64_t i) {
    if (i > s.size()) throw std::out_of_range("oracle rank");
    uint64_t c = 0;
    for (uint64_t k = 0; k < i; ++k) c += s[k] == a;
    return c;
}

inline uint64_t select(const std::vector<uint32_t>& s, uint32_t a, uint64_t j) {
    if (j == 0) return 0;
    uint64_t c = 0;
    for (uint64_t k = 0; k < s.size(); ++k) {
        c += s[k] == a;
        if (c == j) return k + 1;
    }
    throw std::out_of_range("oracle select");
}

inline std::vector<uint32_t> suffix_array(const std::vector<uint32_t>& t) {
    std::vector<uint32_t> sa(t.size());
    std::iota(sa.begin(), sa.end(), 0);
    std::sort(sa.begin(), sa.end(), [&](uint32_t a, uint32_t b) {
        return std::lexicographical_compare(t.begin() + a, t.end(), t.begin() + b, t.end());
    });
    return sa;
}

/// Number of (possibly overlapping) occurrences of p in t.
inline uint64_t count_occ(const std::vector<uint32_t>& t, const std::vector<uint32_t>& p) {
    if (p.empty() || p.size() > t.size()) return 0;
    uint64_t c = 0;
    for (size_t i = 0; i + p.size() <= t.size(); ++i)
        c += std::equal(p.begin(), p.end(), t.begin() + i);
    return c;
}

}  // namespace oracle
