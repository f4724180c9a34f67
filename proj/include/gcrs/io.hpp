#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <type_traits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcrs {

// Little-endian stream helpers used by every serializer.

inline void write_u64(std::ostream& os, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline uint64_t read_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw std::runtime_error("truncated stream");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return v;
}

inline void write_u32(std::ostream& os, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline uint32_t read_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw std::runtime_error("truncated stream");
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
    return v;
}

inline void write_u16(std::ostream& os, uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>(v >> 8)};
    os.write(reinterpret_cast<const char*>(b), 2);
}

inline uint16_t read_u16(std::istream& is) {
    unsigned char b[2];
    is.read(reinterpret_cast<char*>(b), 2);
    if (!is) throw std::runtime_error("truncated stream");
    return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

template <class T>
void write_vec(std::ostream& os, const std::vector<T>& v) {
    static_assert(std::is_integral_v<T>);
    write_u64(os, v.size());
    for (T x : v) write_u64(os, static_cast<uint64_t>(x));
}

template <class T>
std::vector<T> read_vec(std::istream& is) {
    static_assert(std::is_integral_v<T>);
    uint64_t n = read_u64(is);
    std::vector<T> v(n);
    for (uint64_t i = 0; i < n; ++i) v[i] = static_cast<T>(read_u64(is));
    return v;
}

// CRC-32 (IEEE, reflected polynomial 0xEDB88320).
inline uint32_t crc32(const void* data, size_t len, uint32_t seed = 0) {
    static const auto table = [] {
        std::array<uint32_t, 256> t{};
        for (uint32_t i = 0; i < 256; ++i) {
            uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    uint32_t c = ~seed;
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) c = table[(c ^ p[i]) & 0xff] ^ (c >> 8);
    return ~c;
}

}  // namespace gcrs
